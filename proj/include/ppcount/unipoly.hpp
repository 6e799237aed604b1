#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "ppcount/error.hpp"
#include "ppcount/modarith.hpp"

namespace ppcount {

/// Degree reported by the zero polynomial.
inline constexpr int kNoDegree = -1;

// ---------------------------------------------------------------------------
// Polynomials over F_p with word-sized coefficients.
// ---------------------------------------------------------------------------

class FpPoly {
public:
    explicit FpPoly(u64 p) : p_(p) {}

    FpPoly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
        for (auto& x : c_) x %= p_;
        trim();
    }

    static FpPoly monomial(u64 p, u64 coeff, std::size_t exponent) {
        std::vector<u64> c(exponent + 1, 0);
        c[exponent] = coeff;
        return FpPoly(p, std::move(c));
    }

    u64 p() const { return p_; }
    int degree() const { return c_.empty() ? kNoDegree : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    u64 operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
    u64 leading() const { return c_.empty() ? 0 : c_.back(); }
    const std::vector<u64>& coeffs() const { return c_; }

    u64 eval(u64 a) const {
        u64 r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = add_mod(mul_mod(r, a, p_), *it, p_);
        return r;
    }

    FpPoly monic() const {
        if (is_zero()) return *this;
        const u64 inv = inv_mod(leading(), p_);
        std::vector<u64> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = mul_mod(c_[i], inv, p_);
        return FpPoly(p_, std::move(c));
    }

    /// Coefficients of f(x + a).
    FpPoly taylor_shift(u64 a) const {
        std::vector<u64> c = c_;
        const std::size_t n = c.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j-- > i;) c[j] = add_mod(c[j], mul_mod(a, c[j + 1], p_), p_);
        return FpPoly(p_, std::move(c));
    }

    friend FpPoly operator+(const FpPoly& a, const FpPoly& b) {
        std::vector<u64> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = add_mod(a[i], b[i], a.p_);
        return FpPoly(a.p_, std::move(c));
    }

    friend FpPoly operator-(const FpPoly& a, const FpPoly& b) {
        std::vector<u64> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = sub_mod(a[i], b[i], a.p_);
        return FpPoly(a.p_, std::move(c));
    }

    friend FpPoly operator*(const FpPoly& a, const FpPoly& b) {
        if (a.is_zero() || b.is_zero()) return FpPoly(a.p_);
        std::vector<u64> c(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = add_mod(c[i + j], mul_mod(a.c_[i], b.c_[j], a.p_), a.p_);
        }
        return FpPoly(a.p_, std::move(c));
    }

    /// Quotient and remainder; divisor must be nonzero.
    static std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
        if (b.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "division by the zero polynomial");
        const u64 p = a.p_;
        if (a.degree() < b.degree()) return {FpPoly(p), a};
        std::vector<u64> r = a.c_;
        const std::size_t db = b.c_.size() - 1;
        std::vector<u64> q(r.size() - db, 0);
        const u64 inv = inv_mod(b.leading(), p);
        for (std::size_t i = r.size(); i-- > db;) {
            const u64 coef = mul_mod(r[i], inv, p);
            q[i - db] = coef;
            if (coef == 0) continue;
            for (std::size_t j = 0; j <= db; ++j)
                r[i - db + j] = sub_mod(r[i - db + j], mul_mod(coef, b.c_[j], p), p);
        }
        r.resize(db);
        return {FpPoly(p, std::move(q)), FpPoly(p, std::move(r))};
    }

    friend FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }
    friend FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }

    friend bool operator==(const FpPoly& a, const FpPoly& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    u64 p_;
    std::vector<u64> c_;
};

inline FpPoly fp_derivative(const FpPoly& f) {
    if (f.degree() < 1) return FpPoly(f.p());
    std::vector<u64> c(static_cast<std::size_t>(f.degree()));
    for (std::size_t i = 1; i <= c.size(); ++i) c[i - 1] = mul_mod(f[i], i % f.p(), f.p());
    return FpPoly(f.p(), std::move(c));
}

/// Monic gcd; gcd(0, 0) = 0.
inline FpPoly fp_gcd(FpPoly a, FpPoly b) {
    while (!b.is_zero()) {
        FpPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// base^e mod modulus.
inline FpPoly fp_powmod(FpPoly base, u64 e, const FpPoly& modulus) {
    FpPoly result(base.p(), {1});
    result = result % modulus;
    base = base % modulus;
    while (e) {
        if (e & 1) result = (result * base) % modulus;
        base = (base * base) % modulus;
        e >>= 1;
    }
    return result;
}

enum class RootMethod { Brute, CantorZassenhaus, Auto };

struct RootStats {
    u64 calls = 0;
    u64 retries = 0;
};

/// Sum h + h^2 + h^4 + ... (ext_degree terms) mod g; characteristic 2 splitting map.
inline FpPoly trace_map(const FpPoly& h, const FpPoly& g, unsigned ext_degree) {
    FpPoly term = h % g;
    FpPoly acc = term;
    for (unsigned i = 1; i < ext_degree; ++i) {
        term = (term * term) % g;
        acc = acc + term;
    }
    return acc;
}

namespace detail {

inline constexpr u64 kMaxSplitAttempts = 1u << 16;

inline void split_linear_factors(const FpPoly& g, CounterRng& rng, RootStats* stats,
                                 std::vector<u64>& out) {
    const u64 p = g.p();
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        out.push_back(sub_mod(0, g.monic()[0], p));
        return;
    }
    for (u64 attempt = 0; attempt < kMaxSplitAttempts; ++attempt) {
        const FpPoly h(p, {rng.uniform(p), 1});
        FpPoly w = (p == 2) ? trace_map(h, g, 1) : fp_powmod(h, (p - 1) / 2, g) - FpPoly(p, {1});
        FpPoly d = fp_gcd(g, w);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_linear_factors(d, rng, stats, out);
            split_linear_factors(g / d, rng, stats, out);
            return;
        }
        if (stats) ++stats->retries;
    }
    throw Error(ErrorKind::Internal, "equal-degree splitting did not terminate");
}

}  // namespace detail

inline std::vector<u64> fp_roots_brute(const FpPoly& f) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "root finding on the zero polynomial");
    std::vector<u64> roots;
    if (f.degree() == 0) return roots;
    for (u64 a = 0; a < f.p(); ++a)
        if (f.eval(a) == 0) roots.push_back(a);
    return roots;
}

/// Distinct-degree step gcd(f, x^p - x) followed by random equal-degree
/// splitting. Las Vegas: always exact, only the number of retries varies.
inline std::vector<u64> fp_roots_cz(const FpPoly& f, CounterRng& rng, RootStats* stats = nullptr) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "root finding on the zero polynomial");
    std::vector<u64> roots;
    if (f.degree() == 0) return roots;
    const u64 p = f.p();
    const FpPoly m = f.monic();
    const FpPoly x(p, {0, 1});
    const FpPoly linear_part = fp_gcd(m, fp_powmod(x, p, m) - x);
    detail::split_linear_factors(linear_part, rng, stats, roots);
    std::sort(roots.begin(), roots.end());
    return roots;
}

inline bool use_brute_roots(u64 p, int degree) {
    return p <= 4096 || p <= 64 * static_cast<u64>(std::max(degree, 0));
}

/// Sorted distinct roots of f in F_p.
inline std::vector<u64> fp_roots(const FpPoly& f, RootMethod method, CounterRng& rng,
                                 RootStats* stats = nullptr) {
    if (stats) ++stats->calls;
    switch (method) {
        case RootMethod::Brute: return fp_roots_brute(f);
        case RootMethod::CantorZassenhaus: return fp_roots_cz(f, rng, stats);
        case RootMethod::Auto:
            return use_brute_roots(f.p(), f.degree()) ? fp_roots_brute(f) : fp_roots_cz(f, rng, stats);
    }
    return {};
}

/// Root -> multiplicity. Degenerate roots are the entries with multiplicity >= 2.
using RootProfile = std::map<u64, unsigned>;

inline unsigned root_multiplicity(const FpPoly& f, u64 a) {
    const FpPoly shifted = f.taylor_shift(a);
    unsigned m = 0;
    while (static_cast<int>(m) <= shifted.degree() && shifted[m] == 0) ++m;
    return m;
}

inline RootProfile fp_root_multiplicities(const FpPoly& f, RootMethod method, CounterRng& rng,
                                          RootStats* stats = nullptr) {
    RootProfile profile;
    for (u64 a : fp_roots(f, method, rng, stats)) {
        // Repeated synthetic division by (x - a).
        FpPoly q = f;
        const FpPoly lin(f.p(), {sub_mod(0, a, f.p()), 1});
        unsigned m = 0;
        for (;;) {
            auto [quot, rem] = FpPoly::divmod(q, lin);
            if (!rem.is_zero()) break;
            q = std::move(quot);
            ++m;
        }
        profile.emplace(a, m);
    }
    return profile;
}

/// Number of simple roots.
inline std::size_t nondegenerate_root_count(const RootProfile& profile) {
    return static_cast<std::size_t>(
        std::count_if(profile.begin(), profile.end(), [](const auto& e) { return e.second == 1; }));
}

// ---------------------------------------------------------------------------
// Polynomials with coefficients in Z/m, m = p^k, stored as canonical residues.
// ---------------------------------------------------------------------------

class UniPoly {
public:
    UniPoly() : modulus_(1) {}
    explicit UniPoly(BigInt modulus) : modulus_(std::move(modulus)) {}

    UniPoly(std::vector<BigInt> coeffs, BigInt modulus) : c_(std::move(coeffs)), modulus_(std::move(modulus)) {
        for (auto& x : c_) x = mod_canonical(x, modulus_);
        trim();
    }

    int degree() const { return c_.empty() ? kNoDegree : static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const BigInt& modulus() const { return modulus_; }
    const std::vector<BigInt>& coeffs() const { return c_; }

    BigInt operator[](std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }

    /// Same residues viewed in a smaller ring Z/m' with m' | m.
    UniPoly reduced(const BigInt& new_modulus) const { return UniPoly(c_, new_modulus); }

    FpPoly mod_p(u64 p) const {
        std::vector<u64> c(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) c[i] = mod_small(c_[i], p);
        return FpPoly(p, std::move(c));
    }

    UniPoly with_coeff(std::size_t i, const BigInt& value) const {
        std::vector<BigInt> c = c_;
        if (c.size() <= i) c.resize(i + 1, BigInt(0));
        c[i] = value;
        return UniPoly(std::move(c), modulus_);
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        return a.modulus_ == b.modulus_ && a.c_ == b.c_;
    }

private:
    void trim() {
        while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
    }

    std::vector<BigInt> c_;
    BigInt modulus_;
};

/// f(a) mod m by Horner's rule.
inline BigInt eval_mod(const UniPoly& f, const BigInt& a, const BigInt& m) {
    BigInt r = 0;
    const auto& c = f.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        r = r * a + *it;
        mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
    }
    return r;
}

/// Coefficients of f(zeta + p*x) mod m: Horner recentering at zeta, then
/// coefficient i scaled by p^i.
inline UniPoly taylor_shift_p(const UniPoly& f, const BigInt& zeta, u64 p, const BigInt& m) {
    std::vector<BigInt> c = f.coeffs();
    const std::size_t n = c.size();
    for (auto& x : c) x = mod_canonical(x, m);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = n - 1; j-- > i;) {
            c[j] += zeta * c[j + 1];
            mpz_mod(c[j].get_mpz_t(), c[j].get_mpz_t(), m.get_mpz_t());
        }
    }
    BigInt scale = 1;
    const BigInt prime = from_u64(p);
    for (std::size_t i = 1; i < n; ++i) {
        scale = mod_canonical(scale * prime, m);
        c[i] = mod_canonical(c[i] * scale, m);
    }
    return UniPoly(std::move(c), m);
}

/// min_i ord_p(c_i) truncated at cap; the zero polynomial reports cap.
inline u64 content_valuation(const UniPoly& f, u64 p, u64 cap) {
    u64 v = cap;
    for (const auto& c : f.coeffs()) {
        if (v == 0) break;
        v = std::min(v, valp_capped(c, p, v));
    }
    return v;
}

/// Divides every coefficient by p^s (checked exact) and reduces mod new_modulus.
inline UniPoly divide_by_prime_power(const UniPoly& f, u64 p, u64 s, const BigInt& new_modulus) {
    const BigInt divisor = big_pow(p, s);
    std::vector<BigInt> c;
    c.reserve(f.coeffs().size());
    for (const auto& x : f.coeffs()) {
        if (mpz_divisible_p(x.get_mpz_t(), divisor.get_mpz_t()) == 0)
            throw Error(ErrorKind::Internal, "inexact division by p^s during perturbation");
        BigInt q;
        mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), divisor.get_mpz_t());
        c.push_back(std::move(q));
    }
    return UniPoly(std::move(c), new_modulus);
}

}  // namespace ppcount
