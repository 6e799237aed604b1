#pragma once

// Brute-force reference implementations. Nothing here calls into the
// counter, the singular-locus code or the Taylor-shift routines.

#include <map>
#include <utility>
#include <vector>

#include "ppcount/curve.hpp"
#include "ppcount/error.hpp"
#include "ppcount/modarith.hpp"
#include "ppcount/unipoly.hpp"

namespace ppcount::oracle {

inline constexpr u64 kDefaultHistogramCeiling = 100'000'000;  // on p^k
inline constexpr u64 kDefaultPairCeiling = 1'000'000;         // on p^(2k)

namespace detail {

inline std::vector<u64> small_coeffs(const UniPoly& f, u64 m) {
    std::vector<u64> c;
    for (const auto& x : f.coeffs()) c.push_back(mod_small(x, m));
    return c;
}

inline u64 horner(const std::vector<u64>& c, u64 a, u64 m) {
    u64 r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = add_mod(mul_mod(r, a, m), *it, m);
    return r;
}

inline u64 modulus_or_throw(u64 p, unsigned k, u64 ceiling) {
    u64 m = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (m > ceiling / p) throw Error(ErrorKind::OracleTooLarge, "p^k exceeds the oracle ceiling");
        m *= p;
    }
    return m;
}

}  // namespace detail

/// #{(a, b) in (Z/p^k)^2 : g(a) + h(b) = 0 mod p^k} from two value histograms.
inline u64 brute_count(const SeparatedCurve& curve, u64 ceiling = kDefaultHistogramCeiling) {
    const u64 p = curve.p();
    const u64 m = detail::modulus_or_throw(p, curve.k(), ceiling);
    const auto g = detail::small_coeffs(curve.g(), m);
    const auto h = detail::small_coeffs(curve.h(), m);
    std::vector<std::uint32_t> hist(m, 0);
    for (u64 b = 0; b < m; ++b) ++hist[detail::horner(h, b, m)];
    u64 total = 0;
    for (u64 a = 0; a < m; ++a) {
        const u64 v = detail::horner(g, a, m);
        total += hist[v == 0 ? 0 : m - v];
    }
    return total;
}

/// Direct double loop over all pairs; the second, histogram-free witness.
inline u64 naive_pair_count(const SeparatedCurve& curve, u64 ceiling = kDefaultPairCeiling) {
    const u64 p = curve.p();
    u64 sq_ceiling = 1;
    while ((sq_ceiling + 1) * (sq_ceiling + 1) <= ceiling) ++sq_ceiling;
    const u64 m = detail::modulus_or_throw(p, curve.k(), sq_ceiling);
    const auto g = detail::small_coeffs(curve.g(), m);
    const auto h = detail::small_coeffs(curve.h(), m);
    u64 total = 0;
    for (u64 a = 0; a < m; ++a)
        for (u64 b = 0; b < m; ++b)
            if (add_mod(detail::horner(g, a, m), detail::horner(h, b, m), m) == 0) ++total;
    return total;
}

inline std::vector<u64> brute_fp_roots(const FpPoly& f) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "root finding on the zero polynomial");
    std::vector<u64> out;
    for (u64 a = 0; a < f.p(); ++a)
        if (detail::horner(f.coeffs(), a, f.p()) == 0) out.push_back(a);
    return out;
}

/// Binomial coefficient mod p from Pascal's triangle.
inline u64 binomial_mod(u64 n, u64 r, u64 p) {
    std::vector<u64> row{1};
    for (u64 i = 1; i <= n; ++i) {
        std::vector<u64> next(i + 1, 1);
        for (u64 j = 1; j < i; ++j) next[j] = add_mod(row[j - 1], row[j], p);
        row = std::move(next);
    }
    return r <= n ? row[r] : 0;
}

/// Multiplicity from the homogeneous-form definition: expand the reduction
/// f(zeta + x) as a dense bivariate polynomial by the binomial theorem and take
/// the least total degree of a nonzero term.
inline unsigned brute_multiplicity(const SeparatedCurve& curve, Point2 zeta) {
    const u64 p = curve.p();
    const FpPoly g = curve.g_mod_p();
    const FpPoly h = curve.h_mod_p();
    if (g.is_zero() && h.is_zero()) throw Error(ErrorKind::ZeroReduction, "curve vanishes identically mod p");
    std::map<std::pair<u64, u64>, u64> terms;  // (i, j) -> coefficient of x1^i x2^j
    auto expand = [&](const FpPoly& f, u64 a, bool first) {
        for (int n = 0; n <= f.degree(); ++n) {
            const u64 c = f[static_cast<std::size_t>(n)];
            if (c == 0) continue;
            for (int r = 0; r <= n; ++r) {
                const u64 term = mul_mod(mul_mod(c, binomial_mod(static_cast<u64>(n), static_cast<u64>(r), p), p),
                                         pow_mod(a, static_cast<u64>(n - r), p), p);
                const auto key = first ? std::make_pair(u64(r), u64{0}) : std::make_pair(u64{0}, u64(r));
                terms[key] = add_mod(terms[key], term, p);
            }
        }
    };
    expand(g, zeta.x1 % p, true);
    expand(h, zeta.x2 % p, false);
    unsigned best = ~0u;
    for (const auto& [key, c] : terms)
        if (c != 0) best = std::min(best, static_cast<unsigned>(key.first + key.second));
    return best;
}

/// Singular F_p points by scanning the whole plane with both partials.
inline std::vector<Point2> brute_singular_points(const SeparatedCurve& curve) {
    const u64 p = curve.p();
    const FpPoly g = curve.g_mod_p();
    const FpPoly h = curve.h_mod_p();
    std::vector<u64> dg, dh;
    for (int i = 1; i <= g.degree(); ++i) dg.push_back(mul_mod(g[static_cast<std::size_t>(i)], static_cast<u64>(i) % p, p));
    for (int i = 1; i <= h.degree(); ++i) dh.push_back(mul_mod(h[static_cast<std::size_t>(i)], static_cast<u64>(i) % p, p));
    std::vector<Point2> out;
    for (u64 a = 0; a < p; ++a) {
        if (detail::horner(dg, a, p) != 0) continue;
        for (u64 b = 0; b < p; ++b)
            if (detail::horner(dh, b, p) == 0 &&
                add_mod(detail::horner(g.coeffs(), a, p), detail::horner(h.coeffs(), b, p), p) == 0)
                out.push_back({a, b});
    }
    return out;
}

/// Roots mod p^j of the curve's integer representative that reduce to base mod p.
inline std::vector<std::pair<u64, u64>> brute_roots_above(const SeparatedCurve& curve, Point2 base, unsigned j) {
    const u64 p = curve.p();
    const u64 m = detail::modulus_or_throw(p, j, 1'000'000);
    std::vector<u64> g, h;
    for (const auto& x : curve.g().coeffs()) g.push_back(mod_small(x, m));
    for (const auto& x : curve.h().coeffs()) h.push_back(mod_small(x, m));
    std::vector<std::pair<u64, u64>> out;
    for (u64 a = base.x1 % p; a < m; a += p)
        for (u64 b = base.x2 % p; b < m; b += p)
            if (add_mod(detail::horner(g, a, m), detail::horner(h, b, m), m) == 0) out.emplace_back(a, b);
    return out;
}

}  // namespace ppcount::oracle
