#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <string>

#include "ppcount/error.hpp"

namespace ppcount {

using BigInt = mpz_class;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// p-adic valuation; INFINITE (the valuation of zero) exceeds every finite value.
class Valuation {
public:
    static constexpr u64 kInfinite = std::numeric_limits<u64>::max();

    constexpr Valuation() = default;
    constexpr explicit Valuation(u64 v) : value_(v) {}
    static constexpr Valuation infinite() { return Valuation(kInfinite); }

    constexpr bool is_infinite() const { return value_ == kInfinite; }
    constexpr u64 value() const { return value_; }

    constexpr auto operator<=>(const Valuation&) const = default;

    std::string to_string() const { return is_infinite() ? "inf" : std::to_string(value_); }

private:
    u64 value_ = 0;
};

inline u64 to_u64(const BigInt& n) {
    static_assert(sizeof(unsigned long) == sizeof(u64));
    return mpz_get_ui(n.get_mpz_t());
}

inline BigInt from_u64(u64 v) {
    BigInt r;
    mpz_set_ui(r.get_mpz_t(), static_cast<unsigned long>(v));
    return r;
}

inline BigInt big_pow(u64 base, u64 exponent) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(exponent));
    return r;
}

/// Canonical residue of n in [0, m).
inline BigInt mod_canonical(const BigInt& n, const BigInt& m) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline u64 mod_small(const BigInt& n, u64 m) {
    return mpz_fdiv_ui(n.get_mpz_t(), static_cast<unsigned long>(m));
}

inline Valuation valp(const BigInt& n, u64 p) {
    if (sgn(n) == 0) return Valuation::infinite();
    BigInt rest;
    BigInt prime = from_u64(p);
    return Valuation(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

/// min(ord_p(n), cap); zero maps to cap. Stops dividing once cap is reached.
inline u64 valp_capped(const BigInt& n, u64 p, u64 cap) {
    if (sgn(n) == 0) return cap;
    if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p)) == 0) return 0;
    BigInt q = n;
    u64 v = 0;
    while (v < cap && mpz_divisible_ui_p(q.get_mpz_t(), static_cast<unsigned long>(p)) != 0) {
        mpz_divexact_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

inline u64 add_mod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}

inline u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 pow_mod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

/// Inverse modulo a prime p; a must be nonzero mod p.
inline u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

namespace detail {

inline bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned r) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (unsigned i = 1; i < r; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

}  // namespace detail

/// Deterministic: trial division below 2^32, Miller-Rabin with the first
/// twelve prime bases (exact for all 64-bit n) above.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    if (n < (u64{1} << 32)) {
        for (u64 d = 3; d * d <= n; d += 2)
            if (n % d == 0) return false;
        return true;
    }
    u64 d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (detail::miller_rabin_witness(n, a, d, r)) return false;
    }
    return true;
}

/// Ring parameters for Z/p^k.
class PrimePowerCtx {
public:
    PrimePowerCtx(u64 p, unsigned k) : p_(p), k_(k) {
        if (!is_prime(p)) throw Error(ErrorKind::InvalidPrime, std::to_string(p) + " is not prime");
        if (k < 1) throw Error(ErrorKind::InvalidArgument, "exponent k must be >= 1");
        modulus_ = big_pow(p, k);
    }

    u64 p() const { return p_; }
    unsigned k() const { return k_; }
    const BigInt& modulus() const { return modulus_; }

    /// Same prime at a different exponent.
    PrimePowerCtx with_k(unsigned k) const { return PrimePowerCtx(p_, k, big_pow(p_, k)); }

    BigInt reduce(const BigInt& n) const { return mod_canonical(n, modulus_); }

    friend bool operator==(const PrimePowerCtx& a, const PrimePowerCtx& b) {
        return a.p_ == b.p_ && a.k_ == b.k_;
    }

private:
    PrimePowerCtx(u64 p, unsigned k, BigInt modulus) : p_(p), k_(k), modulus_(std::move(modulus)) {}

    u64 p_;
    unsigned k_;
    BigInt modulus_;
};

inline u64 splitmix64(u64 x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Counter-based generator: output i is a pure function of (key, i), so a
/// stream can be re-derived anywhere from its key alone.
class CounterRng {
public:
    explicit CounterRng(u64 key) : key_(key) {}

    u64 next() { return splitmix64(key_ ^ splitmix64(counter_++)); }

    /// Uniform in [0, bound), bound >= 1 (rejection sampling, no modulo bias).
    u64 uniform(u64 bound) {
        if (bound <= 1) return 0;
        const u64 limit = std::numeric_limits<u64>::max() - std::numeric_limits<u64>::max() % bound;
        u64 x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    /// Independent child stream; the tag is usually a tree-path hash.
    CounterRng split(u64 tag) const { return CounterRng(key_ ^ splitmix64(tag)); }

    u64 key() const { return key_; }

private:
    u64 key_;
    u64 counter_ = 0;
};

/// Path hash of the i-th child below a node whose path hash is `parent`.
inline u64 child_path_hash(u64 parent, u64 index) {
    return splitmix64(parent * 0x100000001B3ull ^ (index + 1));
}

}  // namespace ppcount
