#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ppcount/error.hpp"
#include "ppcount/modarith.hpp"
#include "ppcount/unipoly.hpp"

namespace ppcount {

/// A point of F_p^2.
struct Point2 {
    u64 x1 = 0;
    u64 x2 = 0;
    friend auto operator<=>(const Point2&, const Point2&) = default;
};

/// A point of (Z/p^j)^2.
struct ResiduePoint {
    BigInt x1;
    BigInt x2;
    friend bool operator==(const ResiduePoint& a, const ResiduePoint& b) { return a.x1 == b.x1 && a.x2 == b.x2; }
};

enum class Axis { X1, X2 };

/// f = g(x1) + h(x2) over Z/p^k with h(0) = 0.
class SeparatedCurve {
public:
    /// The zero curve over F_2.
    SeparatedCurve() : SeparatedCurve(UniPoly(BigInt(2)), UniPoly(BigInt(2)), PrimePowerCtx(2, 1)) {}

    /// Reduces mod p^k and moves the constant term of h into g.
    static SeparatedCurve normalize(std::vector<BigInt> g, std::vector<BigInt> h, const PrimePowerCtx& ctx) {
        if (g.empty()) g.push_back(0);
        if (!h.empty()) {
            g[0] += h[0];
            h[0] = 0;
        }
        return SeparatedCurve(UniPoly(std::move(g), ctx.modulus()), UniPoly(std::move(h), ctx.modulus()), ctx);
    }

    static SeparatedCurve normalize(const UniPoly& g, const UniPoly& h, const PrimePowerCtx& ctx) {
        return normalize(g.coeffs(), h.coeffs(), ctx);
    }

    const UniPoly& g() const { return g_; }
    const UniPoly& h() const { return h_; }
    const PrimePowerCtx& ctx() const { return ctx_; }
    u64 p() const { return ctx_.p(); }
    unsigned k() const { return ctx_.k(); }

    /// Total degree of the stored residue polynomial; kNoDegree for zero.
    int degree() const { return std::max(g_.degree(), h_.degree()); }

    FpPoly g_mod_p() const { return g_.mod_p(p()); }
    FpPoly h_mod_p() const { return h_.mod_p(p()); }

    /// Total degree of the reduction mod p.
    int reduced_degree() const { return std::max(g_mod_p().degree(), h_mod_p().degree()); }

    bool reduction_is_zero() const { return g_mod_p().is_zero() && h_mod_p().is_zero(); }
    bool reduction_is_constant() const { return g_mod_p().degree() <= 0 && h_mod_p().is_zero(); }

    /// Same residues viewed mod p^k' for k' <= k.
    SeparatedCurve reduced_to(unsigned k) const {
        const PrimePowerCtx c = ctx_.with_k(k);
        return SeparatedCurve(g_.reduced(c.modulus()), h_.reduced(c.modulus()), c);
    }

    BigInt eval_mod(const BigInt& x1, const BigInt& x2, const BigInt& m) const {
        BigInt v = ppcount::eval_mod(g_, x1, m) + ppcount::eval_mod(h_, x2, m);
        return mod_canonical(v, m);
    }

    friend bool operator==(const SeparatedCurve& a, const SeparatedCurve& b) {
        return a.ctx_ == b.ctx_ && a.g_ == b.g_ && a.h_ == b.h_;
    }

private:
    SeparatedCurve(UniPoly g, UniPoly h, PrimePowerCtx ctx) : g_(std::move(g)), h_(std::move(h)), ctx_(std::move(ctx)) {}

    UniPoly g_;
    UniPoly h_;
    PrimePowerCtx ctx_;
};

/// Least j >= 1 with a nonzero coefficient of x^j in f(a + x) over F_p, if any.
inline std::optional<unsigned> first_taylor_order(const FpPoly& f, u64 a) {
    const FpPoly shifted = f.taylor_shift(a);
    for (int j = 1; j <= shifted.degree(); ++j)
        if (shifted[static_cast<std::size_t>(j)] != 0) return static_cast<unsigned>(j);
    return std::nullopt;
}

/// Multiplicity of zeta on the reduction mod p; 0 off the curve.
inline unsigned multiplicity_at(const SeparatedCurve& curve, Point2 zeta) {
    if (curve.reduction_is_zero()) throw Error(ErrorKind::ZeroReduction, "curve vanishes identically mod p");
    const FpPoly g = curve.g_mod_p();
    const FpPoly h = curve.h_mod_p();
    const u64 p = curve.p();
    if (add_mod(g.eval(zeta.x1 % p), h.eval(zeta.x2 % p), p) != 0) return 0;
    const auto jg = first_taylor_order(g, zeta.x1 % p);
    const auto jh = first_taylor_order(h, zeta.x2 % p);
    if (!jg && !jh) throw Error(ErrorKind::Internal, "point on a constant reduction");
    if (!jg) return *jh;
    if (!jh) return *jg;
    return std::min(*jg, *jh);
}

/// s(f, zeta) truncated at cap. Only pure-axis Hasse derivatives can be nonzero
/// for separated f, so the minimum runs over the two shifted univariate parts.
inline u64 point_valuation(const SeparatedCurve& curve, Point2 zeta, u64 cap) {
    const u64 p = curve.p();
    const BigInt m = big_pow(p, cap);
    const UniPoly gs = taylor_shift_p(curve.g(), from_u64(zeta.x1), p, m);
    const UniPoly hs = taylor_shift_p(curve.h(), from_u64(zeta.x2), p, m);
    u64 s = valp_capped(mod_canonical(gs[0] + hs[0], m), p, cap);
    for (std::size_t j = 1; j < gs.coeffs().size() && s > j; ++j) s = std::min(s, valp_capped(gs[j], p, s));
    for (std::size_t j = 1; j < hs.coeffs().size() && s > j; ++j) s = std::min(s, valp_capped(hs[j], p, s));
    return s;
}

/// The univariate part carrying the values on the given axis and the other
/// (variable) part. X1: (g, h). X2: (h + g(0), g - g(0)).
struct AxisParts {
    UniPoly value_part;
    UniPoly other_part;
};

inline AxisParts axis_parts(const SeparatedCurve& curve, Axis axis) {
    if (axis == Axis::X1) return {curve.g(), curve.h()};
    const BigInt& m = curve.ctx().modulus();
    const BigInt g0 = curve.g()[0];
    return {curve.h().with_coeff(0, g0), curve.g().with_coeff(0, BigInt(0)).reduced(m)};
}

/// Which line branch applies, if any: the other part vanishes mod p while the
/// value part is nonconstant mod p.
inline std::optional<Axis> line_branch_axis(const SeparatedCurve& curve) {
    const FpPoly g = curve.g_mod_p();
    const FpPoly h = curve.h_mod_p();
    if (g.degree() >= 1 && h.is_zero()) return Axis::X1;
    if (g.degree() <= 0 && h.degree() >= 1) return Axis::X2;
    return std::nullopt;
}

/// min(s(value part at zeta1), c) truncated at cap, c = content valuation of the other part.
inline u64 line_valuation(const SeparatedCurve& curve, Axis axis, u64 zeta1, u64 cap) {
    const auto branch = line_branch_axis(curve);
    if (!branch || *branch != axis) throw Error(ErrorKind::BranchMismatch, "line branch does not apply on this axis");
    const u64 p = curve.p();
    const AxisParts parts = axis_parts(curve, axis);
    const u64 c = content_valuation(parts.other_part, p, cap);
    const UniPoly shifted = taylor_shift_p(parts.value_part, from_u64(zeta1), p, big_pow(p, cap));
    return std::min(content_valuation(shifted, p, cap), c);
}

struct IsolatedPoints {
    std::vector<Point2> points;
};
/// Each entry a encodes the line {a} x F_p.
struct VerticalLines {
    std::vector<u64> x1;
};
/// Each entry b encodes the line F_p x {b}.
struct HorizontalLines {
    std::vector<u64> x2;
};
/// Both derivatives vanish identically mod p: every point of the curve is singular.
struct AllCurvePoints {};

using SingularLocus = std::variant<IsolatedPoints, VerticalLines, HorizontalLines, AllCurvePoints>;

struct LocusOptions {
    RootMethod method = RootMethod::Auto;
    RootStats* stats = nullptr;
};

namespace detail {

inline std::vector<u64> degenerate_roots(const FpPoly& f, CounterRng& rng, const LocusOptions& opt) {
    std::vector<u64> out;
    for (const auto& [root, mult] : fp_root_multiplicities(f, opt.method, rng, opt.stats))
        if (mult >= 2) out.push_back(root);
    return out;
}

}  // namespace detail

inline SingularLocus singular_locus(const SeparatedCurve& curve, CounterRng& rng, const LocusOptions& opt = {}) {
    if (curve.reduction_is_zero()) throw Error(ErrorKind::ZeroReduction, "curve vanishes identically mod p");
    if (curve.reduction_is_constant()) throw Error(ErrorKind::ConstantReduction, "reduction is a nonzero constant");
    const u64 p = curve.p();
    const FpPoly g = curve.g_mod_p();
    const FpPoly h = curve.h_mod_p();

    if (auto axis = line_branch_axis(curve)) {
        if (*axis == Axis::X1) return VerticalLines{detail::degenerate_roots(g, rng, opt)};
        const FpPoly hc = h + FpPoly(p, {g[0]});
        return HorizontalLines{detail::degenerate_roots(hc, rng, opt)};
    }

    const FpPoly dg = fp_derivative(g);
    const FpPoly dh = fp_derivative(h);
    if (dg.is_zero() && dh.is_zero()) return AllCurvePoints{};

    IsolatedPoints out;
    if (!dg.is_zero() && !dh.is_zero()) {
        const auto as = fp_roots(dg, opt.method, rng, opt.stats);
        const auto bs = fp_roots(dh, opt.method, rng, opt.stats);
        for (u64 a : as) {
            const u64 ga = g.eval(a);
            for (u64 b : bs)
                if (add_mod(ga, h.eval(b), p) == 0) out.points.push_back({a, b});
        }
    } else if (dg.is_zero()) {
        // Every a is critical for g: solve g(a) = -h(b) for each critical b.
        for (u64 b : fp_roots(dh, opt.method, rng, opt.stats))
            for (u64 a : fp_roots(g + FpPoly(p, {h.eval(b)}), opt.method, rng, opt.stats)) out.points.push_back({a, b});
    } else {
        for (u64 a : fp_roots(dg, opt.method, rng, opt.stats))
            for (u64 b : fp_roots(h + FpPoly(p, {g.eval(a)}), opt.method, rng, opt.stats)) out.points.push_back({a, b});
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

struct Perturbation {
    SeparatedCurve child;
    unsigned k_child;
    unsigned s;
};

/// f(zeta + p x) / p^s mod p^(k_i - s) for a singular point zeta with 2 <= s <= k_i - 1.
inline Perturbation perturb_point(const SeparatedCurve& curve, Point2 zeta, unsigned k_i) {
    if (k_i < 1 || k_i > curve.k()) throw Error(ErrorKind::InvalidArgument, "k_i outside [1, k]");
    const u64 s = point_valuation(curve, zeta, k_i);
    if (s < 2 || s >= k_i)
        throw Error(ErrorKind::ValuationOutOfRange,
                    "s = " + std::to_string(s) + " outside {2, ..., " + std::to_string(k_i - 1) + "}");
    const u64 p = curve.p();
    const BigInt m = big_pow(p, k_i);
    const UniPoly gs = taylor_shift_p(curve.g(), from_u64(zeta.x1), p, m);
    const UniPoly hs = taylor_shift_p(curve.h(), from_u64(zeta.x2), p, m);
    const UniPoly g_full = gs.with_coeff(0, mod_canonical(gs[0] + hs[0], m));
    const UniPoly h_full = hs.with_coeff(0, BigInt(0));
    const unsigned k_child = k_i - static_cast<unsigned>(s);
    const PrimePowerCtx child_ctx = curve.ctx().with_k(k_child);
    const UniPoly gc = divide_by_prime_power(g_full, p, s, child_ctx.modulus());
    const UniPoly hc = divide_by_prime_power(h_full, p, s, child_ctx.modulus());
    return {SeparatedCurve::normalize(gc, hc, child_ctx), k_child, static_cast<unsigned>(s)};
}

/// Perturbation along one axis only: the value part is recentred at zeta1 and
/// both parts are divided by p^s, s = line_valuation in {1, ..., k_i - 1}.
inline Perturbation perturb_line(const SeparatedCurve& curve, Axis axis, u64 zeta1, unsigned k_i) {
    if (k_i < 1 || k_i > curve.k()) throw Error(ErrorKind::InvalidArgument, "k_i outside [1, k]");
    const u64 s = line_valuation(curve, axis, zeta1, k_i);
    if (s < 1 || s >= k_i)
        throw Error(ErrorKind::ValuationOutOfRange,
                    "s = " + std::to_string(s) + " outside {1, ..., " + std::to_string(k_i - 1) + "}");
    const u64 p = curve.p();
    const BigInt m = big_pow(p, k_i);
    const AxisParts parts = axis_parts(curve, axis);
    const UniPoly shifted = taylor_shift_p(parts.value_part, from_u64(zeta1), p, m);
    const unsigned k_child = k_i - static_cast<unsigned>(s);
    const PrimePowerCtx child_ctx = curve.ctx().with_k(k_child);
    const UniPoly value = divide_by_prime_power(shifted, p, s, child_ctx.modulus());
    const UniPoly other = divide_by_prime_power(parts.other_part.reduced(m), p, s, child_ctx.modulus());
    if (axis == Axis::X1) return {SeparatedCurve::normalize(value, other, child_ctx), k_child, static_cast<unsigned>(s)};
    return {SeparatedCurve::normalize(other, value, child_ctx), k_child, static_cast<unsigned>(s)};
}

/// The p solutions of f(sigma + p^j t) = 0 mod p^(j+1).
struct LiftSet {
    ResiduePoint base;
    unsigned j = 0;
    std::vector<ResiduePoint> lifts;
};

inline LiftSet hensel_lifts(const SeparatedCurve& curve, const ResiduePoint& sigma, unsigned j) {
    if (j < 1) throw Error(ErrorKind::InvalidArgument, "lifting level j must be >= 1");
    const u64 p = curve.p();
    const BigInt pj = big_pow(p, j);
    const BigInt pj1 = pj * from_u64(p);
    const ResiduePoint base{mod_canonical(sigma.x1, pj), mod_canonical(sigma.x2, pj)};
    const BigInt value = curve.eval_mod(base.x1, base.x2, pj1);
    if (mpz_divisible_p(value.get_mpz_t(), pj.get_mpz_t()) == 0)
        throw Error(ErrorKind::NotARoot, "f(sigma) is not divisible by p^j");
    const u64 a1 = fp_derivative(curve.g_mod_p()).eval(mod_small(base.x1, p));
    const u64 a2 = fp_derivative(curve.h_mod_p()).eval(mod_small(base.x2, p));
    if (a1 == 0 && a2 == 0) throw Error(ErrorKind::NotSmooth, "both partial derivatives vanish mod p");
    BigInt q;
    mpz_divexact(q.get_mpz_t(), value.get_mpz_t(), pj.get_mpz_t());
    const u64 rhs = sub_mod(0, mod_small(q, p), p);

    LiftSet out{base, j, {}};
    out.lifts.reserve(p);
    for (u64 t = 0; t < p; ++t) {
        u64 t1, t2;
        if (a1 != 0) {
            t2 = t;
            t1 = mul_mod(sub_mod(rhs, mul_mod(a2, t2, p), p), inv_mod(a1, p), p);
        } else {
            t1 = t;
            t2 = mul_mod(rhs, inv_mod(a2, p), p);
        }
        out.lifts.push_back({base.x1 + pj * from_u64(t1), base.x2 + pj * from_u64(t2)});
    }
    return out;
}

}  // namespace ppcount
