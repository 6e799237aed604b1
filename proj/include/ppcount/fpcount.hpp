#pragma once

#include <cstdint>
#include <thread>
#include <variant>
#include <vector>

#include "ppcount/curve.hpp"
#include "ppcount/error.hpp"
#include "ppcount/modarith.hpp"
#include "ppcount/unipoly.hpp"

namespace ppcount {

inline constexpr u64 kDefaultPrimeCeiling = u64{1} << 31;

/// counts[v] = #{a in F_p : f(a) = v}.
struct ValueHistogram {
    u64 p = 0;
    std::vector<std::uint32_t> counts;
};

namespace detail {

/// Forward-difference table of f at start, start+1, ..., start+d so that
/// stepping a -> a+1 costs d additions.
inline std::vector<u64> difference_table(const FpPoly& f, u64 start) {
    const u64 p = f.p();
    const std::size_t n = static_cast<std::size_t>(std::max(f.degree(), 0)) + 1;
    std::vector<u64> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = f.eval((start + i) % p);
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) t[i] = sub_mod(t[i], t[i - 1], p);
    return t;
}

inline void histogram_range(const FpPoly& f, u64 begin, u64 end, std::vector<std::uint32_t>& counts) {
    if (begin >= end) return;
    const u64 p = f.p();
    std::vector<u64> t = difference_table(f, begin);
    const std::size_t n = t.size();
    for (u64 a = begin; a < end; ++a) {
        ++counts[t[0]];
        for (std::size_t i = 0; i + 1 < n; ++i) t[i] = add_mod(t[i], t[i + 1], p);
    }
}

}  // namespace detail

inline ValueHistogram value_histogram(const FpPoly& f, unsigned threads = 1, u64 ceiling = kDefaultPrimeCeiling) {
    const u64 p = f.p();
    if (p >= ceiling) throw Error(ErrorKind::PrimeTooLarge, "p = " + std::to_string(p) + " exceeds the histogram ceiling");
    ValueHistogram hist{p, std::vector<std::uint32_t>(p, 0)};
    const u64 min_chunk = u64{1} << 16;
    const unsigned workers = static_cast<unsigned>(std::max<u64>(1, std::min<u64>(threads, p / min_chunk)));
    if (workers <= 1) {
        detail::histogram_range(f, 0, p, hist.counts);
        return hist;
    }
    std::vector<std::vector<std::uint32_t>> partial(workers, std::vector<std::uint32_t>(p, 0));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        const u64 begin = p * w / workers;
        const u64 end = p * (w + 1) / workers;
        pool.emplace_back([&f, begin, end, &part = partial[w]] { detail::histogram_range(f, begin, end, part); });
    }
    for (auto& t : pool) t.join();
    for (const auto& part : partial)
        for (u64 v = 0; v < p; ++v) hist.counts[v] += part[v];
    return hist;
}

/// #{(a, b) in F_p^2 : g(a) + h(b) = 0} by convolving the two value histograms at 0.
inline u64 fp_point_count(const SeparatedCurve& curve, unsigned threads = 1) {
    if (curve.reduction_is_zero()) throw Error(ErrorKind::ZeroReduction, "curve vanishes identically mod p");
    const u64 p = curve.p();
    const ValueHistogram hg = value_histogram(curve.g_mod_p(), threads);
    const ValueHistogram hh = value_histogram(curve.h_mod_p(), threads);
    u64 total = 0;
    for (u64 v = 0; v < p; ++v) {
        const u64 w = v == 0 ? 0 : p - v;
        total += static_cast<u64>(hg.counts[v]) * hh.counts[w];
    }
    return total;
}

/// All F_p points of the curve in lexicographic order.
inline std::vector<Point2> fp_curve_points(const SeparatedCurve& curve, u64 limit = ~u64{0}) {
    const u64 p = curve.p();
    if (p >= kDefaultPrimeCeiling) throw Error(ErrorKind::PrimeTooLarge, "p exceeds the enumeration ceiling");
    const FpPoly g = curve.g_mod_p();
    const FpPoly h = curve.h_mod_p();
    // Bucket b by h(b): head/next linked lists keep memory at O(p).
    std::vector<std::int64_t> head(p, -1), next(p, -1);
    for (u64 b = p; b-- > 0;) {
        const u64 v = h.eval(b);
        next[b] = head[v];
        head[v] = static_cast<std::int64_t>(b);
    }
    std::vector<Point2> out;
    for (u64 a = 0; a < p; ++a) {
        const u64 ga = g.eval(a);
        const u64 target = ga == 0 ? 0 : p - ga;
        for (std::int64_t b = head[target]; b >= 0; b = next[static_cast<std::size_t>(b)]) {
            if (out.size() >= limit) throw Error(ErrorKind::ResourceLimit, "curve point enumeration exceeds budget");
            out.push_back({a, static_cast<u64>(b)});
        }
    }
    return out;
}

/// Number of singular F_p points encoded by a locus.
inline u64 singular_point_count(const SeparatedCurve& curve, const SingularLocus& locus, unsigned threads = 1) {
    const u64 p = curve.p();
    return std::visit(
        [&](const auto& l) -> u64 {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, IsolatedPoints>) return l.points.size();
            else if constexpr (std::is_same_v<T, VerticalLines>) return p * l.x1.size();
            else if constexpr (std::is_same_v<T, HorizontalLines>) return p * l.x2.size();
            else return fp_point_count(curve, threads);
        },
        locus);
}

/// n_p(f): smooth F_p points of the reduction.
inline u64 fp_smooth_count(const SeparatedCurve& curve, const SingularLocus& locus, unsigned threads = 1) {
    const u64 total = fp_point_count(curve, threads);
    const u64 singular = singular_point_count(curve, locus, threads);
    if (singular > total) throw Error(ErrorKind::Internal, "more singular points than curve points");
    return total - singular;
}

}  // namespace ppcount
