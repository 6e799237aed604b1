#pragma once

#include <atomic>
#include <chrono>
#include <future>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ppcount/curve.hpp"
#include "ppcount/error.hpp"
#include "ppcount/fpcount.hpp"
#include "ppcount/modarith.hpp"
#include "ppcount/unipoly.hpp"

namespace ppcount {

enum class Branch { Squarefree, LineX1, LineX2, DegenerateFallback, Zero, Constant };

inline std::string_view to_string(Branch b) {
    switch (b) {
        case Branch::Squarefree: return "SQUAREFREE";
        case Branch::LineX1: return "LINE_X1";
        case Branch::LineX2: return "LINE_X2";
        case Branch::DegenerateFallback: return "DEGENERATE_FALLBACK";
        case Branch::Zero: return "ZERO";
        case Branch::Constant: return "CONSTANT";
    }
    return "UNKNOWN";
}

/// A singular point, or a whole line {a} x F_p / F_p x {b} of singular points.
struct LocusElement {
    enum class Kind { Point, VerticalLine, HorizontalLine };
    Kind kind = Kind::Point;
    u64 x1 = 0;
    u64 x2 = 0;

    static LocusElement point(Point2 z) { return {Kind::Point, z.x1, z.x2}; }
    static LocusElement vertical(u64 a) { return {Kind::VerticalLine, a, 0}; }
    static LocusElement horizontal(u64 b) { return {Kind::HorizontalLine, 0, b}; }

    friend bool operator==(const LocusElement&, const LocusElement&) = default;
};

struct TreeEdge {
    LocusElement at;
    unsigned s = 0;
    /// The edge weight is p^weight_exponent: 2(s-1) below squarefree nodes, 2s-1 below line nodes.
    unsigned weight_exponent = 0;
};

/// A locus element with s >= k_i: every lift is a root, contributing p^exponent.
struct SaturatedContribution {
    LocusElement at;
    unsigned exponent = 0;
};

/// One node (f_i, k_i) of the recursion tree. The node's count is
///   p^(2 v) * [ smooth_points * p^smooth_exponent + sum_saturated p^e + sum_children p^w * N(child) ]
/// where v = content_shift and `curve` is already divided by p^v. Zero nodes count p^(2k),
/// constant nodes 0, base-case nodes p^(2v) * base_count.
struct TreeNode {
    std::size_t id = 0;
    unsigned depth = 0;
    unsigned k = 0;
    unsigned content_shift = 0;
    SeparatedCurve curve;
    Branch branch = Branch::Squarefree;
    bool base_case = false;
    BigInt base_count = 0;
    std::optional<TreeEdge> edge_in;
    u64 smooth_points = 0;
    unsigned smooth_exponent = 0;
    std::vector<SaturatedContribution> saturated;
    /// Singular points with s = 1: no lift reaches p^2.
    u64 dead_points = 0;
    std::vector<TreeNode> children;
    BigInt value = 0;

    unsigned effective_k() const { return k - content_shift; }
};

struct CountTree {
    u64 p = 0;
    unsigned k = 0;
    TreeNode root;

    std::size_t node_count() const {
        std::size_t n = 0;
        visit([&](const TreeNode&) { ++n; });
        return n;
    }

    /// Preorder traversal.
    template <typename F>
    void visit(F&& fn) const {
        std::vector<const TreeNode*> stack{&root};
        while (!stack.empty()) {
            const TreeNode* n = stack.back();
            stack.pop_back();
            fn(*n);
            for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) stack.push_back(&*it);
        }
    }
};

struct CountConfig {
    RootMethod method = RootMethod::Auto;
    u64 seed = 0;
    u64 node_budget = 1'000'000;
    /// Ceiling on curve points enumerated by one degenerate-fallback node.
    u64 fallback_point_budget = 1'000'000;
    unsigned threads = 1;
};

struct CountStats {
    u64 nodes = 0;
    u64 fp_count_calls = 0;
    u64 root_find_calls = 0;
    u64 root_find_retries = 0;
    u64 saturated = 0;
    u64 dead_points = 0;
    unsigned max_depth = 0;
    double seconds_fp_count = 0;
    double seconds_locus = 0;
    double seconds_total = 0;
};

struct CountResult {
    BigInt N;
    CountTree tree;
    CountStats stats;
    u64 seed = 0;
};

namespace detail {

class CountRun {
public:
    CountRun(u64 p, const CountConfig& config) : p_(p), config_(config), spare_workers_(static_cast<int>(config.threads) - 1) {}

    TreeNode build(const SeparatedCurve& f, unsigned k, unsigned depth, std::optional<TreeEdge> edge, u64 path_hash) {
        if (nodes_.fetch_add(1) + 1 > config_.node_budget)
            throw Error(ErrorKind::ResourceLimit, "tree exceeds node budget of " + std::to_string(config_.node_budget));
        update_max(max_depth_, depth);

        TreeNode node;
        node.depth = depth;
        node.k = k;
        node.curve = f;
        node.edge_in = edge;

        const u64 v = std::min(content_valuation(f.g(), p_, k), content_valuation(f.h(), p_, k));
        if (v >= k) {
            node.branch = Branch::Zero;
            node.value = big_pow(p_, 2 * u64{k});
            return node;
        }
        if (v > 0) {
            const PrimePowerCtx c = f.ctx().with_k(k - static_cast<unsigned>(v));
            node.curve = SeparatedCurve::normalize(divide_by_prime_power(f.g(), p_, v, c.modulus()),
                                                   divide_by_prime_power(f.h(), p_, v, c.modulus()), c);
            node.content_shift = static_cast<unsigned>(v);
        }
        const SeparatedCurve& cur = node.curve;
        const unsigned keff = node.effective_k();
        const BigInt shift_factor = big_pow(p_, 2 * v);

        if (cur.reduction_is_constant()) {
            node.branch = Branch::Constant;
            node.value = 0;
            return node;
        }

        const auto axis = line_branch_axis(cur);
        if (axis) node.branch = *axis == Axis::X1 ? Branch::LineX1 : Branch::LineX2;
        else if (fp_derivative(cur.g_mod_p()).is_zero() && fp_derivative(cur.h_mod_p()).is_zero())
            node.branch = Branch::DegenerateFallback;
        else node.branch = Branch::Squarefree;

        if (keff == 1) {
            node.base_case = true;
            node.base_count = from_u64(timed_point_count(cur));
            node.value = shift_factor * node.base_count;
            return node;
        }

        CounterRng rng(config_.seed ^ path_hash);
        RootStats rstats;
        const LocusOptions lopt{config_.method, &rstats};
        std::vector<std::pair<Perturbation, TreeEdge>> pending;

        const auto t0 = std::chrono::steady_clock::now();
        if (axis) {
            const AxisParts parts = axis_parts(cur, *axis);
            const RootProfile profile = fp_root_multiplicities(parts.value_part.mod_p(p_), config_.method, rng, &rstats);
            node.smooth_points = nondegenerate_root_count(profile);
            node.smooth_exponent = keff;
            for (const auto& [root, mult] : profile) {
                if (mult < 2) continue;
                const LocusElement at = *axis == Axis::X1 ? LocusElement::vertical(root) : LocusElement::horizontal(root);
                const u64 s = line_valuation(cur, *axis, root, keff);
                if (s >= keff) {
                    node.saturated.push_back({at, 2 * keff - 1});
                } else {
                    Perturbation pert = perturb_line(cur, *axis, root, keff);
                    const TreeEdge e{at, pert.s, 2 * pert.s - 1};
                    pending.emplace_back(std::move(pert), e);
                }
            }
            add_seconds(locus_ns_, t0);
        } else {
            std::vector<Point2> points;
            if (node.branch == Branch::DegenerateFallback) {
                points = fp_curve_points(cur, config_.fallback_point_budget);
                node.smooth_points = 0;
                add_seconds(locus_ns_, t0);
            } else {
                points = std::get<IsolatedPoints>(singular_locus(cur, rng, lopt)).points;
                add_seconds(locus_ns_, t0);
                const u64 total = timed_point_count(cur);
                if (points.size() > total) throw Error(ErrorKind::Internal, "singular points exceed curve points");
                node.smooth_points = total - points.size();
            }
            node.smooth_exponent = keff - 1;
            for (const Point2& z : points) {
                const u64 s = point_valuation(cur, z, keff);
                if (s >= keff) {
                    node.saturated.push_back({LocusElement::point(z), 2 * (keff - 1)});
                } else if (s >= 2) {
                    Perturbation pert = perturb_point(cur, z, keff);
                    const TreeEdge e{LocusElement::point(z), pert.s, 2 * (pert.s - 1)};
                    pending.emplace_back(std::move(pert), e);
                } else {
                    ++node.dead_points;
                }
            }
        }
        root_calls_ += rstats.calls;
        root_retries_ += rstats.retries;
        saturated_ += node.saturated.size();
        dead_ += node.dead_points;

        node.children = build_children(pending, depth, path_hash);

        BigInt sum = from_u64(node.smooth_points) * big_pow(p_, node.smooth_exponent);
        for (const auto& sat : node.saturated) sum += big_pow(p_, sat.exponent);
        for (const auto& child : node.children) sum += big_pow(p_, child.edge_in->weight_exponent) * child.value;
        node.value = shift_factor * sum;
        return node;
    }

    CountStats stats() const {
        CountStats s;
        s.nodes = nodes_.load();
        s.fp_count_calls = fp_calls_.load();
        s.root_find_calls = root_calls_.load();
        s.root_find_retries = root_retries_.load();
        s.saturated = saturated_.load();
        s.dead_points = dead_.load();
        s.max_depth = max_depth_.load();
        s.seconds_fp_count = static_cast<double>(fp_ns_.load()) * 1e-9;
        s.seconds_locus = static_cast<double>(locus_ns_.load()) * 1e-9;
        return s;
    }

private:
    std::vector<TreeNode> build_children(std::vector<std::pair<Perturbation, TreeEdge>>& pending, unsigned depth,
                                         u64 path_hash) {
        std::vector<TreeNode> out;
        out.reserve(pending.size());
        std::vector<std::optional<std::future<TreeNode>>> futures(pending.size());
        std::vector<std::optional<TreeNode>> inline_results(pending.size());
        for (std::size_t i = 0; i < pending.size(); ++i) {
            const Perturbation* pert = &pending[i].first;
            const TreeEdge edge = pending[i].second;
            const u64 child_hash = child_path_hash(path_hash, i);
            const bool last = i + 1 == pending.size();
            if (!last && try_take_worker()) {
                futures[i] = std::async(std::launch::async, [this, pert, edge, depth, child_hash] {
                    struct Release {
                        CountRun* run;
                        ~Release() { run->spare_workers_.fetch_add(1); }
                    } release{this};
                    return build(pert->child, pert->k_child, depth + 1, edge, child_hash);
                });
            } else {
                inline_results[i] = build(pert->child, pert->k_child, depth + 1, edge, child_hash);
            }
        }
        for (std::size_t i = 0; i < pending.size(); ++i)
            out.push_back(futures[i] ? futures[i]->get() : std::move(*inline_results[i]));
        return out;
    }

    bool try_take_worker() {
        int cur = spare_workers_.load();
        while (cur > 0)
            if (spare_workers_.compare_exchange_weak(cur, cur - 1)) return true;
        return false;
    }

    u64 timed_point_count(const SeparatedCurve& c) {
        const auto t0 = std::chrono::steady_clock::now();
        ++fp_calls_;
        const u64 n = fp_point_count(c);
        add_seconds(fp_ns_, t0);
        return n;
    }

    static void add_seconds(std::atomic<long long>& acc, std::chrono::steady_clock::time_point t0) {
        acc += std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0).count();
    }

    static void update_max(std::atomic<unsigned>& acc, unsigned v) {
        unsigned cur = acc.load();
        while (cur < v && !acc.compare_exchange_weak(cur, v)) {
        }
    }

    u64 p_;
    CountConfig config_;
    std::atomic<int> spare_workers_;
    std::atomic<u64> nodes_{0}, fp_calls_{0}, root_calls_{0}, root_retries_{0}, saturated_{0}, dead_{0};
    std::atomic<unsigned> max_depth_{0};
    std::atomic<long long> fp_ns_{0}, locus_ns_{0};
};

}  // namespace detail

/// Assigns preorder ids.
inline void number_tree(CountTree& tree) {
    std::size_t next = 0;
    std::vector<TreeNode*> stack{&tree.root};
    while (!stack.empty()) {
        TreeNode* n = stack.back();
        stack.pop_back();
        n->id = next++;
        for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) stack.push_back(&*it);
    }
}

/// N_{p,k}(f) for the curve at its own precision k.
inline CountResult count_points(const SeparatedCurve& curve, const CountConfig& config = {}) {
    if (config.threads < 1) throw Error(ErrorKind::InvalidArgument, "threads must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    detail::CountRun run(curve.p(), config);
    CountResult result;
    result.tree.p = curve.p();
    result.tree.k = curve.k();
    result.tree.root = run.build(curve, curve.k(), 0, std::nullopt, 0);
    number_tree(result.tree);
    result.N = result.tree.root.value;
    result.stats = run.stats();
    result.stats.seconds_total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    result.seed = config.seed;
    return result;
}

inline CountTree build_tree(const SeparatedCurve& curve, const CountConfig& config = {}) {
    return count_points(curve, config).tree;
}

/// Recomputes a node's count from the tree's weights alone, ignoring cached values.
inline BigInt fold_tree(const TreeNode& node, u64 p) {
    switch (node.branch) {
        case Branch::Zero: return big_pow(p, 2 * u64{node.k});
        case Branch::Constant: return 0;
        default: break;
    }
    const BigInt shift = big_pow(p, 2 * u64{node.content_shift});
    if (node.base_case) return shift * node.base_count;
    BigInt sum = from_u64(node.smooth_points) * big_pow(p, node.smooth_exponent);
    for (const auto& sat : node.saturated) sum += big_pow(p, sat.exponent);
    for (const auto& child : node.children) sum += big_pow(p, child.edge_in->weight_exponent) * fold_tree(child, p);
    return shift * sum;
}

inline BigInt fold_tree(const CountTree& tree) { return fold_tree(tree.root, tree.p); }

/// Truncated Poincare series: terms[j] = N_{p,j} / p^(2j), N_{p,0} = 1. The
/// curve's stored residues are read as an integer polynomial at every level.
struct PoincarePrefix {
    std::vector<mpq_class> terms;
};

inline PoincarePrefix poincare_prefix(const SeparatedCurve& curve, unsigned K, const CountConfig& config = {}) {
    PoincarePrefix out;
    out.terms.emplace_back(1);
    for (unsigned j = 1; j <= K; ++j) {
        const PrimePowerCtx ctx = curve.ctx().with_k(j);
        const SeparatedCurve cj = SeparatedCurve::normalize(curve.g().coeffs(), curve.h().coeffs(), ctx);
        mpq_class term(count_points(cj, config).N, big_pow(curve.p(), 2 * u64{j}));
        term.canonicalize();
        out.terms.push_back(std::move(term));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Structural audit of the recursion tree.
// ---------------------------------------------------------------------------

struct AuditViolation {
    std::string check;
    std::size_t node_id = 0;
    std::string detail;
    /// Branch of the node whose children were being checked; the root's branch for global checks.
    Branch parent_branch = Branch::Squarefree;
};

struct AuditReport {
    std::vector<AuditViolation> violations;
    /// Degenerate-fallback nodes were present; checks that depend on them were skipped.
    bool has_exempt_nodes = false;
    std::size_t checks_run = 0;

    bool passed() const { return violations.empty(); }
};

inline u64 choose2(u64 d) { return d < 2 ? 0 : d * (d - 1) / 2; }

inline int node_degree(const TreeNode& n) {
    if (n.branch == Branch::Zero) return 0;
    return std::max(n.curve.reduced_degree(), 0);
}

/// Checks the recursion-tree bounds: depth <= k, root out-degree and per-level
/// width <= C(d,2), total nodes <= 1 + (k-1) C(d,2), child degree <= s <= k_parent - 1,
/// sibling degree sums, and the isolated perturbation-degree sum <= d(d-1).
inline AuditReport tree_audit(const CountTree& tree, int input_degree) {
    AuditReport r;
    const u64 d = static_cast<u64>(std::max(input_degree, 0));
    const u64 width = choose2(d);
    auto fail = [&](std::string check, std::size_t id, std::string detail, Branch parent) {
        r.violations.push_back({std::move(check), id, std::move(detail), parent});
    };

    std::vector<u64> level_count;
    unsigned max_depth = 0;
    std::size_t total = 0;
    tree.visit([&](const TreeNode& n) {
        ++total;
        max_depth = std::max(max_depth, n.depth);
        if (level_count.size() <= n.depth) level_count.resize(n.depth + 1, 0);
        ++level_count[n.depth];
        if (n.branch == Branch::DegenerateFallback) {
            r.has_exempt_nodes = true;
            return;
        }
        const u64 dp = static_cast<u64>(node_degree(n));
        u64 sibling_sum = 0;
        for (const auto& c : n.children) {
            const u64 dc = static_cast<u64>(node_degree(c));
            const unsigned s = c.edge_in->s;
            ++r.checks_run;
            if (dc > s || s + 1 > n.effective_k())
                fail("child_degree", c.id,
                     "deg " + std::to_string(dc) + ", s " + std::to_string(s) + ", parent k " + std::to_string(n.effective_k()),
                     n.branch);
            sibling_sum += dc * (dc > 0 ? dc - 1 : 0);
        }
        ++r.checks_run;
        if (sibling_sum > dp * (dp > 0 ? dp - 1 : 0))
            fail("sibling_degree_sum", n.id,
                 "sum " + std::to_string(sibling_sum) + " > " + std::to_string(dp * (dp > 0 ? dp - 1 : 0)), n.branch);
    });

    ++r.checks_run;
    if (max_depth > tree.k) fail("depth", 0, std::to_string(max_depth) + " > k = " + std::to_string(tree.k), tree.root.branch);

    const TreeNode& root = tree.root;
    if (root.branch != Branch::DegenerateFallback) {
        ++r.checks_run;
        if (root.children.size() > width)
            fail("root_out_degree", root.id, std::to_string(root.children.size()) + " > " + std::to_string(width), root.branch);
        if (root.branch == Branch::Squarefree) {
            u64 deg_sum = 0;
            for (const auto& c : root.children) deg_sum += static_cast<u64>(node_degree(c));
            ++r.checks_run;
            if (deg_sum > d * (d > 0 ? d - 1 : 0))
                fail("perturbation_degree_sum", root.id, std::to_string(deg_sum) + " > d(d-1)", root.branch);
        }
    }
    if (!r.has_exempt_nodes) {
        for (std::size_t i = 1; i < level_count.size(); ++i) {
            ++r.checks_run;
            if (level_count[i] > width)
                fail("level_width", 0, "level " + std::to_string(i) + " has " + std::to_string(level_count[i]) + " nodes", root.branch);
        }
        ++r.checks_run;
        const u64 bound = 1 + (tree.k > 0 ? tree.k - 1 : 0) * width;
        if (total > bound) fail("total_nodes", 0, std::to_string(total) + " > " + std::to_string(bound), root.branch);
    }
    return r;
}

}  // namespace ppcount
