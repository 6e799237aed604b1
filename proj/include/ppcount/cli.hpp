#pragma once

#include <cstdlib>
#include <iostream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppcount/counter.hpp"
#include "ppcount/curve.hpp"
#include "ppcount/fpcount.hpp"
#include "ppcount/oracle.hpp"
#include "ppcount/parse.hpp"
#include "ppcount/tree_export.hpp"

namespace ppcount::cli {

inline constexpr const char* kSchema = "ppcount/1";

struct Options {
    std::string poly;
    u64 p = 0;
    unsigned k = 1;
    u64 seed = 0;
    std::string method = "auto";
    u64 node_budget = 1'000'000;
    unsigned threads = 1;
    bool timings = false;
    // verify
    bool force_naive = false;
    // tree
    std::string format = "json";
    // poincare
    unsigned kmax = 0;
    // lift
    std::string point;
    unsigned from_k = 1;
};

inline unsigned default_threads() {
    if (const char* env = std::getenv("PPCOUNT_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

inline RootMethod parse_method(const std::string& m) {
    if (m == "brute") return RootMethod::Brute;
    if (m == "cz") return RootMethod::CantorZassenhaus;
    return RootMethod::Auto;
}

inline CountConfig make_config(const Options& o) {
    CountConfig c;
    c.method = parse_method(o.method);
    c.seed = o.seed;
    c.node_budget = o.node_budget;
    c.threads = o.threads;
    return c;
}

inline Json header(const std::string& command, const Options& o, const PolyExpr& expr) {
    return Json{{"schema", kSchema}, {"command", command}, {"poly", to_string(expr)}, {"p", o.p}};
}

inline Json stats_json(const CountStats& s, bool timings) {
    Json j{{"nodes", s.nodes},
           {"fp_count_calls", s.fp_count_calls},
           {"root_find_calls", s.root_find_calls},
           {"root_find_retries", s.root_find_retries},
           {"saturated", s.saturated},
           {"dead_points", s.dead_points},
           {"max_depth", s.max_depth}};
    if (timings)
        j["seconds"] = {{"fp_count", s.seconds_fp_count}, {"locus", s.seconds_locus}, {"total", s.seconds_total}};
    return j;
}

inline Json locus_json(const SingularLocus& locus) {
    return std::visit(
        [](const auto& l) -> Json {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, IsolatedPoints>) {
                Json pts = Json::array();
                for (const auto& z : l.points) pts.push_back({z.x1, z.x2});
                return {{"kind", "isolated_points"}, {"points", pts}};
            } else if constexpr (std::is_same_v<T, VerticalLines>) {
                return {{"kind", "vertical_lines"}, {"x1", l.x1}};
            } else if constexpr (std::is_same_v<T, HorizontalLines>) {
                return {{"kind", "horizontal_lines"}, {"x2", l.x2}};
            } else {
                return {{"kind", "all_curve_points"}};
            }
        },
        locus);
}

inline int dispatch(const std::string& command, const Options& o, std::ostream& out) {
    const PolyExpr expr = parse_poly(o.poly);
    if (command == "count") {
        const SeparatedCurve curve = expr.to_curve(PrimePowerCtx(o.p, o.k));
        const CountResult r = count_points(curve, make_config(o));
        Json j = header(command, o, expr);
        j["k"] = o.k;
        j["seed"] = o.seed;
        j["N"] = r.N.get_str();
        j["stats"] = stats_json(r.stats, o.timings);
        out << j.dump() << "\n";
    } else if (command == "verify") {
        const SeparatedCurve curve = expr.to_curve(PrimePowerCtx(o.p, o.k));
        const CountResult r = count_points(curve, make_config(o));
        const u64 ceiling = o.force_naive ? ~u64{0} : oracle::kDefaultHistogramCeiling;
        const u64 brute = oracle::brute_count(curve, ceiling);
        Json j = header(command, o, expr);
        j["k"] = o.k;
        j["N"] = r.N.get_str();
        j["oracle"] = std::to_string(brute);
        bool match = r.N == from_u64(brute);
        try {
            const u64 naive = oracle::naive_pair_count(curve);
            j["naive"] = std::to_string(naive);
            match = match && naive == brute;
        } catch (const Error&) {
            // pair scan only runs for p^(2k) <= 10^6
        }
        j["match"] = match;
        out << j.dump() << "\n";
        return match ? 0 : 2;
    } else if (command == "tree") {
        const SeparatedCurve curve = expr.to_curve(PrimePowerCtx(o.p, o.k));
        const CountResult r = count_points(curve, make_config(o));
        if (o.format == "dot") {
            out << tree_to_dot(r.tree);
        } else {
            Json j = header(command, o, expr);
            j["k"] = o.k;
            j["N"] = r.N.get_str();
            const Json t = tree_to_json(r.tree);
            j["nodes"] = t["nodes"];
            j["edges"] = t["edges"];
            out << j.dump() << "\n";
        }
    } else if (command == "poincare") {
        const SeparatedCurve curve = expr.to_curve(PrimePowerCtx(o.p, std::max(o.kmax, 1u)));
        const PoincarePrefix pre = poincare_prefix(curve, o.kmax, make_config(o));
        Json terms = Json::array();
        for (const auto& t : pre.terms) terms.push_back(t.get_str());
        Json j = header(command, o, expr);
        j["kmax"] = o.kmax;
        j["terms"] = terms;
        out << j.dump() << "\n";
    } else if (command == "lift") {
        const auto comma = o.point.find(',');
        if (comma == std::string::npos) throw Error(ErrorKind::InvalidArgument, "--point expects a,b");
        const ResiduePoint sigma{BigInt(o.point.substr(0, comma)), BigInt(o.point.substr(comma + 1))};
        const SeparatedCurve curve = expr.to_curve(PrimePowerCtx(o.p, o.from_k + 1));
        const LiftSet lifts = hensel_lifts(curve, sigma, o.from_k);
        Json arr = Json::array();
        for (const auto& l : lifts.lifts) arr.push_back({l.x1.get_str(), l.x2.get_str()});
        Json j = header(command, o, expr);
        j["from_k"] = o.from_k;
        j["base"] = {lifts.base.x1.get_str(), lifts.base.x2.get_str()};
        j["lifts"] = arr;
        out << j.dump() << "\n";
    } else if (command == "fp-count") {
        const SeparatedCurve curve = expr.to_curve(PrimePowerCtx(o.p, 1));
        Json j = header(command, o, expr);
        if (curve.reduction_is_zero()) throw Error(ErrorKind::ZeroReduction, "curve vanishes identically mod p");
        const u64 points = fp_point_count(curve);
        u64 singular = 0;
        if (!curve.reduction_is_constant()) {
            CounterRng rng(o.seed);
            LocusOptions lopt{parse_method(o.method), nullptr};
            singular = singular_point_count(curve, singular_locus(curve, rng, lopt));
        }
        j["points"] = points;
        j["smooth"] = points - singular;
        j["singular"] = singular;
        out << j.dump() << "\n";
    } else if (command == "singular") {
        const SeparatedCurve curve = expr.to_curve(PrimePowerCtx(o.p, 1));
        CounterRng rng(o.seed);
        LocusOptions lopt{parse_method(o.method), nullptr};
        Json j = header(command, o, expr);
        j["locus"] = locus_json(singular_locus(curve, rng, lopt));
        out << j.dump() << "\n";
    }
    return 0;
}

/// Runs the command line; JSON (or DOT) on `out`, diagnostics on `err`.
/// Exit codes: 0 success, 1 user error, 2 resource or internal error.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Exact root counting for g(x1) + h(x2) over Z/p^k"};
    app.require_subcommand(1);
    Options o;
    o.threads = default_threads();

    auto common = [&o](CLI::App* sub, bool with_k) {
        sub->add_option("--poly", o.poly, "polynomial, e.g. \"x2^2 - x1^3\"")->required();
        sub->add_option("--p", o.p, "prime")->required();
        if (with_k) sub->add_option("--k", o.k, "exponent k >= 1")->required()->check(CLI::PositiveNumber);
        sub->add_option("--seed", o.seed, "RNG seed")->default_val(0);
        sub->add_option("--method", o.method, "root finding: brute|cz|auto")
            ->check(CLI::IsMember({"brute", "cz", "auto"}))
            ->default_val("auto");
        sub->add_option("--node-budget", o.node_budget, "maximum recursion-tree nodes")->default_val(1'000'000);
        sub->add_option("--threads", o.threads, "worker threads (default $PPCOUNT_THREADS or 1)")->check(CLI::PositiveNumber);
        sub->add_flag("--timings", o.timings, "include wall-clock timings in the output");
    };

    std::map<std::string, CLI::App*> subs;
    subs["count"] = app.add_subcommand("count", "count roots of f mod p^k");
    common(subs["count"], true);
    subs["verify"] = app.add_subcommand("verify", "count and compare against the brute-force oracle");
    common(subs["verify"], true);
    subs["verify"]->add_flag("--force-naive", o.force_naive, "run the oracle beyond its size ceiling");
    subs["tree"] = app.add_subcommand("tree", "export the recursion tree");
    common(subs["tree"], true);
    subs["tree"]->add_option("--format", o.format, "json|dot")->check(CLI::IsMember({"json", "dot"}))->default_val("json");
    subs["poincare"] = app.add_subcommand("poincare", "Poincare series prefix N_{p,j}/p^{2j}, j = 0..kmax");
    common(subs["poincare"], false);
    subs["poincare"]->add_option("--kmax", o.kmax, "last term index")->required();
    subs["lift"] = app.add_subcommand("lift", "Hensel lifts of a root mod p^j to p^(j+1)");
    common(subs["lift"], false);
    subs["lift"]->add_option("--point", o.point, "a,b")->required();
    subs["lift"]->add_option("--from-k", o.from_k, "level j >= 1")->required()->check(CLI::PositiveNumber);
    subs["fp-count"] = app.add_subcommand("fp-count", "point counts of the reduction mod p");
    common(subs["fp-count"], false);
    subs["singular"] = app.add_subcommand("singular", "singular locus of the reduction mod p");
    common(subs["singular"], false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    std::string command;
    for (const auto& [name, sub] : subs)
        if (sub->parsed()) command = name;

    try {
        return dispatch(command, o, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.is_resource_error() ? 2 : 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace ppcount::cli
