#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "ppcount/counter.hpp"

namespace ppcount {

using Json = nlohmann::ordered_json;

inline Json coeffs_json(const UniPoly& f) {
    Json arr = Json::array();
    for (const auto& c : f.coeffs()) arr.push_back(c.get_str());
    return arr;
}

inline Json locus_element_json(const LocusElement& e) {
    switch (e.kind) {
        case LocusElement::Kind::Point: return Json{{"kind", "point"}, {"x1", e.x1}, {"x2", e.x2}};
        case LocusElement::Kind::VerticalLine: return Json{{"kind", "vertical_line"}, {"x1", e.x1}};
        case LocusElement::Kind::HorizontalLine: return Json{{"kind", "horizontal_line"}, {"x2", e.x2}};
    }
    return Json();
}

/// {"nodes": [...], "edges": [...]}; big integers as decimal strings.
inline Json tree_to_json(const CountTree& tree) {
    Json nodes = Json::array();
    Json edges = Json::array();
    tree.visit([&](const TreeNode& n) {
        Json saturated = Json::array();
        for (const auto& s : n.saturated) saturated.push_back({{"at", locus_element_json(s.at)}, {"exponent", s.exponent}});
        nodes.push_back({{"id", n.id},
                         {"depth", n.depth},
                         {"k", n.k},
                         {"content_shift", n.content_shift},
                         {"branch", std::string(to_string(n.branch))},
                         {"g", coeffs_json(n.curve.g())},
                         {"h", coeffs_json(n.curve.h())},
                         {"reduced_degree", std::max(n.curve.reduced_degree(), 0)},
                         {"base_case", n.base_case},
                         {"smooth_points", n.smooth_points},
                         {"smooth_exponent", n.smooth_exponent},
                         {"saturated", saturated},
                         {"dead_points", n.dead_points},
                         {"value", n.value.get_str()}});
        for (const auto& c : n.children) {
            edges.push_back({{"from", n.id},
                             {"to", c.id},
                             {"s", c.edge_in->s},
                             {"weight_exponent", c.edge_in->weight_exponent},
                             {"at", locus_element_json(c.edge_in->at)}});
        }
    });
    return Json{{"nodes", nodes}, {"edges", edges}};
}

inline std::string tree_to_dot(const CountTree& tree) {
    std::ostringstream os;
    os << "digraph recursion_tree {\n";
    os << "  node [shape=box];\n";
    tree.visit([&](const TreeNode& n) {
        os << "  n" << n.id << " [label=\"deg " << std::max(n.curve.reduced_degree(), 0) << ", k=" << n.effective_k()
           << "\\n" << to_string(n.branch) << "\\nN=" << n.value.get_str() << "\"];\n";
    });
    tree.visit([&](const TreeNode& n) {
        for (const auto& c : n.children)
            os << "  n" << n.id << " -> n" << c.id << " [label=\"s=" << c.edge_in->s << ", w=p^"
               << c.edge_in->weight_exponent << "\"];\n";
    });
    os << "}\n";
    return os.str();
}

}  // namespace ppcount
