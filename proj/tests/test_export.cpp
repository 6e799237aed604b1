#include <gtest/gtest.h>

#include "ppcount/parse.hpp"
#include "ppcount/tree_export.hpp"

using namespace ppcount;

namespace {

CountTree tree(const char* text, u64 p, unsigned k) { return build_tree(parse_poly(text).to_curve(PrimePowerCtx(p, k))); }

}  // namespace

TEST(TreeJson, NodesAndEdges) {
    const Json j = tree_to_json(tree("x1^2+x2^2", 3, 5));
    ASSERT_EQ(j["nodes"].size(), 3u);
    ASSERT_EQ(j["edges"].size(), 2u);
    EXPECT_EQ(j["nodes"][0]["branch"], "SQUAREFREE");
    EXPECT_EQ(j["nodes"][0]["value"], "81");
    EXPECT_EQ(j["nodes"][0]["g"], Json::array({"0", "0", "1"}));
    EXPECT_EQ(j["nodes"][1]["k"], 3);
    EXPECT_EQ(j["edges"][0]["from"], 0);
    EXPECT_EQ(j["edges"][0]["to"], 1);
    EXPECT_EQ(j["edges"][0]["s"], 2);
    EXPECT_EQ(j["edges"][0]["weight_exponent"], 2);
    EXPECT_EQ(j["edges"][0]["at"]["kind"], "point");
}

TEST(TreeJson, LineEdgeLocus) {
    const Json j = tree_to_json(tree("x1^2 - 3*x2", 3, 2));
    EXPECT_EQ(j["nodes"][0]["branch"], "LINE_X1");
    EXPECT_EQ(j["edges"][0]["at"], Json({{"kind", "vertical_line"}, {"x1", 0}}));
    EXPECT_EQ(j["edges"][0]["weight_exponent"], 1);
}

TEST(TreeJson, ParsesStrictly) {
    const std::string text = tree_to_json(tree("x2^6 - x1^6 + 2*x1^5 - x1^4", 7, 8)).dump();
    const auto parsed = nlohmann::json::parse(text);
    EXPECT_TRUE(parsed.is_object());
}

TEST(TreeDot, Labels) {
    const std::string dot = tree_to_dot(tree("x1^2+x2^2", 3, 5));
    EXPECT_NE(dot.find("digraph"), std::string::npos);
    EXPECT_NE(dot.find("deg 2, k=5"), std::string::npos);
    EXPECT_NE(dot.find("n0 -> n1 [label=\"s=2, w=p^2\"]"), std::string::npos);
    EXPECT_NE(dot.find("n1 -> n2"), std::string::npos);
}
