// Counts a few curves at growing precision and prints the recursion tree of one.

#include <iostream>

#include "ppcount/ppcount.hpp"

int main() {
    using namespace ppcount;
    const char* curves[] = {"x2^2 - x1^3", "x1^2 + x2^2", "x2^6 - x1^6 + 2*x1^5 - x1^4", "x1^2 + 3*x2^5"};
    for (const char* text : curves) {
        const PolyExpr expr = parse_poly(text);
        std::cout << to_string(expr) << " mod 5^k:";
        for (unsigned k = 1; k <= 6; ++k) std::cout << ' ' << count_points(expr.to_curve(PrimePowerCtx(5, k))).N;
        std::cout << '\n';
    }
    const CountTree tree = build_tree(parse_poly("x2^6 - x1^6 + 2*x1^5 - x1^4").to_curve(PrimePowerCtx(7, 8)));
    std::cout << '\n' << tree_to_dot(tree);
}
