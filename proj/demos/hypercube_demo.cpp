// Builds a closed path for three ridge directions in the plane inside a
// small box and prints the points with their signs.

#include <superpos/superpos.hpp>

#include <iostream>

int main()
{
    using namespace superpos;
    const std::vector<Direction> dirs{Direction({1, 0}), Direction({0, 1}), Direction({1, 1})};
    const RationalVector lo{Rational(1, 2), Rational(1, 2)};
    const RationalVector hi{Rational(51, 100), Rational(51, 100)};
    const auto path = hypercube_path_in_box(dirs, lo, hi);
    for (std::size_t k = 0; k < path.points.size(); ++k) {
        std::cout << (path.lambda[k] > 0 ? "+ " : "- ");
        for (const auto& x : path.points[k])
            std::cout << x << ' ';
        std::cout << '\n';
    }
    std::cout << "verified: " << (path.verified ? "yes" : "no") << '\n';
}
