// Finds the closed path in a five-point set, then shows that a function
// taking the signs of lambda is not a sum g1(x1) + g2(x2) + g3(x3).

#include <superpos/superpos.hpp>

#include <iostream>

int main()
{
    using namespace superpos;
    const auto ps = PointSet::from_coordinates({{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}});
    const auto ff = FunctionFamily::coordinate_functions(ps);
    const IncidenceMatrix inc(ps, ff);

    const auto cert = detect(inc);
    if (!cert) {
        std::cout << "no closed path\n";
        return 0;
    }
    const auto n = normalize(*cert);
    std::cout << "closed path lambda:";
    for (const auto& x : n.lambda)
        std::cout << ' ' << x;
    std::cout << "\nminimal: " << (certify_minimal(inc, n.support).minimal ? "yes" : "no") << "\n";

    const auto w = make_witness(n, ps);
    const auto res = is_representable(inc, w.f0);
    std::cout << "sign function representable: " << (res.representable ? "yes" : "no")
              << ", functional value " << res.violation << "\n";
}
