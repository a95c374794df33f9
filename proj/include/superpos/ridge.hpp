#ifndef SUPERPOS_RIDGE_HPP
#define SUPERPOS_RIDGE_HPP

#include "closed_path.hpp"
#include "core.hpp"
#include "linalg.hpp"
#include "rational.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace superpos {

/// Parameters that break the defining constraints of a construction.
class ConstraintError : public InputError {
public:
    using InputError::InputError;
};

/// A nonzero direction a in Q^d of a ridge function g(a . x).
class Direction {
public:
    explicit Direction(RationalVector v) : v_(std::move(v))
    {
        if (v_.empty() || is_zero_vector(v_))
            throw InputError("direction must be a nonzero vector");
    }

    const RationalVector& vector() const noexcept { return v_; }
    std::size_t dimension() const noexcept { return v_.size(); }

    friend bool operator==(const Direction&, const Direction&) = default;

private:
    RationalVector v_;
};

inline std::vector<Direction> basis_directions(std::size_t d, std::size_t count)
{
    std::vector<Direction> out;
    for (std::size_t i = 0; i < count; ++i) {
        RationalVector e(d);
        e[i] = 1;
        out.emplace_back(std::move(e));
    }
    return out;
}

/// Points in Q^d with the functions h_i(x) = a^i . x.
struct RidgeInstance {
    std::vector<Direction> directions;
    PointSet points;
    FunctionFamily family;

    static RidgeInstance make(std::vector<Direction> directions, PointSet points)
    {
        RidgeInstance inst{std::move(directions), std::move(points), {}};
        if (!inst.points.has_coordinates())
            throw InputError("ridge functions need coordinates for every point");
        const std::size_t d = inst.points.dimension();
        for (std::size_t i = 0; i < inst.directions.size(); ++i) {
            if (!inst.points.empty() && inst.directions[i].dimension() != d)
                throw InputError("direction " + std::to_string(i) + " has dimension " +
                                 std::to_string(inst.directions[i].dimension()) +
                                 ", points have dimension " + std::to_string(d));
            inst.family.add_ridge(inst.directions[i].vector(), inst.points);
        }
        return inst;
    }

    IncidenceMatrix incidence() const { return IncidenceMatrix(points, family); }
};

enum class NiClass { interpolable, ni, mni };

inline const char* to_string(NiClass c)
{
    switch (c) {
    case NiClass::interpolable:
        return "interpolable";
    case NiClass::ni:
        return "NI";
    case NiClass::mni:
        return "MNI";
    }
    return "?";
}

struct NiResult {
    NiClass kind = NiClass::interpolable;
    std::optional<ClosedPathCertificate> certificate;
    /// Integer m over all points (zero off the path) with
    /// sum_j m_j g(a^i . x^j) = 0 for every g and i. Empty when interpolable.
    RationalVector m;
};

/// Interpolable iff the points contain no closed path; NI otherwise, and
/// MNI when the whole set is itself a minimal closed path.
inline NiResult classify_ni(const RidgeInstance& instance)
{
    const IncidenceMatrix inc = instance.incidence();
    NiResult out;
    auto cert = detect(inc);
    if (!cert)
        return out;
    out.kind = NiClass::ni;
    const auto ids = instance.points.ids();
    if (is_closed_path(inc, ids)) {
        auto res = certify_minimal(inc, ids);
        if (res.minimal) {
            out.kind = NiClass::mni;
            cert = std::move(res.certificate);
        }
    }
    cert = integer_form(std::move(*cert));
    out.m = embed(inc, *cert);
    out.certificate = std::move(cert);
    return out;
}

/// The 2^r points x_eps = y + sum eps_i b^i with a^i . b^i = 0 and
/// coefficients (-1)^|eps|. Point k has eps_i = bit i of k.
struct HypercubePath {
    RationalVector center;
    std::vector<RationalVector> offsets;
    std::vector<RationalVector> points;
    RationalVector lambda;
    bool verified = false;

    RidgeInstance instance(const std::vector<Direction>& directions) const
    {
        return RidgeInstance::make(directions, PointSet::from_coordinates(points));
    }

    ClosedPathCertificate certificate() const
    {
        ClosedPathCertificate cert;
        for (std::size_t k = 0; k < points.size(); ++k)
            cert.support.push_back(static_cast<PointId>(k + 1));
        cert.lambda = lambda;
        return cert;
    }
};

namespace detail {

inline bool parallel(const RationalVector& u, const RationalVector& v)
{
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = i + 1; j < u.size(); ++j)
            if (u[i] * v[j] - u[j] * v[i] != 0)
                return false;
    return true;
}

inline std::uint64_t nth_prime(std::size_t n)
{
    std::uint64_t candidate = 1;
    std::size_t found = 0;
    for (;;) {
        ++candidate;
        bool prime = candidate >= 2;
        for (std::uint64_t d = 2; d * d <= candidate; ++d)
            if (candidate % d == 0) {
                prime = false;
                break;
            }
        if (prime && found++ == n)
            return candidate;
    }
}

/// A vector orthogonal to a: the first coordinate axis where a vanishes, or
/// (a_1, -a_0, 0, ...) when a has no zero coordinate.
inline RationalVector base_orthogonal(const RationalVector& a)
{
    RationalVector b(a.size());
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] == 0) {
            b[k] = 1;
            return b;
        }
    b[0] = a[1];
    b[1] = -a[0];
    return b;
}

} // namespace detail

/// Builds the hypercube closed path around y. Offsets are orthogonal to
/// their direction, pairwise linearly independent and scaled by
/// scale * (distinct prime); the primes shift until all 2^r points differ.
inline HypercubePath hypercube_path(const std::vector<Direction>& directions,
                                    const RationalVector& center, const Rational& scale,
                                    std::uint64_t seed = 0)
{
    const std::size_t r = directions.size();
    const std::size_t d = center.size();
    if (r == 0)
        throw ContractError("hypercube_path: need at least one direction");
    if (d < 2)
        throw UnsatisfiableError("hypercube_path: no nonzero vector is orthogonal to a "
                                 "direction in dimension 1");
    if (r > 20)
        throw ContractError("hypercube_path: 2^r points requested with r > 20");
    if (scale == 0)
        throw ConstraintError("hypercube_path: scale must be nonzero");
    for (const auto& a : directions)
        if (a.dimension() != d)
            throw InputError("hypercube_path: direction dimension differs from center");

    std::vector<RationalVector> unit_offsets;
    for (std::size_t i = 0; i < r; ++i) {
        const auto& a = directions[i].vector();
        RationalVector b = detail::base_orthogonal(a);
        auto clashes = [&](const RationalVector& v) {
            return std::any_of(unit_offsets.begin(), unit_offsets.end(),
                               [&](const RationalVector& u) { return detail::parallel(u, v); });
        };
        if (clashes(b)) {
            RationalMatrix row(1, d);
            for (std::size_t k = 0; k < d; ++k)
                row(0, k) = a[k];
            const auto perp = kernel_basis(row);
            bool found = false;
            for (unsigned long c = 1; c <= 64 && !found; ++c) {
                for (const auto& w : perp) {
                    RationalVector candidate = b;
                    for (std::size_t k = 0; k < d; ++k)
                        candidate[k] += Rational(c) * w[k];
                    if (!is_zero_vector(candidate) && !clashes(candidate)) {
                        b = std::move(candidate);
                        found = true;
                        break;
                    }
                }
            }
            if (!found)
                throw UnsatisfiableError("hypercube_path: direction " + std::to_string(i) +
                                         " admits no orthogonal offset independent of the "
                                         "earlier ones");
        }
        unit_offsets.push_back(std::move(b));
    }

    const std::size_t count = std::size_t{1} << r;
    for (std::size_t attempt = 0; attempt < 64; ++attempt) {
        HypercubePath path;
        path.center = center;
        for (std::size_t i = 0; i < r; ++i) {
            const Rational factor =
                scale * Rational(detail::nth_prime(i + attempt + static_cast<std::size_t>(seed % 8)));
            RationalVector b = unit_offsets[i];
            for (auto& x : b)
                x *= factor;
            path.offsets.push_back(std::move(b));
        }
        for (std::size_t k = 0; k < count; ++k) {
            RationalVector x = center;
            for (std::size_t i = 0; i < r; ++i)
                if ((k >> i) & 1u)
                    for (std::size_t c = 0; c < d; ++c)
                        x[c] += path.offsets[i][c];
            path.points.push_back(std::move(x));
            path.lambda.push_back(std::popcount(k) % 2 == 0 ? 1 : -1);
        }
        std::set<RationalVector> distinct(path.points.begin(), path.points.end());
        if (distinct.size() != count)
            continue;
        const IncidenceMatrix inc = path.instance(directions).incidence();
        path.verified = verify_certificate(inc, path.certificate());
        return path;
    }
    throw UnsatisfiableError("hypercube_path: could not make the 2^r points distinct");
}

/// True when every point lies strictly inside the box lo < x < hi.
inline bool inside_box(const std::vector<RationalVector>& points, const RationalVector& lo,
                       const RationalVector& hi)
{
    for (const auto& x : points)
        for (std::size_t k = 0; k < x.size(); ++k)
            if (!(lo.at(k) < x[k] && x[k] < hi.at(k)))
                return false;
    return true;
}

/// Hypercube path centred in the open box, halving the scale until every
/// point lies inside it.
inline HypercubePath hypercube_path_in_box(const std::vector<Direction>& directions,
                                           const RationalVector& lo, const RationalVector& hi)
{
    if (lo.size() != hi.size())
        throw InputError("box corners differ in dimension");
    RationalVector center(lo.size());
    for (std::size_t k = 0; k < lo.size(); ++k) {
        if (!(lo[k] < hi[k]))
            throw ConstraintError("box has empty interior along axis " + std::to_string(k));
        center[k] = (lo[k] + hi[k]) / 2;
    }
    Rational scale = 1;
    for (int halvings = 0; halvings < 4096; ++halvings, scale /= 2) {
        auto path = hypercube_path(directions, center, scale);
        if (inside_box(path.points, lo, hi))
            return path;
    }
    throw ContractError("hypercube_path_in_box: scale underflow");
}

enum class ExampleKind { parallel_lines, zigzag, staircase, transversal_curve };

inline const char* to_string(ExampleKind k)
{
    switch (k) {
    case ExampleKind::parallel_lines:
        return "parallel-lines";
    case ExampleKind::zigzag:
        return "zigzag";
    case ExampleKind::staircase:
        return "staircase";
    case ExampleKind::transversal_curve:
        return "transversal-curve";
    }
    return "?";
}

inline ExampleKind parse_example_kind(const std::string& s)
{
    for (auto k : {ExampleKind::parallel_lines, ExampleKind::zigzag, ExampleKind::staircase,
                   ExampleKind::transversal_curve})
        if (s == to_string(k))
            return k;
    throw InputError("unknown example kind \"" + s +
                     "\" (expected parallel-lines, zigzag, staircase or transversal-curve)");
}

/// Generator parameters. Fields a kind does not use are ignored; empty
/// vectors select that kind's default.
struct ExampleParams {
    /// Samples per line (parallel-lines) or along the curve.
    std::size_t samples = 10;
    Rational start = 0;
    Rational step = 1;
    std::vector<RationalVector> directions;

    // parallel-lines
    RationalVector line_direction;
    RationalVector first_base;
    RationalVector second_base;

    // zigzag: triangle wave of slope +-1, peaks at odd multiples of half_period / 2.
    Rational half_period = 3;

    // staircase: points 0, e_1, ..., e_r in Q^dimension unless points given.
    std::size_t dimension = 3;
    std::size_t count = 0;
    std::vector<RationalVector> points;

    // transversal-curve: gamma(t) = sum_k curve[k] t^k.
    std::vector<RationalVector> curve;
};

struct GeneratedExample {
    ExampleKind kind = ExampleKind::staircase;
    RidgeInstance instance;
    /// detect() found no closed path in the emitted sample.
    bool path_free_on_sample = false;
    std::string scope;
};

namespace detail {

inline std::vector<Direction> directions_or(const ExampleParams& p, std::vector<Direction> fallback)
{
    if (p.directions.empty())
        return fallback;
    std::vector<Direction> out;
    for (const auto& v : p.directions)
        out.emplace_back(v);
    return out;
}

inline Rational triangle_wave(const Rational& x, const Rational& half_period)
{
    // Matches arcsin(sin x) with pi replaced by half_period.
    const Rational u = x + half_period / 2;
    const Rational q = u / half_period;
    Integer k;
    mpz_fdiv_q(k.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    const Rational s = u - Rational(k) * half_period;
    const Rational z = s - half_period / 2;
    return mpz_odd_p(k.get_mpz_t()) ? Rational(-z) : z;
}

inline void finish(GeneratedExample& ex, const char* scope)
{
    ex.path_free_on_sample = !detect(ex.instance.incidence()).has_value();
    ex.scope = scope;
}

} // namespace detail

/// Checks the chain that makes r+1 points path-free: for each k, every
/// point except x^{k+1} shares the value of a^k, and x^{k+1} differs.
inline void validate_staircase(const std::vector<Direction>& directions,
                               const std::vector<RationalVector>& points)
{
    const std::size_t r = directions.size();
    if (points.size() != r + 1)
        throw ConstraintError("staircase needs r+1 = " + std::to_string(r + 1) + " points, got " +
                              std::to_string(points.size()));
    for (std::size_t k = 0; k < r; ++k) {
        const auto& a = directions[k].vector();
        const std::size_t odd = k + 1;
        std::optional<Rational> shared;
        for (std::size_t i = 0; i <= r; ++i) {
            if (i == odd)
                continue;
            const Rational v = dot(a, points[i]);
            if (shared && *shared != v)
                throw ConstraintError("staircase clause " + std::to_string(k + 1) +
                                      ": a^" + std::to_string(k + 1) +
                                      " takes different values off x^" + std::to_string(odd + 1));
            shared = v;
        }
        if (shared && *shared == dot(a, points[odd]))
            throw ConstraintError("staircase clause " + std::to_string(k + 1) + ": a^" +
                                  std::to_string(k + 1) + " . x^" + std::to_string(odd + 1) +
                                  " must differ from the shared value");
    }
}

/// Checks the sampled transversality condition: every value c attained by
/// some a^j on the sample is attained at most once by at least one a^j.
inline void validate_transversal(const std::vector<Direction>& directions,
                                 const std::vector<RationalVector>& points)
{
    std::vector<std::map<Rational, std::size_t>> counts(directions.size());
    std::set<Rational> values;
    for (std::size_t j = 0; j < directions.size(); ++j)
        for (const auto& x : points) {
            const Rational c = dot(directions[j].vector(), x);
            ++counts[j][c];
            values.insert(c);
        }
    for (const auto& c : values) {
        bool ok = false;
        for (const auto& cj : counts) {
            auto it = cj.find(c);
            if (it == cj.end() || it->second <= 1) {
                ok = true;
                break;
            }
        }
        if (!ok)
            throw ConstraintError("transversal-curve: every hyperplane a^j . x = " + to_string(c) +
                                  " meets the sample at two or more points");
    }
}

/// Finite samples of the path-free families: two parallel lines, the
/// zigzag graph, the r+1 point staircase, and a curve meeting one family of
/// hyperplanes at most once per level. The result records whether detect()
/// confirmed path-freeness on the emitted sample.
inline GeneratedExample generate_pathfree_example(ExampleKind kind, const ExampleParams& p)
{
    GeneratedExample ex;
    ex.kind = kind;
    switch (kind) {
    case ExampleKind::parallel_lines: {
        auto dirs = detail::directions_or(p, basis_directions(2, 2));
        if (dirs.size() != 2)
            throw ConstraintError("parallel-lines needs exactly two directions");
        const std::size_t d = dirs.front().dimension();
        RationalVector v = p.line_direction.empty() ? RationalVector{1, 1} : p.line_direction;
        RationalVector base0 = p.first_base.empty() ? RationalVector(d) : p.first_base;
        RationalVector base1 = p.second_base;
        if (base1.empty()) {
            base1 = RationalVector(d);
            base1[d - 1] = 1;
        }
        if (v.size() != d || base0.size() != d || base1.size() != d)
            throw ConstraintError("parallel-lines: line data must match direction dimension");
        if (is_zero_vector(v))
            throw ConstraintError("parallel-lines: line direction must be nonzero");
        for (std::size_t i = 0; i < 2; ++i)
            if (dot(dirs[i].vector(), v) == 0)
                throw ConstraintError("parallel-lines: lines are perpendicular to direction " +
                                      std::to_string(i + 1));
        RationalVector gap(d);
        for (std::size_t k = 0; k < d; ++k)
            gap[k] = base1[k] - base0[k];
        if (detail::parallel(gap, v))
            throw ConstraintError("parallel-lines: the two lines coincide");
        std::vector<RationalVector> pts;
        for (const auto* base : {&base0, &base1})
            for (std::size_t s = 0; s < p.samples; ++s) {
                const Rational t = p.start + Rational(static_cast<unsigned long>(s)) * p.step;
                RationalVector x = *base;
                for (std::size_t k = 0; k < d; ++k)
                    x[k] += t * v[k];
                pts.push_back(std::move(x));
            }
        if (p.samples > 1 && p.step == 0)
            throw ConstraintError("parallel-lines: step must be nonzero");
        ex.instance = RidgeInstance::make(std::move(dirs), PointSet::from_coordinates(pts));
        detail::finish(ex, "verified on sample; the full pair of lines is path-free as well");
        break;
    }
    case ExampleKind::zigzag: {
        if (!p.directions.empty())
            throw ConstraintError("zigzag uses the fixed directions (1,1) and (1,-1)");
        if (p.half_period <= 0)
            throw ConstraintError("zigzag: half_period must be positive");
        if (p.samples > 1 && p.step <= 0)
            throw ConstraintError("zigzag: step must be positive");
        std::vector<RationalVector> pts;
        for (std::size_t s = 0; s < p.samples; ++s) {
            const Rational x = p.start + Rational(static_cast<unsigned long>(s)) * p.step;
            pts.push_back({x, detail::triangle_wave(x, p.half_period)});
        }
        std::vector<Direction> dirs{Direction({1, 1}), Direction({1, -1})};
        ex.instance = RidgeInstance::make(std::move(dirs), PointSet::from_coordinates(pts));
        detail::finish(ex, "verified on sample; the full zigzag graph is path-free as well");
        break;
    }
    case ExampleKind::staircase: {
        std::vector<Direction> dirs;
        std::vector<RationalVector> pts = p.points;
        if (pts.empty()) {
            const std::size_t r = p.count == 0 ? p.dimension : p.count;
            if (r > p.dimension)
                throw ConstraintError("staircase: more directions than dimensions");
            dirs = detail::directions_or(p, basis_directions(p.dimension, r));
            pts.emplace_back(p.dimension);
            for (std::size_t i = 0; i < r; ++i) {
                RationalVector e(p.dimension);
                e[i] = 1;
                pts.push_back(std::move(e));
            }
        } else {
            if (p.directions.empty())
                throw ConstraintError("staircase: explicit points need explicit directions");
            dirs = detail::directions_or(p, {});
        }
        validate_staircase(dirs, pts);
        ex.instance = RidgeInstance::make(std::move(dirs), PointSet::from_coordinates(pts));
        detail::finish(ex, "verified; the r+1 point set is finite, nothing is sampled");
        break;
    }
    case ExampleKind::transversal_curve: {
        auto dirs = detail::directions_or(p, basis_directions(2, 2));
        std::vector<RationalVector> curve =
            p.curve.empty() ? std::vector<RationalVector>{{0, 0}, {1, 0}, {0, 1}} : p.curve;
        const std::size_t d = dirs.front().dimension();
        for (const auto& c : curve)
            if (c.size() != d)
                throw ConstraintError("transversal-curve: curve coefficients must have dimension " +
                                      std::to_string(d));
        std::vector<RationalVector> pts;
        for (std::size_t s = 0; s < p.samples; ++s) {
            const Rational t = p.start + Rational(static_cast<unsigned long>(s)) * p.step;
            RationalVector x(d);
            Rational power = 1;
            for (const auto& c : curve) {
                for (std::size_t k = 0; k < d; ++k)
                    x[k] += c[k] * power;
                power *= t;
            }
            pts.push_back(std::move(x));
        }
        validate_transversal(dirs, pts);
        ex.instance = RidgeInstance::make(std::move(dirs), PointSet::from_coordinates(pts));
        detail::finish(ex, "verified on sample; the condition was checked only for the values "
                           "the sample attains");
        break;
    }
    }
    return ex;
}

} // namespace superpos

#endif // SUPERPOS_RIDGE_HPP
