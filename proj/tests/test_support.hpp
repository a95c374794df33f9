#ifndef SUPERPOS_TEST_SUPPORT_HPP
#define SUPERPOS_TEST_SUPPORT_HPP

// Shared fixtures, random instance generators and the brute-force closed
// path oracle. The oracle works on its own integer incidence matrix with
// gcd-reduced integer elimination; it never touches RationalMatrix, rref or
// kernel_basis, so it stays independent of the code it checks.

#include <superpos/superpos.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace superpos::testing {

inline RationalVector rv(std::initializer_list<long> xs)
{
    RationalVector v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

/// The five-point closed path l in Q^3.
inline std::vector<RationalVector> l_points()
{
    return {rv({0, 0, 0}), rv({0, 0, 1}), rv({0, 1, 0}), rv({1, 0, 0}), rv({1, 1, 1})};
}

/// l with (0,1,1) appended.
inline std::vector<RationalVector> l_plus_points()
{
    auto pts = l_points();
    pts.push_back(rv({0, 1, 1}));
    return pts;
}

inline std::vector<RationalVector> grid_points()
{
    return {rv({0, 0}), rv({0, 1}), rv({1, 0}), rv({1, 1})};
}

/// 0, e_1, ..., e_d.
inline std::vector<RationalVector> staircase_points(std::size_t d)
{
    std::vector<RationalVector> pts{RationalVector(d)};
    for (std::size_t i = 0; i < d; ++i) {
        RationalVector e(d);
        e[i] = 1;
        pts.push_back(std::move(e));
    }
    return pts;
}

/// First `count` vertices of the broken line (0,0),(1,0),(1,1),
/// (1+1/4,1),(1+1/4,1+1/4),(1+1/4+1/9,1+1/4),...
inline std::vector<RationalVector> broken_line_vertices(std::size_t count)
{
    std::vector<RationalVector> out;
    Rational x = 0;
    Rational y = 0;
    unsigned long k = 0;
    for (std::size_t v = 0; v < count; ++v) {
        out.push_back({x, y});
        if (v % 2 == 0) {
            ++k;
            x += Rational(1, k * k);
        } else {
            y = x;
        }
    }
    return out;
}

struct CoordInstance {
    PointSet points;
    FunctionFamily family;
    IncidenceMatrix inc;
};

inline CoordInstance coordinate_instance(const std::vector<RationalVector>& pts)
{
    CoordInstance c;
    c.points = PointSet::from_coordinates(pts);
    c.family = FunctionFamily::coordinate_functions(c.points);
    c.inc = IncidenceMatrix(c.points, c.family);
    return c;
}

/// Random tabulated instance: abstract points 1..n, r functions with values
/// drawn from {0, ..., value_count - 1}.
struct RandomInstance {
    PointSet points;
    FunctionFamily family;
    IncidenceMatrix inc;
    std::vector<std::vector<int>> values; // values[i][j]
};

inline RandomInstance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t r,
                                      int value_count = 3)
{
    RandomInstance out;
    out.points = PointSet::abstract(n);
    std::uniform_int_distribution<int> pick(0, value_count - 1);
    for (std::size_t i = 0; i < r; ++i) {
        FunctionFamily::Table t;
        std::vector<int> row;
        for (std::size_t j = 0; j < n; ++j) {
            int v = pick(rng);
            row.push_back(v);
            t[static_cast<PointId>(j + 1)] = v;
        }
        out.values.push_back(std::move(row));
        out.family.add_tabulated(std::move(t));
    }
    out.inc = IncidenceMatrix(out.points, out.family);
    return out;
}

inline Rational random_rational(std::mt19937_64& rng, long range = 9)
{
    std::uniform_int_distribution<long> num(-range, range);
    std::uniform_int_distribution<long> den(1, range);
    return Rational(num(rng), den(rng));
}

inline FunctionTable random_table(std::mt19937_64& rng, const std::vector<PointId>& ids)
{
    FunctionTable f;
    for (PointId id : ids)
        f[id] = random_rational(rng);
    return f;
}

/// f = sum_i g_i(h_i(x)) with random tables g_i.
inline FunctionTable random_superposition(std::mt19937_64& rng, const PointSet& ps,
                                          const FunctionFamily& ff)
{
    FunctionTable f;
    for (const auto& p : ps.points())
        f[p.id] = 0;
    for (std::size_t i = 0; i < ff.size(); ++i) {
        std::map<Rational, Rational> g;
        for (const auto& p : ps.points()) {
            const Rational& h = ff.value(i, p.id);
            if (!g.contains(h))
                g[h] = random_rational(rng);
            f[p.id] += g[h];
        }
    }
    return f;
}

namespace oracle {

using Int = __int128;
using Mask = std::uint32_t;

/// Integer incidence columns built straight from the value tables.
struct IntIncidence {
    std::size_t n = 0;
    std::vector<std::vector<Int>> rows;
};

inline IntIncidence int_incidence(const std::vector<std::vector<int>>& values, std::size_t n)
{
    IntIncidence out;
    out.n = n;
    for (const auto& fn : values) {
        std::map<int, std::vector<std::size_t>> classes;
        for (std::size_t j = 0; j < n; ++j)
            classes[fn[j]].push_back(j);
        for (const auto& [v, members] : classes) {
            std::vector<Int> row(n, 0);
            for (auto j : members)
                row[j] = 1;
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

inline IntIncidence int_incidence(const FunctionFamily& ff, const PointSet& ps)
{
    IntIncidence out;
    out.n = ps.size();
    for (std::size_t i = 0; i < ff.size(); ++i) {
        std::map<Rational, std::vector<std::size_t>> classes;
        for (std::size_t j = 0; j < ps.size(); ++j)
            classes[ff.value(i, ps[j].id)].push_back(j);
        for (const auto& [v, members] : classes) {
            std::vector<Int> row(out.n, 0);
            for (auto j : members)
                row[j] = 1;
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

inline Int gcd_abs(Int a, Int b)
{
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b != 0) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

/// Rank of the chosen columns by integer elimination with gcd reduction.
inline std::size_t rank_of(const IntIncidence& m, Mask mask)
{
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < m.n; ++j)
        if (mask & (Mask{1} << j))
            cols.push_back(j);
    std::vector<std::vector<Int>> a;
    for (const auto& row : m.rows) {
        std::vector<Int> r;
        for (auto c : cols)
            r.push_back(row[c]);
        a.push_back(std::move(r));
    }
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols.size() && rank < a.size(); ++c) {
        std::size_t p = rank;
        while (p < a.size() && a[p][c] == 0)
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = rank + 1; i < a.size(); ++i) {
            if (a[i][c] == 0)
                continue;
            const Int s = a[rank][c];
            const Int t = a[i][c];
            Int g = 0;
            for (std::size_t k = 0; k < cols.size(); ++k) {
                a[i][k] = s * a[i][k] - t * a[rank][k];
                g = gcd_abs(g, a[i][k]);
            }
            if (g > 1)
                for (auto& x : a[i])
                    x /= g;
        }
        ++rank;
    }
    return rank;
}

inline std::size_t popcount(Mask m)
{
    return static_cast<std::size_t>(__builtin_popcount(m));
}

inline bool dependent(const IntIncidence& m, Mask mask)
{
    return rank_of(m, mask) < popcount(mask);
}

/// Inclusion-minimal dependent column sets.
inline std::vector<Mask> circuits(const IntIncidence& m)
{
    std::vector<Mask> out;
    const Mask all = (Mask{1} << m.n) - 1;
    for (Mask s = 1; s <= all; ++s) {
        if (!dependent(m, s))
            continue;
        bool minimal = true;
        for (std::size_t j = 0; j < m.n && minimal; ++j)
            if ((s & (Mask{1} << j)) && dependent(m, s & ~(Mask{1} << j)))
                minimal = false;
        if (minimal)
            out.push_back(s);
    }
    return out;
}

/// A set is a closed path iff it is a nonempty union of circuits (a
/// generic combination of their vectors then has full support).
inline bool closed_path(Mask s, const std::vector<Mask>& circs)
{
    Mask covered = 0;
    for (Mask c : circs)
        if ((c & s) == c)
            covered |= c;
    return s != 0 && covered == s;
}

/// Closed-path subsets, then the inclusion-minimal ones among them.
inline std::vector<Mask> minimal_closed_paths(const IntIncidence& m)
{
    const auto circs = circuits(m);
    std::vector<Mask> paths;
    const Mask all = (Mask{1} << m.n) - 1;
    for (Mask s = 1; s <= all; ++s)
        if (closed_path(s, circs))
            paths.push_back(s);
    std::vector<Mask> minimal;
    for (Mask s : paths) {
        bool has_proper = std::any_of(paths.begin(), paths.end(),
                                      [s](Mask t) { return t != s && (t & s) == t; });
        if (!has_proper)
            minimal.push_back(s);
    }
    return minimal;
}

inline bool any_closed_path(const IntIncidence& m)
{
    return !circuits(m).empty();
}

inline Mask mask_of(const std::vector<PointId>& support, const std::vector<PointId>& ids)
{
    Mask m = 0;
    for (PointId id : support) {
        auto it = std::find(ids.begin(), ids.end(), id);
        m |= Mask{1} << static_cast<std::size_t>(it - ids.begin());
    }
    return m;
}

inline std::vector<PointId> ids_of(Mask m, const std::vector<PointId>& ids)
{
    std::vector<PointId> out;
    for (std::size_t j = 0; j < ids.size(); ++j)
        if (m & (Mask{1} << j))
            out.push_back(ids[j]);
    return out;
}

} // namespace oracle

} // namespace superpos::testing

#endif // SUPERPOS_TEST_SUPPORT_HPP
