#ifndef SUPERPOS_CORE_HPP
#define SUPERPOS_CORE_HPP

#include "linalg.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace superpos {

using PointId = std::int64_t;

struct Point {
    PointId id = 0;
    std::optional<RationalVector> coords;
};

/// The finite set X. Point order is the column order of every matrix built
/// from it; ids are stable for the lifetime of an analysis.
class PointSet {
public:
    PointSet() = default;

    explicit PointSet(std::vector<Point> points) : points_(std::move(points))
    {
        std::optional<std::size_t> dim;
        for (std::size_t k = 0; k < points_.size(); ++k) {
            const auto& p = points_[k];
            if (!index_.emplace(p.id, k).second)
                throw InputError("duplicate point id " + std::to_string(p.id));
            if (p.coords) {
                if (dim && *dim != p.coords->size())
                    throw InputError("point " + std::to_string(p.id) + " has dimension " +
                                     std::to_string(p.coords->size()) + ", expected " +
                                     std::to_string(*dim));
                dim = p.coords->size();
            }
        }
    }

    /// Points with ids 1..n and the given coordinates.
    static PointSet from_coordinates(const std::vector<RationalVector>& coords)
    {
        std::vector<Point> pts;
        pts.reserve(coords.size());
        for (std::size_t k = 0; k < coords.size(); ++k)
            pts.push_back({static_cast<PointId>(k + 1), coords[k]});
        return PointSet(std::move(pts));
    }

    /// Abstract points with ids 1..n.
    static PointSet abstract(std::size_t n)
    {
        std::vector<Point> pts;
        for (std::size_t k = 0; k < n; ++k)
            pts.push_back({static_cast<PointId>(k + 1), std::nullopt});
        return PointSet(std::move(pts));
    }

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const std::vector<Point>& points() const noexcept { return points_; }
    const Point& operator[](std::size_t k) const { return points_[k]; }

    bool contains(PointId id) const { return index_.contains(id); }

    std::size_t index_of(PointId id) const
    {
        auto it = index_.find(id);
        if (it == index_.end())
            throw InputError("unknown point id " + std::to_string(id));
        return it->second;
    }

    std::vector<PointId> ids() const
    {
        std::vector<PointId> out;
        out.reserve(points_.size());
        for (const auto& p : points_)
            out.push_back(p.id);
        return out;
    }

    bool has_coordinates() const
    {
        return std::all_of(points_.begin(), points_.end(),
                           [](const Point& p) { return p.coords.has_value(); });
    }

    std::size_t dimension() const
    {
        for (const auto& p : points_)
            if (p.coords)
                return p.coords->size();
        return 0;
    }

private:
    std::vector<Point> points_;
    std::unordered_map<PointId, std::size_t> index_;
};

struct FunctionProvenance {
    enum class Kind { tabulated, ridge };
    Kind kind = Kind::tabulated;
    std::optional<RationalVector> direction;
};

/// Tabulated values h_i(x_j). Tables are keyed by point id so that a
/// missing entry can be reported rather than silently defaulted.
class FunctionFamily {
public:
    using Table = std::map<PointId, Rational>;

    FunctionFamily() = default;

    void add_tabulated(Table values)
    {
        tables_.push_back(std::move(values));
        provenance_.push_back({FunctionProvenance::Kind::tabulated, std::nullopt});
    }

    void add_ridge(const RationalVector& direction, const PointSet& ps)
    {
        Table values;
        for (const auto& p : ps.points()) {
            if (!p.coords)
                throw InputError("ridge function needs coordinates for point " +
                                 std::to_string(p.id));
            values.emplace(p.id, dot(direction, *p.coords));
        }
        tables_.push_back(std::move(values));
        provenance_.push_back({FunctionProvenance::Kind::ridge, direction});
    }

    /// Coordinate functions h_i(x) = x_i for every coordinate axis.
    static FunctionFamily coordinate_functions(const PointSet& ps)
    {
        FunctionFamily ff;
        const std::size_t d = ps.dimension();
        for (std::size_t i = 0; i < d; ++i) {
            RationalVector e(d);
            e[i] = 1;
            ff.add_ridge(e, ps);
        }
        return ff;
    }

    std::size_t size() const noexcept { return tables_.size(); }
    const Table& table(std::size_t i) const { return tables_.at(i); }
    const FunctionProvenance& provenance(std::size_t i) const { return provenance_.at(i); }

    const Rational& value(std::size_t i, PointId id) const
    {
        const auto& t = tables_.at(i);
        auto it = t.find(id);
        if (it == t.end())
            throw InputError("function " + std::to_string(i) + " has no value at point " +
                             std::to_string(id));
        return it->second;
    }

    Table& mutable_table(std::size_t i) { return tables_.at(i); }

private:
    std::vector<Table> tables_;
    std::vector<FunctionProvenance> provenance_;
};

/// Points sharing one value of one function. Keyed by (function, value):
/// classes of different functions never merge even when values coincide.
struct LevelClass {
    std::size_t function = 0;
    Rational value;
    std::vector<PointId> members;

    friend bool operator==(const LevelClass&, const LevelClass&) = default;
};

/// Classes ordered by function index, then by value.
inline std::vector<LevelClass> build_level_classes(const PointSet& ps, const FunctionFamily& ff)
{
    std::vector<LevelClass> out;
    for (std::size_t i = 0; i < ff.size(); ++i) {
        std::map<Rational, std::vector<PointId>> groups;
        for (const auto& p : ps.points())
            groups[ff.value(i, p.id)].push_back(p.id);
        for (auto& [value, members] : groups)
            out.push_back({i, value, std::move(members)});
    }
    return out;
}

/// Zero-one matrix with one row per level class and one column per point.
/// Its kernel is exactly the set of coefficient vectors solving the
/// closed-path equations, zero entries allowed.
class IncidenceMatrix {
public:
    IncidenceMatrix() = default;

    IncidenceMatrix(const PointSet& ps, const FunctionFamily& ff)
        : classes_(build_level_classes(ps, ff)), point_ids_(ps.ids()), function_count_(ff.size())
    {
        matrix_ = RationalMatrix(classes_.size(), point_ids_.size());
        for (std::size_t row = 0; row < classes_.size(); ++row)
            for (PointId id : classes_[row].members)
                matrix_(row, ps.index_of(id)) = 1;
        for (std::size_t k = 0; k < point_ids_.size(); ++k)
            column_.emplace(point_ids_[k], k);
    }

    const RationalMatrix& matrix() const noexcept { return matrix_; }
    const std::vector<LevelClass>& classes() const noexcept { return classes_; }
    const std::vector<PointId>& point_ids() const noexcept { return point_ids_; }
    std::size_t function_count() const noexcept { return function_count_; }
    std::size_t point_count() const noexcept { return point_ids_.size(); }

    std::size_t column_of(PointId id) const
    {
        auto it = column_.find(id);
        if (it == column_.end())
            throw InputError("unknown point id " + std::to_string(id));
        return it->second;
    }

    std::vector<std::size_t> columns_of(std::span<const PointId> ids) const
    {
        std::vector<std::size_t> cols;
        cols.reserve(ids.size());
        for (PointId id : ids)
            cols.push_back(column_of(id));
        return cols;
    }

    /// Columns of the given points only, in the given order.
    RationalMatrix restricted(std::span<const PointId> ids) const
    {
        const auto cols = columns_of(ids);
        return matrix_.select_columns(cols);
    }

    /// The row index of the class containing point column c for function i.
    std::size_t class_row(std::size_t function, std::size_t column) const
    {
        for (std::size_t row = 0; row < classes_.size(); ++row)
            if (classes_[row].function == function && matrix_(row, column) != 0)
                return row;
        throw ContractError("class_row: point lies in no class");
    }

private:
    RationalMatrix matrix_;
    std::vector<LevelClass> classes_;
    std::vector<PointId> point_ids_;
    std::unordered_map<PointId, std::size_t> column_;
    std::size_t function_count_ = 0;
};

inline IncidenceMatrix build_incidence(const PointSet& ps, const FunctionFamily& ff)
{
    return IncidenceMatrix(ps, ff);
}

struct QuantizeMerge {
    std::size_t function = 0;
    Rational from;
    Rational to;
};

/// Snaps values of each function that lie within epsilon of their sorted
/// neighbour onto the smallest value of the chain. Every merge is reported;
/// nothing else in the library compares with a tolerance.
inline std::vector<QuantizeMerge> quantize(FunctionFamily& ff, const Rational& epsilon)
{
    if (epsilon < 0)
        throw InputError("quantize epsilon must be nonnegative");
    std::vector<QuantizeMerge> merges;
    for (std::size_t i = 0; i < ff.size(); ++i) {
        auto& table = ff.mutable_table(i);
        std::vector<Rational> values;
        for (const auto& [id, v] : table)
            values.push_back(v);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());

        std::map<Rational, Rational> target;
        for (std::size_t k = 0; k < values.size(); ++k) {
            if (k > 0 && values[k] - values[k - 1] <= epsilon)
                target[values[k]] = target[values[k - 1]];
            else
                target[values[k]] = values[k];
        }
        for (const auto& [from, to] : target)
            if (from != to)
                merges.push_back({i, from, to});
        for (auto& [id, v] : table)
            v = target.at(v);
    }
    return merges;
}

} // namespace superpos

#endif // SUPERPOS_CORE_HPP
