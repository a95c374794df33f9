#ifndef SUPERPOS_LINALG_HPP
#define SUPERPOS_LINALG_HPP

#include "rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace superpos {

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
public:
    RationalMatrix() = default;

    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols)
    {}

    RationalMatrix(std::initializer_list<std::initializer_list<Rational>> init)
        : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0)
    {
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw ContractError("RationalMatrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    RationalVector column(std::size_t c) const
    {
        RationalVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            out[r] = (*this)(r, c);
        return out;
    }

    RationalMatrix transpose() const
    {
        RationalMatrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                t(c, r) = (*this)(r, c);
        return t;
    }

    RationalMatrix select_columns(std::span<const std::size_t> columns) const
    {
        RationalMatrix out(rows_, columns.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < columns.size(); ++k)
                out(r, k) = (*this)(r, columns[k]);
        return out;
    }

    /// [this | b] with b appended as the last column.
    RationalMatrix augment(std::span<const Rational> b) const
    {
        if (b.size() != rows_)
            throw ContractError("augment: right-hand side length mismatch");
        RationalMatrix out(rows_, cols_ + 1);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c)
                out(r, c) = (*this)(r, c);
            out(r, cols_) = b[r];
        }
        return out;
    }

    RationalVector operator*(std::span<const Rational> v) const
    {
        if (v.size() != cols_)
            throw ContractError("matrix-vector product: length mismatch");
        RationalVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            out[r] = dot(row(r), v);
        return out;
    }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct RrefResult {
    RationalMatrix reduced;
    std::vector<std::size_t> pivots;

    std::size_t rank() const noexcept { return pivots.size(); }
};

/// Gauss-Jordan elimination to reduced row echelon form. Pivots are taken
/// left to right; zero rows end up at the bottom.
inline RrefResult rref(RationalMatrix m)
{
    std::vector<std::size_t> pivots;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::size_t lead = 0;
    for (std::size_t c = 0; c < cols && lead < rows; ++c) {
        std::size_t p = lead;
        while (p < rows && m(p, c) == 0)
            ++p;
        if (p == rows)
            continue;
        if (p != lead)
            for (std::size_t k = 0; k < cols; ++k)
                std::swap(m(p, k), m(lead, k));
        const Rational inv = 1 / m(lead, c);
        for (std::size_t k = c; k < cols; ++k)
            m(lead, k) *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == lead || m(r, c) == 0)
                continue;
            const Rational factor = m(r, c);
            for (std::size_t k = c; k < cols; ++k)
                m(r, k) -= factor * m(lead, k);
        }
        pivots.push_back(c);
        ++lead;
    }
    return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const RationalMatrix& m)
{
    return rref(m).rank();
}

/// Kernel basis read off the RREF: one vector per free column (that column
/// set to 1, other free columns 0), then scaled to a primitive integer
/// vector with positive leading entry. Ordered by free column.
inline std::vector<RationalVector> kernel_basis(const RrefResult& r)
{
    const std::size_t cols = r.reduced.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : r.pivots)
        is_pivot[p] = true;

    std::vector<RationalVector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        RationalVector v(cols);
        v[f] = 1;
        for (std::size_t k = 0; k < r.pivots.size(); ++k)
            v[r.pivots[k]] = -r.reduced(k, f);
        basis.push_back(primitive_integer_vector(std::move(v)));
    }
    return basis;
}

inline std::vector<RationalVector> kernel_basis(const RationalMatrix& m)
{
    return kernel_basis(rref(m));
}

/// Outcome of solve(): either a solution or a certifying row [0 ... 0 | c]
/// of rref([m | b]) with c != 0.
struct SolveResult {
    std::optional<RationalVector> solution;
    std::optional<RationalVector> inconsistent_row;

    bool consistent() const noexcept { return solution.has_value(); }
};

/// One exact solution of m x = b with every free variable set to zero.
inline SolveResult solve(const RationalMatrix& m, std::span<const Rational> b)
{
    if (b.size() != m.rows())
        throw ContractError("solve: right-hand side has " + std::to_string(b.size()) +
                            " entries, matrix has " + std::to_string(m.rows()) + " rows");
    const std::size_t n = m.cols();
    RrefResult r = rref(m.augment(b));
    if (!r.pivots.empty() && r.pivots.back() == n) {
        const auto row = r.reduced.row(r.rank() - 1);
        return {std::nullopt, RationalVector(row.begin(), row.end())};
    }
    RationalVector x(n);
    for (std::size_t k = 0; k < r.pivots.size(); ++k)
        x[r.pivots[k]] = r.reduced(k, n);
    return {std::move(x), std::nullopt};
}

} // namespace superpos

#endif // SUPERPOS_LINALG_HPP
