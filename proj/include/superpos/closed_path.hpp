#ifndef SUPERPOS_CLOSED_PATH_HPP
#define SUPERPOS_CLOSED_PATH_HPP

#include "core.hpp"
#include "linalg.hpp"
#include "rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace superpos {

enum class Minimality { unknown, minimal, not_minimal };

/// A closed path together with its coefficient vector. lambda is aligned
/// with support and every entry is nonzero.
struct ClosedPathCertificate {
    std::vector<PointId> support;
    RationalVector lambda;
    bool normalized = false;
    Minimality minimal = Minimality::unknown;

    friend bool operator==(const ClosedPathCertificate&, const ClosedPathCertificate&) = default;
};

/// Copy with sum |lambda| = 1 and positive leading entry.
inline ClosedPathCertificate normalize(ClosedPathCertificate cert)
{
    cert.lambda = l1_normalized(std::move(cert.lambda));
    cert.normalized = true;
    return cert;
}

/// Copy with lambda a primitive integer vector, positive leading entry.
inline ClosedPathCertificate integer_form(ClosedPathCertificate cert)
{
    cert.lambda = primitive_integer_vector(std::move(cert.lambda));
    cert.normalized = false;
    return cert;
}

/// lambda spread over all columns of inc, zero off the support.
inline RationalVector embed(const IncidenceMatrix& inc, const ClosedPathCertificate& cert)
{
    RationalVector v(inc.point_count());
    for (std::size_t k = 0; k < cert.support.size(); ++k)
        v[inc.column_of(cert.support[k])] = cert.lambda[k];
    return v;
}

/// Independent re-check of a certificate: distinct known ids, aligned and
/// fully nonzero lambda, closed-path equations satisfied exactly, and unit
/// l1 norm when flagged normalized.
inline bool verify_certificate(const IncidenceMatrix& inc, const ClosedPathCertificate& cert)
{
    if (cert.support.empty() || cert.support.size() != cert.lambda.size())
        return false;
    std::vector<PointId> sorted = cert.support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return false;
    for (PointId id : cert.support) {
        bool known = std::find(inc.point_ids().begin(), inc.point_ids().end(), id) !=
                     inc.point_ids().end();
        if (!known)
            return false;
    }
    for (const auto& x : cert.lambda)
        if (x == 0)
            return false;
    if (cert.normalized && l1_norm(cert.lambda) != 1)
        return false;
    return is_zero_vector(inc.restricted(cert.support) * cert.lambda);
}

/// G_{p,lambda}(f) = sum_j lambda_j f(x_j). Annihilates every sum of
/// functions of the h_i.
class PathFunctional {
public:
    explicit PathFunctional(ClosedPathCertificate cert) : cert_(std::move(cert)) {}

    const ClosedPathCertificate& certificate() const noexcept { return cert_; }

    Rational evaluate(const std::map<PointId, Rational>& f) const
    {
        Rational s = 0;
        for (std::size_t k = 0; k < cert_.support.size(); ++k) {
            auto it = f.find(cert_.support[k]);
            if (it == f.end())
                throw InputError("function table has no value at point " +
                                 std::to_string(cert_.support[k]));
            s += cert_.lambda[k] * it->second;
        }
        return s;
    }

private:
    ClosedPathCertificate cert_;
};

namespace detail {

inline ClosedPathCertificate certificate_from_kernel_vector(std::span<const PointId> ids,
                                                            const RationalVector& v)
{
    ClosedPathCertificate cert;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0)
            continue;
        cert.support.push_back(ids[k]);
        cert.lambda.push_back(v[k]);
    }
    cert.lambda = primitive_integer_vector(std::move(cert.lambda));
    return cert;
}

inline void check_support(const IncidenceMatrix& inc, std::span<const PointId> support)
{
    if (support.empty())
        throw InputError("support must be nonempty");
    std::vector<PointId> sorted(support.begin(), support.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("support lists a point twice");
    for (PointId id : support)
        (void)inc.column_of(id);
}

/// A full-support vector in the span of basis, or nothing if some
/// coordinate vanishes on every basis vector. Tries sum_j t^j b_j for
/// t = start, start+1, ...; each coordinate is a nonzero polynomial in t of
/// degree < k, so fewer than n*(k-1)+1 values of t can fail.
inline std::optional<RationalVector> full_support_combination(
    const std::vector<RationalVector>& basis, std::size_t start)
{
    if (basis.empty())
        return std::nullopt;
    const std::size_t n = basis.front().size();
    for (std::size_t c = 0; c < n; ++c) {
        bool all_zero = std::all_of(basis.begin(), basis.end(),
                                    [c](const RationalVector& b) { return b[c] == 0; });
        if (all_zero)
            return std::nullopt;
    }
    const std::size_t attempts = n * basis.size() + 1;
    for (std::size_t t = start; t < start + attempts; ++t) {
        RationalVector v(n);
        Rational power = 1;
        for (const auto& b : basis) {
            for (std::size_t c = 0; c < n; ++c)
                v[c] += power * b[c];
            power *= static_cast<unsigned long>(t);
        }
        if (std::none_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; }))
            return primitive_integer_vector(std::move(v));
    }
    throw ContractError("full_support_combination: search bound exceeded");
}

} // namespace detail

/// A closed path of X if one exists: the support of the first kernel basis
/// vector of inc, with lambda its (integer, primitive) nonzero entries.
inline std::optional<ClosedPathCertificate> detect(const IncidenceMatrix& inc)
{
    const auto basis = kernel_basis(inc.matrix());
    if (basis.empty())
        return std::nullopt;
    return detail::certificate_from_kernel_vector(inc.point_ids(), basis.front());
}

/// A full-support solution of the closed-path equations on exactly the
/// given points, aligned with support, or nothing if support is not a
/// closed path.
inline std::optional<RationalVector> is_closed_path(const IncidenceMatrix& inc,
                                                    std::span<const PointId> support)
{
    detail::check_support(inc, support);
    const auto basis = kernel_basis(inc.restricted(support));
    return detail::full_support_combination(basis, support.size() + 1);
}

struct MinimalityResult {
    bool minimal = false;
    /// Normalized certificate when minimal.
    std::optional<ClosedPathCertificate> certificate;
    /// A proper subset that is itself a closed path when not minimal.
    std::vector<PointId> counterexample;
};

/// A closed path is minimal iff its restricted kernel is one-dimensional
/// (a full-support generator is then automatic). Otherwise the support of
/// the first fundamental kernel vector is returned: it vanishes on another
/// free column, so it is proper, and it is itself a minimal closed path.
inline MinimalityResult certify_minimal(const IncidenceMatrix& inc, std::span<const PointId> support)
{
    if (!is_closed_path(inc, support))
        throw ContractError("certify_minimal: support is not a closed path");
    const std::vector<PointId> ids(support.begin(), support.end());
    const auto basis = kernel_basis(inc.restricted(ids));
    MinimalityResult out;
    if (basis.size() == 1) {
        auto cert = normalize(detail::certificate_from_kernel_vector(ids, basis.front()));
        cert.minimal = Minimality::minimal;
        out.minimal = true;
        out.certificate = std::move(cert);
        return out;
    }
    for (std::size_t k = 0; k < ids.size(); ++k)
        if (basis.front()[k] != 0)
            out.counterexample.push_back(ids[k]);
    return out;
}

/// Shrinks a closed path to a minimal closed path inside it.
inline ClosedPathCertificate minimal_path_within(const IncidenceMatrix& inc,
                                                 std::vector<PointId> support)
{
    for (;;) {
        auto res = certify_minimal(inc, support);
        if (res.minimal)
            return *res.certificate;
        support = std::move(res.counterexample);
    }
}

enum class EnumerationMode { fundamental, exhaustive };

struct EnumerationResult {
    std::vector<ClosedPathCertificate> paths;
    /// True when max_support may have hidden minimal closed paths.
    bool truncated = false;
};

namespace detail {

inline bool support_less(const ClosedPathCertificate& a, const ClosedPathCertificate& b)
{
    if (a.support.size() != b.support.size())
        return a.support.size() < b.support.size();
    return a.support < b.support;
}

} // namespace detail

/// Minimal closed paths of X, normalized.
///
/// fundamental: one minimal path per free column of rref(inc); together they
/// span the kernel, which is all a membership test needs. Polynomial.
///
/// exhaustive: every minimal closed path with at most max_support points.
/// Grows independent column sets by one point at a time; a dependent
/// extension of an independent set is recorded when it is minimal and is
/// never extended further. Exponential; meant for n up to about 20.
inline EnumerationResult enumerate_minimal(const IncidenceMatrix& inc, std::size_t max_support,
                                           EnumerationMode mode)
{
    if (max_support < 2)
        throw ContractError("enumerate_minimal: max_support must be at least 2");
    EnumerationResult out;
    const auto& ids = inc.point_ids();
    const std::size_t n = ids.size();

    if (mode == EnumerationMode::fundamental) {
        const auto r = rref(inc.matrix());
        for (const auto& v : kernel_basis(r)) {
            std::vector<PointId> support;
            for (std::size_t k = 0; k < n; ++k)
                if (v[k] != 0)
                    support.push_back(ids[k]);
            auto cert = minimal_path_within(inc, std::move(support));
            if (cert.support.size() > max_support) {
                out.truncated = true;
                continue;
            }
            if (std::find(out.paths.begin(), out.paths.end(), cert) == out.paths.end())
                out.paths.push_back(std::move(cert));
        }
        std::sort(out.paths.begin(), out.paths.end(), detail::support_less);
        return out;
    }

    const std::size_t full_rank = rank(inc.matrix());
    out.truncated = max_support < std::min(n, full_rank + 1);

    // Level k holds independent column sets of size k, as sorted index lists.
    std::vector<std::vector<std::size_t>> level = {{}};
    for (std::size_t size = 1; size <= std::min(max_support, n) && !level.empty(); ++size) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& base : level) {
            const std::size_t first = base.empty() ? 0 : base.back() + 1;
            for (std::size_t e = first; e < n; ++e) {
                std::vector<std::size_t> cols = base;
                cols.push_back(e);
                const auto basis = kernel_basis(inc.matrix().select_columns(cols));
                if (basis.empty()) {
                    next.push_back(std::move(cols));
                    continue;
                }
                if (basis.size() != 1)
                    continue;
                const auto& v = basis.front();
                if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; }))
                    continue;
                ClosedPathCertificate cert;
                for (std::size_t k = 0; k < cols.size(); ++k)
                    cert.support.push_back(ids[cols[k]]);
                cert.lambda = v;
                cert = normalize(std::move(cert));
                cert.minimal = Minimality::minimal;
                out.paths.push_back(std::move(cert));
            }
        }
        level = std::move(next);
    }
    std::sort(out.paths.begin(), out.paths.end(), detail::support_less);
    return out;
}

struct FunctionalTerm {
    Rational coefficient;
    ClosedPathCertificate path;
};

/// lambda (over point ids) written as sum of coefficient * G_p for minimal
/// paths p inside the support.
struct FunctionalDecomposition {
    std::vector<FunctionalTerm> terms;
    /// Left-over coefficients; all zero on success.
    RationalVector residual;

    RationalVector recombine(const IncidenceMatrix& inc) const
    {
        RationalVector v(inc.point_count());
        for (const auto& t : terms) {
            const auto e = embed(inc, t.path);
            for (std::size_t k = 0; k < v.size(); ++k)
                v[k] += t.coefficient * e[k];
        }
        return v;
    }
};

/// Peels minimal paths off a closed path. Each step picks a minimal path p
/// inside the current support, aligns on its lowest-id point x, subtracts
/// (lambda(x) / nu(x)) G_p and so removes x from the support.
inline FunctionalDecomposition decompose_functional(const IncidenceMatrix& inc,
                                                    const ClosedPathCertificate& cert)
{
    if (!verify_certificate(inc, cert))
        throw ContractError("decompose_functional: certificate does not verify");
    FunctionalDecomposition out;
    RationalVector residual = embed(inc, cert);
    const auto& ids = inc.point_ids();

    while (!is_zero_vector(residual)) {
        std::vector<PointId> support;
        for (std::size_t k = 0; k < residual.size(); ++k)
            if (residual[k] != 0)
                support.push_back(ids[k]);
        if (!is_closed_path(inc, support))
            throw ContractError("decompose_functional: residual left the kernel");
        auto path = minimal_path_within(inc, support);

        std::size_t align = 0;
        for (std::size_t k = 1; k < path.support.size(); ++k)
            if (path.support[k] < path.support[align])
                align = k;
        const Rational t = residual[inc.column_of(path.support[align])] / path.lambda[align];

        for (std::size_t k = 0; k < path.support.size(); ++k)
            residual[inc.column_of(path.support[k])] -= t * path.lambda[k];
        out.terms.push_back({t, std::move(path)});
    }
    out.residual = std::move(residual);
    return out;
}

} // namespace superpos

#endif // SUPERPOS_CLOSED_PATH_HPP
