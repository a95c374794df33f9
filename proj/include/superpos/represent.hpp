#ifndef SUPERPOS_REPRESENT_HPP
#define SUPERPOS_REPRESENT_HPP

#include "closed_path.hpp"
#include "core.hpp"
#include "linalg.hpp"
#include "rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace superpos {

/// A target function f: X -> Q keyed by point id.
using FunctionTable = std::map<PointId, Rational>;

/// Tables g_i sampled on the observed values h_i(X). Off those values the
/// g_i are taken to be zero.
struct Decomposition {
    /// tables[i][value] = g_i(value).
    std::vector<std::map<Rational, Rational>> tables;
    /// Dimension of the affine space of all decompositions (L - rank).
    std::size_t freedom = 0;

    /// sum_i g_i(h_i(x)) at every point of inc.
    FunctionTable reconstruct(const IncidenceMatrix& inc) const
    {
        FunctionTable out;
        for (PointId id : inc.point_ids())
            out[id] = 0;
        for (const auto& cls : inc.classes()) {
            const auto& table = tables.at(cls.function);
            auto it = table.find(cls.value);
            if (it == table.end())
                continue;
            for (PointId id : cls.members)
                out[id] += it->second;
        }
        return out;
    }
};

struct Witness {
    ClosedPathCertificate certificate;
    /// +1 where lambda > 0, -1 where lambda < 0, 0 off the path.
    FunctionTable f0;
    /// G_{p,lambda}(f0) = sum |lambda_i|.
    Rational value;
};

struct RepresentationResult {
    bool representable = false;
    std::optional<Decomposition> decomposition;
    /// A closed path whose functional does not vanish on f.
    std::optional<ClosedPathCertificate> violated;
    /// G_{p,lambda}(f) for the violated certificate.
    Rational violation;
};

namespace detail {

inline RationalVector table_as_vector(const IncidenceMatrix& inc, const FunctionTable& f)
{
    RationalVector v;
    v.reserve(inc.point_count());
    for (PointId id : inc.point_ids()) {
        auto it = f.find(id);
        if (it == f.end())
            throw InputError("target function has no value at point " + std::to_string(id));
        v.push_back(it->second);
    }
    return v;
}

/// First kernel basis vector not orthogonal to f, as a certificate.
inline std::optional<std::pair<ClosedPathCertificate, Rational>> first_violation(
    const IncidenceMatrix& inc, const RationalVector& f)
{
    for (const auto& kappa : kernel_basis(inc.matrix())) {
        Rational value = dot(kappa, f);
        if (value == 0)
            continue;
        // kappa is already primitive with positive lead, so its restriction
        // to the support is the certificate's lambda unchanged.
        return std::make_pair(certificate_from_kernel_vector(inc.point_ids(), kappa), value);
    }
    return std::nullopt;
}

} // namespace detail

/// Decides f in B(h_1..h_r; X) by solving (inc^T) g = f exactly, one unknown
/// per level class. On success the free unknowns are zero and the tables
/// reproduce f exactly; on failure a closed path with nonzero functional
/// value on f is returned.
inline RepresentationResult is_representable(const IncidenceMatrix& inc, const FunctionTable& f)
{
    const RationalVector rhs = detail::table_as_vector(inc, f);
    const RationalMatrix transposed = inc.matrix().transpose();
    const SolveResult solved = solve(transposed, rhs);

    RepresentationResult out;
    if (solved.consistent()) {
        Decomposition dec;
        dec.tables.resize(inc.function_count());
        const auto& g = *solved.solution;
        for (std::size_t row = 0; row < inc.classes().size(); ++row) {
            const auto& cls = inc.classes()[row];
            dec.tables[cls.function][cls.value] = g[row];
        }
        dec.freedom = inc.classes().size() - rank(transposed);
        if (dec.reconstruct(inc) != f)
            throw ContractError("is_representable: reconstruction mismatch");
        out.representable = true;
        out.decomposition = std::move(dec);
        return out;
    }
    auto violation = detail::first_violation(inc, rhs);
    if (!violation)
        throw ContractError("is_representable: inconsistent system with orthogonal kernel");
    out.violated = std::move(violation->first);
    out.violation = violation->second;
    return out;
}

/// Membership through the other route: f is representable iff it is
/// orthogonal to every kernel basis vector of inc.
inline bool is_representable_by_orthogonality(const IncidenceMatrix& inc, const FunctionTable& f)
{
    const RationalVector v = detail::table_as_vector(inc, f);
    for (const auto& kappa : kernel_basis(inc.matrix()))
        if (dot(kappa, v) != 0)
            return false;
    return true;
}

/// The sign function of lambda on the path, zero elsewhere; its functional
/// value is sum |lambda| > 0, so it is not a superposition.
inline Witness make_witness(const ClosedPathCertificate& cert, const PointSet& ps)
{
    Witness w;
    w.certificate = cert;
    for (const auto& p : ps.points())
        w.f0[p.id] = 0;
    for (std::size_t k = 0; k < cert.support.size(); ++k) {
        if (!ps.contains(cert.support[k]))
            throw InputError("certificate point " + std::to_string(cert.support[k]) +
                             " is not in the point set");
        w.f0[cert.support[k]] = sign(cert.lambda[k]);
    }
    w.value = PathFunctional(cert).evaluate(w.f0);
    return w;
}

struct PermissibleReport {
    enum class Branch { closed_path_exists, no_closed_paths };
    Branch branch = Branch::no_closed_paths;
    bool passed = false;
    std::optional<Witness> witness;
    bool witness_rejected = false;
    std::size_t probes_checked = 0;
    std::size_t probes_representable = 0;
    std::string scope =
        "finite fixture only: checks the contrapositive on this X, not on all "
        "minimal closed paths of an infinite set";
};

/// If X has a closed path, the bounded sign witness f0 (continuous on a
/// finite X) must be rejected, so no class containing it can equal B(X).
/// Otherwise every probe must be representable.
inline PermissibleReport verify_permissible_implication(const IncidenceMatrix& inc,
                                                        const PointSet& ps,
                                                        const std::vector<FunctionTable>& probes)
{
    PermissibleReport report;
    if (auto cert = detect(inc)) {
        report.branch = PermissibleReport::Branch::closed_path_exists;
        report.witness = make_witness(*cert, ps);
        report.witness_rejected = !is_representable(inc, report.witness->f0).representable;
        report.passed = report.witness_rejected;
        return report;
    }
    report.branch = PermissibleReport::Branch::no_closed_paths;
    for (const auto& f : probes) {
        ++report.probes_checked;
        if (is_representable(inc, f).representable)
            ++report.probes_representable;
    }
    report.passed = report.probes_representable == report.probes_checked;
    return report;
}

} // namespace superpos

#endif // SUPERPOS_REPRESENT_HPP
