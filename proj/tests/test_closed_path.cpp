#include "test_support.hpp"

#include <superpos/closed_path.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace superpos;
using namespace superpos::testing;

namespace {

bool proportional(const RationalVector& a, const RationalVector& b)
{
    return a.size() == b.size() && primitive_integer_vector(a) == primitive_integer_vector(b);
}

IncidenceMatrix identical_pair()
{
    PointSet ps = PointSet::abstract(2);
    FunctionFamily ff;
    ff.add_tabulated({{1, 3}, {2, 3}});
    ff.add_tabulated({{1, -1}, {2, -1}});
    return IncidenceMatrix(ps, ff);
}

/// A random kernel vector of inc (random integer combination of the basis)
/// as a certificate, or nothing when the kernel is trivial.
std::optional<ClosedPathCertificate> random_certificate(std::mt19937_64& rng, const IncidenceMatrix& inc)
{
    const auto basis = kernel_basis(inc.matrix());
    if (basis.empty())
        return std::nullopt;
    std::uniform_int_distribution<int> coef(-3, 3);
    RationalVector v(inc.point_count());
    while (is_zero_vector(v))
        for (const auto& b : basis) {
            const int c = coef(rng);
            for (std::size_t k = 0; k < v.size(); ++k)
                v[k] += c * b[k];
        }
    ClosedPathCertificate cert;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] != 0) {
            cert.support.push_back(inc.point_ids()[k]);
            cert.lambda.push_back(v[k]);
        }
    return cert;
}

} // namespace

TEST(Detect, ExampleL)
{
    const auto c = coordinate_instance(l_points());
    const auto cert = detect(c.inc);
    ASSERT_TRUE(cert);
    EXPECT_EQ(cert->support, (std::vector<PointId>{1, 2, 3, 4, 5}));
    EXPECT_TRUE(proportional(cert->lambda, rv({-2, 1, 1, 1, -1})));
    EXPECT_TRUE(verify_certificate(c.inc, *cert));
}

TEST(Detect, StaircaseHasNoClosedPath)
{
    EXPECT_FALSE(detect(coordinate_instance(staircase_points(3)).inc));
}

TEST(Detect, SinglePoint)
{
    EXPECT_FALSE(detect(coordinate_instance({rv({1, 2, 3})}).inc));
}

TEST(Detect, EmptySet)
{
    const PointSet ps;
    FunctionFamily ff;
    ff.add_tabulated({});
    EXPECT_FALSE(detect(IncidenceMatrix(ps, ff)));
}

TEST(IsClosedPath, LPlusHasFullSupportVector)
{
    const auto c = coordinate_instance(l_plus_points());
    const std::vector<PointId> all{1, 2, 3, 4, 5, 6};
    const auto v = is_closed_path(c.inc, all);
    ASSERT_TRUE(v);
    EXPECT_TRUE(std::none_of(v->begin(), v->end(), [](const Rational& x) { return x == 0; }));
    EXPECT_TRUE(is_zero_vector(c.inc.matrix() * *v));
    // A second, hand-written kernel vector.
    EXPECT_TRUE(is_zero_vector(c.inc.matrix() * rv({3, -1, -1, -2, 2, -1})));
}

TEST(IsClosedPath, IdenticalPair)
{
    const auto inc = identical_pair();
    const std::vector<PointId> both{1, 2};
    const auto v = is_closed_path(inc, both);
    ASSERT_TRUE(v);
    EXPECT_EQ(*v, rv({1, -1}));
}

TEST(IsClosedPath, ThreeEqualValues)
{
    PointSet ps = PointSet::abstract(3);
    FunctionFamily ff;
    ff.add_tabulated({{1, 0}, {2, 0}, {3, 0}});
    const IncidenceMatrix inc(ps, ff);
    const std::vector<PointId> all{1, 2, 3};
    const auto v = is_closed_path(inc, all);
    ASSERT_TRUE(v);
    EXPECT_EQ((*v)[0] + (*v)[1] + (*v)[2], 0);
    EXPECT_NE((*v)[0] * (*v)[1] * (*v)[2], 0);
}

TEST(IsClosedPath, SubsetWithForcedZeroIsRejected)
{
    // Points 1..4 of l are the staircase: no closed path on that support.
    const auto c = coordinate_instance(l_points());
    const std::vector<PointId> sub{1, 2, 3, 4};
    EXPECT_FALSE(is_closed_path(c.inc, sub));
    // {1,2,3,4,5,6} minus 5: the face square {1,2,3,6} plus 4, which no
    // kernel vector can use.
    const auto d = coordinate_instance(l_plus_points());
    const std::vector<PointId> sq4{1, 2, 3, 4, 6};
    EXPECT_FALSE(is_closed_path(d.inc, sq4));
}

TEST(IsClosedPath, UnknownIdAndEmptySupport)
{
    const auto c = coordinate_instance(l_points());
    const std::vector<PointId> bad{1, 99};
    EXPECT_THROW(is_closed_path(c.inc, bad), InputError);
    EXPECT_THROW(is_closed_path(c.inc, std::vector<PointId>{}), InputError);
}

TEST(CertifyMinimal, ExampleLIsMinimal)
{
    const auto c = coordinate_instance(l_points());
    const std::vector<PointId> all{1, 2, 3, 4, 5};
    const auto res = certify_minimal(c.inc, all);
    ASSERT_TRUE(res.minimal);
    ASSERT_TRUE(res.certificate);
    const RationalVector expected{Rational(-1, 3), Rational(1, 6), Rational(1, 6), Rational(1, 6), Rational(-1, 6)};
    RationalVector negated = expected;
    for (auto& x : negated)
        x = -x;
    EXPECT_TRUE(res.certificate->lambda == expected || res.certificate->lambda == negated);
    EXPECT_TRUE(res.certificate->normalized);
    EXPECT_EQ(kernel_basis(c.inc.restricted(all)).size(), 1u);
}

TEST(CertifyMinimal, LPlusIsNotMinimal)
{
    const auto c = coordinate_instance(l_plus_points());
    const std::vector<PointId> all{1, 2, 3, 4, 5, 6};
    const auto res = certify_minimal(c.inc, all);
    EXPECT_FALSE(res.minimal);
    EXPECT_EQ(res.counterexample, (std::vector<PointId>{1, 2, 3, 4, 5}));
}

TEST(CertifyMinimal, IdenticalPair)
{
    const auto inc = identical_pair();
    const std::vector<PointId> both{1, 2};
    const auto res = certify_minimal(inc, both);
    ASSERT_TRUE(res.minimal);
    EXPECT_EQ(res.certificate->lambda, (RationalVector{Rational(1, 2), Rational(-1, 2)}));
}

TEST(CertifyMinimal, NonPathIsContractViolation)
{
    const auto c = coordinate_instance(staircase_points(3));
    const std::vector<PointId> all{1, 2, 3, 4};
    EXPECT_THROW(certify_minimal(c.inc, all), ContractError);
}

TEST(EnumerateMinimal, LPlusExhaustiveMatchesOracle)
{
    const auto c = coordinate_instance(l_plus_points());
    const auto res = enumerate_minimal(c.inc, 6, EnumerationMode::exhaustive);
    EXPECT_FALSE(res.truncated);
    const auto oracle_paths = oracle::minimal_closed_paths(oracle::int_incidence(c.family, c.points));
    ASSERT_EQ(res.paths.size(), oracle_paths.size());
    bool has_l = false;
    for (const auto& cert : res.paths) {
        EXPECT_TRUE(verify_certificate(c.inc, cert));
        EXPECT_NE(std::find(oracle_paths.begin(), oracle_paths.end(),
                            oracle::mask_of(cert.support, c.inc.point_ids())),
                  oracle_paths.end());
        has_l = has_l || cert.support == std::vector<PointId>{1, 2, 3, 4, 5};
    }
    EXPECT_TRUE(has_l);
}

TEST(EnumerateMinimal, StaircaseIsEmpty)
{
    const auto c = coordinate_instance(staircase_points(3));
    EXPECT_TRUE(enumerate_minimal(c.inc, 4, EnumerationMode::exhaustive).paths.empty());
    EXPECT_TRUE(enumerate_minimal(c.inc, 4, EnumerationMode::fundamental).paths.empty());
}

TEST(EnumerateMinimal, GridHasOneFourPointPath)
{
    const auto c = coordinate_instance(grid_points());
    const auto res = enumerate_minimal(c.inc, 4, EnumerationMode::exhaustive);
    ASSERT_EQ(res.paths.size(), 1u);
    EXPECT_EQ(res.paths[0].support, (std::vector<PointId>{1, 2, 3, 4}));
    EXPECT_TRUE(proportional(res.paths[0].lambda, rv({1, -1, -1, 1})));
    EXPECT_EQ(oracle::minimal_closed_paths(oracle::int_incidence(c.family, c.points)).size(), 1u);
}

TEST(EnumerateMinimal, TruncationIsReported)
{
    const auto c = coordinate_instance(l_plus_points());
    const auto capped = enumerate_minimal(c.inc, 4, EnumerationMode::exhaustive);
    EXPECT_TRUE(capped.truncated);
    for (const auto& cert : capped.paths)
        EXPECT_LE(cert.support.size(), 4u);
    EXPECT_THROW(enumerate_minimal(c.inc, 1, EnumerationMode::exhaustive), ContractError);
}

TEST(EnumerateMinimal, FundamentalSpansKernel)
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = random_instance(rng, 2 + trial % 8, 1 + trial % 3);
        const auto res = enumerate_minimal(inst.inc, inst.points.size(), EnumerationMode::fundamental);
        RationalMatrix stacked(res.paths.size(), inst.points.size());
        for (std::size_t k = 0; k < res.paths.size(); ++k) {
            EXPECT_EQ(res.paths[k].minimal, Minimality::minimal);
            EXPECT_TRUE(verify_certificate(inst.inc, res.paths[k]));
            const auto e = embed(inst.inc, res.paths[k]);
            for (std::size_t c = 0; c < e.size(); ++c)
                stacked(k, c) = e[c];
        }
        EXPECT_EQ(rank(stacked), kernel_basis(inst.inc.matrix()).size());
    }
}

TEST(DecomposeFunctional, LPlusSixPointVector)
{
    const auto c = coordinate_instance(l_plus_points());
    ClosedPathCertificate cert{{1, 2, 3, 4, 5, 6}, rv({3, -1, -1, -2, 2, -1})};
    ASSERT_TRUE(verify_certificate(c.inc, cert));
    const auto dec = decompose_functional(c.inc, cert);
    EXPECT_GE(dec.terms.size(), 2u);
    EXPECT_TRUE(is_zero_vector(dec.residual));
    EXPECT_EQ(dec.recombine(c.inc), rv({3, -1, -1, -2, 2, -1}));
    for (const auto& t : dec.terms) {
        EXPECT_TRUE(verify_certificate(c.inc, t.path));
        EXPECT_EQ(t.path.minimal, Minimality::minimal);
    }
}

TEST(DecomposeFunctional, MinimalCertificateIsOneTerm)
{
    const auto c = coordinate_instance(l_points());
    ClosedPathCertificate cert{{1, 2, 3, 4, 5}, rv({-2, 1, 1, 1, -1})};
    const auto dec = decompose_functional(c.inc, cert);
    ASSERT_EQ(dec.terms.size(), 1u);
    // Normalized path is (1/3, -1/6, ...); aligning at point 1: -2 / (1/3) = -6.
    EXPECT_EQ(dec.terms[0].coefficient, -6);
}

TEST(DecomposeFunctional, DoublingScalesCoefficients)
{
    const auto c = coordinate_instance(l_plus_points());
    ClosedPathCertificate cert{{1, 2, 3, 4, 5, 6}, rv({3, -1, -1, -2, 2, -1})};
    ClosedPathCertificate doubled{{1, 2, 3, 4, 5, 6}, rv({6, -2, -2, -4, 4, -2})};
    const auto a = decompose_functional(c.inc, cert);
    const auto b = decompose_functional(c.inc, doubled);
    ASSERT_EQ(a.terms.size(), b.terms.size());
    for (std::size_t k = 0; k < a.terms.size(); ++k) {
        EXPECT_EQ(a.terms[k].path, b.terms[k].path);
        EXPECT_EQ(2 * a.terms[k].coefficient, b.terms[k].coefficient);
    }
}

TEST(ClosedPathProperties, DetectCompleteAgainstOracle)
{
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<std::size_t> n_pick(1, 10), r_pick(1, 3);
    for (int trial = 0; trial < 300; ++trial) {
        const auto inst = random_instance(rng, n_pick(rng), r_pick(rng));
        const auto cert = detect(inst.inc);
        const bool oracle_says = oracle::any_closed_path(oracle::int_incidence(inst.values, inst.points.size()));
        ASSERT_EQ(cert.has_value(), oracle_says);
        if (cert) {
            EXPECT_TRUE(verify_certificate(inst.inc, *cert));
        }
    }
}

TEST(ClosedPathProperties, MinimalityAgreesWithSubsetOracle)
{
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::size_t> n_pick(2, 8), r_pick(1, 3);
    for (int trial = 0; trial < 60; ++trial) {
        const auto inst = random_instance(rng, n_pick(rng), r_pick(rng));
        const auto m = oracle::int_incidence(inst.values, inst.points.size());
        const auto circs = oracle::circuits(m);
        const auto& ids = inst.inc.point_ids();
        const oracle::Mask all = (oracle::Mask{1} << ids.size()) - 1;
        for (oracle::Mask s = 1; s <= all; ++s) {
            const auto support = oracle::ids_of(s, ids);
            const bool path = oracle::closed_path(s, circs);
            ASSERT_EQ(is_closed_path(inst.inc, support).has_value(), path);
            if (!path)
                continue;
            bool proper_path = false;
            for (oracle::Mask t = (s - 1) & s; t != 0 && !proper_path; t = (t - 1) & s)
                proper_path = oracle::closed_path(t, circs);
            const auto res = certify_minimal(inst.inc, support);
            ASSERT_EQ(res.minimal, !proper_path);
            if (res.minimal) {
                // Unique up to sign: one-dimensional restricted kernel.
                EXPECT_EQ(kernel_basis(inst.inc.restricted(support)).size(), 1u);
                EXPECT_EQ(l1_norm(res.certificate->lambda), 1);
            } else {
                const auto sub = oracle::mask_of(res.counterexample, ids);
                EXPECT_NE(sub, s);
                EXPECT_EQ(sub & s, sub);
                EXPECT_TRUE(oracle::closed_path(sub, circs));
            }
        }
    }
}

TEST(ClosedPathProperties, FunctionalAnnihilatesSuperpositions)
{
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = random_instance(rng, 2 + trial % 8, 1 + trial % 3);
        const auto cert = random_certificate(rng, inst.inc);
        if (!cert)
            continue;
        const PathFunctional g(*cert);
        EXPECT_EQ(g.evaluate(random_superposition(rng, inst.points, inst.family)), 0);
    }
}

TEST(ClosedPathProperties, FunctionalIsLinear)
{
    std::mt19937_64 rng(44);
    const auto c = coordinate_instance(l_plus_points());
    const PathFunctional g(ClosedPathCertificate{{1, 2, 3, 4, 5, 6}, rv({3, -1, -1, -2, 2, -1})});
    for (int trial = 0; trial < 50; ++trial) {
        const auto f1 = random_table(rng, c.inc.point_ids());
        const auto f2 = random_table(rng, c.inc.point_ids());
        const Rational a = random_rational(rng), b = random_rational(rng);
        FunctionTable mix;
        for (const auto& [id, v] : f1)
            mix[id] = a * v + b * f2.at(id);
        EXPECT_EQ(g.evaluate(mix), a * g.evaluate(f1) + b * g.evaluate(f2));
    }
}

TEST(ClosedPathProperties, DecomposeRecombinesRandomCertificates)
{
    std::mt19937_64 rng(45);
    int done = 0;
    while (done < 100) {
        const auto inst = random_instance(rng, 3 + done % 7, 1 + done % 3);
        const auto cert = random_certificate(rng, inst.inc);
        if (!cert)
            continue;
        ++done;
        const auto dec = decompose_functional(inst.inc, *cert);
        EXPECT_TRUE(is_zero_vector(dec.residual));
        EXPECT_EQ(dec.recombine(inst.inc), embed(inst.inc, *cert));
        for (const auto& t : dec.terms)
            EXPECT_EQ(t.path.minimal, Minimality::minimal);
    }
}
