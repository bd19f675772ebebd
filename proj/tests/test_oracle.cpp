#include <gtest/gtest.h>

#include <sstream>

#include "majorant/oracle.hpp"

using namespace majorant;

namespace {

using Index = Eigen::Index;

Matrix diag(std::initializer_list<double> d) {
    Eigen::VectorXd v(Index(d.size()));
    Index k = 0;
    for (double x : d) v(k++) = x;
    return v.cast<Complex>().asDiagonal();
}

}  // namespace

TEST(Generators, FeasibleIsSubmajorized) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ThompsonInstance inst = gen_feasible(seed, 2 + seed % 7);
        EXPECT_TRUE(submajorizes(inst.a.modulus_profile(), singular_profile(inst.t)).submajorized);
    }
}

TEST(Generators, Deterministic) {
    for (auto kind : {InstanceKind::expectation, InstanceKind::spectral, InstanceKind::boundary, InstanceKind::infeasible}) {
        const InstanceSpec spec{42, 6, kind, 0.1, {}};
        const ThompsonInstance x = generate(spec), y = generate(spec);
        EXPECT_EQ(x.t.matrix(), y.t.matrix()) << to_string(kind);
        EXPECT_EQ(x.a.diag(), y.a.diag());
    }
}

TEST(Generators, UnitaryTwoByTwoDiagonal) {
    // The diagonal of U V with U, V unitary: each modulus at most 1, sum at most 2.
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        const Matrix s = haar_unitary(2, rng) * haar_unitary(2, rng);
        const double a0 = std::abs(s(0, 0)), a1 = std::abs(s(1, 1));
        EXPECT_LE(a0, 1.0 + 1e-12);
        EXPECT_LE(a1, 1.0 + 1e-12);
        EXPECT_LE(a0 + a1, 2.0 + 1e-12);
        // Unitary diagonals are balanced: |a0| = |a1|.
        EXPECT_NEAR(a0, a1, 1e-12);
    }
}

TEST(Generators, InfeasibleHasCertifiedMargin) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const ThompsonInstance inst = gen_infeasible(seed, 5);
        EXPECT_LE(submajorizes(inst.a.modulus_profile(), singular_profile(inst.t)).worst_margin, -10 * 1e-9);
    }
}

TEST(Generators, PositiveFamiliesMeetTheirHypotheses) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const PositiveInstance cd = gen_complete_dominance(seed, 9);
        EXPECT_LE(*std::max_element(cd.a.begin(), cd.a.end()), singular_profile(cd.t).min() + 1e-12);

        const PositiveInstance d = gen_dominance(seed, 9);
        std::vector<double> a = d.a;
        std::sort(a.begin(), a.end(), std::greater<>{});
        const StepProfile sd = singular_profile(d.t);
        for (std::size_t k = 0; k < 9; ++k) EXPECT_LE(a[k], sd[k] + 1e-12);

        const PositiveInstance sdm = gen_strict_dominance(seed, 9, 0.2);
        std::vector<double> b = sdm.a;
        std::sort(b.begin(), b.end(), std::greater<>{});
        const StepProfile ss = singular_profile(sdm.t);
        for (std::size_t k = 0; k < 9; ++k) EXPECT_LE(b[k] + 0.2, ss[k] + 1e-12);

        const PositiveInstance sh = gen_schur_horn_positive(seed, 9);
        EXPECT_TRUE(majorizes(StepProfile(sh.a), eigenvalue_profile(sh.t), 1e-10));
    }
}

TEST(Generators, BoundaryKind) {
    const InstanceSpec spec{3, 8, InstanceKind::boundary, 0.25, {2, 1.8, 1.6, 1.4, 1.2, 1.0, 0.8, 0.6}};
    const ThompsonInstance inst = generate(spec);
    const StepProfile a = rearrange(inst.a.modulus_profile());
    EXPECT_NEAR(a[0], 2.0, 1e-12);
    EXPECT_NEAR(a[3], 1.4, 1e-12);
    EXPECT_NEAR(a[4], 0.95, 1e-12);
    EXPECT_THROW(generate(InstanceSpec{3, 4, InstanceKind::spectral, 0.0, {1, 2}}), PreconditionError);
}

TEST(KyFan, IdentityGivesKOverN) {
    for (std::size_t k = 1; k <= 5; ++k)
        EXPECT_NEAR(kyfan_bruteforce(FactorElement::identity(5), k, 32), double(k) / 5.0, 1e-12);
}

TEST(KyFan, TopEigenprojection) {
    EXPECT_NEAR(kyfan_bruteforce(FactorElement(diag({3, 1})), 1, 64), 1.5, 1e-12);
}

TEST(KyFan, SamplesNeverExceedAnalyticValue) {
    Rng rng(5);
    const FactorElement t(gaussian_matrix(7, 7, rng));
    const StepProfile sv = singular_profile(t);
    const Matrix abs_t = polar(t).positive;
    for (std::size_t k = 1; k <= 7; ++k) {
        double analytic = 0.0;
        for (std::size_t j = 0; j < k; ++j) analytic += sv[j] / 7.0;
        for (double x : kyfan_samples_serial(abs_t, k, 200, 11)) EXPECT_LE(x, analytic + 1e-12);
        EXPECT_NEAR(kyfan_bruteforce(t, k, 16), analytic, 1e-10);
    }
}

TEST(ThompsonPredicate, FiniteConditionFails) {
    EXPECT_FALSE(thompson_predicate_2x2({1, 1}, {1, 0}));
    EXPECT_FALSE(feasibility_search_2x2({1, 1}, {1, 0}).found);
}

TEST(ThompsonPredicate, IdentityFactors) {
    EXPECT_TRUE(thompson_predicate_2x2({1, 0}, {1, 0}));
    EXPECT_TRUE(feasibility_search_2x2({1, 0}, {1, 0}).found);
}

TEST(ThompsonPredicate, SearchAgreesAwayFromBoundary) {
    const std::array<double, 2> sigma{2, 1};
    const std::array<double, 2> alpha{1.5, 1.2};
    const double margin = thompson_margin_2x2(sigma, alpha);
    // 1.5 - 1.2 = 0.3 <= 1: all three inequalities hold with room.
    EXPECT_NEAR(margin, 0.3, 1e-15);
    EXPECT_GT(margin, 2.0 * grid_tolerance(sigma, 200));
    EXPECT_TRUE(thompson_predicate_2x2(sigma, alpha));
    EXPECT_TRUE(feasibility_search_2x2(sigma, alpha).found);
}

TEST(ThompsonPredicate, RandomCrossValidation) {
    Rng rng(17);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    std::size_t compared = 0;
    for (int i = 0; i < 40; ++i) {
        std::array<double, 2> sigma{u(rng), u(rng)};
        if (sigma[0] < sigma[1]) std::swap(sigma[0], sigma[1]);
        const std::array<double, 2> alpha{u(rng) * sigma[0], u(rng) * sigma[0] / 2.0};
        const double margin = thompson_margin_2x2(sigma, alpha);
        if (std::abs(margin) <= 2.0 * grid_tolerance(sigma, 60)) continue;
        ++compared;
        EXPECT_EQ(feasibility_search_2x2(sigma, alpha, 60, false).found, margin >= 0.0) << i;
    }
    EXPECT_GT(compared, 20u);
}

TEST(ThompsonPredicate, Preconditions) {
    EXPECT_THROW(feasibility_search_2x2({1, 2}, {0, 0}), PreconditionError);
    EXPECT_THROW(feasibility_search_2x2({1, 0}, {0, 0}, 1), PreconditionError);
}

TEST(Convergence, ConstantDominancePatternIsExact) {
    const auto rows = resolution_convergence({0.5}, {1.0}, {4, 16, 64});
    for (const auto& r : rows) EXPECT_LE(r.residual, 1e-8) << r.n;
}

TEST(Convergence, EqualityPattern) {
    const auto rows = resolution_convergence({2, 1, 0.5, 0.25}, {2, 1, 0.5, 0.25}, {4, 16, 64});
    for (const auto& r : rows) EXPECT_LE(r.residual, double(r.n) * 1e-9) << r.n;
}

TEST(Convergence, BoundaryPatternDecays) {
    const auto rows = resolution_convergence({1.0, 0.9, 0.3, 0.1}, {1.0, 0.9, 0.5, 0.2}, {4, 16, 64, 256});
    ASSERT_EQ(rows.size(), 4u);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(rows[i].residual, rows[i - 1].residual + 1e-12);
    for (const auto& r : rows) EXPECT_LE(r.residual, r.truncation + 1e-8);
}

TEST(Convergence, RejectsBadResolution) {
    EXPECT_THROW(resolution_convergence({1, 2}, {2, 2}, {3}), PreconditionError);
    EXPECT_THROW(resolution_convergence({1, 2}, {2}, {4}), PreconditionError);
}

TEST(Convergence, CsvLayout) {
    std::ostringstream os;
    write_convergence_csv(os, {{4, 0.5, 0.25, 0.01}});
    std::string header;
    std::istringstream is(os.str());
    std::getline(is, header);
    EXPECT_EQ(header, "n,residual,truncation,seconds");
    std::string row;
    std::getline(is, row);
    EXPECT_EQ(row.substr(0, 2), "4,");
}
