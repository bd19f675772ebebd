#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "majorant/oracle.hpp"
#include "majorant/schur_horn.hpp"

using namespace majorant;

namespace {

using Index = Eigen::Index;

std::vector<double> diagonal_real(const Matrix& m) {
    std::vector<double> d(std::size_t(m.rows()));
    for (Index k = 0; k < m.rows(); ++k) d[std::size_t(k)] = m(k, k).real();
    return d;
}

}  // namespace

TEST(FeasibleSchurHorn, Examples) {
    const std::vector<double> l{1, 0};
    EXPECT_TRUE(feasible_schur_horn(l, std::vector<double>{0.5, 0.5}));
    EXPECT_FALSE(feasible_schur_horn(l, std::vector<double>{2, -1}));
    EXPECT_TRUE(feasible_schur_horn(l, l));
    EXPECT_FALSE(feasible_schur_horn(l, std::vector<double>{0.5, 0.4}));
}

TEST(RealizeSchurHorn, AveragingRotation) {
    const std::vector<double> lambda{1, 0}, target{0.5, 0.5};
    const SchurHornResult r = realize_schur_horn(lambda, target);
    EXPECT_NEAR(r.conjugate(0, 0).real(), 0.5, 1e-12);
    EXPECT_NEAR(r.conjugate(1, 1).real(), 0.5, 1e-12);
    // cos^2 theta = 1/2: every entry of the rotation has modulus 1/sqrt 2.
    for (Index i = 0; i < 2; ++i)
        for (Index j = 0; j < 2; ++j) EXPECT_NEAR(std::abs(r.unitary(i, j)), std::sqrt(0.5), 1e-12);
}

TEST(RealizeSchurHorn, DiagonalAlreadyRight) {
    const std::vector<double> lambda{3, 1, 2};
    const SchurHornResult r = realize_schur_horn(lambda, lambda);
    EXPECT_LT((r.unitary - Matrix::Identity(3, 3)).norm(), 1e-12);
}

TEST(RealizeSchurHorn, RandomHermitian) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        const Matrix g = gaussian_matrix(8, 8, rng);
        const Matrix t = 0.5 * (g + g.adjoint());
        const Matrix v = haar_unitary(8, rng);
        const std::vector<double> target = diagonal_real(v * t * v.adjoint());
        const SchurHornResult r = realize_schur_horn(FactorElement(t), target);
        const std::vector<double> got = diagonal_real(r.conjugate);
        for (std::size_t k = 0; k < 8; ++k) EXPECT_NEAR(got[k], target[k], 1e-8);
        EXPECT_LT((r.unitary * t * r.unitary.adjoint() - r.conjugate).norm(), 1e-10);
        EXPECT_TRUE(in_unitary_orbit(FactorElement(r.conjugate), FactorElement(t)));
        EXPECT_LT(unitarity_defect(r.unitary), 1e-10);
        EXPECT_LE(r.rotations, 7u);
    }
}

TEST(RealizeSchurHorn, KeepsRequestedOrder) {
    const std::vector<double> lambda{4, 2, 1, 0}, target{0.5, 3, 1.5, 2};
    const SchurHornResult r = realize_schur_horn(lambda, target);
    const std::vector<double> got = diagonal_real(r.conjugate);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(got[k], target[k], 1e-10);
}

TEST(RealizeSchurHorn, LargeInstance) {
    const PositiveInstance inst = gen_schur_horn_positive(3, 96);
    const SchurHornResult r = realize_schur_horn(inst.t, inst.a);
    const std::vector<double> got = diagonal_real(r.conjugate);
    for (std::size_t k = 0; k < got.size(); ++k) EXPECT_NEAR(got[k], inst.a[k], 1e-8);
    EXPECT_LT(unitarity_defect(r.unitary), 1e-10);
}

TEST(RealizeSchurHorn, RejectsNonMajorized) {
    const std::vector<double> lambda{1, 0};
    EXPECT_THROW(realize_schur_horn(lambda, std::vector<double>{2, -1}), InfeasibleError);
    EXPECT_THROW(realize_schur_horn(lambda, std::vector<double>{0.3, 0.3}), InfeasibleError);
}

TEST(SignExpectation, AllOnes) {
    const std::vector<double> b(5, 1.0);
    const SignExpectation s = realize_sign_expectation(b);
    EXPECT_LT((s.unitary - Matrix::Identity(5, 5)).norm(), 1e-12);
    EXPECT_DOUBLE_EQ(s.beta, 1.0);
    EXPECT_EQ(s.plus_count, 5u);
}

TEST(SignExpectation, ZeroDiagonal) {
    const SignExpectation s = realize_sign_expectation(std::vector<double>{0, 0});
    EXPECT_DOUBLE_EQ(s.beta, 0.5);
    EXPECT_NEAR(std::abs(s.unitary(0, 0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.unitary(1, 1)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.unitary(0, 1)), 1.0, 1e-12);
    EXPECT_LT((s.unitary - s.unitary.adjoint()).norm(), 1e-12);
}

TEST(SignExpectation, HalfReflection) {
    // A self-adjoint unitary with diagonal (1/2, -1/2) is a reflection with
    // off-diagonal modulus sqrt(1 - 1/4).
    const SignExpectation s = realize_sign_expectation(std::vector<double>{0.5, -0.5});
    EXPECT_NEAR(s.unitary(0, 0).real(), 0.5, 1e-12);
    EXPECT_NEAR(s.unitary(1, 1).real(), -0.5, 1e-12);
    EXPECT_NEAR(std::abs(s.unitary(0, 1)), std::sqrt(3.0) / 2.0, 1e-12);
    EXPECT_NEAR(std::abs((s.unitary * s.unitary - Matrix::Identity(2, 2)).norm()), 0.0, 1e-12);
    EXPECT_DOUBLE_EQ(s.perturbation, 0.0);
}

TEST(SignExpectation, SnapsToLattice) {
    const std::vector<double> b{0.3, 0.1, -0.2, 0.25};
    const SignExpectation s = realize_sign_expectation(b);
    const double tau = std::accumulate(s.adjusted.begin(), s.adjusted.end(), 0.0) / 4.0;
    EXPECT_NEAR(tau, 2.0 * s.beta - 1.0, 1e-12);
    EXPECT_NEAR(4.0 * s.beta, double(s.plus_count), 1e-12);
    EXPECT_LE(s.perturbation, 1.0 + 1e-12);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(s.unitary(Index(k), Index(k)).real(), s.adjusted[k], 1e-10);
        EXPECT_LE(std::abs(s.adjusted[k]), 1.0);
    }
    EXPECT_LT((s.unitary * s.unitary - Matrix::Identity(4, 4)).norm(), 1e-10);
    EXPECT_LT((s.unitary - s.unitary.adjoint()).norm(), 1e-10);
}

TEST(SignExpectation, RejectsNonContraction) {
    EXPECT_THROW(realize_sign_expectation(std::vector<double>{1.5, 0}), PreconditionError);
}
