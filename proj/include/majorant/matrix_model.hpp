#pragma once

// Finite model of a II_1 factor: n x n complex matrices with the normalized
// trace tau = tr / n, the diagonal matrices as MASA, and the spectral data
// (eigenvalue / singular value functions, spectral projections, polar
// decomposition) the solver needs.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "majorant/errors.hpp"
#include "majorant/profile.hpp"

namespace majorant {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// An element T of the model factor.
class FactorElement {
public:
    /// Throws PreconditionError for non-square, empty or non-finite input.
    explicit FactorElement(Matrix entries);

    static FactorElement identity(std::size_t n);

    std::size_t dim() const noexcept { return std::size_t(entries_.rows()); }
    const Matrix& matrix() const noexcept { return entries_; }
    /// Normalized trace tau(T).
    Complex trace() const;
    FactorElement adjoint() const { return FactorElement(entries_.adjoint()); }

private:
    Matrix entries_;
};

/// An element A of the diagonal MASA.
class DiagonalElement {
public:
    explicit DiagonalElement(Vector diag);
    explicit DiagonalElement(const std::vector<double>& diag);

    std::size_t dim() const noexcept { return std::size_t(diag_.size()); }
    const Vector& diag() const noexcept { return diag_; }
    Complex operator[](std::size_t k) const { return diag_(Eigen::Index(k)); }
    Matrix to_matrix() const { return diag_.asDiagonal(); }
    /// Entrywise moduli as a profile (the singular values of A, unsorted).
    StepProfile modulus_profile() const;

private:
    Vector diag_;
};

/// Sorted eigen-decomposition of a self-adjoint element: frame columns are
/// eigenvectors, eigenvalues non-increasing; sorted position k occupies the
/// spectral cell [k/n, (k+1)/n).
struct SpectralResolution {
    std::vector<double> eigenvalues;
    Matrix frame;

    std::size_t dim() const noexcept { return eigenvalues.size(); }
    /// e_T(X): projection onto the eigenvectors at the sorted positions in X.
    Matrix projection(const BorelCellSet& x) const;
};

struct PolarDecomposition {
    Matrix unitary;   // W
    Matrix positive;  // |T|
};

// Norms. The "normalized" variants use tau, so the identity has norm 1.
double operator_norm(const Matrix& x);
double normalized_two_norm(const Matrix& x);  // sqrt(tau(X* X))
double normalized_trace_norm(const Matrix& x);  // tau(|X|)
/// max |X* X - I|, the unitarity defect.
double unitarity_defect(const Matrix& u);

bool is_self_adjoint(const Matrix& x, double tol = kDefaultTol);

/// Throws PreconditionError when T is not self-adjoint to n * tol.
SpectralResolution spectral_resolution(const FactorElement& t, double tol = kDefaultTol);

StepProfile singular_profile(const FactorElement& t);
StepProfile eigenvalue_profile(const FactorElement& t, double tol = kDefaultTol);

Matrix spectral_projection(const FactorElement& t, const BorelCellSet& x, double tol = kDefaultTol);

/// Conditional expectation onto the diagonal MASA.
DiagonalElement expect_diagonal(const FactorElement& t);

/// T = W |T| with W unitary; on singular T the kernel is matched through a
/// full SVD so that W is always unitary.
PolarDecomposition polar(const FactorElement& t, double tol = kDefaultTol);

bool in_two_sided_orbit(const FactorElement& s, const FactorElement& t, double tol = kDefaultTol);
bool in_unitary_orbit(const FactorElement& s, const FactorElement& t, double tol = kDefaultTol);

struct PositivityCheck {
    bool hypotheses_hold = false;  // equal singular values and equal trace
    bool positive = false;
};

/// If mu(S) = mu(T) and tau(S) = tau(T) with T positive, S must be positive;
/// throws InvariantError when the hypotheses hold but S is not.
PositivityCheck positivity_from_trace_check(const FactorElement& s, const FactorElement& t,
                                            double tol = kDefaultTol);

}  // namespace majorant
