#pragma once

// Finite Schur-Horn constructor: given a self-adjoint T and a real target
// diagonal majorized by its spectrum, find a unitary U with diag(U T U*)
// equal to the target. Built from n - 1 plane rotations.

#include <span>
#include <vector>

#include "majorant/matrix_model.hpp"

namespace majorant {

/// Both sequences sorted non-increasingly. True iff every partial sum of
/// alpha is bounded by that of lambda and the totals agree (to tol, per cell).
bool feasible_schur_horn(std::span<const double> lambda, std::span<const double> alpha,
                         double tol = kDefaultTol);

struct SchurHornResult {
    Matrix unitary;    // U
    Matrix conjugate;  // S = U T U*
    std::size_t rotations = 0;
};

/// Realizes `target` (in the requested order, not just as a multiset) as the
/// diagonal of a unitary conjugate of `source`. Throws InfeasibleError when
/// the target is not majorized by the spectrum.
SchurHornResult realize_schur_horn(const FactorElement& source, std::span<const double> target,
                                   double tol = kDefaultTol);

/// Same, with the source given as the diagonal matrix of `eigenvalues`.
SchurHornResult realize_schur_horn(std::span<const double> eigenvalues, std::span<const double> target,
                                   double tol = kDefaultTol);

struct SignExpectation {
    Matrix unitary;                // self-adjoint unitary U with diag(U) = adjusted
    double beta = 0.0;             // tau(adjusted) = 2 beta - 1
    std::size_t plus_count = 0;    // n beta
    std::vector<double> adjusted;  // B after snapping tau(B) onto the lattice (2m - n)/n
    double perturbation = 0.0;     // sum_k |adjusted_k - b_k|
};

/// For a real diagonal contraction B, a self-adjoint unitary whose diagonal
/// is B. When n * beta is not an integer, B is moved to the nearest trace
/// lattice point first (changing tau(B) by at most 1/n).
SignExpectation realize_sign_expectation(std::span<const double> b, double tol = kDefaultTol);

}  // namespace majorant
