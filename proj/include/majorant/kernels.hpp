#pragma once

// Hot loops of the oracle layer, each in a serial reference version and an
// OpenMP version. Both versions return identical values for the same inputs,
// except that the grid searches stop early on a hit, so only their verdicts
// (and the distance when nothing is found) are comparable. Tests compare the
// pairs and bench/ times them.

#include <array>
#include <cstdint>
#include <vector>

#include "majorant/matrix_model.hpp"

namespace majorant {

/// Applies MAJORANT_THREADS (if set and positive) to the OpenMP runtime and
/// returns the thread count in effect.
int configure_threads();

struct GridSearchResult {
    bool found = false;
    double best_distance = 0.0;  // min over the grid of max_k ||d_k| - |alpha_k||
    std::uint64_t evaluated = 0;
};

/// Searches 2 x 2 unitaries U, V on a `points`^3 grid for |diag(U diag(sigma) V)| = |alpha|
/// within `accept`. Diagonal phases are free, so only moduli are compared.
/// U = [[c_t, -s_t e^{i psi}], [s_t, c_t e^{i psi}]], V = [[c_p, -s_p], [s_p e^{i chi}, c_p e^{i chi}]];
/// the moduli depend on psi + chi only, so the grid runs over (theta, phi, psi + chi).
GridSearchResult grid_search_2x2_serial(const std::array<double, 2>& sigma, const std::array<double, 2>& alpha,
                                        std::size_t points, double accept);
GridSearchResult grid_search_2x2_parallel(const std::array<double, 2>& sigma, const std::array<double, 2>& alpha,
                                          std::size_t points, double accept);

/// tau(|T| P) for `samples` random rank-k projections P; sample i is drawn
/// from a generator seeded by (seed, i) so the two versions agree exactly.
std::vector<double> kyfan_samples_serial(const Matrix& abs_t, std::size_t k, std::size_t samples,
                                         std::uint64_t seed);
std::vector<double> kyfan_samples_parallel(const Matrix& abs_t, std::size_t k, std::size_t samples,
                                           std::uint64_t seed);

/// Margins of E_A(T) against T for a batch of matrices: entry i is the worst
/// submajorization margin of the i-th matrix.
std::vector<double> expectation_margins_serial(const std::vector<Matrix>& batch);
std::vector<double> expectation_margins_parallel(const std::vector<Matrix>& batch);

}  // namespace majorant
