#pragma once

// Independent checks for the solver: seeded instance generators, a sampled
// Ky Fan maximizer, the 2 x 2 Thompson predicate with a brute-force grid
// search to cross-check it, and the resolution-convergence table.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "majorant/kernels.hpp"
#include "majorant/thompson.hpp"

namespace majorant {

enum class InstanceKind { expectation, spectral, boundary, infeasible };

const char* to_string(InstanceKind kind);
InstanceKind parse_instance_kind(const std::string& name);

struct InstanceSpec {
    std::uint64_t seed = 0;
    std::size_t n = 8;
    InstanceKind kind = InstanceKind::expectation;
    double gap = 0.0;             // spectral: a_k = sigma_k - gap (clamped at 0)
    std::vector<double> spectrum;  // spectral / boundary: singular values of T (n entries)
};

using Rng = std::mt19937_64;

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);
/// Haar unitary: QR of a complex Gaussian matrix with the phases of diag(R) removed.
Matrix haar_unitary(std::size_t n, Rng& rng);

/// Random T, Haar U and V, A = diag(U T V). Feasible by construction.
ThompsonInstance gen_feasible(std::uint64_t seed, std::size_t n);

/// Random T and a diagonal whose largest modulus exceeds ||T||, so the first
/// submajorization margin is at most -10 tol.
ThompsonInstance gen_infeasible(std::uint64_t seed, std::size_t n, double tol = kDefaultTol);

struct PositiveInstance {
    std::vector<double> a;
    FactorElement t;
};

/// Positive invertible T with spectrum in [1, 2] and 0 <= a <= min spectrum.
PositiveInstance gen_complete_dominance(std::uint64_t seed, std::size_t n);

/// Positive T and a_k = c_k sigma_k (c_k uniform in [0,1]) at shuffled cells,
/// so that mu(A) <= mu(T) cellwise.
PositiveInstance gen_dominance(std::uint64_t seed, std::size_t n);

/// Positive T and a_k = sigma_k - delta (at least delta below T cellwise), shuffled.
PositiveInstance gen_strict_dominance(std::uint64_t seed, std::size_t n, double delta);

/// Positive T and real A = diag(V T V*): A < T with equal trace.
PositiveInstance gen_schur_horn_positive(std::uint64_t seed, std::size_t n);

ThompsonInstance generate(const InstanceSpec& spec);

/// max of tau(|T| P) over `samples` random rank-k projections and the
/// projection onto the top k singular vectors.
double kyfan_bruteforce(const FactorElement& t, std::size_t k, std::size_t samples, std::uint64_t seed = 0);

/// Smallest slack of the finite 2 x 2 Thompson inequalities on sorted moduli:
/// a1 <= s1, a1 + a2 <= s1 + s2, a1 - a2 <= s1 - s2. Feasible iff >= 0.
double thompson_margin_2x2(const std::array<double, 2>& sigma, const std::array<double, 2>& alpha);
bool thompson_predicate_2x2(const std::array<double, 2>& sigma, const std::array<double, 2>& alpha,
                            double tol = kDefaultTol);

/// Acceptance distance of the grid: every reachable diagonal lies this close
/// to a grid point.
double grid_tolerance(const std::array<double, 2>& sigma, std::size_t points);

GridSearchResult feasibility_search_2x2(const std::array<double, 2>& sigma, const std::array<double, 2>& alpha,
                                        std::size_t points = 200, bool parallel = true);

struct ConvergenceRow {
    std::size_t n = 0;
    double residual = 0.0;
    double truncation = 0.0;
    double seconds = 0.0;
};

/// Replicates the patterns to each resolution (which must be a multiple of
/// the pattern length), builds T = diag(t) and runs general_solve.
std::vector<ConvergenceRow> resolution_convergence(const std::vector<double>& a_pattern,
                                                   const std::vector<double>& t_pattern,
                                                   const std::vector<std::size_t>& resolutions,
                                                   DominanceStrategy strategy = DominanceStrategy::multiplicative,
                                                   double tol = kDefaultTol);

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

}  // namespace majorant
