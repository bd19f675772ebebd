#pragma once

// Staged constructive solver for diagonal realization under submajorization:
// given A in the diagonal MASA and T with A <_w T, build unitaries U, V with
// diag(U T V) = A. Stages, from strongest to weakest hypothesis:
//
//   complete dominance  sup mu(A) <= inf mu(T)        halving block iteration
//   strict dominance    mu(A) + delta <= mu(T)        good-interval partition
//   dominance           mu(A) <= mu(T)                gap bands, or sign unitary
//   general             A <_w T                       root split + Schur-Horn
//
// At matrix scale the halving iteration stops at a 2 x 2 block. When that
// block fails the finite Thompson condition its diagonal is moved to the
// nearest feasible point and the moved mass is reported as truncation error.
// Residual and truncation are both measured in the normalized trace norm
// tau(|.|) of the diagonal defect, which makes them comparable and vanish as
// the resolution grows.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "majorant/matrix_model.hpp"

namespace majorant {

enum class DominanceStrategy { partition, multiplicative };

enum class StageKind { reduce, general_split, dominance, strict, complete, zero_diag, schur_horn };

const char* to_string(StageKind kind);
const char* to_string(DominanceStrategy strategy);
DominanceStrategy parse_strategy(const std::string& name);

/// One pipeline stage. Cell sets are indices into the block's sorted spectral
/// positions (0 = largest value), so a stage's sets partition [0, domain).
struct StageRecord {
    StageKind kind = StageKind::reduce;
    std::size_t depth = 0;   // nesting level; 0 is the top-level problem
    std::size_t domain = 0;  // number of cells in the block this stage split
    std::map<std::string, std::vector<std::size_t>> sets;
    std::vector<std::pair<std::size_t, std::size_t>> intervals;  // [begin, end)
    std::vector<double> projection_traces;                      // tau of each piece, global scale
    double residual = 0.0;
    double truncation = 0.0;
    std::optional<double> t0;
    std::string note;
};

struct StageTrace {
    std::vector<StageRecord> stages;

    std::size_t count(StageKind kind) const;
    void append(const StageTrace& other, std::size_t depth_offset);
};

struct ThompsonInstance {
    DiagonalElement a;
    FactorElement t;

    std::size_t dim() const noexcept { return t.dim(); }
};

struct RealizationResult {
    Matrix u, v, s;  // s = u t v
    /// tau(|diag(S) - A|): normalized trace norm of the diagonal defect.
    double diag_residual = 0.0;
    /// max_k |S_kk - A_k|.
    double max_residual = 0.0;
    /// max_k |S_kk - A_k| over cells that no stage flagged as truncated.
    double resolved_residual = 0.0;
    /// tau of the diagonal mass moved by terminal blocks and trace quantization.
    double truncation_error = 0.0;
    /// max cell gap between the singular profiles of S and T.
    double sv_drift = 0.0;
    /// Per-step increments ||I - U_{m+1}||, complete-dominance iterations only.
    std::vector<double> increments_two_norm;    // sqrt(tau(X* X))
    std::vector<double> increments_trace_norm;  // tau(|X|)
    std::vector<double> residual_traces;        // tau(P_m^perp) before each step
    std::vector<bool> truncated;                // per physical cell
    StageTrace trace;
};

// --- reduction ------------------------------------------------------------

struct PositiveReduction {
    ThompsonInstance positive;  // (|A|, |T|)
    Vector phase;               // A = phase |A|, phase 1 where A_k = 0
    Matrix polar_unitary;       // T = W |T|
};

PositiveReduction reduce_to_positive(const ThompsonInstance& inst, double tol = kDefaultTol);

/// (U', V') solving the positive problem become (phase U' W*, V').
void lift_from_positive(const PositiveReduction& red, Matrix& u, Matrix& v);

// --- complete dominance ----------------------------------------------------

struct CompleteDominanceStep {
    std::vector<std::size_t> top;     // physical cells of P = e_A([0,1/2)), A-sorted order
    std::vector<std::size_t> bottom;  // physical cells of P^perp, A-sorted order
    Matrix projection;                // P
    Matrix conjugator;                // W, conjugates Q = e_T(bottom half) onto P
    Matrix conjugated;                // S = W T W*
    std::vector<double> contraction;  // H = A_1 S_1^{-1} (diagonal in this basis)
    Matrix block_unitary;             // [[H, sqrt(1-HH*)], [sqrt(1-H*H), -H*]] (+ identity tail)
    Matrix u, v;                      // u = block_unitary W, v = W*
    std::vector<double> a2;           // A on P^perp, in `bottom` order
    Matrix t2;                        // P^perp (u T v) P^perp, in `bottom` order
    double dominance_slack = 0.0;     // min sv(t2) - max a2
};

/// One halving step. `a` must be non-negative, T positive and invertible, and
/// max a <= min sv(T). When the dimension is odd the top half takes floor(n/2)
/// cells and the block unitary is padded with the identity.
CompleteDominanceStep complete_dominance_step(std::span<const double> a, const FactorElement& t,
                                              double tol = kDefaultTol);

struct ZeroDiagonal {
    Matrix u, v;  // diag(u T v) = 0; u = swap * conj, v = conj*
};

/// Even dimension only; T positive.
ZeroDiagonal zero_diagonal(const FactorElement& t, double tol = kDefaultTol);

RealizationResult complete_dominance_solve(std::span<const double> a, const FactorElement& t,
                                           double tol = kDefaultTol);

// --- strict dominance ------------------------------------------------------

struct CellInterval {
    std::size_t begin = 0, end = 0;  // [begin, end)
    friend bool operator==(const CellInterval&, const CellInterval&) = default;
};

/// Greedy cover of the sorted cells by maximal good intervals (max a <= min t).
std::vector<CellInterval> good_interval_partition(const StepProfile& a, const StepProfile& t, double delta,
                                                  double tol = kDefaultTol);

RealizationResult strict_dominance_solve(std::span<const double> a, const FactorElement& t, double delta,
                                         double tol = kDefaultTol);

// --- dominance and general case --------------------------------------------

RealizationResult dominance_solve(std::span<const double> a, const FactorElement& t, DominanceStrategy strategy,
                                  double tol = kDefaultTol);

/// Throws InfeasibleError (with the worst margin) when A <_w T fails.
RealizationResult general_solve(const ThompsonInstance& inst, DominanceStrategy strategy,
                                double tol = kDefaultTol);

/// Recomputes S = U T V and all residual fields from scratch.
void finalize_result(RealizationResult& r, const Matrix& t, const Vector& target);

}  // namespace majorant
