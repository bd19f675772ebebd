#pragma once

// Step functions on [0,1) sampled on a uniform n-cell grid, together with
// the rearrangement and majorization calculus used throughout the solver.
//
// Cell k covers [k/n, (k+1)/n). Every integral is an exact finite sum, so the
// identities relating a function, its non-increasing rearrangement and their
// partial integrals hold up to floating-point rounding only.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "majorant/errors.hpp"

namespace majorant {

inline constexpr double kDefaultTol = 1e-9;

/// Piecewise-constant real function on [0,1) with n equal cells.
class StepProfile {
public:
    /// Throws PreconditionError if `values` is empty or holds a non-finite entry.
    explicit StepProfile(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t k) const { return values_[k]; }
    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& to_vector() const noexcept { return values_; }

    /// True when the values are non-increasing.
    bool is_sorted() const noexcept;

    /// Replicates every cell `factor` times (equidistribution-preserving).
    StepProfile refine(std::size_t factor) const;

    double mean() const noexcept;
    double max() const noexcept;
    double min() const noexcept;

    friend bool operator==(const StepProfile&, const StepProfile&) = default;

private:
    std::vector<double> values_;
};

/// Subset of the cells {0, ..., n-1}; stored sorted and without duplicates.
class BorelCellSet {
public:
    BorelCellSet(std::vector<std::size_t> cells, std::size_t n);

    static BorelCellSet all(std::size_t n);
    static BorelCellSet interval(std::size_t begin, std::size_t end, std::size_t n);

    std::size_t resolution() const noexcept { return n_; }
    std::size_t size() const noexcept { return cells_.size(); }
    bool empty() const noexcept { return cells_.empty(); }
    bool contains(std::size_t k) const;
    /// Lebesgue measure |X| / n.
    double measure() const noexcept;
    BorelCellSet complement() const;

    std::span<const std::size_t> cells() const noexcept { return cells_; }
    auto begin() const noexcept { return cells_.begin(); }
    auto end() const noexcept { return cells_.end(); }

    friend bool operator==(const BorelCellSet&, const BorelCellSet&) = default;

private:
    std::vector<std::size_t> cells_;
    std::size_t n_;
};

struct MajorizationReport {
    bool submajorized = false;
    bool majorized = false;
    /// margins[k-1] = integral over [0, k/n) of (mu(t) - mu(a)), k = 1..n.
    std::vector<double> margins;
    /// tau(|t|) - tau(|a|).
    double trace_gap = 0.0;
    /// Finite Thompson condition: sum_{j<n}|a_j| - |a_n| <= sum_{j<n} s_j - s_n.
    bool thompson_finite_ok = false;
    /// submajorized && thompson_finite_ok; the n x n feasibility verdict.
    bool finite_feasible = false;
    /// Most negative margin and the cell it occurs at (1-based breakpoint k).
    double worst_margin = 0.0;
    std::size_t worst_cell = 0;
};

/// Stable order of cells by non-increasing value: order[k] is the cell that
/// the rearrangement places at sorted position k. Ties keep ascending index.
std::vector<std::size_t> rearrangement_order(std::span<const double> values);

/// Non-increasing rearrangement f*.
StepProfile rearrange(const StepProfile& f);

/// Cellwise absolute value.
StepProfile absolute(const StepProfile& f);

/// Integral of a sorted profile over [0, t). Throws for t outside [0,1] or
/// an unsorted profile.
double partial_integral(const StepProfile& sorted, double t);

/// Refines both profiles to the least common multiple of their resolutions.
std::pair<StepProfile, StepProfile> common_refinement(const StepProfile& a, const StepProfile& b);

/// Compares the rearranged absolute values of `a` against those of `t`.
MajorizationReport submajorizes(const StepProfile& a, const StepProfile& t,
                                double tol = kDefaultTol);

/// Eigenvalue-function majorization a < t for real (signed) profiles:
/// partial integrals of a* below those of t* and equal totals.
bool majorizes(const StepProfile& a, const StepProfile& t, double tol = kDefaultTol);

/// Profile on |X| cells whose values are { f*(k) : k in X }, in sorted order.
StepProfile restrict_equidistributed(const StepProfile& f, const BorelCellSet& x);

/// f* restricted to [0,1/2) and to [1/2,1), each rescaled to [0,1).
std::pair<StepProfile, StepProfile> compress_halves(const StepProfile& f);

}  // namespace majorant
