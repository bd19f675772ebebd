#pragma once

// Acceptance criteria as runnable property suites. Shared by the acceptance
// test binary and the `suite` subcommand of the CLI. Instance counts,
// tolerances and runtime budgets are fixed here.

#include <cstdint>
#include <string>
#include <vector>

namespace majorant {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;
};

CriterionResult criterion_rearrangement(std::uint64_t seed);
CriterionResult criterion_expectation(std::uint64_t seed);
CriterionResult criterion_halving_step(std::uint64_t seed);
CriterionResult criterion_halving_iteration(std::uint64_t seed);
CriterionResult criterion_end_to_end(std::uint64_t seed);
CriterionResult criterion_strategy_agreement(std::uint64_t seed);
CriterionResult criterion_schur_horn_reduction(std::uint64_t seed);
CriterionResult criterion_finite_gap(std::uint64_t seed);

/// ids: 1..8; an empty list runs all of them.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::vector<int>& ids = {});

/// "PASS  3  halving step: ... (0.41 s)"
std::string format_line(const CriterionResult& r);

}  // namespace majorant
