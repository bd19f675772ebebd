#include "majorant/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "majorant/oracle.hpp"
#include "majorant/schur_horn.hpp"

namespace majorant {

namespace {

using Index = Eigen::Index;
using Clock = std::chrono::steady_clock;
using IndexList = std::vector<Index>;

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(3) << std::scientific << x;
    return os.str();
}

Rng stream(std::uint64_t seed, std::uint64_t id) {
    std::seed_seq seq{seed, id, std::uint64_t{0x6d616a6f72616e74}};
    return Rng(seq);
}

// Runs body, then folds the runtime budget into the verdict.
CriterionResult timed(int id, std::string name, double budget, const std::function<bool(std::string&)>& body) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    r.budget_seconds = budget;
    const auto start = Clock::now();
    try {
        r.pass = body(r.detail);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (r.seconds > budget) {
        r.pass = false;
        r.detail += "; over budget";
    }
    return r;
}

std::vector<double> random_profile(std::size_t n, Rng& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_int_distribution<int> small(0, 3);
    std::vector<double> v(n);
    // Coarse values make ties common, which is where rearrangement goes wrong.
    const bool coarse = small(rng) == 0;
    for (double& x : v) x = coarse ? double(small(rng)) : u(rng);
    return v;
}

// b with b* <= c* cellwise after rearrangement, shuffled.
std::vector<double> dominated_by(const std::vector<double>& c, Rng& rng) {
    std::vector<double> s = rearrange(absolute(StepProfile(c))).to_vector();
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (double& x : s) x *= u(rng);
    std::shuffle(s.begin(), s.end(), rng);
    return s;
}

double max_abs_entry(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

const std::size_t kSizes[] = {8, 16, 32, 64};

}  // namespace

CriterionResult criterion_rearrangement(std::uint64_t seed) {
    return timed(1, "rearrangement and majorization suite", 60.0, [&](std::string& detail) {
        Rng rng = stream(seed, 1);
        std::uniform_int_distribution<std::size_t> size(1, 256);
        std::size_t bad_rearrange = 0;
        for (int i = 0; i < 1000; ++i) {
            const std::vector<double> v = random_profile(size(rng), rng);
            const StepProfile r = rearrange(StepProfile(v));
            std::vector<double> expect = v;
            std::sort(expect.begin(), expect.end(), std::greater<>{});
            if (r.to_vector() != expect || !(rearrange(r) == r)) ++bad_rearrange;
        }

        std::size_t chains = 0, bad_transitive = 0;
        for (int i = 0; i < 1000; ++i) {
            const std::size_t n = size(rng);
            const std::vector<double> c = random_profile(n, rng);
            // Half the triples are built as chains; the rest are random.
            const bool chain = i % 2 == 0;
            const std::vector<double> b = chain ? dominated_by(c, rng) : random_profile(n, rng);
            const std::vector<double> a = chain ? dominated_by(b, rng) : random_profile(n, rng);
            const StepProfile pa(a), pb(b), pc(c);
            if (submajorizes(pa, pb).submajorized && submajorizes(pb, pc).submajorized) {
                ++chains;
                if (!submajorizes(pa, pc).submajorized) ++bad_transitive;
            }
        }

        const double kyfan_tol = 1e-9;
        double worst_gap = 0.0, worst_excess = -1e300;
        std::uniform_int_distribution<std::size_t> dim(1, 32);
        for (int i = 0; i < 200; ++i) {
            const std::size_t n = dim(rng);
            const FactorElement t(gaussian_matrix(n, n, rng));
            const std::size_t k = std::uniform_int_distribution<std::size_t>(1, n)(rng);
            const double analytic = partial_integral(singular_profile(t), double(k) / double(n));
            const double brute = kyfan_bruteforce(t, k, 64, seed + std::uint64_t(i));
            worst_gap = std::max(worst_gap, std::abs(analytic - brute));
            const Matrix abs_t = polar(t).positive;
            for (double x : kyfan_samples_parallel(abs_t, k, 64, seed + std::uint64_t(i)))
                worst_excess = std::max(worst_excess, x - analytic);
        }
        detail = "rearrange failures=" + std::to_string(bad_rearrange) + ", transitivity failures=" +
                 std::to_string(bad_transitive) + "/" + std::to_string(chains) + " chains, Ky Fan gap=" +
                 fmt(worst_gap) + ", max sampled excess=" + fmt(worst_excess);
        return bad_rearrange == 0 && bad_transitive == 0 && worst_gap <= kyfan_tol && worst_excess <= kyfan_tol;
    });
}

CriterionResult criterion_expectation(std::uint64_t seed) {
    return timed(2, "expectation submajorization", 60.0, [&](std::string& detail) {
        Rng rng = stream(seed, 2);
        std::uniform_int_distribution<std::size_t> dim(1, 64);
        std::vector<Matrix> batch;
        for (int i = 0; i < 500; ++i) {
            const std::size_t n = dim(rng);
            batch.push_back(gaussian_matrix(n, n, rng));
        }
        // Compressions P T P for random diagonal projections P of rank >= 1.
        for (int i = 0; i < 500; ++i) {
            const Matrix& t = batch[std::size_t(i)];
            std::vector<Index> keep;
            std::bernoulli_distribution coin(0.5);
            for (Index k = 0; k < t.rows(); ++k)
                if (coin(rng)) keep.push_back(k);
            if (keep.empty()) keep.push_back(0);
            batch.push_back(t(keep, keep));
        }
        const std::vector<double> margins = expectation_margins_parallel(batch);
        const double worst = *std::min_element(margins.begin(), margins.end());
        detail = "1000 matrices, worst margin=" + fmt(worst);
        return worst >= -1e-9;
    });
}

CriterionResult criterion_halving_step(std::uint64_t seed) {
    return timed(3, "halving step (block unitary)", 60.0, [&](std::string& detail) {
        const double tol = 1e-8;
        double worst_unitary = 0.0, worst_corner = 0.0, worst_slack = 1e300;
        const std::size_t sizes[] = {4, 8, 16, 32};
        for (int i = 0; i < 200; ++i) {
            const std::size_t n = sizes[i % 4];
            const PositiveInstance inst = gen_complete_dominance(seed * 1000 + std::uint64_t(i), n);
            const CompleteDominanceStep st = complete_dominance_step(inst.a, inst.t);
            worst_unitary = std::max(worst_unitary, unitarity_defect(st.block_unitary));
            const IndexList top(st.top.begin(), st.top.end());
            const Matrix corner = (st.block_unitary * st.conjugated)(top, top);
            Matrix ap = Matrix::Zero(corner.rows(), corner.cols());
            for (std::size_t k = 0; k < st.top.size(); ++k) ap(Index(k), Index(k)) = inst.a[st.top[k]];
            worst_corner = std::max(worst_corner, max_abs_entry(corner - ap));
            worst_slack = std::min(worst_slack, st.dominance_slack);
        }
        detail = "unitarity defect=" + fmt(worst_unitary) + ", |PVSP - AP|=" + fmt(worst_corner) +
                 ", min residual slack=" + fmt(worst_slack);
        return worst_unitary <= tol && worst_corner <= tol && worst_slack >= -tol;
    });
}

CriterionResult criterion_halving_iteration(std::uint64_t seed) {
    return timed(4, "halving iteration bound", 120.0, [&](std::string& detail) {
        const double tol = 1e-8;
        const std::size_t n = 64;
        std::size_t bound_fail = 0, trace_bound_fail = 0, residual_fail = 0, trunc_fail = 0;
        double worst_ratio = 0.0, worst_trace_ratio = 0.0, worst_trunc = 0.0;
        std::size_t first_failing_step = 0;
        for (int i = 0; i < 100; ++i) {
            const PositiveInstance inst = gen_complete_dominance(seed * 1000 + 500 + std::uint64_t(i), n);
            const RealizationResult r = complete_dominance_solve(inst.a, inst.t);
            bool failed = false;
            for (std::size_t m = 0; m < r.increments_two_norm.size(); ++m) {
                const double bound = std::ldexp(1.0, 1 - int(m));
                worst_ratio = std::max(worst_ratio, r.increments_two_norm[m] / bound);
                worst_trace_ratio = std::max(worst_trace_ratio, r.increments_trace_norm[m] / bound);
                if (r.increments_two_norm[m] > bound + tol) {
                    if (!failed && (first_failing_step == 0 || m < first_failing_step)) first_failing_step = m;
                    failed = true;
                }
                if (r.increments_trace_norm[m] > bound + tol) ++trace_bound_fail;
            }
            bound_fail += failed;
            if (r.diag_residual > r.truncation_error + tol) ++residual_fail;
            const double norm = operator_norm(inst.t.matrix());
            const double trunc_bound = norm * std::ldexp(1.0, -int(std::log2(double(n))) + 1);
            worst_trunc = std::max(worst_trunc, r.truncation_error / trunc_bound);
            if (r.truncation_error > trunc_bound) ++trunc_fail;
        }
        detail = "2-norm increment bound violated in " + std::to_string(bound_fail) +
                 "/100 runs (worst increment/bound=" + fmt(worst_ratio) +
                 (bound_fail ? ", first at step " + std::to_string(first_failing_step) : std::string()) +
                 "), trace-norm increment violations=" + std::to_string(trace_bound_fail) +
                 " (worst ratio=" + fmt(worst_trace_ratio) + "), residual>truncation: " +
                 std::to_string(residual_fail) + ", truncation/bound worst=" + fmt(worst_trunc);
        return bound_fail == 0 && residual_fail == 0 && trunc_fail == 0;
    });
}

CriterionResult criterion_end_to_end(std::uint64_t seed) {
    return timed(5, "end-to-end realization", 300.0, [&](std::string& detail) {
        const double tol = 1e-7;
        std::size_t orbit_fail = 0, residual_fail = 0;
        double worst_excess = -1e300, worst_trunc = 0.0;
        for (int i = 0; i < 300; ++i) {
            const ThompsonInstance inst = gen_feasible(seed * 1000 + std::uint64_t(i), kSizes[i % 4]);
            const RealizationResult r = general_solve(inst, DominanceStrategy::partition);
            if (!in_two_sided_orbit(FactorElement(r.s), inst.t, tol)) ++orbit_fail;
            if (r.diag_residual > r.truncation_error + tol) ++residual_fail;
            worst_excess = std::max(worst_excess, r.diag_residual - r.truncation_error);
            worst_trunc = std::max(worst_trunc, r.truncation_error);
        }
        std::size_t verdict_fail = 0;
        double least_negative = -1e300;
        for (int i = 0; i < 100; ++i) {
            const ThompsonInstance inst = gen_infeasible(seed * 1000 + 300 + std::uint64_t(i), kSizes[i % 4]);
            // Independent certificate: the partial-sum margin recomputed from scratch.
            const MajorizationReport rep = submajorizes(inst.a.modulus_profile(), singular_profile(inst.t));
            try {
                general_solve(inst, DominanceStrategy::partition);
                ++verdict_fail;
            } catch (const InfeasibleError& e) {
                least_negative = std::max(least_negative, e.margin());
                if (!(e.margin() <= -10.0 * kDefaultTol) || !(rep.worst_margin <= -10.0 * kDefaultTol)) ++verdict_fail;
            }
        }
        detail = "orbit failures=" + std::to_string(orbit_fail) + ", residual>truncation+1e-7: " +
                 std::to_string(residual_fail) + " (worst residual-truncation=" + fmt(worst_excess) +
                 ", max truncation=" + fmt(worst_trunc) + "), infeasible verdict failures=" +
                 std::to_string(verdict_fail) + " (least negative margin=" + fmt(least_negative) + ")";
        return orbit_fail == 0 && residual_fail == 0 && verdict_fail == 0;
    });
}

CriterionResult criterion_strategy_agreement(std::uint64_t seed) {
    return timed(6, "dominance strategy agreement", 120.0, [&](std::string& detail) {
        std::size_t fail = 0;
        double worst_ratio = 0.0, worst_profile = 0.0;
        for (int i = 0; i < 100; ++i) {
            const std::size_t n = kSizes[i % 4];
            const PositiveInstance inst = gen_dominance(seed * 1000 + 700 + std::uint64_t(i), n);
            const RealizationResult p = dominance_solve(inst.a, inst.t, DominanceStrategy::partition);
            const RealizationResult m = dominance_solve(inst.a, inst.t, DominanceStrategy::multiplicative);
            double gap = 0.0;
            for (Index k = 0; k < Index(n); ++k) gap += std::abs(p.s(k, k) - m.s(k, k)) / double(n);
            const double allowed = p.truncation_error + m.truncation_error +
                                   2.0 * operator_norm(inst.t.matrix()) / double(n);
            worst_ratio = std::max(worst_ratio, gap / allowed);
            const StepProfile sp = singular_profile(FactorElement(p.s)), sm = singular_profile(FactorElement(m.s));
            for (std::size_t k = 0; k < n; ++k) worst_profile = std::max(worst_profile, std::abs(sp[k] - sm[k]));
            if (gap > allowed || worst_profile > 1e-7) ++fail;
        }
        detail = "failures=" + std::to_string(fail) + ", worst gap/allowance=" + fmt(worst_ratio) +
                 ", singular profile gap=" + fmt(worst_profile);
        return fail == 0;
    });
}

CriterionResult criterion_schur_horn_reduction(std::uint64_t seed) {
    return timed(7, "Thompson to Schur-Horn reduction", 60.0, [&](std::string& detail) {
        const double tol = 1e-7;
        std::size_t fail = 0;
        double worst_min_eig = 1e300, worst_profile = 0.0;
        for (int i = 0; i < 100; ++i) {
            const std::size_t n = kSizes[i % 4];
            const PositiveInstance inst = gen_schur_horn_positive(seed * 1000 + 800 + std::uint64_t(i), n);
            const RealizationResult r =
                general_solve(ThompsonInstance{DiagonalElement(inst.a), inst.t}, DominanceStrategy::partition);
            const Matrix herm = 0.5 * (r.s + r.s.adjoint());
            Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
            const double min_eig = es.eigenvalues().minCoeff();
            worst_min_eig = std::min(worst_min_eig, min_eig);
            const double asym = max_abs_entry(r.s - r.s.adjoint());
            const StepProfile ps = eigenvalue_profile(FactorElement(herm));
            const StepProfile pt = eigenvalue_profile(inst.t);
            double gap = asym;
            for (std::size_t k = 0; k < n; ++k) gap = std::max(gap, std::abs(ps[k] - pt[k]));
            worst_profile = std::max(worst_profile, gap);
            const PositivityCheck pc = positivity_from_trace_check(FactorElement(r.s), inst.t, 1e-9);
            if (min_eig < -tol || gap > tol || !pc.hypotheses_hold || !pc.positive) ++fail;
        }
        detail = "failures=" + std::to_string(fail) + ", min eigenvalue=" + fmt(worst_min_eig) +
                 ", eigenvalue profile gap=" + fmt(worst_profile);
        return fail == 0;
    });
}

CriterionResult criterion_finite_gap(std::uint64_t seed) {
    return timed(8, "finite versus II_1 feasibility gap", 180.0, [&](std::string& detail) {
        Rng rng = stream(seed, 8);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const std::size_t points = 200;
        std::size_t disagree = 0, excluded = 0, feasible = 0;
        for (int i = 0; i < 1000; ++i) {
            const double s1 = 0.1 + 1.9 * u(rng), s2 = s1 * u(rng);
            const std::array<double, 2> sigma{s1, s2};
            const std::array<double, 2> alpha{1.1 * s1 * u(rng), 1.1 * s1 * u(rng)};
            const bool predicate = thompson_predicate_2x2(sigma, alpha);
            const GridSearchResult g = feasibility_search_2x2(sigma, alpha, points);
            feasible += predicate;
            // Points this close to the boundary are below the grid's resolution.
            if (std::abs(thompson_margin_2x2(sigma, alpha)) <= 2.0 * grid_tolerance(sigma, points)) {
                ++excluded;
                continue;
            }
            if (predicate != g.found) ++disagree;
        }

        const StepProfile wa({1.0, 0.0}), wt({1.0, 1.0});
        const MajorizationReport w = submajorizes(wa, wt);
        const bool witness = w.submajorized && !w.thompson_finite_ok && !thompson_predicate_2x2({1, 1}, {1, 0}) &&
                             !feasibility_search_2x2({1, 1}, {1, 0}, points).found;

        const auto rows = resolution_convergence({1.0, 0.0}, {1.0, 1.0}, {4, 16, 64, 256});
        bool monotone = true;
        std::string table;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k > 0 && rows[k].residual > rows[k - 1].residual + 1e-12) monotone = false;
            table += (k ? "," : "") + std::to_string(rows[k].n) + ":" + fmt(rows[k].residual);
        }
        detail = "disagreements=" + std::to_string(disagree) + " (" + std::to_string(excluded) +
                 " boundary points excluded, " + std::to_string(feasible) + " feasible), witness " +
                 (witness ? "ok" : "FAILED") + ", residuals " + table;
        return disagree == 0 && witness && monotone;
    });
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::vector<int>& ids) {
    using Fn = CriterionResult (*)(std::uint64_t);
    const Fn all[] = {criterion_rearrangement,     criterion_expectation,        criterion_halving_step,
                      criterion_halving_iteration, criterion_end_to_end,         criterion_strategy_agreement,
                      criterion_schur_horn_reduction, criterion_finite_gap};
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 8; ++id)
        if (ids.empty() || std::find(ids.begin(), ids.end(), id) != ids.end()) out.push_back(all[id - 1](seed));
    return out;
}

std::string format_line(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << ": " << r.detail << " ("
       << std::fixed << std::setprecision(2) << r.seconds << " s)";
    return os.str();
}

}  // namespace majorant
