#include "majorant/thompson.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "majorant/schur_horn.hpp"

namespace majorant {

namespace {

using Index = Eigen::Index;
using IndexList = std::vector<Index>;

struct Context {
    double tol = kDefaultTol;
    double scale = 1.0;        // max(1, ||T||); absolute thresholds are tol * scale
    std::size_t global_n = 1;  // resolution of the top-level problem
    DominanceStrategy strategy = DominanceStrategy::partition;

    double eps() const { return tol * scale; }
    double tau(std::size_t cells) const { return double(cells) / double(global_n); }
};

// Solution of a sub-problem in its own local coordinates: diag(u D v) ~ a,
// where D is the operator handed to the solver.
struct Block {
    Matrix u, v;
    std::vector<double> defect;  // target mass moved at each local cell
    std::vector<bool> truncated;
    std::vector<double> inc_two, inc_trace, perp;
    StageTrace trace;

    explicit Block(std::size_t m)
        : u(Matrix::Identity(Index(m), Index(m))),
          v(Matrix::Identity(Index(m), Index(m))),
          defect(m, 0.0),
          truncated(m, false) {}
};

std::vector<std::size_t> iota_vec(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

// Permutation sending basis vector k to dst[k].
Matrix permutation(const std::vector<std::size_t>& dst) {
    const auto m = Index(dst.size());
    Matrix p = Matrix::Zero(m, m);
    for (std::size_t k = 0; k < dst.size(); ++k) p(Index(dst[k]), Index(k)) = 1.0;
    return p;
}

IndexList to_index(const std::vector<std::size_t>& v) { return IndexList(v.begin(), v.end()); }

template <class Vec>
std::vector<double> pick(const Vec& values, const std::vector<std::size_t>& idx) {
    std::vector<double> out(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) out[k] = values[idx[k]];
    return out;
}

// Places a child solution on the cells `idx` of the parent.
void embed(Block& parent, const Block& child, const std::vector<std::size_t>& idx, std::size_t depth) {
    const IndexList ix = to_index(idx);
    parent.u(ix, ix) = child.u;
    parent.v(ix, ix) = child.v;
    for (std::size_t k = 0; k < idx.size(); ++k) {
        parent.defect[idx[k]] = child.defect[k];
        parent.truncated[idx[k]] = child.truncated[k];
    }
    parent.trace.append(child.trace, depth);
}

std::vector<std::size_t> range(std::size_t begin, std::size_t end) {
    std::vector<std::size_t> v(end - begin);
    std::iota(v.begin(), v.end(), begin);
    return v;
}

double max_of(std::span<const double> v) { return v.empty() ? 0.0 : *std::max_element(v.begin(), v.end()); }
double min_of(std::span<const double> v) { return v.empty() ? 0.0 : *std::min_element(v.begin(), v.end()); }

// --- halving step -------------------------------------------------------------

struct HalvingPlan {
    std::vector<std::size_t> top, bottom;  // local cells in A order
    std::vector<std::size_t> dst;          // spectral index -> local cell
    std::vector<double> h;                 // contraction, paired with top
    double h_raw_max = 0.0;
    Matrix block;
    std::vector<double> next;  // residual operator on `bottom`, signed
};

// The top floor(m/2) target cells receive the bottom floor(m/2) values of the
// operator; the remaining ceil(m/2) values go to the complementary cells.
HalvingPlan plan_halving(std::span<const double> a, std::span<const double> s) {
    const std::size_t m = a.size(), p = m / 2, q = m - p;
    HalvingPlan plan;
    const auto aord = rearrangement_order(a);
    const auto sord = rearrangement_order(s);
    plan.top.assign(aord.begin(), aord.begin() + std::ptrdiff_t(p));
    plan.bottom.assign(aord.begin() + std::ptrdiff_t(p), aord.end());
    plan.dst.resize(m);
    for (std::size_t k = 0; k < q; ++k) plan.dst[sord[k]] = plan.bottom[k];
    for (std::size_t j = 0; j < p; ++j) plan.dst[sord[q + j]] = plan.top[j];

    plan.block = Matrix::Identity(Index(m), Index(m));
    plan.h.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        const double s1 = s[sord[q + j]];
        const double raw = s1 > 0.0 ? a[plan.top[j]] / s1 : 0.0;
        plan.h_raw_max = std::max(plan.h_raw_max, raw);
        const double h = std::clamp(raw, 0.0, 1.0);
        const double d = std::sqrt(std::max(0.0, 1.0 - h * h));
        const auto t = Index(plan.top[j]), b = Index(plan.bottom[j]);
        plan.h[j] = h;
        plan.block(t, t) = h;
        plan.block(t, b) = d;
        plan.block(b, t) = d;
        plan.block(b, b) = -h;
    }
    plan.next.resize(q);
    for (std::size_t k = 0; k < q; ++k) plan.next[k] = k < p ? -plan.h[k] * s[sord[k]] : s[sord[k]];
    return plan;
}

// --- complete dominance ---------------------------------------------------------

void record_increment(Block& out, const Matrix& step, std::size_t m) {
    const Matrix d = Matrix::Identity(step.rows(), step.cols()) - step;
    out.inc_two.push_back(std::sqrt(d.squaredNorm() / double(m)));
    Eigen::BDCSVD<Matrix> svd(d);
    out.inc_trace.push_back(svd.singularValues().sum() / double(m));
}

// Operator on the block is L diag(s) R with L, R unitary. Halves the active
// cell set until two cells remain, then closes with an explicit 2 x 2 solve.
Block complete_core(std::span<const double> a, Matrix left, std::vector<double> s, Matrix right, const Context& ctx,
                    std::size_t depth) {
    const std::size_t m = a.size();
    Block out(m);
    std::vector<std::size_t> active = iota_vec(m);

    auto apply = [&](const Matrix& us, const Matrix& vs) {
        const IndexList ix = to_index(active);
        const Matrix rows = out.u(ix, Eigen::all);
        out.u(ix, Eigen::all) = us * rows;
        const Matrix cols = out.v(Eigen::all, ix);
        out.v(Eigen::all, ix) = cols * vs;
        record_increment(out, us, m);
        out.perp.push_back(double(active.size()) / double(m));
    };

    while (true) {
        const std::size_t c = active.size();
        const std::vector<double> ac = pick(a, active);
        const double amax = max_of(ac);

        if (c >= 2 && amax <= ctx.eps()) {
            // Nothing left to place: send the operator off the diagonal.
            const auto sord = rearrangement_order(s);
            std::vector<std::size_t> dst(c);
            for (std::size_t k = 0; k < c; ++k) dst[sord[k]] = k;
            Matrix z = Matrix::Zero(Index(c), Index(c));
            for (std::size_t k = 0; k < c; ++k)
                z(Index(c % 2 == 0 ? (k + c / 2) % c : (k + 1) % c), Index(k)) = 1.0;
            const Matrix pi = permutation(dst);
            apply(z * pi * left.adjoint(), right.adjoint() * pi.transpose());
            StageRecord rec;
            rec.kind = StageKind::zero_diag;
            rec.depth = depth;
            rec.domain = c;
            rec.sets["cells"] = iota_vec(c);
            rec.projection_traces = {ctx.tau(c)};
            rec.note = c % 2 == 0 ? "half swap" : "cyclic shift";
            out.trace.stages.push_back(std::move(rec));
            break;
        }

        if (amax > min_of(s) + ctx.eps())
            throw PreconditionError("complete dominance fails: max A exceeds min singular value of T");

        if (c == 1) {
            const double gap = std::abs(s[0] - ac[0]);
            out.defect[active[0]] = gap;
            out.truncated[active[0]] = gap > ctx.eps();
            apply(left.adjoint(), right.adjoint());
            StageRecord rec;
            rec.kind = StageKind::complete;
            rec.depth = depth;
            rec.domain = 1;
            rec.sets["terminal"] = {0};
            rec.projection_traces = {ctx.tau(1)};
            rec.truncation = gap / double(ctx.global_n);
            rec.note = "single cell";
            out.trace.stages.push_back(std::move(rec));
            break;
        }

        if (c == 2) {
            const auto aord = rearrangement_order(ac);
            const auto sord = rearrangement_order(s);
            const std::size_t i = aord[0], j = aord[1];
            std::vector<std::size_t> dst(2);
            dst[sord[0]] = i;
            dst[sord[1]] = j;
            const double d1 = s[sord[0]], d2 = s[sord[1]];
            const double x = ac[i];
            double y = ac[j];
            // Finite 2 x 2 condition: x - y <= d1 - d2. Otherwise the nearest
            // reachable diagonal raises the smaller target.
            const double g = (x - y) - (d1 - d2);
            if (g > 0.0) {
                y += g;
                out.defect[active[j]] = g;
                out.truncated[active[j]] = g > ctx.eps();
            }
            const double sum = d1 + d2, diff = d1 - d2;
            const double u_ang = sum > 0.0 ? std::acos(std::clamp((x + y) / sum, -1.0, 1.0)) : 0.0;
            const double v_ang = diff > 0.0 ? std::acos(std::clamp((x - y) / diff, -1.0, 1.0)) : 0.0;
            const double theta = 0.5 * (u_ang + v_ang), phi = 0.5 * (u_ang - v_ang);
            auto rotation = [&](double ang) {
                Matrix r(2, 2);
                r(Index(i), Index(i)) = std::cos(ang);
                r(Index(i), Index(j)) = -std::sin(ang);
                r(Index(j), Index(i)) = std::sin(ang);
                r(Index(j), Index(j)) = std::cos(ang);
                return r;
            };
            const Matrix pi = permutation(dst);
            apply(rotation(theta) * pi * left.adjoint(), right.adjoint() * pi.transpose() * rotation(phi));
            StageRecord rec;
            rec.kind = StageKind::complete;
            rec.depth = depth;
            rec.domain = 2;
            rec.sets["terminal"] = {0, 1};
            rec.projection_traces = {ctx.tau(2)};
            rec.truncation = std::max(g, 0.0) / double(ctx.global_n);
            rec.note = g > ctx.eps() ? "2x2 block outside the finite condition" : "2x2 closed form";
            out.trace.stages.push_back(std::move(rec));
            break;
        }

        const HalvingPlan plan = plan_halving(ac, s);
        if (plan.h_raw_max > 1.0 + double(c) * ctx.tol)
            throw PreconditionError("complete dominance step: contraction has norm above 1");
        const Matrix pi = permutation(plan.dst);
        apply(plan.block * pi * left.adjoint(), right.adjoint() * pi.transpose());

        StageRecord rec;
        rec.kind = StageKind::complete;
        rec.depth = depth;
        rec.domain = c;
        rec.sets["P"] = range(0, plan.top.size());
        rec.sets["P_perp"] = range(plan.top.size(), c);
        rec.projection_traces = {ctx.tau(plan.top.size()), ctx.tau(plan.bottom.size())};
        const std::vector<double> a2 = pick(ac, plan.bottom);
        std::vector<double> next_abs(plan.next.size());
        for (std::size_t k = 0; k < next_abs.size(); ++k) next_abs[k] = std::abs(plan.next[k]);
        rec.residual = min_of(next_abs) - max_of(a2);  // dominance slack of the residual block
        rec.note = "halving step";
        out.trace.stages.push_back(std::move(rec));

        std::vector<std::size_t> next_active(plan.bottom.size());
        for (std::size_t k = 0; k < plan.bottom.size(); ++k) next_active[k] = active[plan.bottom[k]];
        active = std::move(next_active);
        const auto q = Index(plan.next.size());
        left = Matrix::Zero(q, q);
        for (Index k = 0; k < q; ++k) left(k, k) = plan.next[std::size_t(k)] < 0.0 ? -1.0 : 1.0;
        right = Matrix::Identity(q, q);
        s = std::move(next_abs);
    }
    return out;
}

// --- strict dominance and dominance, in sorted local coordinates ----------------
// a and sigma are sorted non-increasingly and the operator is diag(sigma).

std::vector<CellInterval> greedy_intervals(std::span<const double> a, std::span<const double> t, double delta,
                                           double eps) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k)
        if (a[k] + delta > t[k] + eps)
            throw PreconditionError("strict dominance fails at cell " + std::to_string(k));
    std::vector<CellInterval> out;
    std::size_t start = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        if (k == n || a[start] > t[k] + eps) {
            out.push_back({start, k});
            start = k;
        }
    }
    return out;
}

Block strict_core(std::span<const double> a, std::span<const double> sigma, double delta, const Context& ctx,
                  std::size_t depth) {
    const std::size_t m = a.size();
    const auto intervals = greedy_intervals(a, sigma, delta, ctx.eps());
    std::vector<Block> parts(intervals.size(), Block(0));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t b = 0; b < std::ptrdiff_t(intervals.size()); ++b) {
        try {
            const auto& iv = intervals[std::size_t(b)];
            const std::size_t len = iv.end - iv.begin;
            const Matrix id = Matrix::Identity(Index(len), Index(len));
            parts[std::size_t(b)] = complete_core(a.subspan(iv.begin, len), id,
                                                  std::vector<double>(sigma.begin() + std::ptrdiff_t(iv.begin),
                                                                      sigma.begin() + std::ptrdiff_t(iv.end)),
                                                  id, ctx, depth + 1);
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    Block out(m);
    StageRecord rec;
    rec.kind = StageKind::strict;
    rec.depth = depth;
    rec.domain = m;
    rec.note = "delta=" + std::to_string(delta);
    for (const auto& iv : intervals) {
        rec.intervals.emplace_back(iv.begin, iv.end);
        rec.projection_traces.push_back(ctx.tau(iv.end - iv.begin));
    }
    out.trace.stages.push_back(std::move(rec));
    for (std::size_t b = 0; b < intervals.size(); ++b) embed(out, parts[b], range(intervals[b].begin, intervals[b].end), 0);
    out.trace.stages.front().truncation =
        std::accumulate(out.defect.begin(), out.defect.end(), 0.0) / double(ctx.global_n);
    return out;
}

Block multiplicative_core(std::span<const double> a, std::span<const double> sigma, const Context& ctx,
                          std::size_t depth) {
    const std::size_t m = a.size();
    std::vector<double> b(m, 0.0);
    for (std::size_t k = 0; k < m; ++k)
        b[k] = sigma[k] > ctx.eps() ? std::clamp(a[k] / sigma[k], 0.0, 1.0) : 0.0;
    const SignExpectation se = realize_sign_expectation(b, ctx.tol);
    Block out(m);
    out.u = se.unitary;
    double moved = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double d = std::abs(se.adjusted[k] - b[k]) * sigma[k];
        out.defect[k] = d;
        out.truncated[k] = d > ctx.eps();
        moved += d;
    }
    StageRecord rec;
    rec.kind = StageKind::dominance;
    rec.depth = depth;
    rec.domain = m;
    rec.sets["all"] = iota_vec(m);
    rec.projection_traces = {ctx.tau(m)};
    rec.truncation = moved / double(ctx.global_n);
    rec.note = "multiplicative, beta=" + std::to_string(se.beta);
    out.trace.stages.push_back(std::move(rec));
    return out;
}

Block partition_core(std::span<const double> a, std::span<const double> sigma, const Context& ctx,
                     std::size_t depth) {
    const std::size_t m = a.size();
    const double norm = max_of(sigma);
    std::vector<std::size_t> equal;
    std::map<std::size_t, std::vector<std::size_t>> bands;
    for (std::size_t k = 0; k < m; ++k) {
        const double gap = sigma[k] - a[k];
        if (gap <= ctx.eps()) {
            equal.push_back(k);
            continue;
        }
        const double j = std::floor(norm / gap);
        bands[std::clamp(std::size_t(j), std::size_t{1}, ctx.global_n)].push_back(k);
    }

    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> work(bands.begin(), bands.end());
    std::vector<Block> parts(work.size(), Block(0));
    std::vector<double> deltas(work.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t b = 0; b < std::ptrdiff_t(work.size()); ++b) {
        try {
            const auto& cells = work[std::size_t(b)].second;
            const std::vector<double> ab = pick(a, cells), sb = pick(sigma, cells);
            double delta = sb[0] - ab[0];
            for (std::size_t k = 1; k < cells.size(); ++k) delta = std::min(delta, sb[k] - ab[k]);
            deltas[std::size_t(b)] = delta;
            parts[std::size_t(b)] = strict_core(ab, sb, delta, ctx, depth + 1);
        } catch (...) {
#pragma omp critical
            failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    Block out(m);
    StageRecord rec;
    rec.kind = StageKind::dominance;
    rec.depth = depth;
    rec.domain = m;
    rec.sets["X_0"] = equal;
    rec.projection_traces.push_back(ctx.tau(equal.size()));
    for (const auto& [j, cells] : work) {
        rec.sets["X_" + std::to_string(j)] = cells;
        rec.projection_traces.push_back(ctx.tau(cells.size()));
    }
    rec.note = "partition";
    if (!work.empty() && work.back().first == ctx.global_n) rec.note += ", tail merged into last band";
    out.trace.stages.push_back(std::move(rec));
    for (std::size_t b = 0; b < work.size(); ++b) embed(out, parts[b], work[b].second, 0);
    return out;
}

Block dominance_core(std::span<const double> a, std::span<const double> sigma, const Context& ctx,
                     std::size_t depth) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > sigma[k] + ctx.eps())
            throw PreconditionError("dominance fails at cell " + std::to_string(k));
    return ctx.strategy == DominanceStrategy::partition ? partition_core(a, sigma, ctx, depth)
                                                        : multiplicative_core(a, sigma, ctx, depth);
}

// --- plumbing between physical and sorted coordinates --------------------------

struct Aligned {
    std::vector<std::size_t> order;  // sorted position -> physical cell
    std::vector<double> a;           // sorted targets
    std::vector<double> sigma;       // sorted spectrum
    Matrix frame;                    // T = frame diag(sigma) frame*
};

void check_nonnegative(std::span<const double> a, double eps) {
    for (double x : a)
        if (!(x >= -eps)) throw PreconditionError("target diagonal must be non-negative");
}

Aligned align(std::span<const double> a, const FactorElement& t, double tol) {
    const SpectralResolution spec = spectral_resolution(t, tol);
    const double n = double(t.dim());
    const double scale = std::max(1.0, std::abs(spec.eigenvalues.front()));
    if (spec.eigenvalues.back() < -n * tol * scale) throw PreconditionError("T must be positive");
    if (a.size() != t.dim()) throw PreconditionError("target and operator dimensions differ");
    Aligned al;
    al.order = rearrangement_order(a);
    al.a = pick(a, al.order);
    al.sigma = spec.eigenvalues;
    for (double& s : al.sigma) s = std::max(s, 0.0);
    al.frame = spec.frame;
    return al;
}

Context make_context(const FactorElement& t, double tol, DominanceStrategy strategy) {
    Context ctx;
    ctx.tol = tol;
    ctx.scale = std::max(1.0, operator_norm(t.matrix()));
    ctx.global_n = t.dim();
    ctx.strategy = strategy;
    return ctx;
}

// Physical unitaries from a sorted-coordinate block: U = Pi u F*, V = F v Pi*.
RealizationResult lift_aligned(const Aligned& al, const Block& blk) {
    RealizationResult r;
    const Matrix pi = permutation(al.order);
    r.u = pi * blk.u * al.frame.adjoint();
    r.v = al.frame * blk.v * pi.transpose();
    const std::size_t n = al.order.size();
    r.truncated.assign(n, false);
    double moved = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        r.truncated[al.order[k]] = blk.truncated[k];
        moved += blk.defect[k];
    }
    r.truncation_error = moved / double(n);
    r.trace = blk.trace;
    return r;
}

Vector real_target(std::span<const double> a) {
    Vector v = Vector::Zero(Index(a.size()));
    for (std::size_t k = 0; k < a.size(); ++k) v(Index(k)) = a[k];
    return v;
}

}  // namespace

const char* to_string(StageKind kind) {
    switch (kind) {
        case StageKind::reduce: return "reduce";
        case StageKind::general_split: return "general-split";
        case StageKind::dominance: return "dominance";
        case StageKind::strict: return "strict";
        case StageKind::complete: return "complete";
        case StageKind::zero_diag: return "zero-diag";
        case StageKind::schur_horn: return "schur-horn";
    }
    return "unknown";
}

const char* to_string(DominanceStrategy strategy) {
    return strategy == DominanceStrategy::partition ? "partition" : "multiplicative";
}

DominanceStrategy parse_strategy(const std::string& name) {
    if (name == "partition") return DominanceStrategy::partition;
    if (name == "multiplicative") return DominanceStrategy::multiplicative;
    throw PreconditionError("unknown strategy '" + name + "'");
}

std::size_t StageTrace::count(StageKind kind) const {
    return std::size_t(std::count_if(stages.begin(), stages.end(), [&](const StageRecord& r) { return r.kind == kind; }));
}

void StageTrace::append(const StageTrace& other, std::size_t depth_offset) {
    for (StageRecord r : other.stages) {
        r.depth += depth_offset;
        stages.push_back(std::move(r));
    }
}

void finalize_result(RealizationResult& r, const Matrix& t, const Vector& target) {
    const std::size_t n = std::size_t(t.rows());
    r.s = r.u * t * r.v;
    if (r.truncated.size() != n) r.truncated.assign(n, false);
    r.diag_residual = r.max_residual = r.resolved_residual = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = std::abs(r.s(Index(k), Index(k)) - target(Index(k)));
        r.diag_residual += d / double(n);
        r.max_residual = std::max(r.max_residual, d);
        if (!r.truncated[k]) r.resolved_residual = std::max(r.resolved_residual, d);
    }
    const StepProfile ms = singular_profile(FactorElement(r.s));
    const StepProfile mt = singular_profile(FactorElement(t));
    r.sv_drift = 0.0;
    for (std::size_t k = 0; k < n; ++k) r.sv_drift = std::max(r.sv_drift, std::abs(ms[k] - mt[k]));
}

PositiveReduction reduce_to_positive(const ThompsonInstance& inst, double tol) {
    const std::size_t n = inst.dim();
    if (inst.a.dim() != n) throw PreconditionError("reduce_to_positive: dimension mismatch");
    std::vector<double> mod(n);
    Vector phase = Vector::Zero(Index(n));
    for (std::size_t k = 0; k < n; ++k) {
        const Complex z = inst.a[k];
        mod[k] = std::abs(z);
        phase(Index(k)) = mod[k] > 0.0 ? z / mod[k] : Complex(1.0);
    }
    const PolarDecomposition pd = polar(inst.t, tol);
    const Matrix pos = 0.5 * (pd.positive + pd.positive.adjoint());
    return {ThompsonInstance{DiagonalElement(mod), FactorElement(pos)}, phase, pd.unitary};
}

void lift_from_positive(const PositiveReduction& red, Matrix& u, Matrix& v) {
    u = red.phase.asDiagonal() * u * red.polar_unitary.adjoint();
    (void)v;
}

CompleteDominanceStep complete_dominance_step(std::span<const double> a, const FactorElement& t, double tol) {
    const std::size_t n = t.dim();
    if (a.size() != n) throw PreconditionError("complete_dominance_step: dimension mismatch");
    if (n < 2) throw PreconditionError("complete_dominance_step: needs at least two cells");
    const SpectralResolution spec = spectral_resolution(t, tol);
    const double norm = std::max(0.0, spec.eigenvalues.front());
    const double scale = std::max(1.0, norm);
    check_nonnegative(a, tol * scale);
    if (spec.eigenvalues.back() < -double(n) * tol * scale)
        throw PreconditionError("complete_dominance_step: T must be positive");
    if (spec.eigenvalues.back() <= std::sqrt(tol) * norm)
        throw PreconditionError("complete_dominance_step: T is not invertible; use zero_diagonal");
    if (max_of(a) > spec.eigenvalues.back() + tol * scale)
        throw PreconditionError("complete_dominance_step: complete dominance fails");

    const HalvingPlan plan = plan_halving(a, spec.eigenvalues);
    if (plan.h_raw_max > 1.0 + double(n) * tol)
        throw PreconditionError("complete_dominance_step: contraction has norm above 1");

    CompleteDominanceStep st;
    st.top = plan.top;
    st.bottom = plan.bottom;
    st.projection = Matrix::Zero(Index(n), Index(n));
    for (std::size_t k : st.top) st.projection(Index(k), Index(k)) = 1.0;
    st.conjugator = permutation(plan.dst) * spec.frame.adjoint();
    st.conjugated = st.conjugator * t.matrix() * st.conjugator.adjoint();
    st.contraction = plan.h;
    st.block_unitary = plan.block;
    st.u = st.block_unitary * st.conjugator;
    st.v = st.conjugator.adjoint();
    st.a2 = pick(a, st.bottom);
    const IndexList ib = to_index(st.bottom);
    const Matrix full = st.u * t.matrix() * st.v;
    st.t2 = full(ib, ib);
    const StepProfile sv = singular_profile(FactorElement(st.t2));
    st.dominance_slack = sv.min() - max_of(st.a2);
    return st;
}

ZeroDiagonal zero_diagonal(const FactorElement& t, double tol) {
    const std::size_t n = t.dim();
    if (n % 2 != 0) throw PreconditionError("zero_diagonal: dimension must be even");
    const SpectralResolution spec = spectral_resolution(t, tol);
    const double scale = std::max(1.0, std::abs(spec.eigenvalues.front()));
    if (spec.eigenvalues.back() < -double(n) * tol * scale)
        throw PreconditionError("zero_diagonal: T must be positive");
    // Conjugate e_T([0,1/2)) onto the first half of the cells, then swap halves.
    const Matrix conj = spec.frame.adjoint();
    Matrix swap = Matrix::Zero(Index(n), Index(n));
    for (std::size_t k = 0; k < n; ++k) swap(Index((k + n / 2) % n), Index(k)) = 1.0;
    return {swap * conj, conj.adjoint()};
}

RealizationResult complete_dominance_solve(std::span<const double> a, const FactorElement& t, double tol) {
    const std::size_t n = t.dim();
    if (a.size() != n) throw PreconditionError("complete_dominance_solve: dimension mismatch");
    const Context ctx = make_context(t, tol, DominanceStrategy::partition);
    check_nonnegative(a, ctx.eps());
    const SpectralResolution spec = spectral_resolution(t, tol);
    if (spec.eigenvalues.back() < -double(n) * ctx.eps())
        throw PreconditionError("complete_dominance_solve: T must be positive");
    std::vector<double> sigma = spec.eigenvalues;
    for (double& s : sigma) s = std::max(s, 0.0);

    const Block blk = complete_core(a, spec.frame, sigma, spec.frame.adjoint(), ctx, 0);
    RealizationResult r;
    r.u = blk.u;
    r.v = blk.v;
    r.truncated = blk.truncated;
    r.truncation_error = std::accumulate(blk.defect.begin(), blk.defect.end(), 0.0) / double(n);
    r.increments_two_norm = blk.inc_two;
    r.increments_trace_norm = blk.inc_trace;
    r.residual_traces = blk.perp;
    r.trace = blk.trace;
    finalize_result(r, t.matrix(), real_target(a));
    return r;
}

std::vector<CellInterval> good_interval_partition(const StepProfile& a, const StepProfile& t, double delta,
                                                  double tol) {
    if (a.size() != t.size()) throw PreconditionError("good_interval_partition: resolution mismatch");
    if (!a.is_sorted() || !t.is_sorted()) throw PreconditionError("good_interval_partition: profiles must be sorted");
    if (!(delta > 0.0)) throw PreconditionError("good_interval_partition: delta must be positive");
    return greedy_intervals(a.values(), t.values(), delta, tol);
}

RealizationResult strict_dominance_solve(std::span<const double> a, const FactorElement& t, double delta,
                                         double tol) {
    const Context ctx = make_context(t, tol, DominanceStrategy::partition);
    check_nonnegative(a, ctx.eps());
    if (!(delta > 0.0)) throw PreconditionError("strict_dominance_solve: delta must be positive");
    const Aligned al = align(a, t, tol);
    RealizationResult r = lift_aligned(al, strict_core(al.a, al.sigma, delta, ctx, 0));
    finalize_result(r, t.matrix(), real_target(a));
    return r;
}

RealizationResult dominance_solve(std::span<const double> a, const FactorElement& t, DominanceStrategy strategy,
                                  double tol) {
    const Context ctx = make_context(t, tol, strategy);
    check_nonnegative(a, ctx.eps());
    const Aligned al = align(a, t, tol);
    RealizationResult r = lift_aligned(al, dominance_core(al.a, al.sigma, ctx, 0));
    finalize_result(r, t.matrix(), real_target(a));
    return r;
}

RealizationResult general_solve(const ThompsonInstance& inst, DominanceStrategy strategy, double tol) {
    const std::size_t n = inst.dim();
    if (inst.a.dim() != n) throw PreconditionError("general_solve: dimension mismatch");
    const PositiveReduction red = reduce_to_positive(inst, tol);
    const FactorElement& tp = red.positive.t;
    const Context ctx = make_context(tp, tol, strategy);

    std::vector<double> mod(n);
    for (std::size_t k = 0; k < n; ++k) mod[k] = std::abs(red.positive.a[k]);
    const MajorizationReport rep = submajorizes(StepProfile(mod), singular_profile(inst.t), ctx.eps());
    if (!rep.submajorized)
        throw InfeasibleError("A is not submajorized by T", rep.worst_margin, rep.worst_cell);

    const Aligned al = align(mod, tp, tol);
    const std::vector<double>& a = al.a;
    const std::vector<double>& sigma = al.sigma;

    // X: cells where T does not dominate A; Y: the rest. f(t) integrates the
    // gap over X and over Y up to t; Z collects X and Y before the root t0.
    std::vector<std::size_t> xs, ys;
    double f = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (sigma[k] - a[k] <= ctx.eps()) {
            xs.push_back(k);
            f += (sigma[k] - a[k]) / double(n);
        } else {
            ys.push_back(k);
        }
    }
    std::vector<double> target = a;
    std::vector<double> defect(n, 0.0);
    std::vector<bool> in_z(n, false);
    for (std::size_t k : xs) in_z[k] = true;
    double t0 = 0.0;
    if (f < 0.0) {
        t0 = 1.0;
        for (std::size_t k : ys) {
            const double step = (sigma[k] - a[k]) / double(n);
            in_z[k] = true;
            if (f + step >= 0.0) {
                const double theta = std::clamp(-f / step, 0.0, 1.0);
                t0 = (double(k) + theta) / double(n);
                // The root falls inside cell k: keep the cell whole and raise
                // its target by the unused part of the gap.
                const double raise = (1.0 - theta) * (sigma[k] - a[k]);
                target[k] += raise;
                defect[k] = raise;
                break;
            }
            f += step;
        }
    }

    std::vector<std::size_t> zs, rest;
    for (std::size_t k = 0; k < n; ++k) (in_z[k] ? zs : rest).push_back(k);

    Block blk(n);
    StageRecord red_rec;
    red_rec.kind = StageKind::reduce;
    red_rec.domain = n;
    red_rec.sets["all"] = iota_vec(n);
    red_rec.projection_traces = {1.0};
    red_rec.note = "A = phase |A|, T = W |T|";
    blk.trace.stages.push_back(std::move(red_rec));

    StageRecord split;
    split.kind = StageKind::general_split;
    split.domain = n;
    split.sets["X"] = xs;
    split.sets["Y"] = ys;
    split.sets["Z"] = zs;
    split.sets["Z_complement"] = rest;
    split.projection_traces = {ctx.tau(zs.size()), ctx.tau(rest.size())};
    split.t0 = t0;
    split.truncation = std::accumulate(defect.begin(), defect.end(), 0.0) / double(n);
    split.note = zs.empty() ? "Z empty, dominance only" : (rest.empty() ? "Schur-Horn only" : "split");
    blk.trace.stages.push_back(std::move(split));

    if (!zs.empty()) {
        const std::vector<double> sz = pick(sigma, zs), az = pick(target, zs);
        const SchurHornResult sh = realize_schur_horn(sz, az, tol);
        Block part(zs.size());
        part.u = sh.unitary;
        part.v = sh.unitary.adjoint();
        for (std::size_t k = 0; k < zs.size(); ++k) {
            part.defect[k] = defect[zs[k]];
            part.truncated[k] = defect[zs[k]] > ctx.eps();
        }
        StageRecord rec;
        rec.kind = StageKind::schur_horn;
        rec.depth = 1;
        rec.domain = zs.size();
        rec.sets["Z"] = iota_vec(zs.size());
        rec.projection_traces = {ctx.tau(zs.size())};
        rec.note = std::to_string(sh.rotations) + " rotations";
        part.trace.stages.push_back(std::move(rec));
        embed(blk, part, zs, 0);
    }
    if (!rest.empty()) {
        const Block part = dominance_core(pick(a, rest), pick(sigma, rest), ctx, 1);
        embed(blk, part, rest, 0);
    }

    RealizationResult r = lift_aligned(al, blk);
    lift_from_positive(red, r.u, r.v);
    finalize_result(r, inst.t.matrix(), inst.a.diag());
    return r;
}

}  // namespace majorant
