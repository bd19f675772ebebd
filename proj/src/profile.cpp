#include "majorant/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace majorant {

StepProfile::StepProfile(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw PreconditionError("StepProfile needs at least one cell");
    for (double v : values_)
        if (!std::isfinite(v)) throw PreconditionError("StepProfile values must be finite");
}

bool StepProfile::is_sorted() const noexcept {
    return std::is_sorted(values_.begin(), values_.end(), std::greater<>{});
}

StepProfile StepProfile::refine(std::size_t factor) const {
    if (factor == 0) throw PreconditionError("refinement factor must be positive");
    std::vector<double> out;
    out.reserve(values_.size() * factor);
    for (double v : values_) out.insert(out.end(), factor, v);
    return StepProfile(std::move(out));
}

double StepProfile::mean() const noexcept {
    return std::accumulate(values_.begin(), values_.end(), 0.0) / double(values_.size());
}

double StepProfile::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }
double StepProfile::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }

BorelCellSet::BorelCellSet(std::vector<std::size_t> cells, std::size_t n) : cells_(std::move(cells)), n_(n) {
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
    if (!cells_.empty() && cells_.back() >= n_)
        throw PreconditionError("cell index " + std::to_string(cells_.back()) + " outside resolution " +
                                std::to_string(n_));
}

BorelCellSet BorelCellSet::all(std::size_t n) { return interval(0, n, n); }

BorelCellSet BorelCellSet::interval(std::size_t begin, std::size_t end, std::size_t n) {
    std::vector<std::size_t> cells(end > begin ? end - begin : 0);
    std::iota(cells.begin(), cells.end(), begin);
    return BorelCellSet(std::move(cells), n);
}

bool BorelCellSet::contains(std::size_t k) const {
    return std::binary_search(cells_.begin(), cells_.end(), k);
}

double BorelCellSet::measure() const noexcept {
    return n_ == 0 ? 0.0 : double(cells_.size()) / double(n_);
}

BorelCellSet BorelCellSet::complement() const {
    std::vector<std::size_t> out;
    out.reserve(n_ - cells_.size());
    for (std::size_t k = 0, j = 0; k < n_; ++k) {
        if (j < cells_.size() && cells_[j] == k) {
            ++j;
            continue;
        }
        out.push_back(k);
    }
    return BorelCellSet(std::move(out), n_);
}

std::vector<std::size_t> rearrangement_order(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });
    return order;
}

StepProfile rearrange(const StepProfile& f) {
    std::vector<double> v = f.to_vector();
    std::stable_sort(v.begin(), v.end(), std::greater<>{});
    return StepProfile(std::move(v));
}

StepProfile absolute(const StepProfile& f) {
    std::vector<double> v = f.to_vector();
    for (double& x : v) x = std::abs(x);
    return StepProfile(std::move(v));
}

double partial_integral(const StepProfile& sorted, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw PreconditionError("partial_integral: t must lie in [0,1]");
    if (!sorted.is_sorted()) throw PreconditionError("partial_integral: profile must be sorted");
    const std::size_t n = sorted.size();
    const double scaled = t * double(n);
    const auto full = std::min<std::size_t>(n, static_cast<std::size_t>(std::floor(scaled)));
    double sum = 0.0;
    for (std::size_t k = 0; k < full; ++k) sum += sorted[k];
    if (full < n) sum += (scaled - double(full)) * sorted[full];
    return sum / double(n);
}

std::pair<StepProfile, StepProfile> common_refinement(const StepProfile& a, const StepProfile& b) {
    if (a.size() == b.size()) return {a, b};
    const std::size_t l = std::lcm(a.size(), b.size());
    return {a.refine(l / a.size()), b.refine(l / b.size())};
}

MajorizationReport submajorizes(const StepProfile& a, const StepProfile& t, double tol) {
    auto [ar, tr] = common_refinement(a, t);
    const StepProfile as = rearrange(absolute(ar));
    const StepProfile ts = rearrange(absolute(tr));
    const std::size_t n = as.size();

    MajorizationReport rep;
    rep.margins.resize(n);
    double acc = 0.0;
    rep.worst_margin = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        acc += (ts[k] - as[k]) / double(n);
        rep.margins[k] = acc;
        if (k == 0 || acc < rep.worst_margin) {
            rep.worst_margin = acc;
            rep.worst_cell = k + 1;
        }
    }
    rep.trace_gap = acc;
    rep.submajorized = rep.worst_margin >= -tol;
    rep.majorized = rep.submajorized && std::abs(rep.trace_gap) <= tol;

    double head_a = 0.0, head_t = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        head_a += as[k];
        head_t += ts[k];
    }
    const double lhs = (head_a - as[n - 1]) / double(n);
    const double rhs = (head_t - ts[n - 1]) / double(n);
    rep.thompson_finite_ok = lhs <= rhs + tol;
    rep.finite_feasible = rep.submajorized && rep.thompson_finite_ok;
    return rep;
}

bool majorizes(const StepProfile& a, const StepProfile& t, double tol) {
    auto [ar, tr] = common_refinement(a, t);
    const StepProfile as = rearrange(ar);
    const StepProfile ts = rearrange(tr);
    const std::size_t n = as.size();
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        acc += (ts[k] - as[k]) / double(n);
        if (acc < -tol) return false;
    }
    return std::abs(acc) <= tol;
}

StepProfile restrict_equidistributed(const StepProfile& f, const BorelCellSet& x) {
    if (x.empty()) throw PreconditionError("restrict_equidistributed: empty cell set");
    if (x.resolution() != f.size())
        throw PreconditionError("restrict_equidistributed: cell set resolution mismatch");
    const StepProfile fs = rearrange(f);
    std::vector<double> out;
    out.reserve(x.size());
    for (std::size_t k : x) out.push_back(fs[k]);
    return StepProfile(std::move(out));
}

std::pair<StepProfile, StepProfile> compress_halves(const StepProfile& f) {
    if (f.size() % 2 != 0) throw PreconditionError("compress_halves: resolution must be even");
    const std::size_t h = f.size() / 2;
    const std::size_t n = f.size();
    return {restrict_equidistributed(f, BorelCellSet::interval(0, h, n)),
            restrict_equidistributed(f, BorelCellSet::interval(h, n, n))};
}

}  // namespace majorant
