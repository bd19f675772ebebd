#include "majorant/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>

namespace majorant {

namespace {

using Index = Eigen::Index;

Rng seeded(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{seed, stream};
    return Rng(seq);
}

std::vector<double> uniform_values(std::size_t n, double lo, double hi, Rng& rng) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

Matrix conjugated_diagonal(const std::vector<double>& values, const Matrix& w) {
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(values.data(), Index(values.size()));
    Matrix t = w * d.cast<Complex>().asDiagonal() * w.adjoint();
    return 0.5 * (t + t.adjoint());
}

PositiveInstance shuffled_instance(std::vector<double> sigma, std::vector<double> a_sorted, Rng& rng) {
    std::sort(sigma.begin(), sigma.end(), std::greater<>{});
    std::shuffle(a_sorted.begin(), a_sorted.end(), rng);
    const Matrix w = haar_unitary(sigma.size(), rng);
    return {std::move(a_sorted), FactorElement(conjugated_diagonal(sigma, w))};
}

}  // namespace

const char* to_string(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::expectation: return "expectation";
        case InstanceKind::spectral: return "spectral";
        case InstanceKind::boundary: return "boundary";
        case InstanceKind::infeasible: return "infeasible";
    }
    return "unknown";
}

InstanceKind parse_instance_kind(const std::string& name) {
    for (auto k : {InstanceKind::expectation, InstanceKind::spectral, InstanceKind::boundary, InstanceKind::infeasible})
        if (name == to_string(k)) return k;
    throw PreconditionError("unknown instance kind '" + name + "'");
}

Matrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::numbers::sqrt2 / 2.0);
    Matrix g = Matrix::Zero(Index(rows), Index(cols));
    for (Index c = 0; c < g.cols(); ++c)
        for (Index r = 0; r < g.rows(); ++r) g(r, c) = Complex(normal(rng), normal(rng));
    return g;
}

Matrix haar_unitary(std::size_t n, Rng& rng) {
    const Matrix g = gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix& r = qr.matrixQR();
    for (Index k = 0; k < Index(n); ++k) {
        const Complex d = r(k, k);
        const double m = std::abs(d);
        if (m > 0.0) q.col(k) *= d / m;
    }
    return q;
}

ThompsonInstance gen_feasible(std::uint64_t seed, std::size_t n) {
    Rng rng = seeded(seed, 1);
    const Matrix t = gaussian_matrix(n, n, rng) / std::sqrt(double(n));
    const Matrix u = haar_unitary(n, rng);
    const Matrix v = haar_unitary(n, rng);
    const Matrix s = u * t * v;
    return {DiagonalElement(Vector(s.diagonal())), FactorElement(t)};
}

ThompsonInstance gen_infeasible(std::uint64_t seed, std::size_t n, double tol) {
    Rng rng = seeded(seed, 2);
    ThompsonInstance inst = gen_feasible(seed, n);
    const double top = singular_profile(inst.t)[0];
    std::uniform_real_distribution<double> lift(0.05, 0.5), angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_int_distribution<std::size_t> cell(0, n - 1);
    Vector d = inst.a.diag();
    d(Index(cell(rng))) = std::polar(top * (1.0 + lift(rng)), angle(rng));
    inst.a = DiagonalElement(d);
    const MajorizationReport rep = submajorizes(inst.a.modulus_profile(), singular_profile(inst.t), tol);
    if (!(rep.worst_margin <= -10.0 * tol)) throw InvariantError("gen_infeasible: margin not certified");
    return inst;
}

PositiveInstance gen_complete_dominance(std::uint64_t seed, std::size_t n) {
    Rng rng = seeded(seed, 3);
    std::vector<double> sigma = uniform_values(n, 1.0, 2.0, rng);
    const double floor = *std::min_element(sigma.begin(), sigma.end());
    std::vector<double> a = uniform_values(n, 0.0, floor, rng);
    return shuffled_instance(std::move(sigma), std::move(a), rng);
}

PositiveInstance gen_dominance(std::uint64_t seed, std::size_t n) {
    Rng rng = seeded(seed, 4);
    std::vector<double> sigma = uniform_values(n, 0.1, 2.0, rng);
    std::sort(sigma.begin(), sigma.end(), std::greater<>{});
    const std::vector<double> c = uniform_values(n, 0.0, 1.0, rng);
    std::vector<double> a(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = c[k] * sigma[k];
    return shuffled_instance(std::move(sigma), std::move(a), rng);
}

PositiveInstance gen_strict_dominance(std::uint64_t seed, std::size_t n, double delta) {
    Rng rng = seeded(seed, 5);
    std::vector<double> sigma = uniform_values(n, delta, 2.0, rng);
    std::sort(sigma.begin(), sigma.end(), std::greater<>{});
    std::vector<double> a(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = std::max(0.0, sigma[k] - delta);
    return shuffled_instance(std::move(sigma), std::move(a), rng);
}

PositiveInstance gen_schur_horn_positive(std::uint64_t seed, std::size_t n) {
    Rng rng = seeded(seed, 6);
    std::vector<double> lambda = uniform_values(n, 0.0, 2.0, rng);
    const Matrix w = haar_unitary(n, rng);
    const Matrix t = conjugated_diagonal(lambda, w);
    const Matrix v = haar_unitary(n, rng);
    const Matrix s = v * t * v.adjoint();
    std::vector<double> a(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = s(Index(k), Index(k)).real();
    return {std::move(a), FactorElement(t)};
}

ThompsonInstance generate(const InstanceSpec& spec) {
    switch (spec.kind) {
        case InstanceKind::expectation: return gen_feasible(spec.seed, spec.n);
        case InstanceKind::infeasible: return gen_infeasible(spec.seed, spec.n);
        case InstanceKind::spectral:
        case InstanceKind::boundary: {
            Rng rng = seeded(spec.seed, 7);
            std::vector<double> sigma = spec.spectrum;
            if (sigma.empty()) sigma = uniform_values(spec.n, 0.0, 2.0, rng);
            if (sigma.size() != spec.n) throw PreconditionError("generate: spectrum length must equal n");
            std::sort(sigma.begin(), sigma.end(), std::greater<>{});
            std::vector<double> a(spec.n);
            for (std::size_t k = 0; k < spec.n; ++k)
                // Boundary instances sit on the dominance boundary in the top half.
                a[k] = spec.kind == InstanceKind::boundary && k < spec.n / 2 ? sigma[k]
                                                                             : std::max(0.0, sigma[k] - spec.gap);
            PositiveInstance p = shuffled_instance(std::move(sigma), std::move(a), rng);
            return {DiagonalElement(p.a), p.t};
        }
    }
    throw PreconditionError("generate: unknown kind");
}

double kyfan_bruteforce(const FactorElement& t, std::size_t k, std::size_t samples, std::uint64_t seed) {
    const std::size_t n = t.dim();
    if (k < 1 || k > n) throw PreconditionError("kyfan_bruteforce: k must lie in [1, n]");
    const Matrix abs_t = polar(t).positive;
    const SpectralResolution spec = spectral_resolution(FactorElement(abs_t));
    const Matrix top = spec.frame.leftCols(Index(k));
    double best = (top.adjoint() * abs_t * top).trace().real() / double(n);
    for (double x : kyfan_samples_parallel(abs_t, k, samples, seed)) best = std::max(best, x);
    return best;
}

double thompson_margin_2x2(const std::array<double, 2>& sigma, const std::array<double, 2>& alpha) {
    const double s1 = std::max(sigma[0], sigma[1]), s2 = std::min(sigma[0], sigma[1]);
    const double a1 = std::max(std::abs(alpha[0]), std::abs(alpha[1]));
    const double a2 = std::min(std::abs(alpha[0]), std::abs(alpha[1]));
    return std::min({s1 - a1, (s1 + s2) - (a1 + a2), (s1 - s2) - (a1 - a2)});
}

bool thompson_predicate_2x2(const std::array<double, 2>& sigma, const std::array<double, 2>& alpha, double tol) {
    return thompson_margin_2x2(sigma, alpha) >= -tol;
}

double grid_tolerance(const std::array<double, 2>& sigma, std::size_t points) {
    // |d_k| is (s1 + s2)-Lipschitz in each rotation angle and (s1 + s2)/2-
    // Lipschitz in the phase; the half-spacings add up to this bound.
    const double h = (std::numbers::pi / 2.0) / double(points - 1);
    return 1.5 * (std::abs(sigma[0]) + std::abs(sigma[1])) * h;
}

GridSearchResult feasibility_search_2x2(const std::array<double, 2>& sigma, const std::array<double, 2>& alpha,
                                        std::size_t points, bool parallel) {
    if (sigma[0] < sigma[1] || sigma[1] < 0.0)
        throw PreconditionError("feasibility_search_2x2: sigma must satisfy s1 >= s2 >= 0");
    const std::array<double, 2> moduli{std::abs(alpha[0]), std::abs(alpha[1])};
    const double accept = grid_tolerance(sigma, points);
    return parallel ? grid_search_2x2_parallel(sigma, moduli, points, accept)
                    : grid_search_2x2_serial(sigma, moduli, points, accept);
}

std::vector<ConvergenceRow> resolution_convergence(const std::vector<double>& a_pattern,
                                                   const std::vector<double>& t_pattern,
                                                   const std::vector<std::size_t>& resolutions,
                                                   DominanceStrategy strategy, double tol) {
    if (a_pattern.empty() || a_pattern.size() != t_pattern.size())
        throw PreconditionError("resolution_convergence: patterns must be non-empty and of equal length");
    const StepProfile ap(a_pattern), tp(t_pattern);
    std::vector<ConvergenceRow> rows;
    for (std::size_t n : resolutions) {
        if (n == 0 || n % a_pattern.size() != 0)
            throw PreconditionError("resolution_convergence: resolution must be a multiple of the pattern length");
        const std::size_t f = n / a_pattern.size();
        const std::vector<double> a = ap.refine(f).to_vector();
        const std::vector<double> t = tp.refine(f).to_vector();
        Matrix tm = Matrix::Zero(Index(n), Index(n));
        for (std::size_t k = 0; k < n; ++k) tm(Index(k), Index(k)) = t[k];
        const auto start = std::chrono::steady_clock::now();
        const RealizationResult r =
            general_solve(ThompsonInstance{DiagonalElement(a), FactorElement(tm)}, strategy, tol);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        rows.push_back({n, r.diag_residual, r.truncation_error, dt.count()});
    }
    return rows;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os << "n,residual,truncation,seconds\n";
    os.precision(17);
    for (const auto& r : rows) os << r.n << ',' << r.residual << ',' << r.truncation << ',' << r.seconds << '\n';
}

}  // namespace majorant
