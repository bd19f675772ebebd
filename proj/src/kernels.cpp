#include "majorant/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include <omp.h>

namespace majorant {

namespace {

struct Grid {
    std::vector<double> c, s, cos_gamma;
};

Grid make_grid(std::size_t points) {
    if (points < 2) throw PreconditionError("grid search needs at least two points per angle");
    Grid g;
    const double half_pi = std::numbers::pi / 2.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double t = half_pi * double(i) / double(points - 1);
        g.c.push_back(std::cos(t));
        g.s.push_back(std::sin(t));
        // cos is even, so psi + chi in [0, pi] covers every modulus.
        g.cos_gamma.push_back(std::cos(std::numbers::pi * double(i) / double(points - 1)));
    }
    return g;
}

// Best distance over the gamma axis for one (theta, phi) pair.
double scan_gamma(const Grid& g, double a1, double b1, double a2, double b2, double t1, double t2) {
    double best = 1e300;
    const double p1 = a1 * a1 + b1 * b1, q1 = 2.0 * a1 * b1;
    const double p2 = a2 * a2 + b2 * b2, q2 = 2.0 * a2 * b2;
    for (double cg : g.cos_gamma) {
        const double d1 = std::sqrt(std::max(0.0, p1 - q1 * cg));
        const double d2 = std::sqrt(std::max(0.0, p2 - q2 * cg));
        best = std::min(best, std::max(std::abs(d1 - t1), std::abs(d2 - t2)));
    }
    return best;
}

// diag(U S V): d1 = s1 ct cp - s2 st sp e^{i g}, d2 = s2 ct cp e^{i g} - s1 st sp.
double scan_row(const Grid& g, std::size_t i, const std::array<double, 2>& sigma,
                const std::array<double, 2>& alpha) {
    double best = 1e300;
    for (std::size_t j = 0; j < g.c.size(); ++j) {
        const double cc = g.c[i] * g.c[j], ss = g.s[i] * g.s[j];
        best = std::min(best, scan_gamma(g, sigma[0] * cc, sigma[1] * ss, sigma[1] * cc, sigma[0] * ss,
                                         std::abs(alpha[0]), std::abs(alpha[1])));
    }
    return best;
}

Matrix random_isometry(std::size_t n, std::size_t k, std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{seed, index};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    Matrix g = Matrix::Zero(Eigen::Index(n), Eigen::Index(k));
    for (Eigen::Index c = 0; c < g.cols(); ++c)
        for (Eigen::Index r = 0; r < g.rows(); ++r) g(r, c) = Complex(normal(rng), normal(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    return qr.householderQ() * Matrix::Identity(Eigen::Index(n), Eigen::Index(k));
}

double kyfan_sample(const Matrix& abs_t, std::size_t k, std::uint64_t seed, std::uint64_t index) {
    const std::size_t n = std::size_t(abs_t.rows());
    const Matrix q = random_isometry(n, k, seed, index);
    return (q.adjoint() * abs_t * q).trace().real() / double(n);
}

double expectation_margin(const Matrix& t) {
    const FactorElement te(t);
    const StepProfile d = expect_diagonal(te).modulus_profile();
    return submajorizes(d, singular_profile(te), 0.0).worst_margin;
}

}  // namespace

int configure_threads() {
    if (const char* env = std::getenv("MAJORANT_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) omp_set_num_threads(int(v));
    }
    return omp_get_max_threads();
}

GridSearchResult grid_search_2x2_serial(const std::array<double, 2>& sigma, const std::array<double, 2>& alpha,
                                        std::size_t points, double accept) {
    const Grid g = make_grid(points);
    GridSearchResult r;
    r.best_distance = 1e300;
    for (std::size_t i = 0; i < points; ++i) {
        r.best_distance = std::min(r.best_distance, scan_row(g, i, sigma, alpha));
        r.evaluated += std::uint64_t(points) * points;
        if (r.best_distance <= accept) break;
    }
    r.found = r.best_distance <= accept;
    return r;
}

GridSearchResult grid_search_2x2_parallel(const std::array<double, 2>& sigma, const std::array<double, 2>& alpha,
                                          std::size_t points, double accept) {
    const Grid g = make_grid(points);
    std::vector<double> rows(points, 1e300);
    // Rows are independent; the early exit only skips work, so the verdict
    // matches the serial scan.
    bool hit = false;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(points); ++i) {
        bool stop;
#pragma omp atomic read
        stop = hit;
        if (stop) continue;
        rows[std::size_t(i)] = scan_row(g, std::size_t(i), sigma, alpha);
        if (rows[std::size_t(i)] <= accept) {
#pragma omp atomic write
            hit = true;
        }
    }
    GridSearchResult r;
    r.best_distance = *std::min_element(rows.begin(), rows.end());
    for (double x : rows)
        if (x < 1e300) r.evaluated += std::uint64_t(points) * points;
    r.found = r.best_distance <= accept;
    return r;
}

std::vector<double> kyfan_samples_serial(const Matrix& abs_t, std::size_t k, std::size_t samples,
                                         std::uint64_t seed) {
    std::vector<double> out(samples);
    for (std::size_t i = 0; i < samples; ++i) out[i] = kyfan_sample(abs_t, k, seed, i);
    return out;
}

std::vector<double> kyfan_samples_parallel(const Matrix& abs_t, std::size_t k, std::size_t samples,
                                           std::uint64_t seed) {
    std::vector<double> out(samples);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(samples); ++i)
        out[std::size_t(i)] = kyfan_sample(abs_t, k, seed, std::uint64_t(i));
    return out;
}

std::vector<double> expectation_margins_serial(const std::vector<Matrix>& batch) {
    std::vector<double> out(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) out[i] = expectation_margin(batch[i]);
    return out;
}

std::vector<double> expectation_margins_parallel(const std::vector<Matrix>& batch) {
    std::vector<double> out(batch.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < std::ptrdiff_t(batch.size()); ++i)
        out[std::size_t(i)] = expectation_margin(batch[std::size_t(i)]);
    return out;
}

}  // namespace majorant
