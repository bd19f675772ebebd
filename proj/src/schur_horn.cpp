#include "majorant/schur_horn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace majorant {

namespace {

constexpr std::size_t kReorthonormalizeEvery = 64;

double scale_of(std::span<const double> v) {
    double s = 1.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

// Nearest orthogonal matrix; removes the drift accumulated by long rotation chains.
void reorthonormalize(Eigen::MatrixXd& g) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    g = svd.matrixU() * svd.matrixV().transpose();
}

// Core constructor. `lambda` is sorted non-increasingly and T = frame diag(lambda) frame*.
SchurHornResult realize_sorted(const std::vector<double>& lambda, const Matrix& frame,
                               std::span<const double> target, double tol) {
    const std::size_t n = lambda.size();
    if (target.size() != n) throw PreconditionError("realize_schur_horn: target length mismatch");

    const auto order = rearrangement_order(target);
    std::vector<double> alpha(n);
    for (std::size_t k = 0; k < n; ++k) alpha[k] = target[order[k]];
    const double scale = scale_of(lambda);
    if (!feasible_schur_horn(lambda, alpha, tol * scale)) {
        double acc = 0.0, worst = 0.0;
        std::size_t cell = 0;
        for (std::size_t k = 0; k < n; ++k) {
            acc += (lambda[k] - alpha[k]) / double(n);
            if (acc < worst) worst = acc, cell = k + 1;
        }
        if (worst == 0.0) worst = -std::abs(acc), cell = n;
        throw InfeasibleError("realize_schur_horn: target is not majorized by the spectrum", worst, cell);
    }

    // Working coordinates: coordinate c starts with value lambda[c]. Each
    // rotation fixes one coordinate to the largest outstanding target; the
    // still-active coordinates always carry a diagonal block.
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(Eigen::Index(n), Eigen::Index(n));
    std::vector<double> value = lambda;
    std::vector<std::size_t> active(n);
    std::iota(active.begin(), active.end(), std::size_t{0});
    std::vector<std::size_t> placed(n);

    SchurHornResult out;
    for (std::size_t step = 0; step + 1 < n; ++step) {
        const double a = alpha[step];
        std::stable_sort(active.begin(), active.end(),
                         [&](std::size_t i, std::size_t j) { return value[i] > value[j]; });
        std::size_t k = 0;
        while (k + 2 < active.size() && value[active[k + 1]] > a) ++k;
        const std::size_t i = active[k], j = active[k + 1];
        const double vi = value[i], vj = value[j];
        const double gap = vi - vj;
        const double c2 = gap > 0.0 ? std::clamp((a - vj) / gap, 0.0, 1.0) : 1.0;
        const double c = std::sqrt(c2), s = std::sqrt(1.0 - c2);
        if (s != 0.0) {
            const Eigen::RowVectorXd gi = g.row(Eigen::Index(i));
            const Eigen::RowVectorXd gj = g.row(Eigen::Index(j));
            g.row(Eigen::Index(i)) = c * gi - s * gj;
            g.row(Eigen::Index(j)) = s * gi + c * gj;
        }
        value[i] = c2 * vi + (1.0 - c2) * vj;
        value[j] = vi + vj - value[i];
        placed[i] = order[step];
        active.erase(active.begin() + std::ptrdiff_t(k));
        ++out.rotations;
        if (out.rotations % kReorthonormalizeEvery == 0) reorthonormalize(g);
    }
    placed[active.front()] = order[n - 1];

    Matrix perm = Matrix::Zero(Eigen::Index(n), Eigen::Index(n));
    for (std::size_t c = 0; c < n; ++c) perm(Eigen::Index(placed[c]), Eigen::Index(c)) = 1.0;
    out.unitary = perm * g.cast<Complex>() * frame.adjoint();
    const Eigen::VectorXd lam = Eigen::Map<const Eigen::VectorXd>(lambda.data(), Eigen::Index(n));
    const Matrix rotated = perm * g.cast<Complex>();
    out.conjugate = rotated * lam.cast<Complex>().asDiagonal() * rotated.adjoint();

    const double bound = double(n) * tol * scale;
    for (std::size_t k = 0; k < n; ++k)
        if (std::abs(out.conjugate(Eigen::Index(k), Eigen::Index(k)) - target[k]) > bound)
            throw InvariantError("realize_schur_horn: diagonal not reached at cell " + std::to_string(k));
    return out;
}

}  // namespace

bool feasible_schur_horn(std::span<const double> lambda, std::span<const double> alpha, double tol) {
    if (lambda.size() != alpha.size()) throw PreconditionError("feasible_schur_horn: length mismatch");
    if (!std::is_sorted(lambda.begin(), lambda.end(), std::greater<>{}) ||
        !std::is_sorted(alpha.begin(), alpha.end(), std::greater<>{}))
        throw PreconditionError("feasible_schur_horn: inputs must be sorted non-increasingly");
    if (lambda.empty()) return true;
    const double n = double(lambda.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        acc += (lambda[k] - alpha[k]) / n;
        if (acc < -tol) return false;
    }
    return std::abs(acc) <= tol;
}

SchurHornResult realize_schur_horn(const FactorElement& source, std::span<const double> target, double tol) {
    const std::size_t n = source.dim();
    if (target.size() != n) throw PreconditionError("realize_schur_horn: target length mismatch");
    const Matrix& t = source.matrix();
    const SpectralResolution spec = spectral_resolution(source, tol);

    bool already = true;
    const double bound = double(n) * tol * scale_of(spec.eigenvalues);
    for (std::size_t k = 0; k < n && already; ++k)
        already = std::abs(t(Eigen::Index(k), Eigen::Index(k)) - target[k]) <= bound;
    if (already) {
        return {Matrix::Identity(Eigen::Index(n), Eigen::Index(n)), t, 0};
    }
    SchurHornResult out = realize_sorted(spec.eigenvalues, spec.frame, target, tol);
    out.conjugate = out.unitary * t * out.unitary.adjoint();
    return out;
}

SchurHornResult realize_schur_horn(std::span<const double> eigenvalues, std::span<const double> target,
                                   double tol) {
    const std::size_t n = eigenvalues.size();
    if (n == 0) throw PreconditionError("realize_schur_horn: empty spectrum");
    // Sort the spectrum and carry the permutation in the frame.
    const auto order = rearrangement_order(eigenvalues);
    std::vector<double> lambda(n);
    Matrix frame = Matrix::Zero(Eigen::Index(n), Eigen::Index(n));
    for (std::size_t k = 0; k < n; ++k) {
        lambda[k] = eigenvalues[order[k]];
        frame(Eigen::Index(order[k]), Eigen::Index(k)) = 1.0;
    }
    return realize_sorted(lambda, frame, target, tol);
}

SignExpectation realize_sign_expectation(std::span<const double> b, double tol) {
    const std::size_t n = b.size();
    if (n == 0) throw PreconditionError("realize_sign_expectation: empty diagonal");
    SignExpectation out;
    out.adjusted.assign(b.begin(), b.end());
    for (double& x : out.adjusted) {
        if (!(std::abs(x) <= 1.0 + tol))
            throw PreconditionError("realize_sign_expectation: entries must lie in [-1, 1]");
        x = std::clamp(x, -1.0, 1.0);
    }

    // tau(B) = 2 beta - 1 with n beta an integer m: the trace of a +-1
    // spectrum lives on the lattice {2m - n}. Snap to the nearest point.
    const double sum = std::accumulate(out.adjusted.begin(), out.adjusted.end(), 0.0);
    const double m_exact = 0.5 * (sum + double(n));
    // Ties round down, which shrinks the entries.
    const double m = std::clamp(std::ceil(m_exact - 0.5 - 1e-12), 0.0, double(n));
    double delta = (2.0 * m - double(n)) - sum;
    if (std::abs(delta) > 2.0 * double(n) * tol) {
        // Move entries toward zero first: lower the largest entries when the
        // sum must drop, raise the smallest ones when it must grow.
        const auto order = rearrangement_order(out.adjusted);
        if (delta < 0.0) {
            for (std::size_t k = 0; k < n && delta < 0.0; ++k) {
                double& x = out.adjusted[order[k]];
                const double step = std::min(-delta, x + 1.0);
                x -= step;
                delta += step;
            }
        } else {
            for (std::size_t k = n; k-- > 0 && delta > 0.0;) {
                double& x = out.adjusted[order[k]];
                const double step = std::min(delta, 1.0 - x);
                x += step;
                delta -= step;
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) out.perturbation += std::abs(out.adjusted[k] - b[k]);

    out.plus_count = std::size_t(m);
    out.beta = m / double(n);
    std::vector<double> spectrum(n, -1.0);
    std::fill_n(spectrum.begin(), out.plus_count, 1.0);
    // Remaining trace mismatch is pure rounding; absorb it so the
    // majorization test sees exact equality.
    const double rest = (2.0 * m - double(n)) - std::accumulate(out.adjusted.begin(), out.adjusted.end(), 0.0);
    out.adjusted[rearrangement_order(out.adjusted)[n / 2]] += rest;
    out.unitary = realize_schur_horn(spectrum, out.adjusted, tol).conjugate;
    return out;
}

}  // namespace majorant
