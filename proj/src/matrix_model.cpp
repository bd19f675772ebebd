#include "majorant/matrix_model.hpp"

#include <algorithm>
#include <cmath>

namespace majorant {

namespace {

bool all_finite(const Matrix& m) {
    return m.real().allFinite() && m.imag().allFinite();
}

double self_adjoint_threshold(std::size_t n, double tol) { return double(n) * tol; }

}  // namespace

FactorElement::FactorElement(Matrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols())
        throw PreconditionError("FactorElement must be a non-empty square matrix");
    if (!all_finite(entries_)) throw PreconditionError("FactorElement entries must be finite");
}

FactorElement FactorElement::identity(std::size_t n) {
    return FactorElement(Matrix::Identity(Eigen::Index(n), Eigen::Index(n)));
}

Complex FactorElement::trace() const { return entries_.trace() / double(dim()); }

DiagonalElement::DiagonalElement(Vector diag) : diag_(std::move(diag)) {
    if (diag_.size() == 0) throw PreconditionError("DiagonalElement must be non-empty");
    if (!diag_.real().allFinite() || !diag_.imag().allFinite())
        throw PreconditionError("DiagonalElement entries must be finite");
}

DiagonalElement::DiagonalElement(const std::vector<double>& diag)
    : DiagonalElement(Vector(Eigen::Map<const Eigen::VectorXd>(diag.data(), Eigen::Index(diag.size()))
                                 .cast<Complex>())) {}

StepProfile DiagonalElement::modulus_profile() const {
    std::vector<double> v(dim());
    for (std::size_t k = 0; k < dim(); ++k) v[k] = std::abs(diag_(Eigen::Index(k)));
    return StepProfile(std::move(v));
}

Matrix SpectralResolution::projection(const BorelCellSet& x) const {
    const auto n = Eigen::Index(dim());
    if (x.resolution() != dim()) throw PreconditionError("projection: cell set resolution mismatch");
    Matrix p = Matrix::Zero(n, n);
    for (std::size_t k : x) {
        const auto col = frame.col(Eigen::Index(k));
        p += col * col.adjoint();
    }
    return p;
}

double operator_norm(const Matrix& x) {
    if (x.size() == 0) return 0.0;
    Eigen::BDCSVD<Matrix> svd(x);
    return svd.singularValues()(0);
}

double normalized_two_norm(const Matrix& x) {
    if (x.rows() == 0) return 0.0;
    return std::sqrt(x.squaredNorm() / double(x.rows()));
}

double normalized_trace_norm(const Matrix& x) {
    if (x.rows() == 0) return 0.0;
    Eigen::BDCSVD<Matrix> svd(x);
    return svd.singularValues().sum() / double(x.rows());
}

double unitarity_defect(const Matrix& u) {
    const Matrix g = u.adjoint() * u - Matrix::Identity(u.cols(), u.cols());
    return g.cwiseAbs().maxCoeff();
}

bool is_self_adjoint(const Matrix& x, double tol) {
    if (x.rows() != x.cols()) return false;
    return (x - x.adjoint()).cwiseAbs().maxCoeff() <= self_adjoint_threshold(std::size_t(x.rows()), tol);
}

SpectralResolution spectral_resolution(const FactorElement& t, double tol) {
    const Matrix& m = t.matrix();
    if (!is_self_adjoint(m, tol)) throw PreconditionError("spectral_resolution: element is not self-adjoint");
    const Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
    if (es.info() != Eigen::Success) throw InvariantError("self-adjoint eigensolver failed");

    // Eigen returns ascending eigenvalues; present them non-increasing with
    // the stable tie order of rearrangement_order.
    const auto n = std::size_t(m.rows());
    std::vector<double> ascending(es.eigenvalues().data(), es.eigenvalues().data() + n);
    const auto order = rearrangement_order(ascending);
    SpectralResolution res;
    res.eigenvalues.resize(n);
    res.frame.resize(Eigen::Index(n), Eigen::Index(n));
    for (std::size_t k = 0; k < n; ++k) {
        res.eigenvalues[k] = ascending[order[k]];
        res.frame.col(Eigen::Index(k)) = es.eigenvectors().col(Eigen::Index(order[k]));
    }
    return res;
}

StepProfile singular_profile(const FactorElement& t) {
    Eigen::BDCSVD<Matrix> svd(t.matrix());
    const auto& s = svd.singularValues();
    return StepProfile(std::vector<double>(s.data(), s.data() + s.size()));
}

StepProfile eigenvalue_profile(const FactorElement& t, double tol) {
    return StepProfile(spectral_resolution(t, tol).eigenvalues);
}

Matrix spectral_projection(const FactorElement& t, const BorelCellSet& x, double tol) {
    return spectral_resolution(t, tol).projection(x);
}

DiagonalElement expect_diagonal(const FactorElement& t) { return DiagonalElement(Vector(t.matrix().diagonal())); }

PolarDecomposition polar(const FactorElement& t, double tol) {
    const Matrix& m = t.matrix();
    const auto n = m.rows();
    if (is_self_adjoint(m, tol)) {
        const Matrix sym = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
        if (es.eigenvalues().minCoeff() >= -double(n) * tol)
            return {Matrix::Identity(n, n), sym};
    }
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Matrix& u = svd.matrixU();
    const Matrix& v = svd.matrixV();
    PolarDecomposition pd;
    pd.unitary = u * v.adjoint();
    pd.positive = v * svd.singularValues().cast<Complex>().asDiagonal() * v.adjoint();
    return pd;
}

bool in_two_sided_orbit(const FactorElement& s, const FactorElement& t, double tol) {
    if (s.dim() != t.dim()) throw PreconditionError("in_two_sided_orbit: dimension mismatch");
    const StepProfile a = singular_profile(s);
    const StepProfile b = singular_profile(t);
    for (std::size_t k = 0; k < a.size(); ++k)
        if (std::abs(a[k] - b[k]) > tol) return false;
    return true;
}

bool in_unitary_orbit(const FactorElement& s, const FactorElement& t, double tol) {
    if (s.dim() != t.dim()) throw PreconditionError("in_unitary_orbit: dimension mismatch");
    const StepProfile a = eigenvalue_profile(s, tol);
    const StepProfile b = eigenvalue_profile(t, tol);
    for (std::size_t k = 0; k < a.size(); ++k)
        if (std::abs(a[k] - b[k]) > tol) return false;
    return true;
}

PositivityCheck positivity_from_trace_check(const FactorElement& s, const FactorElement& t, double tol) {
    if (s.dim() != t.dim()) throw PreconditionError("positivity_from_trace_check: dimension mismatch");
    const double n = double(s.dim());
    if (!is_self_adjoint(t.matrix(), tol) || eigenvalue_profile(t, tol).min() < -n * tol)
        throw PreconditionError("positivity_from_trace_check: T must be positive");

    PositivityCheck out;
    const Matrix& sm = s.matrix();
    const Matrix herm = 0.5 * (sm + sm.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
    out.positive = is_self_adjoint(sm, tol) && es.eigenvalues().minCoeff() >= -n * tol;
    out.hypotheses_hold = in_two_sided_orbit(s, t, n * tol) && std::abs(s.trace() - t.trace()) <= n * tol;
    if (out.hypotheses_hold && !out.positive)
        throw InvariantError("positivity_from_trace_check: equal singular values and trace but S not positive");
    return out;
}

}  // namespace majorant
