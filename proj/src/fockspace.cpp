#include "weakmeas/fockspace.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "weakmeas/errors.hpp"

namespace weakmeas {

namespace {

void require_dim(int dim, int minimum = 1) {
    if (dim < minimum) {
        throw InvalidDimension("Fock dimension " + std::to_string(dim) + " is below the minimum " +
                               std::to_string(minimum));
    }
}

std::vector<std::string> truncation_notes(double load, int dim, TruncationPolicy policy) {
    std::vector<std::string> notes;
    if (load > static_cast<double>(dim) / 4.0) {
        std::ostringstream msg;
        msg << "truncation: |alpha|^2 + n_th = " << load << " exceeds dim/4 = " << dim / 4.0;
        if (policy.strict) throw TruncationError(msg.str());
        notes.push_back(msg.str());
    }
    return notes;
}

ComplexMatrix annihilation_matrix(int dim) {
    ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

}  // namespace

DensityOperator DensityOperator::from_matrix(ComplexMatrix matrix, std::vector<std::string> warnings) {
    if (matrix.rows() != matrix.cols()) throw InvalidDimension("density operator must be square");
    require_dim(static_cast<int>(matrix.rows()));
    const Complex trace = matrix.trace();
    if (std::abs(trace - Complex(1.0)) > kTraceTolerance) {
        std::ostringstream msg;
        msg << "density operator trace " << trace << " differs from 1";
        throw InvalidState(msg.str());
    }
    const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermiticityTolerance) {
        throw InvalidState("density operator is not Hermitian (defect " + std::to_string(herm) + ")");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix, Eigen::EigenvaluesOnly);
    const double smallest = solver.eigenvalues().minCoeff();
    if (smallest < -kPositivityTolerance) {
        throw InvalidState("density operator has negative eigenvalue " + std::to_string(smallest));
    }
    return DensityOperator(std::move(matrix), std::move(warnings));
}

DensityOperator DensityOperator::normalized(ComplexMatrix matrix, std::vector<std::string> warnings) {
    if (matrix.rows() != matrix.cols()) throw InvalidDimension("density operator must be square");
    ComplexMatrix herm = 0.5 * (matrix + matrix.adjoint());
    const double trace = herm.trace().real();
    if (!(trace > 0.0)) throw InvalidState("cannot normalize a matrix with nonpositive trace");
    herm /= trace;
    return from_matrix(std::move(herm), std::move(warnings));
}

double DensityOperator::mean_occupation() const {
    double mean = 0.0;
    for (int n = 0; n < dim(); ++n) mean += static_cast<double>(n) * matrix_(n, n).real();
    return mean;
}

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

int DensityOperator::highest_populated_level(double threshold) const {
    for (int n = dim() - 1; n >= 0; --n) {
        if (matrix_(n, n).real() > threshold) return n;
    }
    return 0;
}

Observable Observable::hermitian(ComplexMatrix matrix, double spectrum_lower_bound) {
    if (matrix.rows() != matrix.cols()) throw InvalidDimension("observable must be square");
    require_dim(static_cast<int>(matrix.rows()));
    const double herm = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermiticityTolerance) throw DomainError("observable is not Hermitian");
    if (std::isfinite(spectrum_lower_bound)) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < spectrum_lower_bound - 1e-10) {
            throw DomainError("spectrum_lower_bound exceeds the smallest eigenvalue");
        }
    }
    return Observable(std::move(matrix), spectrum_lower_bound, true, std::nullopt);
}

Observable make_operator(OperatorKind kind, int dim) {
    require_dim(dim, 2);
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    const ComplexMatrix a = annihilation_matrix(dim);
    const Complex i(0.0, 1.0);
    switch (kind) {
        case OperatorKind::annihilation:
            return Observable(a, -inf, false, kind);
        case OperatorKind::creation:
            return Observable(a.adjoint(), -inf, false, kind);
        case OperatorKind::number: {
            ComplexMatrix n = ComplexMatrix::Zero(dim, dim);
            for (int k = 0; k < dim; ++k) n(k, k) = k;
            return Observable(std::move(n), 0.0, true, kind);
        }
        case OperatorKind::position:
            return Observable(inv_sqrt2 * (a + a.adjoint()), -inf, true, kind);
        case OperatorKind::momentum:
            return Observable((-i * inv_sqrt2) * (a - a.adjoint()), -inf, true, kind);
        case OperatorKind::momentum_squared: {
            // p² = (2n+1)/2 − (a² + a†²)/2, exact matrix elements.
            ComplexMatrix p2 = ComplexMatrix::Zero(dim, dim);
            for (int k = 0; k < dim; ++k) {
                p2(k, k) = k + 0.5;
                if (k + 2 < dim) {
                    const double off = -0.5 * std::sqrt(static_cast<double>((k + 1) * (k + 2)));
                    p2(k, k + 2) = off;
                    p2(k + 2, k) = off;
                }
            }
            return Observable(std::move(p2), 0.0, true, kind);
        }
        case OperatorKind::hamiltonian: {
            ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
            for (int k = 0; k < dim; ++k) h(k, k) = k + 0.5;
            return Observable(std::move(h), 0.5, true, kind);
        }
        case OperatorKind::identity:
            return Observable(ComplexMatrix::Identity(dim, dim), 1.0, true, kind);
    }
    throw DomainError("unknown operator kind");
}

Complex amplitude_from_quadratures(double alpha_r, double alpha_i) {
    return Complex(alpha_r, alpha_i) / std::numbers::sqrt2;
}

DensityOperator fock_state(int n, int dim) {
    require_dim(dim);
    if (n < 0 || n >= dim) throw InvalidDimension("Fock level outside the truncated basis");
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(n, n) = 1.0;
    return DensityOperator::from_matrix(std::move(m));
}

DensityOperator coherent_state(Complex alpha, int dim, TruncationPolicy policy) {
    require_dim(dim);
    auto notes = truncation_notes(std::norm(alpha), dim, policy);
    ComplexVector c(dim);
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < dim; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    c /= c.norm();
    return DensityOperator::normalized(c * c.adjoint(), std::move(notes));
}

ComplexMatrix displacement_operator(Complex alpha, int dim) {
    require_dim(dim);
    const ComplexMatrix a = annihilation_matrix(dim);
    const ComplexMatrix generator = alpha * a.adjoint() - std::conj(alpha) * a;
    return generator.exp();
}

DensityOperator displaced_thermal_state(Complex alpha, double n_th, int dim, TruncationPolicy policy) {
    require_dim(dim);
    if (!(n_th >= 0.0)) throw DomainError("n_th must be nonnegative");
    auto notes = truncation_notes(std::norm(alpha) + n_th, dim, policy);

    // Exponentiate on a padded basis so the truncation edge of the generator
    // does not reach the retained block.
    const int work = 2 * dim + 10;
    ComplexMatrix thermal = ComplexMatrix::Zero(work, work);
    const double ratio = n_th / (1.0 + n_th);
    double weight = 1.0 / (1.0 + n_th);
    for (int n = 0; n < work; ++n) {
        thermal(n, n) = weight;
        weight *= ratio;
    }
    ComplexMatrix rho = thermal;
    if (alpha != Complex(0.0)) {
        const ComplexMatrix d = displacement_operator(alpha, work);
        rho = d * thermal * d.adjoint();
    }
    return DensityOperator::normalized(rho.topLeftCorner(dim, dim), std::move(notes));
}

double quadrature_wavefunction(int n, double q) {
    if (n < 0) throw DomainError("Fock index must be nonnegative");
    double prev = 0.0;
    double cur = std::exp(-0.5 * q * q) / std::sqrt(std::sqrt(std::numbers::pi));
    for (int k = 0; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double next = std::sqrt(2.0 / (kd + 1.0)) * q * cur - std::sqrt(kd / (kd + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

RealVector hermite_functions(int dim, double q) {
    require_dim(dim);
    RealVector psi(dim);
    psi(0) = std::exp(-0.5 * q * q) / std::sqrt(std::sqrt(std::numbers::pi));
    if (dim > 1) psi(1) = std::numbers::sqrt2 * q * psi(0);
    for (int k = 1; k + 1 < dim; ++k) {
        const double kd = static_cast<double>(k);
        psi(k + 1) = std::sqrt(2.0 / (kd + 1.0)) * q * psi(k) - std::sqrt(kd / (kd + 1.0)) * psi(k - 1);
    }
    return psi;
}

RealMatrix hermite_matrix(int dim, std::span<const double> points) {
    RealMatrix out(dim, static_cast<Eigen::Index>(points.size()));
    for (std::size_t j = 0; j < points.size(); ++j) {
        out.col(static_cast<Eigen::Index>(j)) = hermite_functions(dim, points[j]);
    }
    return out;
}

Complex position_kernel(const DensityOperator& rho, double q, double q2) {
    const ComplexVector left = hermite_functions(rho.dim(), q).cast<Complex>();
    const ComplexVector right = hermite_functions(rho.dim(), q2).cast<Complex>();
    return left.transpose() * rho.matrix() * right;
}

RealVector position_density(const DensityOperator& rho, std::span<const double> points) {
    const RealMatrix psi = hermite_matrix(rho.dim(), points);
    const ComplexMatrix tmp = rho.matrix() * psi.cast<Complex>();
    RealVector out(static_cast<Eigen::Index>(points.size()));
    for (Eigen::Index j = 0; j < out.size(); ++j) {
        out(j) = (psi.col(j).cast<Complex>().transpose() * tmp.col(j)).value().real();
    }
    return out;
}

GlauberP::GlauberP(Complex alpha, double n_th) : alpha_(alpha), n_th_(n_th) {
    if (n_th == 0.0) {
        throw DomainError("the P function of a coherent state is a delta distribution, not a function");
    }
    if (!(n_th > 0.0)) throw DomainError("n_th must be positive");
}

double GlauberP::operator()(Complex gamma) const {
    return std::exp(-std::norm(gamma - alpha_) / n_th_) / (std::numbers::pi * n_th_);
}

GlauberP glauber_p_displaced_thermal(Complex alpha, double n_th) { return GlauberP(alpha, n_th); }

}  // namespace weakmeas
