#include "weakmeas/quasiprob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "weakmeas/errors.hpp"

namespace weakmeas {

namespace {

const Complex kI(0.0, 1.0);

Complex i_power(int n) {
    switch (n % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

/// Exact ⟨q|ν|p⟩/⟨q|p⟩ for the operators built by make_operator.
Complex momentum_symbol(OperatorKind kind, double q, double p) {
    switch (kind) {
        case OperatorKind::position: return q;
        case OperatorKind::momentum: return p;
        case OperatorKind::momentum_squared: return p * p;
        case OperatorKind::hamiltonian: return 0.5 * (p * p + q * q);
        case OperatorKind::number: return 0.5 * (p * p + q * q) - 0.5;
        case OperatorKind::annihilation: return Complex(q, p) / std::numbers::sqrt2;
        case OperatorKind::creation: return Complex(q, -p) / std::numbers::sqrt2;
        case OperatorKind::identity: return 1.0;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> node_points(const std::vector<SmearingNode>& nodes) {
    std::vector<double> points(nodes.size());
    std::transform(nodes.begin(), nodes.end(), points.begin(), [](const SmearingNode& n) { return n.point; });
    return points;
}

}  // namespace

XiBasis XiBasis::fock(int dim) {
    if (dim < 1) throw InvalidDimension("fock basis needs dim >= 1");
    std::vector<double> labels(static_cast<std::size_t>(dim));
    for (int n = 0; n < dim; ++n) labels[static_cast<std::size_t>(n)] = n;
    std::vector<double> weights(labels.size(), 1.0);
    return XiBasis(XiBasisKind::fock, std::move(labels), std::move(weights), {});
}

XiBasis XiBasis::momentum(QuadratureGrid grid) {
    std::vector<double> labels(grid.points().begin(), grid.points().end());
    std::vector<double> weights(grid.weights().begin(), grid.weights().end());
    return XiBasis(XiBasisKind::momentum, std::move(labels), std::move(weights), {});
}

XiBasis XiBasis::custom(ComplexMatrix columns, std::vector<double> labels) {
    if (static_cast<std::size_t>(columns.cols()) != labels.size()) {
        throw DomainError("custom basis: one label per column required");
    }
    const ComplexMatrix gram = columns.adjoint() * columns;
    if ((gram - ComplexMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() > 1e-10) {
        throw DomainError("custom basis columns are not orthonormal");
    }
    std::vector<double> weights(labels.size(), 1.0);
    return XiBasis(XiBasisKind::custom, std::move(labels), std::move(weights), std::move(columns));
}

ComplexMatrix XiBasis::fock_vectors(int dim) const {
    const auto n_xi = static_cast<Eigen::Index>(size());
    switch (kind_) {
        case XiBasisKind::fock: {
            ComplexMatrix out = ComplexMatrix::Zero(dim, n_xi);
            for (Eigen::Index k = 0; k < std::min<Eigen::Index>(dim, n_xi); ++k) out(k, k) = 1.0;
            return out;
        }
        case XiBasisKind::momentum: {
            // ⟨n|p⟩ = conj((−i)ⁿ ψ_n(p)) = iⁿ ψ_n(p).
            ComplexMatrix out = hermite_matrix(dim, labels_).cast<Complex>();
            for (int n = 0; n < dim; ++n) out.row(n) *= i_power(n);
            return out;
        }
        case XiBasisKind::custom: {
            if (columns_.rows() > dim) throw InvalidDimension("custom basis is larger than the state space");
            ComplexMatrix out = ComplexMatrix::Zero(dim, n_xi);
            out.topRows(columns_.rows()) = columns_;
            return out;
        }
    }
    throw DomainError("unknown basis kind");
}

ComplexMatrix XiBasis::overlaps(std::span<const double> phi_points) const {
    const auto n_phi = static_cast<Eigen::Index>(phi_points.size());
    const auto n_xi = static_cast<Eigen::Index>(size());
    switch (kind_) {
        case XiBasisKind::fock:
            return hermite_matrix(static_cast<int>(n_xi), phi_points).transpose().cast<Complex>();
        case XiBasisKind::momentum: {
            ComplexMatrix out(n_phi, n_xi);
            const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
            for (Eigen::Index j = 0; j < n_phi; ++j) {
                for (Eigen::Index k = 0; k < n_xi; ++k) {
                    out(j, k) = norm * std::exp(kI * (phi_points[static_cast<std::size_t>(j)] *
                                                      labels_[static_cast<std::size_t>(k)]));
                }
            }
            return out;
        }
        case XiBasisKind::custom: {
            const RealMatrix psi = hermite_matrix(static_cast<int>(columns_.rows()), phi_points);
            return psi.transpose().cast<Complex>() * columns_;
        }
    }
    throw DomainError("unknown basis kind");
}

double identity_resolution_defect(const QuadratureGrid& position_grid, int dim) {
    const RealMatrix psi = hermite_matrix(dim, position_grid.points());
    const Eigen::Map<const RealVector> w(position_grid.weights().data(),
                                         static_cast<Eigen::Index>(position_grid.size()));
    const RealMatrix resolved = psi * w.asDiagonal() * psi.transpose();
    return (resolved - RealMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

double identity_resolution_defect(const XiBasis& basis, int dim) {
    const ComplexMatrix v = basis.fock_vectors(dim);
    const Eigen::Map<const RealVector> w(basis.weights().data(), static_cast<Eigen::Index>(basis.size()));
    const ComplexMatrix resolved = v * w.cast<Complex>().asDiagonal() * v.adjoint();
    if (basis.kind() == XiBasisKind::custom) {
        // Compare against the projector onto the span instead of the identity.
        return (resolved * v - v).cwiseAbs().maxCoeff();
    }
    return (resolved - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

std::string to_string(DistributionKind kind) {
    switch (kind) {
        case DistributionKind::S: return "S";
        case DistributionKind::T: return "T";
        case DistributionKind::S_eta: return "S_eta";
        case DistributionKind::T_eta: return "T_eta";
    }
    return "?";
}

ComplexVector QuasiDistribution::marginal_over_xi() const {
    const auto& w = xi_basis().weights();
    ComplexVector out = ComplexVector::Zero(values_.rows());
    for (Eigen::Index k = 0; k < values_.cols(); ++k) out += w[static_cast<std::size_t>(k)] * values_.col(k);
    return out;
}

ComplexVector QuasiDistribution::marginal_over_phi() const {
    const auto w = phi_grid().weights();
    ComplexVector out = ComplexVector::Zero(values_.cols());
    for (Eigen::Index j = 0; j < values_.rows(); ++j) {
        out += w[static_cast<std::size_t>(j)] * values_.row(j).transpose();
    }
    return out;
}

namespace {

// ⟨ξ_k|ρ|φ_j⟩ as a (φ, ξ) matrix.
ComplexMatrix coherences(const DensityOperator& rho, std::span<const double> phi_points, const XiBasis& xi) {
    const ComplexMatrix x = xi.fock_vectors(rho.dim());
    const ComplexMatrix psi = hermite_matrix(rho.dim(), phi_points).cast<Complex>();
    return (x.adjoint() * rho.matrix() * psi).transpose();
}

}  // namespace

ComplexMatrix s_values(const DensityOperator& rho, std::span<const double> phi_points, const XiBasis& xi) {
    return xi.overlaps(phi_points).cwiseProduct(coherences(rho, phi_points, xi));
}

QuasiDistribution s_distribution(const DensityOperator& rho, const BasisPair& basis) {
    return QuasiDistribution(s_values(rho, basis.phi.points(), basis.xi), basis, DistributionKind::S, rho);
}

QuasiDistribution t_distribution(const QuasiDistribution& s) {
    const DistributionKind kind =
        (s.kind() == DistributionKind::S_eta || s.kind() == DistributionKind::T_eta) ? DistributionKind::T_eta
                                                                                     : DistributionKind::T;
    return QuasiDistribution(s.values().real().cast<Complex>(), s.basis(), kind, s.source());
}

double Representation::max_imaginary() const {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < values.rows(); ++j) {
        for (Eigen::Index k = 0; k < values.cols(); ++k) {
            if (defined(j, k)) worst = std::max(worst, std::abs(values(j, k).imag()));
        }
    }
    return worst;
}

ComplexMatrix observable_matrix_elements(const Observable& nu, std::span<const double> phi_points,
                                         const XiBasis& xi) {
    if (xi.kind() == XiBasisKind::momentum && nu.kind()) {
        ComplexMatrix out = xi.overlaps(phi_points);
        for (Eigen::Index j = 0; j < out.rows(); ++j) {
            for (Eigen::Index k = 0; k < out.cols(); ++k) {
                out(j, k) *= momentum_symbol(*nu.kind(), phi_points[static_cast<std::size_t>(j)],
                                             xi.label(static_cast<std::size_t>(k)));
            }
        }
        return out;
    }
    const ComplexMatrix x = xi.fock_vectors(nu.dim());
    const RealMatrix psi = hermite_matrix(nu.dim(), phi_points);
    return psi.transpose().cast<Complex>() * nu.matrix() * x;
}

Representation s_representation(const Observable& nu, const BasisPair& basis) {
    const ComplexMatrix overlap = basis.xi.overlaps(basis.phi.points());
    const ComplexMatrix elements = observable_matrix_elements(nu, basis.phi.points(), basis.xi);
    const double cutoff = kOverlapThreshold * overlap.cwiseAbs().maxCoeff();
    Representation rep;
    rep.values.resize(overlap.rows(), overlap.cols());
    rep.defined.resize(overlap.rows(), overlap.cols());
    for (Eigen::Index j = 0; j < overlap.rows(); ++j) {
        for (Eigen::Index k = 0; k < overlap.cols(); ++k) {
            const bool ok = std::abs(overlap(j, k)) >= cutoff && std::abs(overlap(j, k)) > 0.0;
            rep.defined(j, k) = ok;
            rep.values(j, k) = ok ? elements(j, k) / overlap(j, k)
                                  : Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
        }
    }
    return rep;
}

QuasiDistribution effective_distribution(const QuasiDistribution& s, const DetectorKernel& kernel) {
    const bool real_input = s.is_real_kind();
    const DistributionKind kind = real_input ? DistributionKind::T_eta : DistributionKind::S_eta;
    if (kernel.kind() == KernelKind::delta) return QuasiDistribution(s.values(), s.basis(), kind, s.source());

    const QuadratureGrid& grid = s.phi_grid();
    // Smearing integrals run over the state's support, not the output grid.
    const QuadratureGrid support = default_state_grid(s.source());
    std::vector<double> points;
    std::vector<std::vector<SmearingNode>> per_row(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        per_row[j] = kernel.smearing_nodes(grid.point(j), support);
        const auto p = node_points(per_row[j]);
        points.insert(points.end(), p.begin(), p.end());
    }
    const ComplexMatrix raw = s_values(s.source(), points, s.xi_basis());
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(grid.size()), raw.cols());
    Eigen::Index offset = 0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        for (const auto& node : per_row[j]) {
            out.row(static_cast<Eigen::Index>(j)) += node.weight * raw.row(offset++);
        }
    }
    if (real_input) out = out.real().cast<Complex>();
    return QuasiDistribution(std::move(out), s.basis(), kind, s.source());
}

NegativityReport negativity_scan(const RealMatrix& values, std::span<const double> phi,
                                 std::span<const double> phi_weights, std::span<const double> xi,
                                 std::span<const double> xi_weights) {
    NegativityReport report;
    report.min_value = std::numeric_limits<double>::infinity();
    double negative = 0.0;
    double total = 0.0;
    for (Eigen::Index j = 0; j < values.rows(); ++j) {
        for (Eigen::Index k = 0; k < values.cols(); ++k) {
            const double v = values(j, k);
            if (v < report.min_value) {
                report.min_value = v;
                report.min_phi = phi[static_cast<std::size_t>(j)];
                report.min_xi = xi[static_cast<std::size_t>(k)];
            }
            const double mass = phi_weights[static_cast<std::size_t>(j)] * xi_weights[static_cast<std::size_t>(k)] *
                                std::abs(v);
            total += mass;
            if (v < 0.0) negative += mass;
        }
    }
    report.negative_mass_fraction = total > 0.0 ? negative / total : 0.0;
    return report;
}

NegativityReport negativity_scan(const QuasiDistribution& t) {
    return negativity_scan(t.values().real(), t.phi_grid().points(), t.phi_grid().weights(), t.xi_basis().labels(),
                           t.xi_basis().weights());
}

Complex conditional_weak_value(const Observable& nu, const DensityOperator& rho, const XiBasis& xi,
                               const DetectorKernel& kernel, double phi, const QuadratureGrid& grid) {
    const auto nodes = kernel.smearing_nodes(phi, grid);
    const auto points = node_points(nodes);
    const ComplexMatrix overlap = xi.overlaps(points);
    const ComplexMatrix coherence = coherences(rho, points, xi);
    const ComplexMatrix elements = observable_matrix_elements(nu, points, xi);
    Complex num = 0.0;
    Complex den = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        for (std::size_t k = 0; k < xi.size(); ++k) {
            const auto c = static_cast<Eigen::Index>(k);
            const double w = nodes[i].weight * xi.weight(k);
            // S_ν S = ⟨φ|ν|ξ⟩⟨ξ|ρ|φ⟩ stays finite where the overlap vanishes.
            num += w * elements(r, c) * coherence(r, c);
            den += w * overlap(r, c) * coherence(r, c);
        }
    }
    if (std::abs(den) <= 1e-14) throw UndefinedWeakValue("postselection probability vanishes");
    return num / den;
}

double conditional_real_weak_value(const Observable& nu, const DensityOperator& rho, const XiBasis& xi,
                                   const DetectorKernel& kernel, double phi, const QuadratureGrid& grid) {
    const auto nodes = kernel.smearing_nodes(phi, grid);
    const auto points = node_points(nodes);
    const ComplexMatrix s = s_values(rho, points, xi);
    const ComplexMatrix overlap = xi.overlaps(points);
    const ComplexMatrix elements = observable_matrix_elements(nu, points, xi);
    const double cutoff = kOverlapThreshold * overlap.cwiseAbs().maxCoeff();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto r = static_cast<Eigen::Index>(i);
        for (std::size_t k = 0; k < xi.size(); ++k) {
            const auto c = static_cast<Eigen::Index>(k);
            const double w = nodes[i].weight * xi.weight(k);
            const double t = s(r, c).real();
            den += w * t;
            if (std::abs(overlap(r, c)) >= cutoff && overlap(r, c) != Complex(0.0)) {
                num += w * (elements(r, c) / overlap(r, c)).real() * t;
            }
        }
    }
    if (std::abs(den) <= 1e-14) throw UndefinedWeakValue("postselection probability vanishes");
    return num / den;
}

}  // namespace weakmeas
