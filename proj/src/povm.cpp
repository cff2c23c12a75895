#include "weakmeas/povm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weakmeas/errors.hpp"

namespace weakmeas {

namespace {

double normal_pdf(double x, double mean, double sigma) {
    const double z = (x - mean) / sigma;
    return std::exp(-0.5 * z * z) / (std::sqrt(2.0 * std::numbers::pi) * sigma);
}

double max_spacing(const QuadratureGrid& grid) {
    double h = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) h = std::max(h, grid.point(i) - grid.point(i - 1));
    return h;
}

}  // namespace

DetectorKernel DetectorKernel::delta() { return DetectorKernel(KernelKind::delta, 0.0, nullptr); }

DetectorKernel DetectorKernel::gaussian(double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw DomainError("kernel width must be finite and >= 0");
    if (sigma == 0.0) return delta();
    return DetectorKernel(KernelKind::gaussian, sigma,
                          [sigma](double phi, double phi_prime) { return normal_pdf(phi, phi_prime, sigma); });
}

DetectorKernel DetectorKernel::gaussian_family(std::function<double(double)> sigma_of_phi_prime) {
    return custom([s = std::move(sigma_of_phi_prime)](double phi, double phi_prime) {
        return normal_pdf(phi, phi_prime, s(phi_prime));
    });
}

DetectorKernel DetectorKernel::custom(Density density) {
    if (!density) throw DomainError("custom kernel needs a density function");
    return DetectorKernel(KernelKind::custom, 0.0, std::move(density));
}

double DetectorKernel::operator()(double phi, double phi_prime) const {
    if (kind_ == KernelKind::delta) throw DomainError("delta kernel has no pointwise density");
    return density_(phi, phi_prime);
}

std::vector<SmearingNode> DetectorKernel::smearing_nodes(double phi, const QuadratureGrid& grid) const {
    std::vector<SmearingNode> nodes;
    if (kind_ == KernelKind::delta) {
        nodes.push_back({phi, 1.0});
        return nodes;
    }
    const double h = max_spacing(grid);
    if (kind_ == KernelKind::gaussian && sigma_ < 4.0 * h) {
        // Narrow kernel: Gauss-Hermite in the kernel variable, with enough nodes
        // that the central node spacing does not exceed the grid spacing.
        const double ratio = std::numbers::pi * sigma_ / std::max(h, 1e-12);
        const int order = std::clamp(static_cast<int>(std::ceil(ratio * ratio)) + 20, 20, 200);
        const auto& rule = gauss_hermite(order);
        nodes.reserve(rule.nodes.size());
        const double scale = std::numbers::sqrt2 * sigma_;
        const double norm = 1.0 / std::sqrt(std::numbers::pi);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            nodes.push_back({phi + scale * rule.nodes[k], norm * rule.weights[k]});
        }
        return nodes;
    }
    nodes.reserve(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double w = grid.weight(j) * density_(phi, grid.point(j));
        if (w != 0.0) nodes.push_back({grid.point(j), w});
    }
    return nodes;
}

DetectorKernel gaussian_kernel(double sigma_eta) { return DetectorKernel::gaussian(sigma_eta); }

double sigma_from_efficiency(double eta) {
    if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("detector efficiency must lie in (0, 1]");
    return std::sqrt((1.0 - eta) / (2.0 * eta));
}

ValidationReport validate(const DetectorKernel& kernel, const QuadratureGrid& grid) {
    ValidationReport report;
    if (kernel.kind() == KernelKind::delta) {
        report.samples = grid.size();
        return report;
    }
    double lo = grid.lo();
    double hi = grid.hi();
    if (kernel.kind() == KernelKind::gaussian) {
        lo += 8.0 * kernel.sigma();
        hi -= 8.0 * kernel.sigma();
    } else {
        const double quarter = 0.25 * (grid.hi() - grid.lo());
        lo += quarter;
        hi -= quarter;
    }
    if (!(hi >= lo)) {
        report.warnings.push_back("grid does not span the kernel support to 8 sigma");
        lo = hi = 0.5 * (grid.lo() + grid.hi());
    }
    for (std::size_t s = 0; s < grid.size(); ++s) {
        const double phi_prime = grid.point(s);
        if (phi_prime < lo || phi_prime > hi) continue;
        double mass = 0.0;
        double mean = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double k = grid.weight(j) * kernel(grid.point(j), phi_prime);
            mass += k;
            mean += grid.point(j) * k;
        }
        ++report.samples;
        report.max_normalization_defect = std::max(report.max_normalization_defect, std::abs(mass - 1.0));
        const double bias = std::abs(mean - phi_prime);
        if (bias > report.max_bias) {
            report.max_bias = bias;
            report.worst_phi_prime = phi_prime;
        }
    }
    if (report.samples == 0) report.warnings.push_back("no grid node available for sampling");
    return report;
}

EffectiveMarginal::EffectiveMarginal(DensityOperator rho, DetectorKernel kernel, QuadratureGrid grid)
    : rho_(std::move(rho)), kernel_(std::move(kernel)), grid_(std::move(grid)) {
    const RealVector exact = position_density(rho_, grid_.points());
    double mass = 0.0;
    for (std::size_t j = 0; j < grid_.size(); ++j) mass += grid_.weight(j) * exact(static_cast<Eigen::Index>(j));
    if (std::abs(mass - 1.0) > 1e-6) {
        warnings_.push_back("state grid captures probability " + std::to_string(mass) + "; widen the grid");
    }
}

double EffectiveMarginal::operator()(double q) const {
    const auto nodes = kernel_.smearing_nodes(q, grid_);
    std::vector<double> points(nodes.size());
    std::transform(nodes.begin(), nodes.end(), points.begin(), [](const SmearingNode& n) { return n.point; });
    const RealMatrix psi = hermite_matrix(rho_.dim(), points);
    const ComplexMatrix tmp = rho_.matrix() * psi.cast<Complex>();
    double total = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const auto col = static_cast<Eigen::Index>(k);
        total += nodes[k].weight * (psi.col(col).cast<Complex>().transpose() * tmp.col(col)).value().real();
    }
    return total;
}

RealVector EffectiveMarginal::values(std::span<const double> points) const {
    RealVector out(static_cast<Eigen::Index>(points.size()));
    for (std::size_t j = 0; j < points.size(); ++j) out(static_cast<Eigen::Index>(j)) = (*this)(points[j]);
    return out;
}

double EffectiveMarginal::total_probability() const {
    double total = 0.0;
    for (std::size_t j = 0; j < grid_.size(); ++j) total += grid_.weight(j) * (*this)(grid_.point(j));
    return total;
}

EffectiveMarginal effective_marginal(const DensityOperator& rho, const DetectorKernel& kernel,
                                     const QuadratureGrid& grid) {
    return EffectiveMarginal(rho, kernel, grid);
}

QuadratureGrid default_state_grid(const DensityOperator& rho, int nodes) {
    const double top = static_cast<double>(rho.highest_populated_level());
    const double half_width = std::max(default_half_width(rho.mean_occupation()), std::sqrt(2.0 * top + 1.0) + 6.0);
    return QuadratureGrid::gauss_legendre(half_width, nodes);
}

}  // namespace weakmeas
