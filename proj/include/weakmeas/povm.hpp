#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "weakmeas/fockspace.hpp"
#include "weakmeas/quadrature.hpp"

namespace weakmeas {

enum class KernelKind { gaussian, delta, custom };

/// One node of the rule  ∫ dφ′ Π_φ(φ′) f(φ′) ≈ Σ weight · f(point).
struct SmearingNode {
    double point;
    double weight;
};

/// Diagonal POVM density Π_φ(φ′): a distribution over the reading φ given the true value φ′.
class DetectorKernel {
  public:
    using Density = std::function<double(double phi, double phi_prime)>;

    /// Projective (perfect) detector.
    static DetectorKernel delta();
    /// Constant-width Gaussian; width 0 gives the delta kind.
    static DetectorKernel gaussian(double sigma);
    /// Gaussian whose width depends on the true value φ′.
    static DetectorKernel gaussian_family(std::function<double(double)> sigma_of_phi_prime);
    static DetectorKernel custom(Density density);

    KernelKind kind() const { return kind_; }
    /// Width σ_η in quadrature units; zero for delta, meaningless for custom.
    double sigma() const { return sigma_; }

    /// Π_φ(φ′). Throws for the delta kind, which has no pointwise density.
    double operator()(double phi, double phi_prime) const;

    /// Weighted nodes for smearing a smooth function at reading φ.
    /// Delta: the single node φ. Gaussian: a Gauss-Hermite rule centred on φ when
    /// the kernel is narrow compared to the grid spacing, otherwise the grid itself.
    /// Custom: the grid, weighted by the kernel.
    std::vector<SmearingNode> smearing_nodes(double phi, const QuadratureGrid& grid) const;

  private:
    DetectorKernel(KernelKind kind, double sigma, Density density)
        : kind_(kind), sigma_(sigma), density_(std::move(density)) {}

    KernelKind kind_;
    double sigma_;
    Density density_;
};

DetectorKernel gaussian_kernel(double sigma_eta);

/// Homodyne mapping σ_η = √((1−η)/(2η)) for a single detector of quantum efficiency η ∈ (0, 1].
double sigma_from_efficiency(double eta);

struct ValidationReport {
    double max_normalization_defect = 0.0;
    double max_bias = 0.0;
    /// Position of the worst bias among the sampled φ′.
    double worst_phi_prime = 0.0;
    std::size_t samples = 0;
    std::vector<std::string> warnings;

    bool passed(double tolerance = 1e-8) const {
        return max_normalization_defect <= tolerance && max_bias <= tolerance;
    }
};

/// Normalization ∫dφ Π_φ(φ′) = 1 and unbiasedness ∫dφ φ Π_φ(φ′) = φ′, sampled at
/// grid nodes φ′ far enough from the grid ends. Defects are reported, not thrown.
ValidationReport validate(const DetectorKernel& kernel, const QuadratureGrid& grid);

/// ρ_η(q) = ∫ dq′ Π_q(q′) ⟨q′|ρ|q′⟩.
class EffectiveMarginal {
  public:
    EffectiveMarginal(DensityOperator rho, DetectorKernel kernel, QuadratureGrid grid);

    double operator()(double q) const;
    RealVector values(std::span<const double> points) const;
    /// ∫ ρ_η over the grid.
    double total_probability() const;

    const std::vector<std::string>& warnings() const { return warnings_; }
    const QuadratureGrid& grid() const { return grid_; }

  private:
    DensityOperator rho_;
    DetectorKernel kernel_;
    QuadratureGrid grid_;
    std::vector<std::string> warnings_;
};

EffectiveMarginal effective_marginal(const DensityOperator& rho, const DetectorKernel& kernel,
                                     const QuadratureGrid& grid);

/// Gauss-Legendre state grid over ±(6 + 2√⟨n⟩), widened to cover the highest populated level.
QuadratureGrid default_state_grid(const DensityOperator& rho, int nodes = kDefaultGridNodes);

}  // namespace weakmeas
