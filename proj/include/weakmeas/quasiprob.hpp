#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weakmeas/fockspace.hpp"
#include "weakmeas/povm.hpp"
#include "weakmeas/quadrature.hpp"

namespace weakmeas {

enum class XiBasisKind { fock, momentum, custom };

/// The basis |ξ⟩ paired with position eigenstates |φ⟩ = |q⟩.
///
/// Momentum eigenstates use ⟨q|p⟩ = e^{ipq}/√(2π), so ⟨p|n⟩ = (−i)ⁿ ψ_n(p) with ψ_n
/// the real Hermite functions.
class XiBasis {
  public:
    static XiBasis fock(int dim);
    static XiBasis momentum(QuadratureGrid grid);
    /// Orthonormal columns given in Fock coordinates; `labels` name each column.
    static XiBasis custom(ComplexMatrix columns, std::vector<double> labels);

    XiBasisKind kind() const { return kind_; }
    std::size_t size() const { return labels_.size(); }
    double label(std::size_t k) const { return labels_[k]; }
    double weight(std::size_t k) const { return weights_[k]; }
    const std::vector<double>& labels() const { return labels_; }
    const std::vector<double>& weights() const { return weights_; }

    /// ⟨n|ξ_k⟩ for n < dim.
    ComplexMatrix fock_vectors(int dim) const;
    /// ⟨φ_j|ξ_k⟩ for the given position points.
    ComplexMatrix overlaps(std::span<const double> phi_points) const;

  private:
    XiBasis(XiBasisKind kind, std::vector<double> labels, std::vector<double> weights, ComplexMatrix columns)
        : kind_(kind), labels_(std::move(labels)), weights_(std::move(weights)), columns_(std::move(columns)) {}

    XiBasisKind kind_;
    std::vector<double> labels_;
    std::vector<double> weights_;
    ComplexMatrix columns_;  // custom kind only
};

struct BasisPair {
    QuadratureGrid phi;
    XiBasis xi;
};

/// max |Σ w |b⟩⟨b| − I| on the first `dim` Fock levels.
double identity_resolution_defect(const QuadratureGrid& position_grid, int dim);
double identity_resolution_defect(const XiBasis& basis, int dim);

enum class DistributionKind { S, T, S_eta, T_eta };

std::string to_string(DistributionKind kind);

/// Complex quasi-probability grid over (φ_j, ξ_k); T kinds hold real values.
class QuasiDistribution {
  public:
    QuasiDistribution(ComplexMatrix values, BasisPair basis, DistributionKind kind, DensityOperator source)
        : values_(std::move(values)), basis_(std::move(basis)), kind_(kind), source_(std::move(source)) {}

    const ComplexMatrix& values() const { return values_; }
    Complex operator()(std::size_t j, std::size_t k) const {
        return values_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    }
    const BasisPair& basis() const { return basis_; }
    const QuadratureGrid& phi_grid() const { return basis_.phi; }
    const XiBasis& xi_basis() const { return basis_.xi; }
    DistributionKind kind() const { return kind_; }
    bool is_real_kind() const { return kind_ == DistributionKind::T || kind_ == DistributionKind::T_eta; }
    /// State the distribution was computed from.
    const DensityOperator& source() const { return source_; }

    /// ∫ dξ Q(φ_j, ξ) for every j.
    ComplexVector marginal_over_xi() const;
    /// ∫ dφ Q(φ, ξ_k) for every k.
    ComplexVector marginal_over_phi() const;

  private:
    ComplexMatrix values_;
    BasisPair basis_;
    DistributionKind kind_;
    DensityOperator source_;
};

/// S(φ,ξ) = ⟨φ|ξ⟩⟨ξ|ρ|φ⟩ at arbitrary position points; rows follow `phi_points`.
ComplexMatrix s_values(const DensityOperator& rho, std::span<const double> phi_points, const XiBasis& xi);

QuasiDistribution s_distribution(const DensityOperator& rho, const BasisPair& basis);

/// T = Re S; maps S → T and S_eta → T_eta.
QuasiDistribution t_distribution(const QuasiDistribution& s);

/// S-representation S_ν(φ,ξ) = ⟨φ|ν|ξ⟩/⟨φ|ξ⟩. Points where |⟨φ|ξ⟩| falls below
/// 1e-12 of the largest overlap are flagged undefined and hold NaN.
struct Representation {
    ComplexMatrix values;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> defined;

    /// T-representation, the real part.
    RealMatrix real_part() const { return values.real(); }
    /// max |Im S_ν| over defined points; zero means the pair meets the classicality restriction.
    double max_imaginary() const;
};

inline constexpr double kOverlapThreshold = 1e-12;

Representation s_representation(const Observable& nu, const BasisPair& basis);

/// ⟨φ|ν|ξ⟩ at arbitrary position points. Momentum basis with a known operator kind
/// uses the exact q-left/p-right symbol rather than the truncated matrix.
ComplexMatrix observable_matrix_elements(const Observable& nu, std::span<const double> phi_points,
                                         const XiBasis& xi);

/// S_η(φ,ξ) = ∫dφ′ Π_φ(φ′) S(φ′,ξ) on the same grid; T input yields T_eta.
QuasiDistribution effective_distribution(const QuasiDistribution& s, const DetectorKernel& kernel);

struct NegativityReport {
    double min_value = 0.0;
    double min_phi = 0.0;
    double min_xi = 0.0;
    /// ∫|T| 1[T<0] / ∫|T|.
    double negative_mass_fraction = 0.0;
};

/// Scans a real (T or T_eta) distribution. S kinds are scanned through their real part.
NegativityReport negativity_scan(const QuasiDistribution& t);

/// Same scan over raw grid data, for re-summarizing exported tables.
NegativityReport negativity_scan(const RealMatrix& values, std::span<const double> phi,
                                 std::span<const double> phi_weights, std::span<const double> xi,
                                 std::span<const double> xi_weights);

/// Weak value as a conditional expectation over the S-distribution:
/// ∫dξ dφ′ Π_φ(φ′) S_ν S / ∫dξ dφ′ Π_φ(φ′) S.
Complex conditional_weak_value(const Observable& nu, const DensityOperator& rho, const XiBasis& xi,
                               const DetectorKernel& kernel, double phi, const QuadratureGrid& grid);

/// Real-part version over the T-distribution with T_ν = Re S_ν. Equals Re ν_w only
/// when the representation is real (Im S_ν = 0).
double conditional_real_weak_value(const Observable& nu, const DensityOperator& rho, const XiBasis& xi,
                                   const DetectorKernel& kernel, double phi, const QuadratureGrid& grid);

}  // namespace weakmeas
