#pragma once

#include <Eigen/Dense>

#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace weakmeas {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr int kDefaultDim = 40;

/// Tolerances of the density-operator invariants.
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kHermiticityTolerance = 1e-12;
inline constexpr double kPositivityTolerance = 1e-10;

/// Whether an inadequate Fock truncation is rejected or only reported.
struct TruncationPolicy {
    bool strict = false;
};

/// Trace-one, Hermitian, positive semidefinite matrix on a truncated Fock basis (ħ = ω = 1).
class DensityOperator {
  public:
    /// Validates the invariants; throws InvalidState / InvalidDimension.
    static DensityOperator from_matrix(ComplexMatrix matrix, std::vector<std::string> warnings = {});

    /// Hermitizes and renormalizes before validating. For constructors whose
    /// input is a density operator up to rounding.
    static DensityOperator normalized(ComplexMatrix matrix, std::vector<std::string> warnings = {});

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const ComplexMatrix& matrix() const { return matrix_; }
    Complex operator()(int m, int n) const { return matrix_(m, n); }

    /// Truncation-adequacy notes attached by the constructor that built the state.
    const std::vector<std::string>& warnings() const { return warnings_; }

    double mean_occupation() const;
    double purity() const;
    /// Largest index n with population above `threshold`.
    int highest_populated_level(double threshold = 1e-14) const;

  private:
    DensityOperator(ComplexMatrix matrix, std::vector<std::string> warnings)
        : matrix_(std::move(matrix)), warnings_(std::move(warnings)) {}

    ComplexMatrix matrix_;
    std::vector<std::string> warnings_;
};

enum class OperatorKind {
    annihilation,
    creation,
    number,
    position,
    momentum,
    momentum_squared,
    hamiltonian,
    identity,
};

/// Operator on the truncated basis. Hermitian for every kind except the ladder operators.
class Observable {
  public:
    /// Custom Hermitian observable. `spectrum_lower_bound` must not exceed the smallest eigenvalue.
    static Observable hermitian(ComplexMatrix matrix,
                                double spectrum_lower_bound = -std::numeric_limits<double>::infinity());

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const ComplexMatrix& matrix() const { return matrix_; }
    double spectrum_lower_bound() const { return spectrum_lower_bound_; }
    bool is_hermitian() const { return hermitian_; }
    /// Set for operators built by make_operator; lets representations use exact symbols.
    std::optional<OperatorKind> kind() const { return kind_; }

  private:
    friend Observable make_operator(OperatorKind kind, int dim);
    Observable(ComplexMatrix matrix, double lower_bound, bool hermitian, std::optional<OperatorKind> kind)
        : matrix_(std::move(matrix)), spectrum_lower_bound_(lower_bound), hermitian_(hermitian), kind_(kind) {}

    ComplexMatrix matrix_;
    double spectrum_lower_bound_;
    bool hermitian_;
    std::optional<OperatorKind> kind_;
};

/// Ladder representation a|n⟩ = √n |n−1⟩, q = (a + a†)/√2, p = (a − a†)/(i√2).
/// momentum_squared is the compression of p̂² (not the square of the truncated p).
Observable make_operator(OperatorKind kind, int dim);

/// Complex amplitude α = (α_r + iα_i)/√2, so that ⟨q⟩ = α_r and ⟨p⟩ = α_i.
Complex amplitude_from_quadratures(double alpha_r, double alpha_i);

DensityOperator fock_state(int n, int dim);

/// Pure coherent state, truncated and renormalized.
DensityOperator coherent_state(Complex alpha, int dim, TruncationPolicy policy = {});

/// D(α) ρ_th D†(α) with geometric thermal weights n_thⁿ/(1+n_th)^{n+1}.
DensityOperator displaced_thermal_state(Complex alpha, double n_th, int dim, TruncationPolicy policy = {});

/// Dense displacement operator exp(αa† − α*a) on `dim` levels.
ComplexMatrix displacement_operator(Complex alpha, int dim);

/// Hermite function ⟨q|n⟩ (real, standard sign convention).
double quadrature_wavefunction(int n, double q);

/// ⟨q|0⟩ … ⟨q|dim−1⟩.
RealVector hermite_functions(int dim, double q);

/// Column j holds hermite_functions(dim, points[j]).
RealMatrix hermite_matrix(int dim, std::span<const double> points);

/// ⟨q|ρ|q2⟩.
Complex position_kernel(const DensityOperator& rho, double q, double q2);

/// Diagonal ⟨q|ρ|q⟩ at every point.
RealVector position_density(const DensityOperator& rho, std::span<const double> points);

/// Glauber P function of the displaced thermal state, (1/π n_th) exp(−|γ−α|²/n_th). Nonnegative for every n_th > 0.
class GlauberP {
  public:
    GlauberP(Complex alpha, double n_th);
    double operator()(Complex gamma) const;
    Complex alpha() const { return alpha_; }
    double n_th() const { return n_th_; }

  private:
    Complex alpha_;
    double n_th_;
};

GlauberP glauber_p_displaced_thermal(Complex alpha, double n_th);

}  // namespace weakmeas
