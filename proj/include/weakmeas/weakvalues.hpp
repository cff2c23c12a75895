#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weakmeas/fockspace.hpp"
#include "weakmeas/povm.hpp"
#include "weakmeas/quadrature.hpp"

namespace weakmeas {

/// ν_w(φ) = Tr(Π̂_φ ν ρ) / Tr(Π̂_φ ρ) for postselection on position with a diagonal POVM.
/// Throws UndefinedWeakValue when Tr(Π̂_φ ρ) ≤ 1e-14.
Complex weak_value(const Observable& nu, const DensityOperator& rho, const DetectorKernel& kernel, double phi,
                   const QuadratureGrid& grid);
Complex weak_value(const Observable& nu, const DensityOperator& rho, const DetectorKernel& kernel, double phi);

/// Tr(Π̂_φ ρ), the postselection probability density.
double postselection_density(const DensityOperator& rho, const DetectorKernel& kernel, double phi,
                             const QuadratureGrid& grid);

enum class ProfileObservable { p2, H, n, numeric };

std::string to_string(ProfileObservable observable);
ProfileObservable profile_observable_from_string(const std::string& name);

/// Displaced thermal state parameters in quadrature units plus detector width.
struct StateParameters {
    double alpha_r = 0.0;
    double alpha_i = 0.0;
    double n_th = 0.0;
    double sigma_eta = 0.0;

    double thermal_variance() const { return n_th + 0.5; }
    /// σ_th² + σ_η², the variance of the effective postselection marginal.
    double total_variance() const { return thermal_variance() + sigma_eta * sigma_eta; }
};

/// Gaussian effective marginal ρ_η(q) of the displaced thermal state.
double displaced_thermal_marginal(const StateParameters& params, double q);

struct QuadraticCoefficients {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double operator()(double q) const { return (a * q + b) * q + c; }
};

/// Real roots of a q² + b q + c with the degeneracy rules |a| < 1e-14 → linear and
/// b² − 4ac ∈ (−1e-12, 0) → rootless. Ascending order.
std::vector<double> quadratic_roots(const QuadraticCoefficients& coefficients);

/// Weak value as a function of the postselected position.
class WeakValueProfile {
  public:
    WeakValueProfile(ProfileObservable observable, StateParameters params, std::function<Complex(double)> value_fn,
                     std::optional<QuadraticCoefficients> coefficients, std::vector<double> roots);

    ProfileObservable observable() const { return observable_; }
    const StateParameters& params() const { return params_; }
    Complex value(double q) const { return value_fn_(q); }
    double real(double q) const { return value_fn_(q).real(); }
    const std::optional<QuadraticCoefficients>& coefficients() const { return coefficients_; }
    const std::vector<double>& roots() const { return roots_; }

  private:
    ProfileObservable observable_;
    StateParameters params_;
    std::function<Complex(double)> value_fn_;
    std::optional<QuadraticCoefficients> coefficients_;
    std::vector<double> roots_;
};

/// Closed forms for the displaced thermal state with a Gaussian postselection POVM.
WeakValueProfile p2_closed_profile(const StateParameters& params);
WeakValueProfile h_closed_profile(const StateParameters& params);
WeakValueProfile n_closed_profile(const StateParameters& params);
WeakValueProfile closed_profile(ProfileObservable observable, const StateParameters& params);

/// Profile evaluated by the trace formula on a Fock-space state.
WeakValueProfile trace_profile(const Observable& nu, const DensityOperator& rho, const DetectorKernel& kernel,
                               const QuadratureGrid& grid);

enum class ProbabilityMethod { closed_form, quadrature };

struct NegativityProbability {
    double probability = 0.0;
    ProbabilityMethod method = ProbabilityMethod::quadrature;
    /// Intervals of postselected q where Re ν_w lies below the threshold.
    std::vector<std::pair<double, double>> intervals;
};

/// Probability that the postselected q gives Re ν_w(q) < threshold, weighted by ρ_η.
/// Closed form exists for p² at threshold 0, and for H and n at σ_η = 0, n_th = 0;
/// asking for it elsewhere throws DomainError. Quadrature always applies.
NegativityProbability negativity_probability(const WeakValueProfile& profile, ProbabilityMethod method,
                                             double threshold = 0.0);

/// Regions where value(q) < threshold found by scanning [lo, hi] and refining sign
/// changes, then ∫ density over them. For profiles without closed coefficients.
NegativityProbability negativity_probability_numeric(const std::function<double(double)>& value,
                                                     const std::function<double(double)>& density, double lo,
                                                     double hi, int scan_points = 400, double threshold = 0.0);

enum class StrangeCategory { not_strange, category_i, category_ii };

std::string to_string(StrangeCategory category);

/// Classifies Re ν_w(q). For H: [1/2, ∞) not strange, [0, 1/2) category i, (−∞, 0)
/// category ii. For n the thresholds shift by −1/2. For p² any negative value is
/// category ii. Numeric profiles are classified with the H thresholds.
StrangeCategory classify_strange(const WeakValueProfile& profile, double q);
StrangeCategory classify_strange(ProfileObservable observable, double real_value);

}  // namespace weakmeas
