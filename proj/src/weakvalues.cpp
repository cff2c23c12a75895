#include "weakmeas/weakvalues.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weakmeas/errors.hpp"

namespace weakmeas {

namespace {

constexpr double kDenominatorFloor = 1e-14;

struct SmearedTraces {
    Complex numerator;
    double denominator;
};

SmearedTraces smeared_traces(const Observable& nu, const DensityOperator& rho, const DetectorKernel& kernel,
                             double phi, const QuadratureGrid& grid) {
    if (nu.dim() != rho.dim()) throw InvalidDimension("observable and state dimensions differ");
    const auto nodes = kernel.smearing_nodes(phi, grid);
    std::vector<double> points(nodes.size());
    std::transform(nodes.begin(), nodes.end(), points.begin(), [](const SmearingNode& n) { return n.point; });
    const ComplexMatrix psi = hermite_matrix(rho.dim(), points).cast<Complex>();
    const ComplexMatrix rho_psi = rho.matrix() * psi;
    const ComplexMatrix nu_rho_psi = nu.matrix() * rho_psi;
    SmearedTraces t{0.0, 0.0};
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const auto c = static_cast<Eigen::Index>(k);
        t.numerator += nodes[k].weight * psi.col(c).dot(nu_rho_psi.col(c));
        t.denominator += nodes[k].weight * psi.col(c).dot(rho_psi.col(c)).real();
    }
    return t;
}

double integrate(const std::function<double(double)>& f, double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 20, 1e-14);
}

/// Intervals of the real line where a q² + b q + c < 0.
std::vector<std::pair<double, double>> negative_region(const QuadraticCoefficients& k) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const auto roots = quadratic_roots(k);
    if (std::abs(k.a) < 1e-14) {
        if (std::abs(k.b) < 1e-14) {
            return k.c < 0.0 ? std::vector<std::pair<double, double>>{{-inf, inf}}
                             : std::vector<std::pair<double, double>>{};
        }
        return k.b > 0.0 ? std::vector<std::pair<double, double>>{{-inf, roots.front()}}
                         : std::vector<std::pair<double, double>>{{roots.front(), inf}};
    }
    if (roots.size() < 2) {
        return k.a > 0.0 ? std::vector<std::pair<double, double>>{}
                         : std::vector<std::pair<double, double>>{{-inf, inf}};
    }
    if (k.a > 0.0) {
        if (roots[0] == roots[1]) return {};
        return {{roots[0], roots[1]}};
    }
    return {{-inf, roots[0]}, {roots[1], inf}};
}

double closed_form_probability(const WeakValueProfile& profile) {
    const auto& p = profile.params();
    switch (profile.observable()) {
        case ProfileObservable::p2: {
            const double arg = 0.5 + 2.0 * (p.alpha_i * p.alpha_i + p.thermal_variance()) * p.total_variance();
            return std::erfc(std::sqrt(arg));
        }
        case ProfileObservable::H:
        case ProfileObservable::n: {
            if (p.sigma_eta != 0.0 || p.n_th != 0.0) {
                throw DomainError("closed-form probability for H and n needs ideal detectors and n_th = 0");
            }
            // The limit α_r → 0 is singular; the vacuum-axis value itself is 0.
            if (p.alpha_r == 0.0) return 0.0;
            const double zero_point = profile.observable() == ProfileObservable::H ? 1.0 : 0.0;
            const double num = zero_point + p.alpha_r * p.alpha_r + p.alpha_i * p.alpha_i;
            return 0.5 * std::erfc(num / (2.0 * std::abs(p.alpha_r)));
        }
        case ProfileObservable::numeric:
            break;
    }
    throw DomainError("no closed-form probability for numeric profiles");
}

}  // namespace

Complex weak_value(const Observable& nu, const DensityOperator& rho, const DetectorKernel& kernel, double phi,
                   const QuadratureGrid& grid) {
    const auto t = smeared_traces(nu, rho, kernel, phi, grid);
    if (!(t.denominator > kDenominatorFloor)) {
        throw UndefinedWeakValue("postselection probability " + std::to_string(t.denominator) + " at phi = " +
                                 std::to_string(phi) + " is too small");
    }
    return t.numerator / t.denominator;
}

Complex weak_value(const Observable& nu, const DensityOperator& rho, const DetectorKernel& kernel, double phi) {
    return weak_value(nu, rho, kernel, phi, default_state_grid(rho));
}

double postselection_density(const DensityOperator& rho, const DetectorKernel& kernel, double phi,
                             const QuadratureGrid& grid) {
    return smeared_traces(make_operator(OperatorKind::identity, rho.dim()), rho, kernel, phi, grid).denominator;
}

std::string to_string(ProfileObservable observable) {
    switch (observable) {
        case ProfileObservable::p2: return "p2";
        case ProfileObservable::H: return "H";
        case ProfileObservable::n: return "n";
        case ProfileObservable::numeric: return "numeric";
    }
    return "?";
}

ProfileObservable profile_observable_from_string(const std::string& name) {
    if (name == "p2") return ProfileObservable::p2;
    if (name == "H") return ProfileObservable::H;
    if (name == "n") return ProfileObservable::n;
    throw DomainError("unknown observable '" + name + "' (expected p2, H or n)");
}

double displaced_thermal_marginal(const StateParameters& params, double q) {
    const double v = params.total_variance();
    const double d = q - params.alpha_r;
    return std::exp(-d * d / (2.0 * v)) / std::sqrt(2.0 * std::numbers::pi * v);
}

std::vector<double> quadratic_roots(const QuadraticCoefficients& k) {
    if (std::abs(k.a) < 1e-14) {
        if (std::abs(k.b) < 1e-14) return {};
        return {-k.c / k.b};
    }
    const double disc = k.b * k.b - 4.0 * k.a * k.c;
    if (disc < 0.0) return {};
    const double s = std::sqrt(disc);
    const double q = -0.5 * (k.b + std::copysign(s, k.b));
    double r1 = q / k.a;
    double r2 = q != 0.0 ? k.c / q : -r1;
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

WeakValueProfile::WeakValueProfile(ProfileObservable observable, StateParameters params,
                                   std::function<Complex(double)> value_fn,
                                   std::optional<QuadraticCoefficients> coefficients, std::vector<double> roots)
    : observable_(observable),
      params_(params),
      value_fn_(std::move(value_fn)),
      coefficients_(coefficients),
      roots_(std::move(roots)) {}

namespace {

void check_parameters(const StateParameters& p) {
    if (!(p.n_th >= 0.0)) throw DomainError("n_th must be nonnegative");
    if (!(p.sigma_eta >= 0.0)) throw DomainError("sigma_eta must be nonnegative");
    if (!std::isfinite(p.alpha_r) || !std::isfinite(p.alpha_i)) throw DomainError("amplitudes must be finite");
}

/// Coefficients of Re H_w(q) = a q² + b q + c.
QuadraticCoefficients energy_coefficients(const StateParameters& p) {
    const double st = p.thermal_variance();
    const double se = p.sigma_eta * p.sigma_eta;
    const double v = st + se;
    QuadraticCoefficients k;
    k.a = (4.0 * st * st - 1.0) / (8.0 * v * v);
    k.b = p.alpha_r * (4.0 * st * se + 1.0) / (4.0 * v * v);
    k.c = st / 2.0 + p.alpha_i * p.alpha_i / 2.0 + (1.0 + 4.0 * st * se) / (8.0 * v) +
          p.alpha_r * p.alpha_r * (4.0 * se * se - 1.0) / (8.0 * v * v);
    return k;
}

}  // namespace

WeakValueProfile p2_closed_profile(const StateParameters& p) {
    check_parameters(p);
    const double st = p.thermal_variance();
    const double v = p.total_variance();
    const double ai2 = p.alpha_i * p.alpha_i;
    const double level = (1.0 + 4.0 * (ai2 + st) * v) / (4.0 * v);
    QuadraticCoefficients k;
    k.a = -1.0 / (4.0 * v * v);
    k.b = p.alpha_r / (2.0 * v * v);
    k.c = level - p.alpha_r * p.alpha_r / (4.0 * v * v);
    const double half_gap = std::sqrt(v * (1.0 + 4.0 * (ai2 + st) * v));
    auto fn = [p, v, level](double q) {
        const double d = q - p.alpha_r;
        return Complex(level - d * d / (4.0 * v * v), p.alpha_i * d / v);
    };
    return WeakValueProfile(ProfileObservable::p2, p, fn, k, {p.alpha_r - half_gap, p.alpha_r + half_gap});
}

WeakValueProfile h_closed_profile(const StateParameters& p) {
    check_parameters(p);
    const auto k = energy_coefficients(p);
    const double v = p.total_variance();
    auto fn = [p, k, v](double q) { return Complex(k(q), p.alpha_i * (q - p.alpha_r) / (2.0 * v)); };
    return WeakValueProfile(ProfileObservable::H, p, fn, k, quadratic_roots(k));
}

WeakValueProfile n_closed_profile(const StateParameters& p) {
    check_parameters(p);
    auto k = energy_coefficients(p);
    k.c -= 0.5;
    const double v = p.total_variance();
    auto fn = [p, k, v](double q) { return Complex(k(q), p.alpha_i * (q - p.alpha_r) / (2.0 * v)); };
    return WeakValueProfile(ProfileObservable::n, p, fn, k, quadratic_roots(k));
}

WeakValueProfile closed_profile(ProfileObservable observable, const StateParameters& params) {
    switch (observable) {
        case ProfileObservable::p2: return p2_closed_profile(params);
        case ProfileObservable::H: return h_closed_profile(params);
        case ProfileObservable::n: return n_closed_profile(params);
        case ProfileObservable::numeric: break;
    }
    throw DomainError("closed profiles exist only for p2, H and n");
}

WeakValueProfile trace_profile(const Observable& nu, const DensityOperator& rho, const DetectorKernel& kernel,
                               const QuadratureGrid& grid) {
    auto fn = [nu, rho, kernel, grid](double q) { return weak_value(nu, rho, kernel, q, grid); };
    StateParameters params;
    params.sigma_eta = kernel.kind() == KernelKind::gaussian ? kernel.sigma() : 0.0;
    return WeakValueProfile(ProfileObservable::numeric, params, fn, std::nullopt, {});
}

NegativityProbability negativity_probability(const WeakValueProfile& profile, ProbabilityMethod method,
                                             double threshold) {
    NegativityProbability result;
    result.method = method;
    if (method == ProbabilityMethod::closed_form) {
        if (threshold != 0.0) throw DomainError("closed-form probabilities exist only for threshold 0");
        result.probability = closed_form_probability(profile);
        if (profile.coefficients()) result.intervals = negative_region(*profile.coefficients());
        return result;
    }
    if (!profile.coefficients()) {
        throw DomainError("quadrature over closed intervals needs a quadratic profile; use the numeric variant");
    }
    const auto& p = profile.params();
    QuadraticCoefficients k = *profile.coefficients();
    k.c -= threshold;
    result.intervals = negative_region(k);
    const double reach = 40.0 * std::sqrt(p.total_variance());
    const auto density = [&p](double q) { return displaced_thermal_marginal(p, q); };
    for (const auto& [lo, hi] : result.intervals) {
        result.probability += integrate(density, std::max(lo, p.alpha_r - reach), std::min(hi, p.alpha_r + reach));
    }
    result.probability = std::clamp(result.probability, 0.0, 1.0);
    return result;
}

NegativityProbability negativity_probability_numeric(const std::function<double(double)>& value,
                                                     const std::function<double(double)>& density, double lo,
                                                     double hi, int scan_points, double threshold) {
    if (scan_points < 2 || !(hi > lo)) throw DomainError("numeric negativity scan needs hi > lo and >= 2 points");
    const auto shifted = [&](double q) { return value(q) - threshold; };
    std::vector<double> edges;
    const double step = (hi - lo) / (scan_points - 1);
    double prev_q = lo;
    double prev_v = shifted(lo);
    const bool starts_negative = prev_v < 0.0;
    for (int i = 1; i < scan_points; ++i) {
        const double q = i + 1 == scan_points ? hi : lo + step * i;
        const double v = shifted(q);
        if ((prev_v < 0.0) != (v < 0.0)) {
            boost::uintmax_t iterations = 200;
            const auto bracket = boost::math::tools::toms748_solve(
                shifted, prev_q, q, prev_v, v, boost::math::tools::eps_tolerance<double>(52), iterations);
            edges.push_back(0.5 * (bracket.first + bracket.second));
        }
        prev_q = q;
        prev_v = v;
    }
    NegativityProbability result;
    result.method = ProbabilityMethod::quadrature;
    bool negative = starts_negative;
    double start = lo;
    for (double edge : edges) {
        if (negative) result.intervals.emplace_back(start, edge);
        negative = !negative;
        start = edge;
    }
    if (negative) result.intervals.emplace_back(start, hi);
    for (const auto& [a, b] : result.intervals) result.probability += integrate(density, a, b);
    result.probability = std::clamp(result.probability, 0.0, 1.0);
    return result;
}

std::string to_string(StrangeCategory category) {
    switch (category) {
        case StrangeCategory::not_strange: return "not_strange";
        case StrangeCategory::category_i: return "category_i";
        case StrangeCategory::category_ii: return "category_ii";
    }
    return "?";
}

StrangeCategory classify_strange(ProfileObservable observable, double real_value) {
    double upper = 0.5;
    double lower = 0.0;
    if (observable == ProfileObservable::n) {
        upper = 0.0;
        lower = -0.5;
    } else if (observable == ProfileObservable::p2) {
        upper = 0.0;
        lower = 0.0;
    }
    if (real_value >= upper) return StrangeCategory::not_strange;
    if (real_value >= lower) return StrangeCategory::category_i;
    return StrangeCategory::category_ii;
}

StrangeCategory classify_strange(const WeakValueProfile& profile, double q) {
    return classify_strange(profile.observable(), profile.real(q));
}

}  // namespace weakmeas
