#pragma once

#include <span>
#include <vector>

namespace weakmeas {

/// Ordered nodes with positive integration weights over the real line.
class QuadratureGrid {
  public:
    /// Gauss-Legendre rule with `nodes` points on [-half_width, half_width].
    static QuadratureGrid gauss_legendre(double half_width, int nodes);
    static QuadratureGrid gauss_legendre(double lo, double hi, int nodes);

    /// Equispaced points with trapezoid weights; endpoints included.
    static QuadratureGrid uniform(double lo, double hi, int nodes);

    /// Arbitrary strictly increasing points with the given positive weights.
    static QuadratureGrid from_points(std::vector<double> points, std::vector<double> weights);

    /// Points used only for pointwise evaluation; every weight is 1.
    static QuadratureGrid from_points(std::vector<double> points);

    std::span<const double> points() const { return points_; }
    std::span<const double> weights() const { return weights_; }
    std::size_t size() const { return points_.size(); }
    double point(std::size_t i) const { return points_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }
    double lo() const { return points_.front(); }
    double hi() const { return points_.back(); }

    /// Index of a node equal to `x` within `tol`, or size() if none.
    std::size_t find(double x, double tol = 1e-12) const;

  private:
    QuadratureGrid(std::vector<double> points, std::vector<double> weights);

    std::vector<double> points_;
    std::vector<double> weights_;
};

/// Nodes and weights for integrals of the form  ∫ e^{-x²} f(x) dx.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Golub-Welsch construction; cached per order, thread safe.
const GaussHermiteRule& gauss_hermite(int order);

/// Default state grid half width 6 + 2√(mean occupation).
double default_half_width(double mean_occupation);

inline constexpr int kDefaultGridNodes = 400;

}  // namespace weakmeas
