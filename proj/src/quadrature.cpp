#include "weakmeas/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "weakmeas/errors.hpp"

namespace weakmeas {

QuadratureGrid::QuadratureGrid(std::vector<double> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.empty() || points_.size() != weights_.size()) {
        throw DomainError("quadrature grid: points and weights must be non-empty and of equal length");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!(weights_[i] > 0.0)) throw DomainError("quadrature grid: weights must be positive");
        if (i > 0 && !(points_[i] > points_[i - 1])) {
            throw DomainError("quadrature grid: points must be strictly increasing");
        }
    }
}

QuadratureGrid QuadratureGrid::gauss_legendre(double half_width, int nodes) {
    return gauss_legendre(-half_width, half_width, nodes);
}

QuadratureGrid QuadratureGrid::gauss_legendre(double lo, double hi, int nodes) {
    if (nodes < 1 || !(hi > lo)) throw DomainError("gauss_legendre: need nodes >= 1 and hi > lo");
    const auto n = static_cast<std::size_t>(nodes);
    std::vector<double> x(n), w(n);
    const double mid = 0.5 * (hi + lo);
    const double half = 0.5 * (hi - lo);
    // Newton on P_n from the Tricomi initial guess; roots are symmetric.
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * static_cast<double>(k) - 1.0) * z * p1 - (static_cast<double>(k) - 1.0) * p2) /
                     static_cast<double>(k);
            }
            dp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = mid - half * z;
        x[n - 1 - i] = mid + half * z;
        w[i] = half * wi;
        w[n - 1 - i] = half * wi;
    }
    return QuadratureGrid(std::move(x), std::move(w));
}

QuadratureGrid QuadratureGrid::uniform(double lo, double hi, int nodes) {
    if (nodes < 2 || !(hi > lo)) throw DomainError("uniform grid: need nodes >= 2 and hi > lo");
    const auto n = static_cast<std::size_t>(nodes);
    const double h = (hi - lo) / static_cast<double>(n - 1);
    std::vector<double> x(n), w(n, h);
    for (std::size_t i = 0; i < n; ++i) x[i] = lo + h * static_cast<double>(i);
    x.back() = hi;
    w.front() = w.back() = 0.5 * h;
    return QuadratureGrid(std::move(x), std::move(w));
}

QuadratureGrid QuadratureGrid::from_points(std::vector<double> points, std::vector<double> weights) {
    return QuadratureGrid(std::move(points), std::move(weights));
}

QuadratureGrid QuadratureGrid::from_points(std::vector<double> points) {
    std::vector<double> w(points.size(), 1.0);
    return QuadratureGrid(std::move(points), std::move(w));
}

std::size_t QuadratureGrid::find(double x, double tol) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), x - tol);
    if (it != points_.end() && std::abs(*it - x) <= tol) return static_cast<std::size_t>(it - points_.begin());
    return points_.size();
}

namespace {

GaussHermiteRule build_gauss_hermite(int order) {
    const auto n = static_cast<Eigen::Index>(order);
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 1; k < n; ++k) {
        jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * static_cast<double>(k));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    GaussHermiteRule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    const double mu0 = std::sqrt(std::numbers::pi);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double v = solver.eigenvectors()(0, k);
        rule.nodes[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
        rule.weights[static_cast<std::size_t>(k)] = mu0 * v * v;
    }
    return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int order) {
    if (order < 1) throw DomainError("gauss_hermite: order must be >= 1");
    static std::mutex mutex;
    static std::map<int, GaussHermiteRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, build_gauss_hermite(order)).first;
    return it->second;
}

double default_half_width(double mean_occupation) {
    return 6.0 + 2.0 * std::sqrt(std::max(0.0, mean_occupation));
}

}  // namespace weakmeas
