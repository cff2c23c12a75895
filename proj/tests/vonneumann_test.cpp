#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include "oracles.hpp"
#include "weakmeas/errors.hpp"
#include "weakmeas/vonneumann.hpp"
#include "weakmeas/weakvalues.hpp"

using namespace weakmeas;

namespace {

JointOutcomeTable table_for(const DensityOperator& rho, const PointerState& pointer, const Observable& nu,
                            double eps, const QuadratureGrid& phi, const QuadratureGrid& q,
                            const DetectorKernel& kphi = DetectorKernel::delta(),
                            const DetectorKernel& kq = DetectorKernel::delta()) {
    return joint_distribution(evolve_exact(rho, pointer, nu, eps), kphi, kq, phi, q);
}

}  // namespace

// Pointer = vacuum of a second oscillator (Gaussian of width 1/√2); the joint state is
// evolved by diagonalizing the full generator ν ⊗ P on the product Fock space.
TEST(EvolveExact, MatchesProductSpaceDiagonalization) {
    const int ds = 8, dp = 50;
    const double eps = 0.3;
    const DensityOperator rho = coherent_state(amplitude_from_quadratures(0.6, 0.3), ds);
    const Observable nu = make_operator(OperatorKind::hamiltonian, ds);
    const ComplexMatrix p = make_operator(OperatorKind::momentum, dp).matrix();
    const ComplexMatrix gen = Eigen::kroneckerProduct(nu.matrix(), p);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gen);
    const ComplexVector phase = (es.eigenvalues() * -eps).unaryExpr([](double x) { return std::exp(Complex(0, x)); });
    const ComplexMatrix u = es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> rs(rho.matrix());
    const ComplexVector object = rs.eigenvectors().col(ds - 1);  // pure state
    ComplexVector start = ComplexVector::Zero(ds * dp);
    for (int n = 0; n < ds; ++n) start(n * dp) = object(n);
    const ComplexVector psi = u * start;

    const auto phi = QuadratureGrid::from_points({-1.0, 0.2, 1.5});
    const auto q = QuadratureGrid::from_points({-1.0, 0.0, 0.8, 2.0, 3.5});
    const auto table = table_for(rho, PointerState::gaussian(1.0 / std::numbers::sqrt2), nu, eps, phi, q);
    for (std::size_t j = 0; j < phi.size(); ++j) {
        for (std::size_t m = 0; m < q.size(); ++m) {
            Complex amp = 0.0;
            for (int n = 0; n < ds; ++n) {
                for (int k = 0; k < dp; ++k) {
                    amp += psi(n * dp + k) * oracle::hermite_function(n, phi.point(j)) *
                           oracle::hermite_function(k, q.point(m));
                }
            }
            EXPECT_NEAR(table.values(j, m), std::norm(amp), 1e-8) << phi.point(j) << "," << q.point(m);
        }
    }
}

TEST(EvolveExact, ZeroCouplingIsProduct) {
    const DensityOperator rho = coherent_state(amplitude_from_quadratures(1.0, 0.0), 30);
    const auto phi = QuadratureGrid::from_points({-0.5, 1.0});
    const auto q = QuadratureGrid::from_points({-1.0, 0.3});
    const auto table = table_for(rho, PointerState::gaussian(0.8, 0.1), make_operator(OperatorKind::number, 30), 0.0, phi, q);
    const RealVector dens = position_density(rho, phi.points());
    for (std::size_t j = 0; j < 2; ++j) {
        for (std::size_t m = 0; m < 2; ++m) {
            EXPECT_NEAR(table.values(j, m), dens(j) * oracle::normal_pdf(q.point(m), 0.1, 0.64), 1e-14);
        }
    }
}

TEST(EvolveExact, EigenstateShiftsByEigenvalue) {
    const DensityOperator rho = fock_state(3, 12);
    const Observable h = make_operator(OperatorKind::hamiltonian, 12);
    const PointerState ptr = PointerState::gaussian(1.0);
    const auto phi = QuadratureGrid::from_points({-0.7, 0.4});
    const auto q = ptr.default_grid(0.5 * 12.0);
    const auto base = table_for(rho, ptr, h, 0.0, phi, q);
    for (double eps : {1e-3, 0.5}) {
        const auto t = table_for(rho, ptr, h, eps, phi, q);
        EXPECT_NEAR(conditional_pointer_shift(t, -0.7, base), 3.5, 1e-10);
        EXPECT_NEAR(conditional_pointer_shift(t, 0.4, base), 3.5, 1e-10);
    }
    EXPECT_EQ(conditional_pointer_shift(base, 0.4, base), 0.0);
}

TEST(EvolveExact, GroupProperty) {
    const DensityOperator rho = displaced_thermal_state(amplitude_from_quadratures(0.8, 0.2), 0.3, 30);
    const Observable nu = make_operator(OperatorKind::momentum_squared, 30);
    const PointerState ptr = PointerState::mixture({{0.5, -0.4, 0.7, 0.0}, {0.5, 0.6, 1.1, 0.0}});
    const auto phi = QuadratureGrid::uniform(-3.0, 3.0, 7);
    const auto q = QuadratureGrid::uniform(-6.0, 8.0, 15);
    const double eps = 0.05;
    const auto twice = joint_distribution(evolve_exact(rho, ptr, nu, eps).then(eps), DetectorKernel::delta(),
                                          DetectorKernel::delta(), phi, q);
    const auto once = table_for(rho, ptr, nu, 2.0 * eps, phi, q);
    EXPECT_LT((twice.values - once.values).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_DOUBLE_EQ(twice.epsilon, 2.0 * eps);
}

TEST(JointTable, MassAndUndisturbedMarginal) {
    const DensityOperator rho = coherent_state(amplitude_from_quadratures(1.0, 0.0), 40);
    const Observable h = make_operator(OperatorKind::hamiltonian, 40);
    const PointerState ptr = PointerState::gaussian(1.0);
    const auto phi = default_state_grid(rho, 200);
    const auto q = ptr.default_grid(1.0);
    const double eps = 0.01;
    const auto kphi = gaussian_kernel(0.4);
    const auto t = table_for(rho, ptr, h, eps, phi, q, kphi, gaussian_kernel(0.3));
    EXPECT_NEAR(t.total_mass(), 1.0, 1e-8);
    EXPECT_TRUE(t.warnings.empty());
    EXPECT_GE(t.values.minCoeff(), -1e-15);
    const RealVector marg = t.phi_marginal();
    double worst = 0.0;
    for (std::size_t j = 0; j < phi.size(); ++j) {
        const double want = postselection_density(rho, kphi, phi.point(j), default_state_grid(rho));
        worst = std::max(worst, std::abs(marg(static_cast<Eigen::Index>(j)) - want));
    }
    EXPECT_LT(worst, 5.0 * eps * eps);
    EXPECT_GT(worst, 0.0);
}

TEST(JointTable, NegativeEnergyReadout) {
    const DensityOperator rho = coherent_state(amplitude_from_quadratures(1.0, 0.0), 40);
    const Observable h = make_operator(OperatorKind::hamiltonian, 40);
    const PointerState ptr = PointerState::gaussian(1.0);
    const auto phi = QuadratureGrid::from_points({-1.0});
    const auto q = ptr.default_grid(0.1);
    const auto base = table_for(rho, ptr, h, 0.0, phi, q);
    const auto t = table_for(rho, ptr, h, 1e-3, phi, q);
    EXPECT_NEAR(conditional_pointer_shift(t, -1.0, base), -1.0, 1e-2);
    EXPECT_THROW(conditional_pointer_shift(t, 0.5, base), DomainError);
}

TEST(JointTable, BiasedReadoutKernelShiftsMeanByBias) {
    const DensityOperator rho = coherent_state(amplitude_from_quadratures(1.0, 0.0), 30);
    const Observable h = make_operator(OperatorKind::hamiltonian, 30);
    const PointerState ptr = PointerState::gaussian(1.0);
    const auto phi = QuadratureGrid::from_points({-1.0, 0.5});
    const auto q = QuadratureGrid::gauss_legendre(-14.0, 14.0, 300);
    const double bias = 0.2;
    const auto biased = DetectorKernel::custom(
        [bias](double x, double x_prime) { return oracle::normal_pdf(x, x_prime + bias, 0.09); });
    const auto t0 = table_for(rho, ptr, h, 0.01, phi, q, DetectorKernel::delta(), gaussian_kernel(0.3));
    const auto tb = table_for(rho, ptr, h, 0.01, phi, q, DetectorKernel::delta(), biased);
    for (std::size_t j = 0; j < phi.size(); ++j) {
        EXPECT_NEAR(tb.conditional_mean(j) - t0.conditional_mean(j), bias, 1e-8);
    }
}

TEST(Pointer, InvariantsAndUnsupportedCombinations) {
    EXPECT_THROW(PointerState::mixture({{0.5, 0.0, 1.0, 0.0}}), DomainError);
    EXPECT_THROW(PointerState::mixture({{1.0, 0.0, 0.0, 0.0}}), DomainError);
    EXPECT_THROW(PointerState::mixture({{1.2, 0.0, 1.0, 0.0}, {-0.2, 0.0, 1.0, 0.0}}), DomainError);
    EXPECT_THROW(PointerState::qubit(0.9, 0.9), DomainError);
    const DensityOperator rho = fock_state(1, 5);
    const Observable n = make_operator(OperatorKind::number, 5);
    EXPECT_THROW(evolve_exact(rho, PointerState::qubit(1.0, 0.0), n, 0.1), UnsupportedCombination);
    EXPECT_THROW(evolve_exact(rho, PointerState::fock_mode(fock_state(0, 5)), n, 0.1), UnsupportedCombination);
    EXPECT_THROW(evolve_exact(rho, PointerState::gaussian(), make_operator(OperatorKind::annihilation, 5), 0.1),
                 UnsupportedCombination);
    EXPECT_THROW(simulate_qubit_pointer(rho, PointerState::gaussian(), 0.1, 0.0), UnsupportedCombination);
}

TEST(ZeroCurrent, RealPointersPass) {
    EXPECT_LT(check_zero_current(PointerState::mixture({{0.3, -1.0, 0.5, 0.0}, {0.7, 1.0, 1.4, 0.0}})).max_violation,
              1e-10);
    EXPECT_LT(check_zero_current(PointerState::qubit(0.6, 0.3)).max_violation, 1e-14);
    EXPECT_LT(check_zero_current(PointerState::fock_mode(fock_state(2, 10))).max_violation, 1e-12);
}

TEST(ZeroCurrent, BoostedPointerIsFlagged) {
    const double k = 0.5;
    const auto report = check_zero_current(PointerState::mixture({{1.0, 0.0, 1.0, k}}));
    EXPECT_FALSE(report.passed());
    // Current of e^{ikQ}ψ is 2k|ψ|² in the anticommutator form.
    EXPECT_NEAR(report.location, 0.0, 0.1);
    EXPECT_NEAR(report.max_violation, 2.0 * k * oracle::normal_pdf(report.location, 0.0, 1.0), 1e-12);
    const auto moving = check_zero_current(PointerState::fock_mode(coherent_state(Complex(0.0, 1.0), 30)));
    EXPECT_FALSE(moving.passed());
}

TEST(CrossKerr, ZeroCouplingAndFockPhase) {
    const DensityOperator b = coherent_state(Complex(2.0, 0.0), 30);
    const auto r0 = simulate_cross_kerr(coherent_state(Complex(0.4, 0.0), 20), b, 0.0, -std::numbers::pi / 2, 0.3);
    EXPECT_EQ(r0.shift, 0.0);
    EXPECT_DOUBLE_EQ(r0.conditional_mean, r0.baseline_mean);
    for (int k : {1, 3}) {
        const auto r = simulate_cross_kerr(fock_state(k, 10), b, 0.01, -std::numbers::pi / 2, -0.4);
        EXPECT_NEAR(r.phase_shift, 0.01 * k, 1e-12);
    }
}

TEST(CrossKerr, ReproducesPhotonWeakValue) {
    const int dim = 30;
    const DensityOperator a = coherent_state(amplitude_from_quadratures(0.5, 0.0), dim);
    const DensityOperator b = coherent_state(Complex(2.0, 0.0), dim);
    const auto n_closed = n_closed_profile({0.5, 0.0, 0.0, 0.0});
    for (double q : {-1.5, -1.0, 0.8}) {
        const auto r = simulate_cross_kerr(a, b, 1e-3, -std::numbers::pi / 2, q);
        const double ref = n_closed.real(q);
        EXPECT_LT(std::abs(r.photon_estimate - ref), 0.05 * std::abs(ref)) << q;
    }
}

TEST(QubitPointer, FockStateRotation) {
    const auto r0 = simulate_qubit_pointer(fock_state(2, 10), PointerState::qubit(0.6, 0.3), 0.0, 0.2);
    EXPECT_NEAR(r0.sigma_x, 0.6, 1e-15);
    EXPECT_NEAR(r0.sigma_y, 0.3, 1e-15);
    for (int k : {1, 2, 4}) {
        const auto r = simulate_qubit_pointer(fock_state(k, 10), PointerState::qubit(1.0, 0.0), 1e-3, -0.6);
        EXPECT_NEAR(r.photon_estimate, k, 1e-10);
        EXPECT_NEAR(r.sigma_y, std::sin(2e-3 * k), 1e-13);
    }
}

TEST(QubitPointer, SlopeFollowsPhotonWeakValue) {
    const DensityOperator rho = coherent_state(amplitude_from_quadratures(0.1, 0.0), 20);
    const auto n = n_closed_profile({0.1, 0.0, 0.0, 0.0});
    ASSERT_EQ(n.roots().size(), 1u);
    const double root = n.roots()[0];
    const auto below = simulate_qubit_pointer(rho, PointerState::qubit(1.0, 0.0), 1e-3, root - 0.5);
    const auto above = simulate_qubit_pointer(rho, PointerState::qubit(1.0, 0.0), 1e-3, root + 0.5);
    EXPECT_LT(below.slope_y, 0.0);
    EXPECT_GT(above.slope_y, 0.0);
    EXPECT_NEAR(below.ratio_y, 2.0, 1e-3);
    EXPECT_NEAR(above.ratio_y, 2.0, 1e-3);
}
