#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "weakmeas/errors.hpp"
#include "weakmeas/quasiprob.hpp"
#include "weakmeas/weakvalues.hpp"

using namespace weakmeas;

namespace {

QuadratureGrid wide_grid() { return QuadratureGrid::gauss_legendre(12.0, 240); }

}  // namespace

TEST(Basis, IdentityResolution) {
    EXPECT_LT(identity_resolution_defect(wide_grid(), 20), 1e-12);
    EXPECT_LT(identity_resolution_defect(XiBasis::momentum(wide_grid()), 20), 1e-12);
    EXPECT_LT(identity_resolution_defect(XiBasis::fock(20), 20), 1e-15);
    EXPECT_GT(identity_resolution_defect(QuadratureGrid::gauss_legendre(2.0, 40), 20), 1e-3);
}

TEST(Basis, MomentumOverlapConvention) {
    const auto xi = XiBasis::momentum(QuadratureGrid::from_points({-1.3, 0.4, 2.0}));
    const ComplexMatrix v = xi.fock_vectors(12);
    for (unsigned n = 0; n < 12; ++n) {
        for (Eigen::Index k = 0; k < 3; ++k) {
            EXPECT_LT(std::abs(v(n, k) - oracle::fock_momentum_overlap(n, xi.label(static_cast<std::size_t>(k)))), 1e-13);
        }
    }
}

TEST(Basis, CustomMustBeOrthonormal) {
    ComplexMatrix c = ComplexMatrix::Zero(3, 2);
    c(0, 0) = 1.0;
    c(0, 1) = 1.0;
    EXPECT_THROW(XiBasis::custom(c, {0.0, 1.0}), DomainError);
    c(0, 1) = 0.0;
    c(2, 1) = Complex(0.0, 1.0);
    EXPECT_NO_THROW(XiBasis::custom(c, {0.0, 1.0}));
}

TEST(SDistribution, ThermalClosedForm) {
    const auto phi = QuadratureGrid::uniform(-3.0, 3.0, 13);
    const auto xi = XiBasis::momentum(QuadratureGrid::uniform(-3.0, 3.0, 13));
    for (double nth : {0.0, 0.7}) {
        const DensityOperator rho = displaced_thermal_state(amplitude_from_quadratures(0.5, -0.4), nth, 60);
        const auto s = s_distribution(rho, {phi, xi});
        for (std::size_t j = 0; j < phi.size(); ++j) {
            for (std::size_t k = 0; k < xi.size(); ++k) {
                const Complex want = oracle::thermal_s(phi.point(j), xi.label(k), nth, 0.5, -0.4);
                EXPECT_LT(std::abs(s(j, k) - want), 1e-9);
            }
        }
    }
}

TEST(SDistribution, EffectiveThermalClosedForm) {
    const auto phi = QuadratureGrid::uniform(-3.0, 3.0, 13);
    const auto xi = XiBasis::momentum(QuadratureGrid::uniform(-3.0, 3.0, 13));
    const double nth = 0.5, s2 = 0.3;
    const DensityOperator rho = displaced_thermal_state(amplitude_from_quadratures(-0.3, 0.2), nth, 60);
    const auto s = effective_distribution(s_distribution(rho, {phi, xi}), gaussian_kernel(std::sqrt(s2)));
    EXPECT_EQ(s.kind(), DistributionKind::S_eta);
    for (std::size_t j = 0; j < phi.size(); ++j) {
        for (std::size_t k = 0; k < xi.size(); ++k) {
            EXPECT_LT(std::abs(s(j, k) - oracle::thermal_s(phi.point(j), xi.label(k), nth, -0.3, 0.2, s2)), 1e-9);
        }
    }
    EXPECT_EQ(t_distribution(s).kind(), DistributionKind::T_eta);
}

TEST(SDistribution, MarginalsRandomState) {
    const DensityOperator rho = DensityOperator::from_matrix(oracle::random_density(15, 7));
    const auto grid = wide_grid();
    const RealVector q_density = position_density(rho, grid.points());
    for (const auto& xi : {XiBasis::fock(15), XiBasis::momentum(wide_grid())}) {
        const auto s = s_distribution(rho, {grid, xi});
        const auto t = t_distribution(s);
        EXPECT_LT((s.marginal_over_xi() - q_density.cast<Complex>()).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_LT((t.marginal_over_xi() - q_density.cast<Complex>()).cwiseAbs().maxCoeff(), 1e-10);
        const ComplexMatrix v = xi.fock_vectors(15);
        for (std::size_t k = 0; k < xi.size(); k += 7) {
            const double want = (v.col(static_cast<Eigen::Index>(k)).adjoint() * rho.matrix() *
                                 v.col(static_cast<Eigen::Index>(k)))
                                    .value()
                                    .real();
            EXPECT_NEAR(s.marginal_over_phi()(static_cast<Eigen::Index>(k)).real(), want, 1e-10);
            EXPECT_NEAR(s.marginal_over_phi()(static_cast<Eigen::Index>(k)).imag(), 0.0, 1e-10);
            EXPECT_NEAR(t.marginal_over_phi()(static_cast<Eigen::Index>(k)).real(), want, 1e-10);
        }
    }
}

TEST(Representation, ExactSymbolsAreReal) {
    const BasisPair qp{QuadratureGrid::uniform(-4.0, 4.0, 9), XiBasis::momentum(QuadratureGrid::uniform(-4.0, 4.0, 9))};
    const auto h = s_representation(make_operator(OperatorKind::hamiltonian, 30), qp);
    EXPECT_LT(h.max_imaginary(), 1e-14);
    EXPECT_DOUBLE_EQ(h.values(0, 8).real(), 16.0);  // (q² + p²)/2 at (−4, 4)
    const BasisPair qn{QuadratureGrid::from_points({0.0, 0.5}), XiBasis::fock(6)};
    const auto hn = s_representation(make_operator(OperatorKind::hamiltonian, 6), qn);
    EXPECT_FALSE(hn.defined(0, 1));  // ψ_1(0) = 0
    EXPECT_TRUE(std::isnan(hn.values(0, 1).real()));
    EXPECT_NEAR(hn.values(1, 3).real(), 3.5, 1e-12);
    EXPECT_LT(hn.max_imaginary(), 1e-15);
    const auto a = s_representation(make_operator(OperatorKind::annihilation, 30), qp);
    EXPECT_GT(a.max_imaginary(), 1.0);
}

TEST(ConditionalWeakValue, MatchesTraceFormula) {
    const int dim = 12;
    const DensityOperator rho = DensityOperator::from_matrix(oracle::random_density(dim, 3));
    const Observable nu = Observable::hermitian(oracle::random_hermitian(dim, 4));
    const auto grid = QuadratureGrid::gauss_legendre(10.0, 300);
    for (double phi : {0.0, -0.8, 1.7}) {
        for (double sigma : {0.0, 0.4}) {
            const auto kernel = gaussian_kernel(sigma);
            const Complex trace = weak_value(nu, rho, kernel, phi, grid);
            EXPECT_LT(std::abs(conditional_weak_value(nu, rho, XiBasis::fock(dim), kernel, phi, grid) - trace), 1e-9);
            EXPECT_LT(std::abs(conditional_weak_value(nu, rho, XiBasis::momentum(grid), kernel, phi, grid) - trace), 1e-9);
        }
    }
}

TEST(ConditionalWeakValue, RealRouteNeedsRealRepresentation) {
    const DensityOperator rho = coherent_state(amplitude_from_quadratures(1.0, 0.5), 40);
    const auto grid = QuadratureGrid::gauss_legendre(12.0, 300);
    const Observable h = make_operator(OperatorKind::hamiltonian, 40);
    for (double phi : {-1.0, 0.3}) {
        const double re = weak_value(h, rho, DetectorKernel::delta(), phi, grid).real();
        EXPECT_NEAR(conditional_real_weak_value(h, rho, XiBasis::momentum(grid), DetectorKernel::delta(), phi, grid), re, 1e-9);
    }
}

TEST(Negativity, ScanFindsThermalNegativity) {
    const auto grid = QuadratureGrid::uniform(-5.0, 5.0, 101);
    const DensityOperator rho = displaced_thermal_state(0.0, 0.5, 40);
    const auto t = t_distribution(s_distribution(rho, {grid, XiBasis::momentum(grid)}));
    const auto report = negativity_scan(t);
    EXPECT_LT(report.min_value, 0.0);
    EXPECT_GT(report.negative_mass_fraction, 0.0);
    EXPECT_LT(report.negative_mass_fraction, 0.5);

    const auto vac = t_distribution(s_distribution(fock_state(0, 10), {grid, XiBasis::fock(10)}));
    EXPECT_GE(negativity_scan(vac).min_value, -1e-12);
}

TEST(Negativity, ClassicalMixtureHasNonnegativeFockT) {
    RealVector p(6);
    p << 0.3, 0.1, 0.25, 0.05, 0.2, 0.1;
    const DensityOperator rho = DensityOperator::from_matrix(p.cast<Complex>().asDiagonal().toDenseMatrix());
    const auto grid = QuadratureGrid::uniform(-6.0, 6.0, 121);
    const auto report = negativity_scan(t_distribution(s_distribution(rho, {grid, XiBasis::fock(6)})));
    EXPECT_GE(report.min_value, -1e-14);
    EXPECT_EQ(report.negative_mass_fraction, 0.0);
}
