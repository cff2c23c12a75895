#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "weakmeas/errors.hpp"
#include "weakmeas/povm.hpp"

using namespace weakmeas;

TEST(Efficiency, HomodyneWidthMapping) {
    EXPECT_DOUBLE_EQ(sigma_from_efficiency(1.0), 0.0);
    EXPECT_NEAR(sigma_from_efficiency(0.5), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(sigma_from_efficiency(0.7), std::sqrt(0.3 / 1.4), 1e-15);
    EXPECT_THROW(sigma_from_efficiency(0.0), DomainError);
    EXPECT_THROW(sigma_from_efficiency(1.2), DomainError);
}

TEST(Kernel, KindsAndDomain) {
    EXPECT_EQ(DetectorKernel::gaussian(0.0).kind(), KernelKind::delta);
    EXPECT_THROW(DetectorKernel::gaussian(-0.1), DomainError);
    EXPECT_THROW(DetectorKernel::delta()(0.0, 0.0), DomainError);
    const auto g = DetectorKernel::gaussian(0.5);
    EXPECT_NEAR(g(1.0, 0.2), oracle::normal_pdf(1.0, 0.2, 0.25), 1e-15);
}

TEST(Kernel, SmearingNodesReproduceGaussianMoments) {
    const auto grid = QuadratureGrid::gauss_legendre(20.0, 400);
    for (double sigma : {0.05, 0.3, 1.5}) {
        const auto nodes = DetectorKernel::gaussian(sigma).smearing_nodes(0.7, grid);
        double m0 = 0.0, m1 = 0.0, m2 = 0.0;
        for (const auto& n : nodes) {
            m0 += n.weight;
            m1 += n.weight * n.point;
            m2 += n.weight * (n.point - 0.7) * (n.point - 0.7);
        }
        EXPECT_NEAR(m0, 1.0, 1e-12) << sigma;
        EXPECT_NEAR(m1, 0.7, 1e-12) << sigma;
        EXPECT_NEAR(m2, sigma * sigma, 1e-12) << sigma;
    }
}

TEST(Validate, GaussianKernelsPass) {
    const auto grid = QuadratureGrid::gauss_legendre(20.0, 400);
    for (double eta : {0.3, 0.5, 0.7, 1.0}) {
        const auto report = validate(gaussian_kernel(sigma_from_efficiency(eta)), grid);
        EXPECT_TRUE(report.passed(1e-8)) << eta << " norm " << report.max_normalization_defect << " bias "
                                         << report.max_bias;
        EXPECT_GT(report.samples, 0u);
    }
}

TEST(Validate, BiasedKernelIsReported) {
    const auto grid = QuadratureGrid::gauss_legendre(20.0, 400);
    const auto biased = DetectorKernel::custom(
        [](double phi, double phi_prime) { return oracle::normal_pdf(phi, phi_prime + 0.2, 0.25); });
    const auto report = validate(biased, grid);
    EXPECT_NEAR(report.max_bias, 0.2, 1e-10);
    EXPECT_FALSE(report.passed());
}

TEST(Validate, WidthFamilyIsUnbiased) {
    const auto grid = QuadratureGrid::gauss_legendre(20.0, 400);
    const auto family = DetectorKernel::gaussian_family([](double x) { return 0.3 + 0.01 * x * x; });
    EXPECT_EQ(family.kind(), KernelKind::custom);
    EXPECT_TRUE(validate(family, grid).passed(1e-8));
}

TEST(EffectiveMarginalTest, DisplacedThermalIsGaussian) {
    const double ar = 0.8, nth = 0.4, eta = 0.6;
    const double s = sigma_from_efficiency(eta);
    const DensityOperator rho = displaced_thermal_state(amplitude_from_quadratures(ar, 0.3), nth, 50);
    const auto grid = default_state_grid(rho);
    const auto marginal = effective_marginal(rho, gaussian_kernel(s), grid);
    EXPECT_TRUE(marginal.warnings().empty());
    for (double q : {-3.0, -0.5, 0.8, 2.0, 4.5}) {
        EXPECT_NEAR(marginal(q), oracle::normal_pdf(q, ar, nth + 0.5 + s * s), 1e-10) << q;
    }
    EXPECT_NEAR(marginal.total_probability(), 1.0, 1e-8);
}

TEST(EffectiveMarginalTest, NarrowGridWarns) {
    const DensityOperator rho = coherent_state(amplitude_from_quadratures(3.0, 0.0), 40);
    const auto marginal = effective_marginal(rho, DetectorKernel::delta(), QuadratureGrid::gauss_legendre(2.0, 50));
    EXPECT_FALSE(marginal.warnings().empty());
}
