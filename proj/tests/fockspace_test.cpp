#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "weakmeas/errors.hpp"
#include "weakmeas/fockspace.hpp"

using namespace weakmeas;

TEST(HermiteFunctions, MatchExplicitPolynomials) {
    for (double q : {-7.5, -2.0, -0.3, 0.0, 1.1, 4.0, 8.0}) {
        const RealVector psi = hermite_functions(41, q);
        for (unsigned n = 0; n <= 40; ++n) {
            EXPECT_NEAR(psi(n), oracle::hermite_function(n, q), 1e-12) << "n=" << n << " q=" << q;
            EXPECT_DOUBLE_EQ(quadrature_wavefunction(static_cast<int>(n), q), psi(n));
        }
    }
}

TEST(Operators, CanonicalCommutatorOnLowBlock) {
    const int dim = 20;
    const ComplexMatrix q = make_operator(OperatorKind::position, dim).matrix();
    const ComplexMatrix p = make_operator(OperatorKind::momentum, dim).matrix();
    const ComplexMatrix c = q * p - p * q;
    // The top level is spoiled by truncation.
    EXPECT_LT((c.topLeftCorner(dim - 1, dim - 1) - Complex(0, 1) * ComplexMatrix::Identity(dim - 1, dim - 1))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-13);
}

TEST(Operators, MomentumSquaredIsCompressionOfFullSquare) {
    const int dim = 15;
    const ComplexMatrix big = make_operator(OperatorKind::momentum, dim + 2).matrix();
    const ComplexMatrix expected = (big * big).topLeftCorner(dim, dim);
    const Observable p2 = make_operator(OperatorKind::momentum_squared, dim);
    EXPECT_LT((p2.matrix() - expected).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_TRUE(p2.is_hermitian());
    EXPECT_EQ(p2.spectrum_lower_bound(), 0.0);
}

TEST(Operators, HamiltonianIsNumberPlusHalf) {
    const Observable h = make_operator(OperatorKind::hamiltonian, 10);
    const Observable n = make_operator(OperatorKind::number, 10);
    EXPECT_LT((h.matrix() - n.matrix() - 0.5 * ComplexMatrix::Identity(10, 10)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(h.spectrum_lower_bound(), 0.5);
    EXPECT_FALSE(make_operator(OperatorKind::annihilation, 5).is_hermitian());
}

TEST(Operators, CustomHermitianValidation) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    EXPECT_THROW(Observable::hermitian(m), DomainError);
    m(1, 0) = 1.0;
    EXPECT_NO_THROW(Observable::hermitian(m, -1.0));
    EXPECT_THROW(Observable::hermitian(m, 0.0), DomainError);
}

TEST(DensityOperatorTest, RejectsInvalidMatrices) {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    EXPECT_THROW(DensityOperator::from_matrix(m), InvalidState);  // trace 2
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    EXPECT_THROW(DensityOperator::from_matrix(m), InvalidState);  // negative eigenvalue
    ComplexMatrix h = 0.5 * ComplexMatrix::Identity(2, 2);
    h(0, 1) = Complex(0.0, 0.1);
    EXPECT_THROW(DensityOperator::from_matrix(h), InvalidState);  // not Hermitian
    EXPECT_THROW(DensityOperator::from_matrix(ComplexMatrix(0, 0)), InvalidDimension);
}

TEST(CoherentState, PoissonStatisticsAndQuadratureMeans) {
    const Complex alpha = amplitude_from_quadratures(1.3, -0.7);
    const DensityOperator rho = coherent_state(alpha, 50);
    const double mean = std::norm(alpha);
    double factorial = 1.0;
    for (int n = 0; n < 15; ++n) {
        if (n > 0) factorial *= n;
        EXPECT_NEAR(rho(n, n).real(), std::exp(-mean) * std::pow(mean, n) / factorial, 1e-14);
    }
    const Complex q = (make_operator(OperatorKind::position, 50).matrix() * rho.matrix()).trace();
    const Complex p = (make_operator(OperatorKind::momentum, 50).matrix() * rho.matrix()).trace();
    EXPECT_NEAR(q.real(), 1.3, 1e-12);
    EXPECT_NEAR(p.real(), -0.7, 1e-12);
    EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
}

TEST(DisplacedThermal, PositionElementsMatchGaussianKernel) {
    const double n_th = 0.5, ar = 1.0, ai = -0.5;
    const DensityOperator rho = displaced_thermal_state(amplitude_from_quadratures(ar, ai), n_th, 60);
    for (double u : {-2.0, 0.0, 0.7, 2.5}) {
        for (double v : {-1.0, 0.3, 1.8}) {
            const Complex got = position_kernel(rho, u, v);
            const Complex want = oracle::thermal_position_element(u, v, n_th, ar, ai);
            EXPECT_LT(std::abs(got - want), 1e-8) << u << "," << v;
        }
    }
    EXPECT_NEAR(rho.mean_occupation(), std::norm(amplitude_from_quadratures(ar, ai)) + n_th, 1e-8);
}

TEST(DisplacedThermal, ZeroOccupationIsCoherent) {
    const Complex alpha = amplitude_from_quadratures(0.8, 0.4);
    const DensityOperator a = displaced_thermal_state(alpha, 0.0, 30);
    const DensityOperator b = coherent_state(alpha, 30);
    EXPECT_LT((a.matrix() - b.matrix()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(DisplacedThermal, TruncationPolicy) {
    const Complex alpha = amplitude_from_quadratures(6.0, 0.0);
    EXPECT_THROW(displaced_thermal_state(alpha, 0.0, 20, TruncationPolicy{true}), TruncationError);
    const DensityOperator lax = displaced_thermal_state(alpha, 0.0, 20);
    EXPECT_FALSE(lax.warnings().empty());
    EXPECT_TRUE(displaced_thermal_state(alpha, 0.0, 80).warnings().empty());
}

TEST(PositionDensity, NormalizedOverLine) {
    const DensityOperator rho = displaced_thermal_state(amplitude_from_quadratures(-1.0, 2.0), 2.0, 60);
    double sum = 0.0;
    const double h = 0.01;
    std::vector<double> pts;
    for (double x = -20.0; x <= 20.0; x += h) pts.push_back(x);
    const RealVector d = position_density(rho, pts);
    for (Eigen::Index i = 0; i < d.size(); ++i) sum += h * d(i);
    EXPECT_NEAR(sum, 1.0, 1e-8);
}

TEST(GlauberPTest, NonnegativeAndNormalized) {
    EXPECT_THROW(GlauberP(Complex(1.0, 0.0), 0.0), DomainError);
    const GlauberP p = glauber_p_displaced_thermal(Complex(0.5, -0.2), 0.3);
    double sum = 0.0;
    const double h = 0.02;
    for (double x = -5.0; x <= 5.0; x += h) {
        for (double y = -5.0; y <= 5.0; y += h) {
            const double v = p(Complex(x, y));
            ASSERT_GE(v, 0.0);
            sum += v * h * h;
        }
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
}
