#include <gtest/gtest.h>

#include <cmath>

#include "gmlcs/continuum.hpp"
#include "oracles.hpp"

using namespace gmlcs;

TEST(Nu, FrozenValues) {
    EXPECT_LT(oracle::rel(nu_function(0.1), oracle::kNu0p1), 1e-10);
    EXPECT_LT(oracle::rel(nu_function(1.0), oracle::kNu1), 1e-10);
    EXPECT_LT(oracle::rel(nu_function(4.0), oracle::kNu4), 1e-10);
    EXPECT_LT(oracle::rel(nu_function(10.0), oracle::kNu10), 1e-10);
    EXPECT_LT(oracle::rel(nu_function(20.0), oracle::kNu20), 1e-10);
    EXPECT_LT(oracle::rel(nu_function(30.0), oracle::kNu30), 1e-10);
    EXPECT_EQ(nu_function(0.0), 0.0);
    EXPECT_THROW(nu_function(-1.0), domain_error);
}

TEST(Nu, LargeArgumentApproachesExponential) {
    EXPECT_NEAR(std::exp(nu_function_log(30.0) - 30.0), oracle::kNu30OverE30, 1e-10);
    double prev = 1.0;
    for (double x : {5.0, 10.0, 15.0, 20.0}) {
        const double gap = std::abs(std::exp(x) - nu_function(x)) / std::exp(x);
        EXPECT_LT(gap, prev);
        prev = gap;
    }
    EXPECT_LE(prev, 0.05);
    EXPECT_NO_THROW(nu_function_log(1e4));
    EXPECT_THROW(nu_function(1e4), overflow_error);
}

TEST(Nu, SchemesAgree) {
    for (int i = 0; i <= 40; ++i) {
        const double x = 0.1 + (30.0 - 0.1) * i / 40.0;
        const double a = nu_function(x, {}, QuadratureScheme::adaptive);
        const double b = nu_function(x, {}, QuadratureScheme::fixed_gauss_legendre);
        EXPECT_LT(std::abs(a - b), 1e-7 * a) << x;
    }
}

TEST(TildeMl, FrozenValues) {
    EXPECT_LT(oracle::rel(tilde_ml(MLParams(1, 2, 1, 1), 4.0), oracle::kTildeMl_1211_x4), 1e-9);
    EXPECT_LT(oracle::rel(tilde_ml(MLParams(2, 3, 1, 1), 2.0), oracle::kTildeMl_2311_x2), 1e-9);
}

TEST(TildeMl, UnitParametersGiveNu) {
    for (double x : {0.5, 3.0, 12.0}) {
        EXPECT_LT(oracle::rel(tilde_ml(MLParams::unit(), x), nu_function(x)), 1e-12);
    }
}

TEST(ContinuumMeasure, Moments) {
    for (double e : {0.0, 0.5, 1.0, 2.5, 7.0}) {
        EXPECT_LT(oracle::rel(continuum_moment(e).value, std::tgamma(e + 1.0)), 1e-7) << e;
    }
    for (int i = 0; i <= 20; ++i) {
        const double e = 0.5 * i;
        EXPECT_LT(oracle::rel(continuum_moment(e).value, std::tgamma(e + 1.0)), 1e-7) << e;
    }
    EXPECT_NEAR(continuum_measure_weight(4.0), std::exp(-4.0) * oracle::kNu4, 1e-10);
}

TEST(ContinuumPartition, ExactReciprocal) {
    for (int i = 0; i <= 100; ++i) {
        const double b = 0.1 * std::pow(100.0, i / 100.0);
        EXPECT_EQ(continuum_partition(b), 1.0 / b);
        EXPECT_LT(std::abs(continuum_partition_quadrature(b).value * b - 1.0), 1e-10);
    }
}

TEST(ContinuumHusimi, Values) {
    EXPECT_LT(oracle::rel(continuum_husimi(CSLabel(2.0), 1.0), oracle::kNuRatio_4), 1e-9);
    EXPECT_EQ(continuum_husimi(CSLabel(0.0), 2.5), 2.5);
    double prev = 2.5;
    for (int i = 1; i <= 20; ++i) {
        const double q = continuum_husimi(CSLabel(std::sqrt(0.5 * i)), 2.5);
        EXPECT_GT(q, 0.0);
        EXPECT_LT(q, prev);
        prev = q;
    }
    const double a = continuum_husimi(CSLabel(3.0), 0.7, {}, QuadratureScheme::adaptive);
    const double b = continuum_husimi(CSLabel(3.0), 0.7, {}, QuadratureScheme::fixed_gauss_legendre);
    EXPECT_LT(std::abs(a - b), 1e-7 * a);
}

TEST(ContinuumP, Conventions) {
    const double b = 0.9, g = std::expm1(b);
    const CSLabel z(1.3);
    EXPECT_NEAR(continuum_p_function(z, b), b * std::exp(b - g * 1.69), 1e-15);
    EXPECT_NEAR(continuum_p_function(z, b, PConvention::literal), b * std::exp(g * 1.69), 1e-13);
    EXPECT_GT(continuum_p_function(CSLabel(3.0), b, PConvention::literal),
              continuum_p_function(CSLabel(2.0), b, PConvention::literal));
}

TEST(ContinuumP, BoltzmannDiagonal) {
    for (double e : {0.0, 0.5, 2.0, 5.0}) {
        const double expected = 1.2 * std::exp(-1.2 * e);
        EXPECT_LT(oracle::rel(continuum_p_diagonal(e, 1.2).value, expected), 1e-6) << e;
    }
}

TEST(EnergyDensityState, NormalizationRatioIsReported) {
    const auto s = make_energy_density_state(CSLabel(1.5, 0.3));
    EXPECT_LT(oracle::rel(s.norm, nu_function(2.25)), 1e-12);
    const double r = s.normalization_ratio();
    EXPECT_TRUE(std::isfinite(r));
    EXPECT_GT(std::abs(r - 1.0), 0.1);
    EXPECT_NEAR(std::abs(s.amplitude(0.0)), 1.0 / std::sqrt(s.norm), 1e-15);
    EXPECT_THROW(make_energy_density_state(CSLabel(0.0)), domain_error);
}
