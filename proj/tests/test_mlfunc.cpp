#include <gtest/gtest.h>

#include <cmath>

#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include "gmlcs/mlfunc.hpp"
#include "oracles.hpp"

using namespace gmlcs;

TEST(MlEval, Examples) {
    EXPECT_LT(oracle::rel(ml_eval(MLParams::unit(), 1.0).value, std::exp(1.0)), 1e-14);
    const MLParams p(0.4, 2.5, 1.7, 0.9);
    EXPECT_DOUBLE_EQ(ml_eval(p, 0.0).value, 1.0 / std::tgamma(2.5));
    const double z = 2.0;
    EXPECT_LT(oracle::rel(ml_eval(MLParams(1, 2, 1, 1), z).value, std::expm1(z) / z), 1e-14);
}

TEST(MlEval, ReducesToExp) {
    for (double z : {-5.0, -1.0, 0.0, 1.0, 5.0, 20.0}) {
        EXPECT_LT(oracle::rel(ml_eval(MLParams::unit(), z).value, std::exp(z)), 1e-12) << z;
    }
}

TEST(MlEval, FrozenValues) {
    EXPECT_LT(oracle::rel(ml_eval(MLParams(2, 3, 1, 1), 1.0).value, oracle::kMl_2311_z1), 1e-13);
    EXPECT_LT(oracle::rel(ml_eval(MLParams(2, 3, 1, 1), -3.0).value, oracle::kMl_2311_zm3), 1e-12);
    EXPECT_LT(oracle::rel(ml_eval(MLParams(0.7, 1.9, 2.3, 0.4), -12.0).value,
                          oracle::kMl_skew_zm12),
              1e-10);
    EXPECT_LT(oracle::rel(ml_eval(MLParams(1.5, 0.5, 3, 2), 7.0).value, oracle::kMl_1505_z7),
              1e-13);
}

TEST(MlEval, MatchesExplicitProductSeries) {
    oracle::Draws d(21);
    for (int i = 0; i < 50; ++i) {
        const double al = d.uniform(0.5, 3), be = d.uniform(0.5, 3), ga = d.uniform(0.5, 3),
                     k = d.uniform(0.5, 3), z = d.uniform(0, 3);
        const double ref = oracle::ml_series_products(al, be, ga, k, z, 60);
        EXPECT_LT(oracle::rel(ml_eval(MLParams(al, be, ga, k), z).value, ref), 1e-12);
    }
}

TEST(MlEval, ConvergenceMetadata) {
    const SeriesResult r = ml_eval(MLParams(1, 2, 3, 1), 4.0);
    EXPECT_TRUE(r.converged);
    EXPECT_GE(r.terms_used, 1u);
    EXPECT_LE(r.tail_bound, 1e-12 * r.value);
}

TEST(MlEval, NonConvergenceReportsPartial) {
    EvalConfig cfg;
    cfg.max_terms = 10;
    try {
        ml_eval(MLParams::unit(), 30.0, cfg);
        FAIL() << "expected convergence_error";
    } catch (const convergence_error& e) {
        EXPECT_FALSE(e.partial().converged);
        EXPECT_EQ(e.partial().terms_used, 10u);
        EXPECT_GT(e.partial().value, 0.0);
    }
}

TEST(MlEval, ConfigValidation) {
    EvalConfig bad;
    bad.rel_tol = 0.0;
    EXPECT_THROW(ml_eval(MLParams::unit(), 1.0, bad), domain_error);
    bad.rel_tol = 1e-12;
    bad.max_terms = 5;
    EXPECT_THROW(ml_eval(MLParams::unit(), 1.0, bad), domain_error);
    EXPECT_THROW(ml_eval(MLParams::unit(), INFINITY), domain_error);
}

TEST(MlEval, RouteEquivalence) {
    oracle::Draws d(22);
    for (int i = 0; i < 200; ++i) {
        const MLParams p(d.uniform(0.2, 5), d.uniform(0.2, 5), d.uniform(0.2, 5),
                         d.uniform(0.2, 5));
        const double z = d.uniform(-20, 20);
        const double a = ml_eval(p, z).value;
        const double b = ml_eval_via_1f1(p, z).value;
        EXPECT_LE(std::abs(a - b), 1e-9 * std::abs(a)) << i;
    }
}

TEST(MlEval, KummerRouteAgreesWithBoost) {
    oracle::Draws d(23);
    for (int i = 0; i < 100; ++i) {
        const double a = d.uniform(0.1, 5), b = d.uniform(0.2, 5), x = d.uniform(-15, 15);
        const double ref = boost::math::hypergeometric_1F1(a, b, x);
        EXPECT_LT(oracle::rel(hyp1f1(a, b, x).value, ref), 1e-10) << a << " " << b << " " << x;
    }
}

TEST(MlEval, PositiveAndIncreasing) {
    oracle::Draws d(24);
    for (int i = 0; i < 50; ++i) {
        const MLParams p(d.uniform(0.2, 5), d.uniform(0.2, 5), d.uniform(0.2, 5),
                         d.uniform(0.2, 5));
        double prev = 0.0;
        for (double z = 0.0; z <= 20.0; z += 0.5) {
            const double v = ml_eval(p, z).value;
            EXPECT_GT(v, prev);
            prev = v;
        }
    }
}

TEST(MlEval, TwoParameterReduction) {
    // gamma = k = alpha = 1: E = sum z^n / Gamma(beta + n), the classical E_{1,beta}.
    for (double be : {0.5, 1.0, 2.5}) {
        for (double z : {-2.0, 0.5, 3.0}) {
            double ref = 0.0;
            for (int n = 0; n < 80; ++n) {
                ref += std::pow(z, n) / std::tgamma(be + n);
            }
            EXPECT_LT(oracle::rel(ml_eval(MLParams(1, be, 1.0, 1.0), z).value, ref), 1e-12);
        }
    }
}

TEST(MlEval, LogVariant) {
    const MLParams p(2, 3, 1, 1);
    EXPECT_NEAR(ml_eval_log(p, 1.0), std::log(oracle::kMl_2311_z1), 1e-13);
    EXPECT_NEAR(ml_eval_log(MLParams::unit(), 1000.0), 1000.0, 1e-10);
    EXPECT_DOUBLE_EQ(ml_eval_log(p, 0.0), -std::lgamma(3.0));
    EXPECT_THROW(ml_eval_log(p, -1.0), domain_error);
}

TEST(MlEval, ComplexArgument) {
    const std::complex<double> w(0.3, 1.7);
    const auto v = ml_eval_complex(MLParams::unit(), w);
    EXPECT_LT(std::abs(v - std::exp(w)), 1e-14);
    const auto shifted = ml_eval_complex(MLParams::unit(), w, {}, 2.0);
    EXPECT_LT(std::abs(shifted - std::exp(w - 2.0)), 1e-14);
}

TEST(Laplace, UnitParameters) {
    for (double s : {2.0, 3.0, 5.0}) {
        EXPECT_LT(oracle::rel(ml_laplace(MLParams::unit(), s), 1.0 / (s - 1.0)), 1e-13);
        EXPECT_LT(oracle::rel(ml_laplace_quadrature(MLParams::unit(), s).value, 1.0 / (s - 1.0)),
                  1e-8);
    }
}

TEST(Laplace, NonTrivialParameters) {
    const MLParams p(2, 3, 1, 1);
    EXPECT_LT(oracle::rel(ml_laplace(p, 5.0), oracle::kLaplace_2311_s5), 1e-13);
    EXPECT_LT(oracle::rel(ml_laplace_quadrature(p, 5.0).value, ml_laplace(p, 5.0)), 1e-8);
    EXPECT_LT(oracle::rel(ml_laplace(MLParams(1, 2, 1, 1), 3.0), oracle::kLaplace_1211_s3), 1e-13);
}

TEST(Laplace, DivergenceReported) {
    EXPECT_THROW(ml_laplace(MLParams::unit(), 1.0), domain_error);
    EXPECT_THROW(ml_laplace(MLParams::unit(), 0.5), domain_error);
    EXPECT_THROW(ml_laplace_quadrature(MLParams::unit(), 0.5), quadrature_error);
}
