#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "gmlcs/coherent.hpp"
#include "oracles.hpp"

using namespace gmlcs;

namespace {

MLParams random_params(oracle::Draws& d) {
    return {d.uniform(0.2, 3), d.uniform(0.2, 3), d.uniform(0.2, 3), d.uniform(0.2, 3)};
}

}  // namespace

TEST(CSLabel, WrapsPhase) {
    EXPECT_NEAR(CSLabel(1.0, -std::numbers::pi / 2).phase(), 1.5 * std::numbers::pi, 1e-15);
    EXPECT_NEAR(CSLabel(1.0, 7.0).phase(), 7.0 - 2.0 * std::numbers::pi, 1e-15);
    EXPECT_THROW(CSLabel(-1.0), domain_error);
    const auto z = CSLabel::from_complex({0.0, 2.0});
    EXPECT_DOUBLE_EQ(z.modulus(), 2.0);
    EXPECT_NEAR(z.phase(), std::numbers::pi / 2, 1e-15);
}

TEST(StructureE, Examples) {
    EXPECT_DOUBLE_EQ(structure_e(MLParams::unit(), 7), 7.0);
    EXPECT_DOUBLE_EQ(structure_e(MLParams(2, 3, 1, 1), 2), 5.0);
    EXPECT_DOUBLE_EQ(structure_e_formal(0, 2, 4, 0, 3), 1.5);
    EXPECT_THROW(structure_e(MLParams::unit(), 0), domain_error);
}

TEST(StructureE, Positive) {
    oracle::Draws d(41);
    for (int i = 0; i < 100; ++i) {
        EXPECT_GT(structure_e(random_params(d), d.integer(1, 500)), 0.0);
    }
}

TEST(Ladder, Examples) {
    const MLParams u = MLParams::unit();
    const auto low = ladder_lower(FockExpansion::basis(0, 5, u));
    EXPECT_EQ(low.norm_squared(), 0.0);
    const auto l3 = ladder_lower(FockExpansion::basis(3, 5, u));
    EXPECT_NEAR(l3.coeffs[2].real(), std::sqrt(3.0), 1e-15);
    const MLParams p(2, 3, 1, 1);
    EXPECT_NEAR(ladder_lower(FockExpansion::basis(2, 5, p)).coeffs[1].real(), std::sqrt(5.0), 1e-15);
    EXPECT_NEAR(ladder_raise(FockExpansion::basis(0, 5, u)).coeffs[1].real(), 1.0, 0.0);
    EXPECT_NEAR(ladder_raise(FockExpansion::basis(1, 5, p)).coeffs[2].real(), std::sqrt(5.0), 1e-15);
}

TEST(Ladder, RaiseOutOfWindowThrows) {
    EXPECT_THROW(ladder_raise(FockExpansion::basis(5, 5, MLParams::unit())), truncation_error);
}

TEST(Ladder, NumberOperatorIdentity) {
    oracle::Draws d(42);
    for (int i = 0; i < 30; ++i) {
        const MLParams p = random_params(d);
        for (std::size_t n = 1; n < 20; ++n) {
            const auto s = ladder_raise(ladder_lower(FockExpansion::basis(n, 20, p)));
            const double e = structure_e(p, static_cast<long long>(n));
            EXPECT_NEAR(s.coeffs[n].real(), e, 4.0 * std::numeric_limits<double>::epsilon() * e);
            for (std::size_t m = 0; m <= 20; ++m) {
                if (m != n) {
                    EXPECT_EQ(s.coeffs[m], 0.0);
                }
            }
            const auto t = ladder_lower(ladder_raise(FockExpansion::basis(n, 20, p)));
            const double e1 = structure_e(p, static_cast<long long>(n + 1));
            EXPECT_NEAR(t.coeffs[n].real(), e1, 4.0 * std::numeric_limits<double>::epsilon() * e1);
        }
    }
}

TEST(CsBuild, Vacuum) {
    const auto s = cs_build(CSLabel(0.0), MLParams(2, 3, 1, 1));
    ASSERT_EQ(s.coeffs.size(), 1u);
    EXPECT_NEAR(s.coeffs[0].real(), 1.0, 1e-15);
}

TEST(CsBuild, GlauberReduction) {
    const auto s = cs_build(CSLabel(1.0), MLParams::unit());
    for (std::size_t n = 0; n < s.coeffs.size(); ++n) {
        EXPECT_NEAR(s.coeffs[n].real(), std::exp(-0.5) / std::sqrt(oracle::factorial(int(n))),
                    1e-15);
    }
}

TEST(CsBuild, NormalizedWithReportedTail) {
    oracle::Draws d(43);
    for (int i = 0; i < 50; ++i) {
        const auto s = cs_build(CSLabel(d.uniform(0, 5), d.uniform(0, 6.3)), random_params(d));
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10);
        EXPECT_LT(s.tail_mass, 1e-12);
    }
}

TEST(CsBuild, EigenvalueProperty) {
    oracle::Draws d(44);
    for (int i = 0; i < 50; ++i) {
        const CSLabel z(d.uniform(0, 4), d.uniform(0, 6.3));
        const MLParams p = random_params(d);
        const auto s = cs_build(z, p);
        const auto low = ladder_lower(s);
        for (std::size_t n = 0; n < s.coeffs.size(); ++n) {
            EXPECT_LT(std::abs(low.coeffs[n] - z.value() * s.coeffs[n]), 1e-9);
        }
    }
}

TEST(CsBuild, LabelContinuity) {
    const MLParams p(1.5, 2.0, 0.7, 1.2);
    oracle::Draws d(45);
    for (int i = 0; i < 40; ++i) {
        const auto z = std::complex<double>(d.uniform(-2, 2), d.uniform(-2, 2));
        const auto dz = std::complex<double>(d.uniform(-1, 1), d.uniform(-1, 1)) * 1e-4;
        const auto a = cs_build(CSLabel::from_complex(z), p);
        const auto b = cs_build(CSLabel::from_complex(z + dz), p);
        const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
        double dist = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const auto ca = k < a.coeffs.size() ? a.coeffs[k] : 0.0;
            const auto cb = k < b.coeffs.size() ? b.coeffs[k] : 0.0;
            dist += std::norm(ca - cb);
        }
        EXPECT_LE(std::sqrt(dist), 10.0 * std::abs(dz));
    }
}

TEST(PhotonDistribution, Poisson) {
    const auto d = photon_distribution(CSLabel(std::sqrt(2.5)), MLParams::unit());
    double total = 0.0;
    for (std::size_t n = 0; n < d.p.size(); ++n) {
        EXPECT_NEAR(d.p[n], oracle::poisson(2.5, int(n)), 1e-14);
        total += d.p[n];
    }
    EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(PhotonDistribution, RatioOracle) {
    const MLParams p(2, 3, 1, 1);
    const auto d = photon_distribution(CSLabel(1.0), p);
    for (std::size_t n = 0; n + 1 < d.p.size(); ++n) {
        if (d.p[n + 1] < 1e-280) {
            break;
        }
        const double ratio = (1.0 + n) / ((3.0 + 2.0 * n) * (n + 1.0));
        EXPECT_NEAR(d.p[n + 1] / d.p[n], ratio, 1e-12 * ratio);
    }
    EXPECT_EQ(photon_distribution(CSLabel(0.0), p).p, std::vector<double>{1.0});
}

TEST(Overlap, SelfOverlapIsExactlyOne) {
    oracle::Draws d(46);
    for (int i = 0; i < 50; ++i) {
        const CSLabel z(d.uniform(0, 6), d.uniform(0, 6.3));
        EXPECT_EQ(overlap(z, z, random_params(d)), std::complex<double>(1.0, 0.0));
    }
}

TEST(Overlap, Glauber) {
    const auto v = overlap(CSLabel(1.0), CSLabel(2.0), MLParams::unit());
    EXPECT_NEAR(v.real(), std::exp(-0.5), 1e-10);
    EXPECT_EQ(v.imag(), 0.0);
    const std::complex<double> z1(0.4, -0.9), z2(-1.1, 0.3);
    const auto g = std::exp(std::conj(z1) * z2 - 0.5 * std::norm(z1) - 0.5 * std::norm(z2));
    EXPECT_LT(std::abs(overlap(CSLabel::from_complex(z1), CSLabel::from_complex(z2),
                               MLParams::unit()) - g),
              1e-12);
}

TEST(Overlap, CauchySchwarzAndCoefficientRoute) {
    oracle::Draws d(47);
    for (int i = 0; i < 50; ++i) {
        const MLParams p = random_params(d);
        const CSLabel a(d.uniform(0, 3), d.uniform(0, 6.3));
        const CSLabel b(d.uniform(0, 3), d.uniform(0, 6.3));
        const auto v = overlap(a, b, p);
        EXPECT_LT(std::abs(v), 1.0);
        EXPECT_GT(std::abs(v), 0.0);
        EXPECT_LT(std::abs(v - overlap_from_coefficients(cs_build(a, p), cs_build(b, p))), 1e-10);
    }
}

TEST(Expectation, OrderedPower) {
    const MLParams p(2, 3, 1, 1);
    EXPECT_EQ(expectation_ordered_power(CSLabel(1.7), p, 0), 1.0);
    EXPECT_DOUBLE_EQ(expectation_ordered_power(CSLabel(2.0), p, 1), 4.0);
    EXPECT_DOUBLE_EQ(expectation_ordered_power(CSLabel(1.5), p, 2), 5.0625);
    oracle::Draws d(48);
    for (int i = 0; i < 30; ++i) {
        const CSLabel z(d.uniform(0, 3), d.uniform(0, 6.3));
        const MLParams q = random_params(d);
        const auto s = cs_build(z, q);
        for (int m = 0; m <= 4; ++m) {
            const double exact = expectation_ordered_power(z, q, m);
            EXPECT_NEAR(expectation_ordered_power_fock(s, m), exact, 1e-10 * (1.0 + exact));
        }
    }
}
