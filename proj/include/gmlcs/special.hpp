#pragma once

// Special functions behind the integration measure: complex log-gamma,
// Tricomi's confluent U, Whittaker's W, and the Meijer function
// G^{2,0}_{1,2}(y | a; b1, b2) by two independent routes.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "gmlcs/errors.hpp"
#include "gmlcs/quadrature.hpp"

namespace gmlcs {

/// A real number stored as sign * exp(log_abs); sign is 0 for an exact zero.
struct LogValue {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

    static LogValue from(double v) {
        if (v == 0.0) {
            return {};
        }
        return {std::log(std::abs(v)), v > 0.0 ? 1 : -1};
    }
};

/// Principal-ish log Gamma(z) for complex z off the poles (Lanczos, g = 7).
/// Only exp() of the result is branch-independent.
inline std::complex<double> lgamma_complex(std::complex<double> z) {
    static constexpr std::array<double, 9> c = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    std::complex<double> shift_log{0.0, 0.0};
    while (z.real() < 0.5) {
        if (z.imag() == 0.0 && z.real() == std::round(z.real())) {
            throw domain_error("lgamma_complex: pole at a non-positive integer");
        }
        shift_log += std::log(z);
        z += 1.0;
    }
    z -= 1.0;
    std::complex<double> x = c[0];
    for (int i = 1; i < 9; ++i) {
        x += c[i] / (z + static_cast<double>(i));
    }
    const std::complex<double> t = z + 7.5;
    const double half_log_two_pi = 0.91893853320467274178;
    return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(x) - shift_log;
}

namespace detail {

inline bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::round(v); }

// U(-m, b, x) = (-1)^m sum_s C(m, s) (b + s)_{m-s} (-x)^s, any real b.
inline double tricomi_polynomial(int m, double b, double x) {
    double total = 0.0;
    double binom = 1.0;
    double xpow = 1.0;
    for (int s = 0; s <= m; ++s) {
        double poch = 1.0;
        for (int j = 0; j < m - s; ++j) {
            poch *= b + s + j;
        }
        total += binom * poch * xpow;
        binom = binom * (m - s) / (s + 1.0);
        xpow *= -x;
    }
    return (m % 2 == 0) ? total : -total;
}

// U(a, b, x) = x^{-a}/Gamma(a) int_0^inf e^{-u} u^{a-1} (1 + u/x)^{b-a-1} du, a >= 1.
inline double tricomi_integral(double a, double b, double x) {
    QuadratureSpec spec;
    spec.abs_tol = 1e-300;
    spec.rel_tol = 1e-14;
    spec.max_nodes = 200000;
    const double p = b - a - 1.0;
    auto integrand = [&](double u) {
        if (u <= 0.0) {
            return a == 1.0 ? 1.0 : 0.0;
        }
        return std::exp(-u + (a - 1.0) * std::log(u) + p * std::log1p(u / x));
    };
    SemiInfiniteOptions opt;
    opt.min_extent = a + std::max(0.0, p) + 4.0;
    const QuadResult r = integrate_to_infinity(integrand, 0.0, spec, opt);
    return r.value * std::exp(-a * std::log(x) - std::lgamma(a));
}

}  // namespace detail

/// Tricomi's confluent hypergeometric function U(a, b, x) for real a, b and x >= 0.
inline double tricomi_u(double a, double b, double x) {
    if (!(x >= 0.0) || !std::isfinite(x) || !std::isfinite(a) || !std::isfinite(b)) {
        throw domain_error("tricomi_u requires finite a, b and x >= 0");
    }
    if (detail::is_nonpositive_integer(a)) {
        return detail::tricomi_polynomial(static_cast<int>(-a), b, x);
    }
    const double a_dual = a - b + 1.0;
    if (detail::is_nonpositive_integer(a_dual)) {
        // Kummer: U(a, b, x) = x^{1-b} U(a - b + 1, 2 - b, x).
        const double poly = detail::tricomi_polynomial(static_cast<int>(-a_dual), 2.0 - b, x);
        if (x == 0.0) {
            if (b < 1.0) return 0.0;
            if (b == 1.0) return poly;
            return std::numeric_limits<double>::infinity();
        }
        return std::pow(x, 1.0 - b) * poly;
    }
    if (x == 0.0) {
        if (b < 1.0) {
            return std::tgamma(1.0 - b) / std::tgamma(a_dual);
        }
        return std::numeric_limits<double>::infinity();
    }
    if (a >= 1.0) {
        return detail::tricomi_integral(a, b, x);
    }
    // Shift a into [1, 2), then recur downward (the stable direction for U):
    // U(a-1) = -(b - 2a - x) U(a) - a (a - b + 1) U(a+1).
    const int steps = static_cast<int>(std::ceil(1.0 - a));
    double c = a + steps;
    double u_c = detail::tricomi_integral(c, b, x);
    double u_next = detail::tricomi_integral(c + 1.0, b, x);
    for (int i = 0; i < steps; ++i) {
        const double u_prev = -(b - 2.0 * c - x) * u_c - c * (c - b + 1.0) * u_next;
        u_next = u_c;
        u_c = u_prev;
        c -= 1.0;
    }
    return u_c;
}

/// Whittaker W_{kappa,mu}(x) = e^{-x/2} x^{mu + 1/2} U(1/2 + mu - kappa, 1 + 2 mu, x).
inline double whittaker_w(double kappa, double mu, double x) {
    if (!(x > 0.0)) {
        throw domain_error("whittaker_w requires x > 0");
    }
    const double u = tricomi_u(0.5 + mu - kappa, 1.0 + 2.0 * mu, x);
    return std::exp(-0.5 * x + (mu + 0.5) * std::log(x)) * u;
}

/// G^{2,0}_{1,2}(y | a; b1, b2) through the Whittaker reduction
///   G = y^{(b1+b2-1)/2} e^{-y/2} W_{kappa,mu}(y),
///   kappa = (b1 + b2 + 1)/2 - a,  mu = (b1 - b2)/2,
/// carried out in log space. y = 0 is supported for b1 = 0.
inline LogValue meijer_g21_12_log(double y, double a, double b1, double b2) {
    if (!(y >= 0.0) || !std::isfinite(y)) {
        throw domain_error("Meijer G argument must be finite and non-negative");
    }
    const double kappa = 0.5 * (b1 + b2 + 1.0) - a;
    const double mu = 0.5 * (b1 - b2);
    const double ua = 0.5 + mu - kappa;
    const double ub = 1.0 + 2.0 * mu;
    if (y == 0.0) {
        if (b1 != 0.0) {
            throw domain_error("Meijer G at zero argument is supported only for b1 = 0");
        }
        return LogValue::from(tricomi_u(ua, ub, 0.0));
    }
    const LogValue u = LogValue::from(tricomi_u(ua, ub, y));
    if (u.sign == 0) {
        return u;
    }
    // y^{(b1+b2-1)/2} e^{-y/2} * e^{-y/2} y^{mu+1/2} = y^{b1} e^{-y}
    const double log_w_prefactor = -0.5 * y + (mu + 0.5) * std::log(y);
    const double log_g_prefactor = 0.5 * (b1 + b2 - 1.0) * std::log(y) - 0.5 * y;
    return {log_g_prefactor + log_w_prefactor + u.log_abs, u.sign};
}

inline double meijer_g21_12(double y, double a, double b1, double b2) {
    return meijer_g21_12_log(y, a, b1, b2).value();
}

/// G^{2,0}_{1,2}(y | a; b1, b2) from its Mellin-Barnes integral
///   (1/2 pi i) int Gamma(b1 + s) Gamma(b2 + s) / Gamma(a + s) y^{-s} ds
/// along the vertical line through the real saddle point.
inline double meijer_g21_12_mellin_barnes(double y, double a, double b1, double b2) {
    if (!(y > 0.0) || !std::isfinite(y)) {
        throw domain_error("Mellin-Barnes route requires y > 0");
    }
    const double log_y = std::log(y);
    const double s_min = std::max(-b1, -b2);
    auto phi = [&](double s) {
        return std::lgamma(s + b1) + std::lgamma(s + b2) - std::lgamma(s + a) - s * log_y;
    };

    // Golden-section search for the minimum of the real integrand.
    double lo = s_min + 1e-9;
    double hi = s_min + 20.0 + 2.0 * y;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = phi(x1), f2 = phi(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-9 * (1.0 + std::abs(hi)); ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = phi(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = phi(x2);
        }
    }
    const double c = std::max(0.5 * (lo + hi), s_min + 0.25);
    const double phi_c = phi(c);
    const double h = 1e-3 * std::max(1.0, c - s_min);
    const double curvature = std::max((phi(c + h) - 2.0 * phi_c + phi(c - h)) / (h * h), 1e-8);

    auto integrand = [&](double t) {
        const std::complex<double> s(c, t);
        const std::complex<double> log_f = lgamma_complex(s + b1) + lgamma_complex(s + b2) -
                                           lgamma_complex(s + a) - s * log_y;
        return std::exp(log_f.real() - phi_c) * std::cos(log_f.imag());
    };
    QuadratureSpec spec;
    spec.abs_tol = 1e-300;
    spec.rel_tol = 1e-12;
    spec.max_nodes = 400000;
    SemiInfiniteOptions opt;
    opt.first_width = std::min(1.0, 0.5 / std::sqrt(curvature));
    opt.min_extent = 8.0 / std::sqrt(curvature);
    const QuadResult r = integrate_to_infinity(integrand, 0.0, spec, opt);
    return std::exp(phi_c) * r.value / std::numbers::pi;
}

}  // namespace gmlcs
