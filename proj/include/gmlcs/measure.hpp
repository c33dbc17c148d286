#pragma once

// The Meijer-G weight of the resolution of identity and numerical checks of
// the moment problem that defines it.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gmlcs/coherent.hpp"
#include "gmlcs/errors.hpp"
#include "gmlcs/kcore.hpp"
#include "gmlcs/mlfunc.hpp"
#include "gmlcs/quadrature.hpp"
#include "gmlcs/special.hpp"

namespace gmlcs {

/// Indices of G^{2,0}_{1,2}(y | a; b1, b2) for the measure, y = (k/alpha) x.
struct MeijerIndices {
    double a;
    double b1;
    double b2;
};

inline MeijerIndices measure_indices(const MLParams& p) {
    return {p.gamma_over_k() - 1.0, 0.0, p.beta_over_alpha() - 1.0};
}

inline LogValue meijer_g_weight_log(const MLParams& p, double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw domain_error("x must be finite and non-negative");
    }
    const auto ix = measure_indices(p);
    return meijer_g21_12_log(p.k_over_alpha() * x, ix.a, ix.b1, ix.b2);
}

inline double meijer_g_weight(const MLParams& p, double x) {
    return meijer_g_weight_log(p, x).value();
}

inline double meijer_g_weight_mellin_barnes(const MLParams& p, double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw domain_error("x must be finite and positive");
    }
    const auto ix = measure_indices(p);
    return meijer_g21_12_mellin_barnes(p.k_over_alpha() * x, ix.a, ix.b1, ix.b2);
}

/// Both routes; throws evaluation_error when they disagree beyond rel_tol.
inline double meijer_g_weight_checked(const MLParams& p, double x, double rel_tol = 1e-6) {
    const double primary = meijer_g_weight(p, x);
    if (x == 0.0) {
        return primary;
    }
    const double reference = meijer_g_weight_mellin_barnes(p, x);
    const double scale = std::max(std::abs(primary), std::abs(reference));
    if (!(std::abs(primary - reference) <= rel_tol * scale)) {
        std::ostringstream os;
        os.precision(17);
        os << "Meijer G routes disagree at x = " << x << ": " << primary << " vs " << reference;
        throw evaluation_error(os.str(), primary, reference);
    }
    return primary;
}

/// log of (k/alpha) Gamma(gamma/k) Gamma(beta) / Gamma(beta/alpha).
inline double log_measure_prefactor(const MLParams& p) {
    return std::log(p.k_over_alpha()) + std::lgamma(p.gamma_over_k()) + std::lgamma(p.beta()) -
           std::lgamma(p.beta_over_alpha());
}

/// h(x) in log form; dmu = h(|z|^2) d|z|^2 dphi / (2 pi).
inline LogValue measure_weight_h_log(const MLParams& p, double x, const EvalConfig& cfg = {}) {
    const LogValue g = meijer_g_weight_log(p, x);
    if (g.sign == 0) {
        return g;
    }
    return {log_measure_prefactor(p) + ml_eval_log(p, x, cfg) + g.log_abs, g.sign};
}

inline double measure_weight_h(const MLParams& p, double x, const EvalConfig& cfg = {}) {
    return measure_weight_h_log(p, x, cfg).value();
}

struct MomentReport {
    std::vector<double> s_values;
    std::vector<double> lhs;
    std::vector<double> rhs;
    double max_rel_err = 0.0;
    std::vector<std::string> diagnostics;
};

/// (alpha/k)^s Gamma(s) Gamma(beta/alpha - 1 + s) / Gamma(gamma/k - 1 + s).
inline double moment_closed_form(const MLParams& p, double s) {
    const auto ix = measure_indices(p);
    const double arg_b = ix.b2 + s;
    const double arg_a = ix.a + s;
    if (!(arg_b > 0.0) || !(arg_a > 0.0) || !(s > 0.0)) {
        throw domain_error("moment closed form has a non-positive gamma argument");
    }
    return std::exp(s * std::log(1.0 / p.k_over_alpha()) + std::lgamma(s) + std::lgamma(arg_b) -
                    std::lgamma(arg_a));
}

/// int_0^inf x^{s-1} G((k/alpha) x) dx by quadrature.
inline QuadResult moment_quadrature(const MLParams& p, double s, const QuadratureSpec& quad = {}) {
    const auto ix = measure_indices(p);
    auto integrand = [&](double x) {
        if (x <= 0.0) {
            return 0.0;
        }
        const LogValue g = meijer_g_weight_log(p, x);
        return g.sign == 0 ? 0.0 : g.sign * std::exp((s - 1.0) * std::log(x) + g.log_abs);
    };
    const double scale = 1.0 / p.k_over_alpha();
    SemiInfiniteOptions opt;
    opt.leading_power = s - 1.0 + std::min(0.0, ix.b2);
    opt.first_width = scale;
    opt.min_extent = scale * (s + std::abs(ix.b2) + 5.0);
    return integrate_to_infinity(integrand, 0.0, quad, opt);
}

/// Moment identity for s = 1..s_max. Quadrature failures are recorded per s.
inline MomentReport verify_resolution(const MLParams& p, int s_max,
                                      const QuadratureSpec& quad = {}) {
    if (s_max < 1) {
        throw domain_error("s_max must be at least 1");
    }
    quad.validate();
    MomentReport rep;
    for (int si = 1; si <= s_max; ++si) {
        const double s = si;
        const double rhs = moment_closed_form(p, s);
        double lhs = std::numeric_limits<double>::quiet_NaN();
        try {
            lhs = moment_quadrature(p, s, quad).value;
        } catch (const quadrature_error& e) {
            rep.diagnostics.push_back("s = " + std::to_string(si) + ": " + e.what());
        }
        rep.s_values.push_back(s);
        rep.lhs.push_back(lhs);
        rep.rhs.push_back(rhs);
        const double err = std::abs(lhs - rhs) / std::abs(rhs);
        rep.max_rel_err = std::isnan(err) ? std::numeric_limits<double>::infinity()
                                          : std::max(rep.max_rel_err, err);
    }
    return rep;
}

/// Radial part int_0^inf h(x) sqrt(p_m(x) p_n(x)) dx.
inline QuadResult resolution_radial(const MLParams& p, long long m, long long n,
                                    const QuadratureSpec& quad = {}, const EvalConfig& cfg = {}) {
    const auto ix = measure_indices(p);
    const double log_w = 0.5 * (log_fock_weight(p, m) + log_fock_weight(p, n));
    const double half_power = 0.5 * static_cast<double>(m + n);
    auto integrand = [&](double x) {
        if (x <= 0.0) {
            return 0.0;
        }
        const LogValue h = measure_weight_h_log(p, x, cfg);
        if (h.sign == 0) {
            return 0.0;
        }
        const double log_pp = log_w + half_power * std::log(x) - ml_eval_log(p, x, cfg);
        return h.sign * std::exp(h.log_abs + log_pp);
    };
    const double scale = 1.0 / p.k_over_alpha();
    SemiInfiniteOptions opt;
    opt.leading_power = half_power + std::min(0.0, ix.b2);
    opt.first_width = scale;
    opt.min_extent = scale * (half_power + std::abs(ix.b2) + 5.0);
    return integrate_to_infinity(integrand, 0.0, quad, opt);
}

/// Matrix of int dmu(z) conj(c_m(z)) c_n(z) for m, n <= n_max. The angular
/// average uses a trapezoid rule that is exact for the harmonics involved.
inline std::vector<std::vector<std::complex<double>>> resolution_matrix(
    const MLParams& p, int n_max, const QuadratureSpec& quad = {}, const EvalConfig& cfg = {}) {
    if (n_max < 0) {
        throw domain_error("n_max must be non-negative");
    }
    const std::size_t size = static_cast<std::size_t>(n_max) + 1;
    const int nodes = 2 * n_max + 2;
    std::vector<std::vector<std::complex<double>>> out(
        size, std::vector<std::complex<double>>(size));
    for (std::size_t m = 0; m < size; ++m) {
        for (std::size_t n = m; n < size; ++n) {
            std::complex<double> angular = 0.0;
            const double d = static_cast<double>(n) - static_cast<double>(m);
            for (int j = 0; j < nodes; ++j) {
                const double phi = 2.0 * std::numbers::pi * j / nodes;
                angular += std::polar(1.0, d * phi);
            }
            angular /= static_cast<double>(nodes);
            const double radial =
                resolution_radial(p, static_cast<long long>(m), static_cast<long long>(n), quad, cfg)
                    .value;
            out[m][n] = angular * radial;
            out[n][m] = std::conj(out[m][n]);
        }
    }
    return out;
}

struct WeightPositivity {
    std::size_t samples = 0;
    std::size_t negative = 0;
    double min_value = std::numeric_limits<double>::infinity();
    double x_at_min = 0.0;
};

/// Samples the Meijer-G weight on a uniform grid of (0, cutoff].
inline WeightPositivity weight_positivity(const MLParams& p, double cutoff, std::size_t samples) {
    if (!(cutoff > 0.0) || samples == 0) {
        throw domain_error("positivity scan needs cutoff > 0 and at least one sample");
    }
    WeightPositivity rep;
    for (std::size_t i = 1; i <= samples; ++i) {
        const double x = cutoff * static_cast<double>(i) / static_cast<double>(samples);
        const double g = meijer_g_weight(p, x);
        ++rep.samples;
        if (!(g > 0.0)) {
            ++rep.negative;
        }
        if (g < rep.min_value) {
            rep.min_value = g;
            rep.x_at_min = x;
        }
    }
    return rep;
}

}  // namespace gmlcs
