#pragma once

// Continuous-spectrum counterparts: the nu-function, the integral generalized
// Mittag-Leffler function, and thermal quantities at unit parameters.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <utility>

#include "gmlcs/coherent.hpp"
#include "gmlcs/errors.hpp"
#include "gmlcs/kcore.hpp"
#include "gmlcs/quadrature.hpp"

namespace gmlcs {

enum class QuadratureScheme { adaptive, fixed_gauss_legendre };

namespace detail {

// Location and extent of a unimodal-ish integrand exp(log_f(E)) on E >= 0.
struct PeakWindow {
    double peak = 0.0;      // argmax
    double log_peak = 0.0;  // log_f(peak)
    double cutoff = 0.0;    // log_f has dropped by at least 45 beyond here
};

inline PeakWindow locate_peak(const std::function<double(double)>& log_f) {
    PeakWindow w;
    double best_e = 0.0;
    double best = log_f(0.0);
    double e = 0.0;
    const double step = 0.5;
    while (e < 1e7) {
        e += step * std::max(1.0, std::sqrt(e) / 4.0);
        const double v = log_f(e);
        if (v > best) {
            best = v;
            best_e = e;
        }
        if (v < best - 50.0 && e > best_e + 10.0) {
            break;
        }
    }
    // Golden-section refinement around the best grid point.
    double lo = std::max(0.0, best_e - 2.0 * step * std::max(1.0, std::sqrt(best_e) / 4.0));
    double hi = best_e + 2.0 * step * std::max(1.0, std::sqrt(best_e) / 4.0);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
    double f1 = log_f(x1), f2 = log_f(x2);
    for (int it = 0; it < 100 && hi - lo > 1e-10 * (1.0 + hi); ++it) {
        if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = log_f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = log_f(x2);
        }
    }
    const double refined = 0.5 * (lo + hi);
    if (log_f(refined) > best) {
        best_e = refined;
        best = log_f(refined);
    }
    w.peak = best_e;
    w.log_peak = best;
    double cut = best_e + 40.0 + 10.0 * std::sqrt(best_e);
    double grow = 10.0 + std::sqrt(best_e);
    while (log_f(cut) > best - 45.0 && cut < 1e8) {
        cut += grow;
        grow *= 2.0;
    }
    w.cutoff = cut;
    return w;
}

// log int_0^inf exp(log_f(E)) dE, integrated relative to the peak value.
inline double log_peaked_integral(const std::function<double(double)>& log_f,
                                  const QuadratureSpec& quad, QuadratureScheme scheme) {
    quad.validate();
    const PeakWindow w = locate_peak(log_f);
    auto scaled = [&](double e) { return std::exp(log_f(e) - w.log_peak); };
    const double end = quad.upper_cutoff > 0.0 ? quad.upper_cutoff : w.cutoff;
    double total = 0.0;
    if (scheme == QuadratureScheme::adaptive) {
        const double abs_tol =
            std::max(quad.abs_tol * std::exp(-std::min(w.log_peak, 700.0)), 1e-300);
        const double split = std::min(w.peak, end);
        for (const auto& [a, b] : {std::pair{0.0, split}, std::pair{split, end}}) {
            if (b <= a) {
                continue;
            }
            const QuadResult r = gauss_kronrod(scaled, a, b, abs_tol, quad.rel_tol, quad.max_nodes);
            if (!r.converged) {
                throw quadrature_error("peaked integral did not converge",
                                       r.value * std::exp(w.log_peak), r.abs_error);
            }
            total += r.value;
        }
    } else {
        const auto panels = static_cast<std::size_t>(std::max(32.0, std::ceil(end)));
        total = gauss_legendre_composite<20>(scaled, 0.0, end, panels);
    }
    return w.log_peak + std::log(total);
}

}  // namespace detail

/// log nu(x), nu(x) = int_0^inf x^E / Gamma(E+1) dE; -inf at x = 0.
inline double nu_function_log(double x, const QuadratureSpec& quad = {},
                              QuadratureScheme scheme = QuadratureScheme::adaptive) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw domain_error("x must be finite and non-negative");
    }
    if (x == 0.0) {
        return -std::numeric_limits<double>::infinity();
    }
    const double log_x = std::log(x);
    return detail::log_peaked_integral(
        [log_x](double e) { return e * log_x - std::lgamma(e + 1.0); }, quad, scheme);
}

inline double nu_function(double x, const QuadratureSpec& quad = {},
                          QuadratureScheme scheme = QuadratureScheme::adaptive) {
    const double lv = nu_function_log(x, quad, scheme);
    if (lv > detail::kLogMax) {
        throw overflow_error("nu_function: value exceeds the double range, use nu_function_log");
    }
    return std::exp(lv);
}

/// Integral generalized Mittag-Leffler function
///   int_0^inf k^E (gamma/k)_E / (alpha^E (beta/alpha)_E Gamma(beta)) x^E / Gamma(E+1) dE
/// with continuous Pochhammer symbols (c)_E = Gamma(c+E)/Gamma(c).
inline double tilde_ml(const MLParams& p, double x, const QuadratureSpec& quad = {},
                       QuadratureScheme scheme = QuadratureScheme::adaptive) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw domain_error("x must be finite and non-negative");
    }
    if (x == 0.0) {
        return 0.0;
    }
    const double a = p.gamma_over_k(), b = p.beta_over_alpha();
    const double log_rate = std::log(p.k_over_alpha() * x);
    const double base = -std::lgamma(a) + std::lgamma(b) - std::lgamma(p.beta());
    const double lv = detail::log_peaked_integral(
        [=](double e) {
            return base + e * log_rate + std::lgamma(a + e) - std::lgamma(b + e) -
                   std::lgamma(e + 1.0);
        },
        quad, scheme);
    if (lv > detail::kLogMax) {
        throw overflow_error("tilde_ml: value exceeds the double range");
    }
    return std::exp(lv);
}

/// h~(x) = e^{-x} nu(x).
inline double continuum_measure_weight(double x, const QuadratureSpec& quad = {}) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw domain_error("x must be finite and non-negative");
    }
    if (x == 0.0) {
        return 0.0;
    }
    return std::exp(-x + nu_function_log(x, quad));
}

/// int_0^inf (h~(x) / nu(x)) x^E dx, which equals Gamma(E+1).
inline QuadResult continuum_moment(double energy, const QuadratureSpec& quad = {}) {
    if (!(energy >= 0.0) || !std::isfinite(energy)) {
        throw domain_error("energy must be finite and non-negative");
    }
    auto integrand = [&](double x) {
        if (x <= 0.0) {
            return energy == 0.0 ? 1.0 : 0.0;
        }
        const double log_nu = nu_function_log(x, quad);
        const double log_h = -x + log_nu;
        return std::exp(log_h - log_nu + energy * std::log(x));
    };
    SemiInfiniteOptions opt;
    opt.min_extent = energy + 5.0;
    opt.max_panels = 40;
    return integrate_to_infinity(integrand, 0.0, quad, opt);
}

/// Z~ = int_0^inf e^{-beta_B E} dE = 1 / beta_B.
inline double continuum_partition(double beta_B) {
    detail::require_positive(beta_B, "beta_B");
    return 1.0 / beta_B;
}

inline QuadResult continuum_partition_quadrature(double beta_B, const QuadratureSpec& quad = {}) {
    detail::require_positive(beta_B, "beta_B");
    SemiInfiniteOptions opt;
    opt.first_width = std::min(1.0, 1.0 / beta_B);
    opt.min_extent = 5.0 / beta_B;
    return integrate_to_infinity([&](double e) { return std::exp(-beta_B * e); }, 0.0, quad,
                                 opt);
}

/// Q~(|z|^2) = (1/Z~) nu(e^{-beta_B} |z|^2) / nu(|z|^2); the limit beta_B at z = 0.
inline double continuum_husimi(const CSLabel& z, double beta_B, const QuadratureSpec& quad = {},
                               QuadratureScheme scheme = QuadratureScheme::adaptive) {
    detail::require_positive(beta_B, "beta_B");
    const double x = z.modulus_squared();
    if (x == 0.0) {
        return beta_B;
    }
    return beta_B * std::exp(nu_function_log(std::exp(-beta_B) * x, quad, scheme) -
                             nu_function_log(x, quad, scheme));
}

enum class PConvention {
    discrete_reduction,  // (1/Z~) e^{beta_B} exp(-(e^{beta_B} - 1) x), decaying
    literal,             // (1/Z~) exp(-(1 - e^{beta_B}) x), growing
};

inline double continuum_p_function(const CSLabel& z, double beta_B,
                                   PConvention convention = PConvention::discrete_reduction) {
    detail::require_positive(beta_B, "beta_B");
    const double x = z.modulus_squared();
    const double g = std::expm1(beta_B);
    if (convention == PConvention::literal) {
        return beta_B * std::exp(g * x);
    }
    return beta_B * std::exp(beta_B - g * x);
}

/// int_0^inf h~(x) P~(x) x^E / (nu(x) Gamma(E+1)) dx, which equals e^{-beta_B E} / Z~.
inline QuadResult continuum_p_diagonal(double energy, double beta_B,
                                       const QuadratureSpec& quad = {}) {
    detail::require_positive(beta_B, "beta_B");
    if (!(energy >= 0.0) || !std::isfinite(energy)) {
        throw domain_error("energy must be finite and non-negative");
    }
    const double lg = std::lgamma(energy + 1.0);
    auto integrand = [&](double x) {
        if (x <= 0.0) {
            return energy == 0.0 ? beta_B * std::exp(beta_B) : 0.0;
        }
        const double log_nu = nu_function_log(x, quad);
        const double log_h = -x + log_nu;
        const double log_p = std::log(continuum_p_function(CSLabel(std::sqrt(x)), beta_B));
        return std::exp(log_h + log_p + energy * std::log(x) - log_nu - lg);
    };
    const double scale = std::exp(-beta_B);
    SemiInfiniteOptions opt;
    opt.first_width = std::min(1.0, scale);
    opt.min_extent = scale * (energy + 5.0);
    opt.max_panels = 40;
    return integrate_to_infinity(integrand, 0.0, quad, opt);
}

/// Continuum coherent state with amplitude c(E) = z^E / (sqrt(nu(|z|^2)) Gamma(E+1)).
struct EnergyDensityState {
    CSLabel z;
    double norm = 0.0;          // nu(|z|^2), the stated normalizer
    double density_norm = 0.0;  // int_0^inf |z|^{2E} / Gamma(E+1)^2 dE

    std::complex<double> amplitude(double energy) const {
        const double log_mod = energy * std::log(z.modulus()) - 0.5 * std::log(norm) -
                               std::lgamma(energy + 1.0);
        return std::polar(std::exp(log_mod), energy * z.phase());
    }

    /// int |c(E)|^2 dE; one only when both normalizations coincide.
    double normalization_ratio() const { return density_norm / norm; }
};

inline EnergyDensityState make_energy_density_state(const CSLabel& z,
                                                    const QuadratureSpec& quad = {}) {
    const double x = z.modulus_squared();
    if (!(x > 0.0)) {
        throw domain_error("continuum state needs |z| > 0");
    }
    const double log_x = std::log(x);
    const double log_density = detail::log_peaked_integral(
        [log_x](double e) { return e * log_x - 2.0 * std::lgamma(e + 1.0); }, quad,
        QuadratureScheme::adaptive);
    return {z, nu_function(x, quad), std::exp(log_density)};
}

}  // namespace gmlcs
