#pragma once

// The four-parameter generalized Mittag-Leffler function
//
//   E_{beta,alpha}^{gamma,k}(z) = sum_n (gamma)_{n,k} / Gamma_alpha(beta + alpha n) z^n / n!
//                               = 1F1(gamma/k; beta/alpha; (k/alpha) z) / Gamma(beta)
//
// summed by term-ratio recursion with Neumaier compensation. Negative
// arguments whose direct sum loses too many digits to cancellation are
// re-summed through the Kummer transformation.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "gmlcs/errors.hpp"
#include "gmlcs/kcore.hpp"
#include "gmlcs/quadrature.hpp"
#include "gmlcs/series.hpp"

namespace gmlcs {

namespace detail {

inline double inv_gamma(double x) {
    if (x < 170.0) {
        return 1.0 / std::tgamma(x);
    }
    return std::exp(-std::lgamma(x));
}

struct DirectSum {
    SeriesResult result;
    double weighted_abs = 0.0;  // sum (n+1)|t_n|, drives the rounding-error estimate
};

// Generic real power series with t_{n+1} = t_n * ratio(n). `ratio_bound(n)`
// must bound |ratio(m)| for every m > n.
template <typename Ratio, typename Bound>
DirectSum ratio_series(double first, Ratio ratio, Bound ratio_bound, const EvalConfig& cfg) {
    DirectSum out;
    NeumaierSum<double> sum;
    double t = first;
    double weighted = 0.0;
    for (std::size_t n = 0; n < cfg.max_terms; ++n) {
        sum.add(t);
        weighted += static_cast<double>(n + 1) * std::abs(t);
        const double next = t * ratio(n);
        if (!std::isfinite(next)) {
            throw overflow_error("series term exceeds the double range");
        }
        const double r = ratio_bound(n);
        out.result.terms_used = n + 1;
        if (r < 1.0) {
            const double tail = std::abs(next) / (1.0 - r);
            out.result.tail_bound = tail;
            if (tail <= 0.01 * cfg.rel_tol * std::abs(sum.value()) || tail == 0.0) {
                out.result.converged = true;
                break;
            }
        } else {
            out.result.tail_bound = std::numeric_limits<double>::infinity();
        }
        t = next;
    }
    out.result.value = sum.value();
    out.weighted_abs = weighted;
    return out;
}

// Kummer series M(a; b; x) = sum (a)_n/(b)_n x^n/n!, b > 0, any real a.
inline DirectSum kummer_series(double a, double b, double x, const EvalConfig& cfg) {
    const double bound_const = std::max(std::abs(a) / b, 1.0);
    return ratio_series(
        1.0, [&](std::size_t n) { const double dn = static_cast<double>(n);
                                  return (a + dn) * x / ((b + dn) * (dn + 1.0)); },
        [&](std::size_t n) { return std::abs(x) * bound_const / (static_cast<double>(n) + 2.0); },
        cfg);
}

inline double rounding_estimate(const DirectSum& d) {
    return 4.0 * std::numeric_limits<double>::epsilon() * d.weighted_abs;
}

}  // namespace detail

/// Confluent hypergeometric 1F1(a; b; x) for b > 0. Negative x is summed as
/// e^x 1F1(b - a; b; -x).
inline SeriesResult hyp1f1(double a, double b, double x, const EvalConfig& cfg = {}) {
    cfg.validate();
    detail::require_positive(b, "b");
    if (!std::isfinite(a) || !std::isfinite(x)) {
        throw domain_error("hyp1f1 arguments must be finite");
    }
    if (x >= 0.0) {
        auto d = detail::kummer_series(a, b, x, cfg);
        if (!d.result.converged) {
            throw convergence_error(describe_nonconvergence("hyp1f1", d.result), d.result);
        }
        return d.result;
    }
    auto d = detail::kummer_series(b - a, b, -x, cfg);
    const double scale = std::exp(x);
    d.result.value *= scale;
    d.result.tail_bound *= scale;
    if (!d.result.converged) {
        throw convergence_error(describe_nonconvergence("hyp1f1", d.result), d.result);
    }
    return d.result;
}

/// E_{beta,alpha}^{gamma,k}(z) for real z by direct term recursion.
inline SeriesResult ml_eval(const MLParams& p, double z, const EvalConfig& cfg = {}) {
    cfg.validate();
    if (!std::isfinite(z)) {
        throw domain_error("z must be finite");
    }
    const double inv_gb = detail::inv_gamma(p.beta());
    if (z == 0.0) {
        return {inv_gb, 1, 0.0, true};
    }
    const double al = p.alpha(), be = p.beta(), ga = p.gamma(), k = p.k();
    const double bound_const = std::max(ga / be, k / al);
    auto direct = detail::ratio_series(
        1.0,
        [&](std::size_t n) {
            const double dn = static_cast<double>(n);
            return z * (ga + dn * k) / ((be + al * dn) * (dn + 1.0));
        },
        [&](std::size_t n) { return std::abs(z) * bound_const / (static_cast<double>(n) + 2.0); },
        cfg);

    const bool accurate = direct.result.converged &&
                          detail::rounding_estimate(direct) <=
                              0.1 * cfg.rel_tol * std::abs(direct.result.value);
    if (z > 0.0 || accurate) {
        direct.result.value *= inv_gb;
        direct.result.tail_bound *= inv_gb;
        if (!direct.result.converged) {
            throw convergence_error(describe_nonconvergence("ml_eval", direct.result),
                                    direct.result);
        }
        return direct.result;
    }

    // Cancellation: E(z) = e^{(k/alpha) z} / Gamma(beta) * sum_n c_n |z|^n with
    // c_{n+1}/c_n = (k beta/alpha - gamma + n k) / ((beta + alpha n)(n + 1)).
    const double shifted = k * be / al - ga;
    const double mag = -z;
    const double conj_bound = std::max(std::abs(shifted) / be, k / al);
    auto conj = detail::ratio_series(
        1.0,
        [&](std::size_t n) {
            const double dn = static_cast<double>(n);
            return mag * (shifted + dn * k) / ((be + al * dn) * (dn + 1.0));
        },
        [&](std::size_t n) { return mag * conj_bound / (static_cast<double>(n) + 2.0); }, cfg);
    const double scale = std::exp(p.k_over_alpha() * z) * inv_gb;
    conj.result.value *= scale;
    conj.result.tail_bound *= scale;
    if (!conj.result.converged) {
        throw convergence_error(describe_nonconvergence("ml_eval", conj.result), conj.result);
    }
    return conj.result;
}

/// Cross-check route: 1F1(gamma/k; beta/alpha; (k/alpha) z) / Gamma(beta).
inline SeriesResult ml_eval_via_1f1(const MLParams& p, double z, const EvalConfig& cfg = {}) {
    if (!std::isfinite(z)) {
        throw domain_error("z must be finite");
    }
    SeriesResult r = hyp1f1(p.gamma_over_k(), p.beta_over_alpha(), p.k_over_alpha() * z, cfg);
    const double inv_gb = detail::inv_gamma(p.beta());
    r.value *= inv_gb;
    r.tail_bound *= inv_gb;
    return r;
}

/// log E_{beta,alpha}^{gamma,k}(x) for x >= 0; finite even when E(x) overflows.
inline double ml_eval_log(const MLParams& p, double x, const EvalConfig& cfg = {}) {
    cfg.validate();
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw domain_error("ml_eval_log requires a finite x >= 0");
    }
    const double log_first = -std::lgamma(p.beta());
    if (x == 0.0) {
        return log_first;
    }
    const double al = p.alpha(), be = p.beta(), ga = p.gamma(), k = p.k();
    const double bound_const = std::max(ga / be, k / al);
    const double log_x = std::log(x);
    double log_t = 0.0;  // relative to log_first
    double peak = 0.0;
    double scaled = 0.0;  // sum of exp(log_t - peak)
    SeriesResult r;
    for (std::size_t n = 0; n < cfg.max_terms; ++n) {
        if (log_t > peak) {
            scaled = scaled * std::exp(peak - log_t) + 1.0;
            peak = log_t;
        } else {
            scaled += std::exp(log_t - peak);
        }
        const double dn = static_cast<double>(n);
        const double log_next = log_t + log_x + std::log(ga + dn * k) -
                                std::log(be + al * dn) - std::log(dn + 1.0);
        const double rb = x * bound_const / (dn + 2.0);
        r.terms_used = n + 1;
        if (rb < 0.5) {
            const double tail = std::exp(log_next - peak) / (1.0 - rb);
            r.tail_bound = tail;
            if (tail <= 0.01 * cfg.rel_tol * scaled) {
                return log_first + peak + std::log(scaled);
            }
        }
        log_t = log_next;
    }
    r.value = log_first + peak + std::log(scaled);
    throw convergence_error(describe_nonconvergence("ml_eval_log", r), r);
}

/// E(w) * exp(-log_shift) for complex w; the shift keeps large-|w| sums finite.
inline std::complex<double> ml_eval_complex(const MLParams& p, std::complex<double> w,
                                            const EvalConfig& cfg = {}, double log_shift = 0.0) {
    cfg.validate();
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
        throw domain_error("w must be finite");
    }
    const double log_first = -std::lgamma(p.beta()) - log_shift;
    const double modulus = std::abs(w);
    if (modulus == 0.0) {
        return {std::exp(log_first), 0.0};
    }
    const double theta = std::arg(w);
    const double al = p.alpha(), be = p.beta(), ga = p.gamma(), k = p.k();
    const double bound_const = std::max(ga / be, k / al);
    const double log_mod = std::log(modulus);
    NeumaierSum<std::complex<double>> sum;
    double log_t = log_first;
    SeriesResult r;
    for (std::size_t n = 0; n < cfg.max_terms; ++n) {
        const double dn = static_cast<double>(n);
        sum.add(std::polar(std::exp(log_t), std::fmod(dn * theta, 2.0 * std::numbers::pi)));
        const double log_next =
            log_t + log_mod + std::log(ga + dn * k) - std::log(be + al * dn) - std::log(dn + 1.0);
        const double rb = modulus * bound_const / (dn + 2.0);
        r.terms_used = n + 1;
        if (rb < 0.5) {
            const double tail = std::exp(log_next) / (1.0 - rb);
            r.tail_bound = tail;
            if (tail <= 0.01 * cfg.rel_tol * std::abs(sum.value())) {
                return sum.value();
            }
        }
        log_t = log_next;
    }
    r.value = std::abs(sum.value());
    throw convergence_error(describe_nonconvergence("ml_eval_complex", r), r);
}

/// 2F1(1, a; c; w) = sum (a)_n/(c)_n w^n for |w| < 1, c > 0.
inline SeriesResult hyp2f1_unit_first(double a, double c, double w, const EvalConfig& cfg = {}) {
    cfg.validate();
    detail::require_positive(c, "c");
    if (!(std::abs(w) < 1.0)) {
        throw domain_error("2F1 argument must satisfy |w| < 1");
    }
    auto d = detail::ratio_series(
        1.0,
        [&](std::size_t n) {
            const double dn = static_cast<double>(n);
            return (a + dn) * w / (c + dn);
        },
        [&](std::size_t n) {
            const double dn = static_cast<double>(n) + 1.0;
            return std::abs(w) * std::max(std::abs(a + dn) / (c + dn), 1.0);
        },
        cfg);
    if (!d.result.converged) {
        throw convergence_error(describe_nonconvergence("hyp2f1", d.result), d.result);
    }
    return d.result;
}

/// Laplace transform int_0^inf e^{-s x} E(x) dx in closed form,
/// (1/s) (1/Gamma(beta)) 2F1(1, gamma/k; beta/alpha; k/(alpha s)).
inline double ml_laplace(const MLParams& p, double s, const EvalConfig& cfg = {}) {
    detail::require_positive(s, "s");
    const double w = p.k_over_alpha() / s;
    if (!(w < 1.0)) {
        throw domain_error("Laplace transform diverges: 2F1 argument k/(alpha s) >= 1");
    }
    const auto f = hyp2f1_unit_first(p.gamma_over_k(), p.beta_over_alpha(), w, cfg);
    return f.value * detail::inv_gamma(p.beta()) / s;
}

/// The same transform by adaptive quadrature of the defining integral.
inline QuadResult ml_laplace_quadrature(const MLParams& p, double s,
                                        const QuadratureSpec& quad = {},
                                        const EvalConfig& cfg = {}) {
    detail::require_positive(s, "s");
    const double rate = s - p.k_over_alpha();
    auto integrand = [&](double x) { return std::exp(-s * x + ml_eval_log(p, x, cfg)); };
    SemiInfiniteOptions opt;
    opt.first_width = rate > 0.0 ? std::min(1.0, 1.0 / rate) : 1.0;
    opt.min_extent = rate > 0.0 ? 4.0 / rate : 0.0;
    opt.max_panels = 20;
    try {
        return integrate_to_infinity(integrand, 0.0, quad, opt);
    } catch (const quadrature_error& e) {
        throw quadrature_error(std::string("Laplace integral diverges: ") + e.what(), e.partial(),
                               e.error_estimate());
    } catch (const convergence_error& e) {
        throw quadrature_error(std::string("Laplace integral diverges: ") + e.what(),
                               e.partial().value, std::numeric_limits<double>::infinity());
    }
}

}  // namespace gmlcs
