#pragma once

// Thermal states: partition functions for linear and quadratic spectra, the
// Husimi Q function and the diagonal P representation for a linear spectrum.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <variant>
#include <vector>

#include "gmlcs/coherent.hpp"
#include "gmlcs/errors.hpp"
#include "gmlcs/kcore.hpp"
#include "gmlcs/measure.hpp"
#include "gmlcs/mlfunc.hpp"
#include "gmlcs/quadrature.hpp"
#include "gmlcs/series.hpp"

namespace gmlcs {

struct LinearSpectrum {
    double slope;  // E_n = slope * n
};

struct QuadraticSpectrum {
    double A;  // E_n = A n + B n^2
    double B;
};

struct ThermalConfig {
    double beta_B = 1.0;
    std::variant<LinearSpectrum, QuadraticSpectrum> spectrum = LinearSpectrum{1.0};
    int ansatz_terms = 8;

    static ThermalConfig linear(double beta_B, double slope) {
        ThermalConfig c{beta_B, LinearSpectrum{slope}, 8};
        c.validate();
        return c;
    }

    /// Linear spectrum (beta/gamma) n.
    static ThermalConfig linear_from(const MLParams& p, double beta_B) {
        return linear(beta_B, p.beta() / p.gamma());
    }

    static ThermalConfig quadratic(double beta_B, double A, double B, int J = 8) {
        ThermalConfig c{beta_B, QuadraticSpectrum{A, B}, J};
        c.validate();
        return c;
    }

    /// A = (beta/gamma)(1 - alpha), B = (beta/gamma) alpha.
    static ThermalConfig quadratic_from(const MLParams& p, double beta_B, int J = 8) {
        const double r = p.beta() / p.gamma();
        return quadratic(beta_B, r * (1.0 - p.alpha()), r * p.alpha(), J);
    }

    bool is_linear() const { return std::holds_alternative<LinearSpectrum>(spectrum); }

    void validate() const {
        detail::require_positive(beta_B, "beta_B");
        if (const auto* lin = std::get_if<LinearSpectrum>(&spectrum)) {
            detail::require_positive(lin->slope, "slope");
        } else {
            const auto& q = std::get<QuadraticSpectrum>(spectrum);
            detail::require_positive(q.A, "A");
            if (!std::isfinite(q.B)) {
                throw domain_error("B must be finite");
            }
            if (ansatz_terms < 1 || ansatz_terms > 30) {
                throw domain_error("ansatz_terms must lie in [1, 30]");
            }
        }
    }

    double energy(long long n) const {
        const double dn = static_cast<double>(n);
        if (const auto* lin = std::get_if<LinearSpectrum>(&spectrum)) {
            return lin->slope * dn;
        }
        const auto& q = std::get<QuadraticSpectrum>(spectrum);
        return q.A * dn + q.B * dn * dn;
    }
};

namespace detail {

inline const LinearSpectrum& require_linear(const ThermalConfig& cfg) {
    cfg.validate();
    const auto* lin = std::get_if<LinearSpectrum>(&cfg.spectrum);
    if (lin == nullptr) {
        throw domain_error("operation needs a linear spectrum");
    }
    return *lin;
}

// log Z for the linear spectrum: Z = 1 / (1 - e^{-t}).
inline double log_partition_linear(double t) { return -std::log(-std::expm1(-t)); }

}  // namespace detail

/// Z = sum_n e^{-beta_B slope n} = 1 / (1 - e^{-beta_B slope}).
inline double partition_linear(const ThermalConfig& cfg) {
    const auto& lin = detail::require_linear(cfg);
    return -1.0 / std::expm1(-cfg.beta_B * lin.slope);
}

/// sum_{n>=0} n^m q^n for 0 <= q < 1, through Eulerian numbers.
inline double bose_power_sum(int m, double q) {
    if (m < 0) {
        throw domain_error("power must be non-negative");
    }
    if (!(q >= 0.0 && q < 1.0)) {
        throw domain_error("ratio must lie in [0, 1)");
    }
    if (m == 0) {
        return 1.0 / (1.0 - q);
    }
    // Row m of the Eulerian triangle: A(m, j) = (j+1) A(m-1, j) + (m-j) A(m-1, j-1).
    std::vector<double> row{1.0};
    for (int r = 2; r <= m; ++r) {
        std::vector<double> next(static_cast<std::size_t>(r), 0.0);
        for (int j = 0; j < r; ++j) {
            const double keep = j < r - 1 ? (j + 1.0) * row[static_cast<std::size_t>(j)] : 0.0;
            const double shift = j > 0 ? (r - j) * row[static_cast<std::size_t>(j - 1)] : 0.0;
            next[static_cast<std::size_t>(j)] = keep + shift;
        }
        row = std::move(next);
    }
    double poly = 0.0;
    for (std::size_t j = row.size(); j-- > 0;) {
        poly = poly * q + row[j];
    }
    return q * poly / std::pow(1.0 - q, m + 1);
}

/// sum_n e^{-beta_B (A n + B n^2)} summed directly; B must be non-negative.
inline double partition_quadratic_direct(double beta_B, double A, double B) {
    detail::require_positive(beta_B, "beta_B");
    detail::require_positive(A, "A");
    if (!(B >= 0.0)) {
        throw domain_error("the direct partition sum needs B >= 0");
    }
    NeumaierSum<double> sum;
    for (long long n = 0; n < 10000000; ++n) {
        const double dn = static_cast<double>(n);
        const double term = std::exp(-beta_B * (A * dn + B * dn * dn));
        sum.add(term);
        if (term <= 1e-3 * std::numeric_limits<double>::epsilon() * sum.value()) {
            return sum.value();
        }
    }
    throw convergence_error("direct partition sum did not converge",
                            {sum.value(), 10000000, 0.0, false});
}

struct AnsatzReport {
    SeriesResult series;
    double direct = 0.0;
    double rel_diff = 0.0;
    bool terms_growing = false;  // the last j-term exceeds its predecessor
    std::vector<double> partial_sums;  // Z_J for J = 0..ansatz_terms
};

/// Z_J = sum_{j<=J} ((-beta_B B)^j / j!) sum_n n^{2j} e^{-beta_B A n}, an
/// asymptotic expansion in B, reported against the direct sum.
inline AnsatzReport partition_quadratic(const ThermalConfig& cfg) {
    cfg.validate();
    const auto* q = std::get_if<QuadraticSpectrum>(&cfg.spectrum);
    if (q == nullptr) {
        throw domain_error("operation needs a quadratic spectrum");
    }
    const double ratio = std::exp(-cfg.beta_B * q->A);
    const double x = -cfg.beta_B * q->B;
    AnsatzReport rep;
    double total = 0.0;
    double coeff = 1.0;
    double prev_term = std::numeric_limits<double>::infinity();
    double last_term = 0.0;
    for (int j = 0; j <= cfg.ansatz_terms; ++j) {
        if (j == 0) {
            total = -1.0 / std::expm1(-cfg.beta_B * q->A);
            last_term = total;
        } else {
            coeff *= x / j;
            last_term = coeff * bose_power_sum(2 * j, ratio);
            total += last_term;
        }
        rep.terms_growing = j > 0 && std::abs(last_term) > std::abs(prev_term);
        prev_term = last_term;
        rep.partial_sums.push_back(total);
    }
    rep.series.value = total;
    rep.series.terms_used = static_cast<std::size_t>(cfg.ansatz_terms) + 1;
    rep.series.tail_bound = std::abs(last_term);
    rep.series.converged = !rep.terms_growing;
    if (q->B >= 0.0) {
        rep.direct = partition_quadratic_direct(cfg.beta_B, q->A, q->B);
        rep.rel_diff = std::abs(total - rep.direct) / rep.direct;
    } else {
        rep.direct = std::numeric_limits<double>::quiet_NaN();
        rep.rel_diff = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

/// Relative error of Z_J against the direct sum for J = 0..j_max.
inline std::vector<double> ansatz_error_curve(double beta_B, double A, double B, int j_max) {
    const AnsatzReport rep = partition_quadratic(ThermalConfig::quadratic(beta_B, A, B, j_max));
    std::vector<double> out;
    for (double z : rep.partial_sums) {
        out.push_back(std::abs(z - rep.direct) / rep.direct);
    }
    return out;
}

/// True when the curve strictly decreases to an interior minimum and then strictly increases.
inline bool is_asymptotic_curve(const std::vector<double>& err) {
    if (err.size() < 3) {
        return false;
    }
    const auto it = std::min_element(err.begin(), err.end());
    const std::size_t i_min = static_cast<std::size_t>(it - err.begin());
    if (i_min == 0 || i_min + 1 == err.size()) {
        return false;
    }
    for (std::size_t i = 1; i <= i_min; ++i) {
        if (!(err[i] < err[i - 1])) {
            return false;
        }
    }
    for (std::size_t i = i_min + 1; i < err.size(); ++i) {
        if (!(err[i] > err[i - 1])) {
            return false;
        }
    }
    return true;
}

/// Q(|z|^2) = (1/Z) E(e^{-beta_B slope} |z|^2) / E(|z|^2).
inline double husimi_q(const CSLabel& z, const MLParams& params, const ThermalConfig& cfg,
                       const EvalConfig& ecfg = {}) {
    const auto& lin = detail::require_linear(cfg);
    const double t = cfg.beta_B * lin.slope;
    const double x = z.modulus_squared();
    return std::exp(ml_eval_log(params, std::exp(-t) * x, ecfg) - ml_eval_log(params, x, ecfg) -
                    detail::log_partition_linear(t));
}

/// The same Q as (1/Z) sum_n e^{-beta_B E_n} |c_n|^2.
inline double husimi_q_fock(const CSLabel& z, const MLParams& params, const ThermalConfig& cfg,
                            const EvalConfig& ecfg = {}) {
    const auto& lin = detail::require_linear(cfg);
    const PhotonDistribution dist = photon_distribution(z, params, ecfg);
    NeumaierSum<double> sum;
    for (std::size_t n = 0; n < dist.p.size(); ++n) {
        sum.add(std::exp(-cfg.beta_B * lin.slope * static_cast<double>(n)) * dist.p[n]);
    }
    return sum.value() / partition_linear(cfg);
}

/// log P(|z|^2) with P = (1/Z) lambda G(lambda y) / G(y), lambda = e^{beta_B slope}.
inline LogValue p_function_log(const CSLabel& z, const MLParams& params,
                               const ThermalConfig& cfg) {
    const auto& lin = detail::require_linear(cfg);
    const double t = cfg.beta_B * lin.slope;
    const double x = z.modulus_squared();
    const LogValue num = meijer_g_weight_log(params, std::exp(t) * x);
    const LogValue den = meijer_g_weight_log(params, x);
    if (x == 0.0 && !std::isfinite(den.log_abs)) {
        // Weight singular like y^{b2} at the origin: the ratio tends to lambda^{b2}.
        const auto ix = measure_indices(params);
        return {-detail::log_partition_linear(t) + t + ix.b2 * t, 1};
    }
    if (den.sign == 0 || !std::isfinite(den.log_abs)) {
        throw evaluation_error("P function: weight in the denominator is zero or not finite",
                               num.value(), den.value());
    }
    if (num.sign == 0) {
        return num;
    }
    return {-detail::log_partition_linear(t) + t + num.log_abs - den.log_abs, num.sign * den.sign};
}

inline double p_function(const CSLabel& z, const MLParams& params, const ThermalConfig& cfg) {
    return p_function_log(z, params, cfg).value();
}

/// int_0^inf h(x) Q(x) dx, which equals one.
inline QuadResult husimi_normalization(const MLParams& params, const ThermalConfig& cfg,
                                       const QuadratureSpec& quad = {},
                                       const EvalConfig& ecfg = {}) {
    const auto& lin = detail::require_linear(cfg);
    const double t = cfg.beta_B * lin.slope;
    const double q = std::exp(-t);
    const double log_z = detail::log_partition_linear(t);
    const auto ix = measure_indices(params);
    auto integrand = [&](double x) {
        if (x <= 0.0) {
            return 0.0;
        }
        const LogValue h = measure_weight_h_log(params, x, ecfg);
        if (h.sign == 0) {
            return 0.0;
        }
        const double log_q =
            ml_eval_log(params, q * x, ecfg) - ml_eval_log(params, x, ecfg) - log_z;
        return h.sign * std::exp(h.log_abs + log_q);
    };
    const double scale = 1.0 / (params.k_over_alpha() * (1.0 - q));
    SemiInfiniteOptions opt;
    opt.leading_power = std::min(0.0, ix.b2);
    opt.first_width = std::min(scale, 1.0 / params.k_over_alpha());
    opt.min_extent = scale * (std::abs(ix.b2) + 5.0);
    return integrate_to_infinity(integrand, 0.0, quad, opt);
}

/// int_0^inf h(x) P(x) |c_n|^2(x) dx, which equals e^{-beta_B E_n} / Z.
inline QuadResult p_function_diagonal(const MLParams& params, const ThermalConfig& cfg,
                                      long long n, const QuadratureSpec& quad = {},
                                      const EvalConfig& ecfg = {}) {
    const auto& lin = detail::require_linear(cfg);
    const double lambda = std::exp(cfg.beta_B * lin.slope);
    const auto ix = measure_indices(params);
    const double log_w = log_fock_weight(params, n);
    const double dn = static_cast<double>(n);
    auto integrand = [&](double x) {
        if (x <= 0.0) {
            return 0.0;
        }
        const CSLabel z(std::sqrt(x));
        const LogValue h = measure_weight_h_log(params, x, ecfg);
        const LogValue pf = p_function_log(z, params, cfg);
        if (h.sign == 0 || pf.sign == 0) {
            return 0.0;
        }
        const double log_pn = log_w + dn * std::log(x) - ml_eval_log(params, x, ecfg);
        return h.sign * pf.sign * std::exp(h.log_abs + pf.log_abs + log_pn);
    };
    const double scale = 1.0 / (params.k_over_alpha() * lambda);
    SemiInfiniteOptions opt;
    opt.leading_power = dn + std::min(0.0, ix.b2);
    opt.first_width = scale;
    opt.min_extent = scale * (dn + std::abs(ix.b2) + 5.0);
    return integrate_to_infinity(integrand, 0.0, quad, opt);
}

}  // namespace gmlcs
