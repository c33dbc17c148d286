#pragma once

// k-deformed gamma and Pochhammer symbols, and the parameter set of the
// four-parameter Mittag-Leffler function E_{beta,alpha}^{gamma,k}.

#include <cmath>
#include <limits>
#include <string>

#include "gmlcs/errors.hpp"

namespace gmlcs {

namespace detail {

inline const double kLogMax = std::log(std::numeric_limits<double>::max());

inline void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw domain_error(std::string(name) + " must be positive");
    }
}

}  // namespace detail

/// Structure constants (alpha, beta, gamma, k) of the generalized
/// Mittag-Leffler function. All four are strictly positive reals.
class MLParams {
public:
    MLParams(double alpha, double beta, double gamma, double k)
        : alpha_(alpha), beta_(beta), gamma_(gamma), k_(k) {
        detail::require_positive(alpha, "alpha");
        detail::require_positive(beta, "beta");
        detail::require_positive(gamma, "gamma");
        detail::require_positive(k, "k");
    }

    static MLParams unit() { return {1.0, 1.0, 1.0, 1.0}; }

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double gamma() const noexcept { return gamma_; }
    double k() const noexcept { return k_; }

    // Parameters of the equivalent Kummer function 1F1(gamma/k; beta/alpha; (k/alpha) z).
    double gamma_over_k() const noexcept { return gamma_ / k_; }
    double beta_over_alpha() const noexcept { return beta_ / alpha_; }
    double k_over_alpha() const noexcept { return k_ / alpha_; }

    friend bool operator==(const MLParams&, const MLParams&) = default;

private:
    double alpha_;
    double beta_;
    double gamma_;
    double k_;
};

/// log Gamma_k(x) = (x/k - 1) log k + log Gamma(x/k).
inline double log_k_gamma(double x, double k) {
    detail::require_positive(x, "x");
    detail::require_positive(k, "k");
    return (x / k - 1.0) * std::log(k) + std::lgamma(x / k);
}

/// Gamma_k(x) = k^{x/k - 1} Gamma(x/k).
inline double k_gamma(double x, double k) {
    const double lg = log_k_gamma(x, k);
    if (lg > detail::kLogMax) {
        throw overflow_error("k_gamma: result exceeds the double range");
    }
    const double g = std::tgamma(x / k);
    const double p = std::pow(k, x / k - 1.0);
    const double direct = p * g;
    if (std::isfinite(g) && std::isfinite(p) && p > std::numeric_limits<double>::min() &&
        std::isfinite(direct) && direct > 0.0) {
        return direct;
    }
    return std::exp(lg);
}

/// (x)_{n,k} = x (x+k) ... (x+(n-1)k), evaluated as a direct product.
/// k = 0 is allowed and gives x^n.
inline double k_pochhammer(double x, long long n, double k) {
    detail::require_positive(x, "x");
    if (n < 0) {
        throw domain_error("n must be non-negative");
    }
    if (!(k >= 0.0) || !std::isfinite(k)) {
        throw domain_error("k must be non-negative");
    }
    double prod = 1.0;
    for (long long j = 0; j < n; ++j) {
        prod *= x + static_cast<double>(j) * k;
    }
    if (!std::isfinite(prod)) {
        throw overflow_error("k_pochhammer: product exceeds the double range");
    }
    return prod;
}

inline double log_k_pochhammer(double x, long long n, double k) {
    detail::require_positive(x, "x");
    if (n < 0) {
        throw domain_error("n must be non-negative");
    }
    if (!(k >= 0.0) || !std::isfinite(k)) {
        throw domain_error("k must be non-negative");
    }
    const double dn = static_cast<double>(n);
    if (k == 0.0) {
        return dn * std::log(x);
    }
    return dn * std::log(k) + std::lgamma(x / k + dn) - std::lgamma(x / k);
}

/// Gamma_alpha(beta + alpha n) = Gamma(beta) (beta)_{n,alpha}, by iterated product.
inline double gen_gamma(const MLParams& p, long long n) {
    if (n < 0) {
        throw domain_error("n must be non-negative");
    }
    double prod = std::tgamma(p.beta());
    for (long long j = 0; j < n && std::isfinite(prod); ++j) {
        prod *= p.beta() + static_cast<double>(j) * p.alpha();
    }
    if (!std::isfinite(prod)) {
        throw overflow_error("gen_gamma: value exceeds the double range, use log_gen_gamma");
    }
    return prod;
}

/// log Gamma_alpha(beta + alpha n) via log-gamma; finite for any n <= 1e6.
inline double log_gen_gamma(const MLParams& p, long long n) {
    if (n < 0) {
        throw domain_error("n must be non-negative");
    }
    const double b = p.beta_over_alpha();
    const double dn = static_cast<double>(n);
    return dn * std::log(p.alpha()) + std::lgamma(b + dn) - std::lgamma(b) +
           std::lgamma(p.beta());
}

/// alpha^n (beta/alpha)_n Gamma(beta) through the gamma-function ratio.
inline double gen_gamma_ratio(const MLParams& p, long long n) {
    if (n < 0) {
        throw domain_error("n must be non-negative");
    }
    const double b = p.beta_over_alpha();
    const double dn = static_cast<double>(n);
    const double num = std::tgamma(b + dn);
    const double den = std::tgamma(b);
    const double scale = std::pow(p.alpha(), dn) * std::tgamma(p.beta());
    const double direct = scale * (num / den);
    if (std::isfinite(num) && std::isfinite(direct) && std::isfinite(scale)) {
        return direct;
    }
    const double lg = log_gen_gamma(p, n);
    if (lg > detail::kLogMax) {
        throw overflow_error("gen_gamma_ratio: value exceeds the double range");
    }
    return std::exp(lg);
}

}  // namespace gmlcs
