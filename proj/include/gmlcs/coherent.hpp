#pragma once

// Barut-Girardello coherent states over the generalized Mittag-Leffler Fock
// structure, held as truncated coefficient vectors.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "gmlcs/errors.hpp"
#include "gmlcs/kcore.hpp"
#include "gmlcs/mlfunc.hpp"
#include "gmlcs/series.hpp"

namespace gmlcs {

/// Coherent-state label z = modulus * exp(i phase), phase kept in [0, 2 pi).
class CSLabel {
public:
    CSLabel(double modulus, double phase = 0.0) : modulus_(modulus) {
        if (!(modulus >= 0.0) || !std::isfinite(modulus)) {
            throw domain_error("label modulus must be finite and non-negative");
        }
        if (!std::isfinite(phase)) {
            throw domain_error("label phase must be finite");
        }
        constexpr double two_pi = 2.0 * std::numbers::pi;
        phase_ = std::fmod(phase, two_pi);
        if (phase_ < 0.0) {
            phase_ += two_pi;
        }
        if (phase_ >= two_pi) {
            phase_ = 0.0;
        }
    }

    static CSLabel from_complex(std::complex<double> z) {
        return {std::abs(z), std::arg(z)};
    }

    double modulus() const noexcept { return modulus_; }
    double phase() const noexcept { return phase_; }
    double modulus_squared() const noexcept { return modulus_ * modulus_; }
    std::complex<double> value() const { return std::polar(modulus_, phase_); }

    friend bool operator==(const CSLabel&, const CSLabel&) = default;

private:
    double modulus_;
    double phase_ = 0.0;
};

/// State sum_n coeffs[n] |n> on the window n = 0..N.
struct FockExpansion {
    std::vector<std::complex<double>> coeffs;
    MLParams params;
    double tail_mass = 0.0;  // bound on the probability discarded above N

    std::size_t truncation() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }

    double norm_squared() const {
        NeumaierSum<double> s;
        for (const auto& c : coeffs) {
            s.add(std::norm(c));
        }
        return s.value();
    }

    static FockExpansion basis(std::size_t n, std::size_t window, const MLParams& params) {
        if (n > window) {
            throw domain_error("basis index lies outside the Fock window");
        }
        FockExpansion out{std::vector<std::complex<double>>(window + 1), params, 0.0};
        out.coeffs[n] = 1.0;
        return out;
    }
};

/// e(n) = n (beta + alpha (n-1)) / (gamma + k (n-1)).
inline double structure_e(const MLParams& p, long long n) {
    if (n < 1) {
        throw domain_error("structure constant needs n >= 1");
    }
    const double m = static_cast<double>(n - 1);
    return static_cast<double>(n) * (p.beta() + p.alpha() * m) / (p.gamma() + p.k() * m);
}

/// Same formula with alpha = 0 and k = 0 admitted, e.g. the linear spectrum (beta/gamma) n.
inline double structure_e_formal(double alpha, double beta, double gamma, double k, long long n) {
    if (n < 1) {
        throw domain_error("structure constant needs n >= 1");
    }
    if (!(alpha >= 0.0) || !(k >= 0.0)) {
        throw domain_error("alpha and k must be non-negative");
    }
    detail::require_positive(beta, "beta");
    detail::require_positive(gamma, "gamma");
    const double m = static_cast<double>(n - 1);
    return static_cast<double>(n) * (beta + alpha * m) / (gamma + k * m);
}

/// A_- : c'_{n-1} = sqrt(e(n)) c_n. Not renormalized.
inline FockExpansion ladder_lower(const FockExpansion& state) {
    FockExpansion out{std::vector<std::complex<double>>(state.coeffs.size()), state.params, 0.0};
    for (std::size_t n = 1; n < state.coeffs.size(); ++n) {
        out.coeffs[n - 1] =
            std::sqrt(structure_e(state.params, static_cast<long long>(n))) * state.coeffs[n];
    }
    return out;
}

/// A_+ : c'_{n+1} = sqrt(e(n+1)) c_n. Throws when the top coefficient would leave the window.
inline FockExpansion ladder_raise(const FockExpansion& state, double top_tol = 1e-14) {
    const std::size_t size = state.coeffs.size();
    if (size > 0 && std::abs(state.coeffs.back()) > top_tol) {
        throw truncation_error("raising would move amplitude above the Fock window");
    }
    FockExpansion out{std::vector<std::complex<double>>(size), state.params, 0.0};
    for (std::size_t n = 0; n + 1 < size; ++n) {
        out.coeffs[n + 1] =
            std::sqrt(structure_e(state.params, static_cast<long long>(n + 1))) * state.coeffs[n];
    }
    return out;
}

/// log of (gamma)_{n,k} / (Gamma_alpha(beta + alpha n) n!), the weight of x^n in E(x).
inline double log_fock_weight(const MLParams& p, long long n) {
    return log_k_pochhammer(p.gamma(), n, p.k()) - log_gen_gamma(p, n) -
           std::lgamma(static_cast<double>(n) + 1.0);
}

/// log |c_n(z)|^2 at x = |z|^2 > 0.
inline double log_photon_probability(const MLParams& p, double x, long long n,
                                     const EvalConfig& cfg = {}) {
    if (!(x > 0.0)) {
        throw domain_error("log_photon_probability requires |z|^2 > 0");
    }
    return log_fock_weight(p, n) + static_cast<double>(n) * std::log(x) - ml_eval_log(p, x, cfg);
}

struct PhotonDistribution {
    std::vector<double> p;
    double tail_mass = 0.0;
    double log_normalizer = 0.0;  // log E(|z|^2)
};

/// p_n = |c_n|^2, truncated once the geometric tail bound drops below tail_tol.
inline PhotonDistribution photon_distribution(const CSLabel& z, const MLParams& params,
                                              const EvalConfig& cfg = {},
                                              double tail_tol = 1e-24) {
    cfg.validate();
    const double x = z.modulus_squared();
    PhotonDistribution out;
    out.log_normalizer = ml_eval_log(params, x, cfg);
    if (x == 0.0) {
        out.p = {1.0};
        return out;
    }
    const double al = params.alpha(), be = params.beta(), ga = params.gamma(),
                 k = params.k();
    const double bound_const = std::max(ga / be, k / al);
    const double log_x = std::log(x);
    double log_p = -std::lgamma(be) - out.log_normalizer;
    for (std::size_t n = 0; n < cfg.max_terms; ++n) {
        out.p.push_back(std::exp(log_p));
        const double dn = static_cast<double>(n);
        const double log_next = log_p + log_x + std::log(ga + dn * k) - std::log(be + al * dn) -
                                std::log(dn + 1.0);
        const double rb = x * bound_const / (dn + 2.0);
        if (rb < 0.5) {
            const double tail = std::exp(log_next) / (1.0 - rb);
            if (tail <= tail_tol) {
                out.tail_mass = tail;
                return out;
            }
        }
        log_p = log_next;
    }
    SeriesResult partial;
    partial.terms_used = out.p.size();
    partial.value = 1.0;
    partial.tail_bound = std::exp(log_p);
    throw convergence_error(describe_nonconvergence("photon_distribution", partial), partial);
}

/// Coefficients c_n of |z> in the Fock basis.
inline FockExpansion cs_build(const CSLabel& z, const MLParams& params,
                              const EvalConfig& cfg = {}, double tail_tol = 1e-24) {
    const PhotonDistribution dist = photon_distribution(z, params, cfg, tail_tol);
    FockExpansion out{std::vector<std::complex<double>>(dist.p.size()), params, dist.tail_mass};
    for (std::size_t n = 0; n < dist.p.size(); ++n) {
        const double angle = std::fmod(static_cast<double>(n) * z.phase(), 2.0 * std::numbers::pi);
        out.coeffs[n] = std::polar(std::sqrt(dist.p[n]), angle);
    }
    return out;
}

/// <z1|z2> = E(z1* z2) / sqrt(E(|z1|^2) E(|z2|^2)).
inline std::complex<double> overlap(const CSLabel& z1, const CSLabel& z2, const MLParams& params,
                                    const EvalConfig& cfg = {}) {
    const double l1 = ml_eval_log(params, z1.modulus() * z1.modulus(), cfg);
    const double l2 = ml_eval_log(params, z2.modulus() * z2.modulus(), cfg);
    const double shift = 0.5 * (l1 + l2);
    const double w_mod = z1.modulus() * z2.modulus();
    const double w_arg = z2.phase() - z1.phase();
    if (w_mod == 0.0 || w_arg == 0.0) {
        return {std::exp(ml_eval_log(params, w_mod, cfg) - shift), 0.0};
    }
    return ml_eval_complex(params, std::polar(w_mod, w_arg), cfg, shift);
}

/// sum_n conj(a_n) b_n over the common window.
inline std::complex<double> overlap_from_coefficients(const FockExpansion& a,
                                                      const FockExpansion& b) {
    NeumaierSum<std::complex<double>> s;
    const std::size_t n = std::min(a.coeffs.size(), b.coeffs.size());
    for (std::size_t i = 0; i < n; ++i) {
        s.add(std::conj(a.coeffs[i]) * b.coeffs[i]);
    }
    return s.value();
}

/// Normally ordered <z| A_+^m A_-^m |z> = |z|^{2m}.
inline double expectation_ordered_power(const CSLabel& z, const MLParams&, long long m) {
    if (m < 0) {
        throw domain_error("m must be non-negative");
    }
    return std::pow(z.modulus_squared(), static_cast<double>(m));
}

/// The same expectation as || A_-^m state ||^2 in coefficient space.
inline double expectation_ordered_power_fock(const FockExpansion& state, long long m) {
    if (m < 0) {
        throw domain_error("m must be non-negative");
    }
    FockExpansion cur = state;
    for (long long i = 0; i < m; ++i) {
        cur = ladder_lower(cur);
    }
    return cur.norm_squared();
}

}  // namespace gmlcs
