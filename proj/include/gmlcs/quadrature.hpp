#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature, a semi-infinite driver with
// doubling panels, and a composite fixed-order Gauss-Legendre rule.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "gmlcs/errors.hpp"

namespace gmlcs {

struct QuadratureSpec {
    double upper_cutoff = 0.0;  // 0 selects adaptive doubling of the cutoff
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    std::size_t max_nodes = 100000;

    void validate() const {
        if (!(abs_tol > 0.0)) {
            throw domain_error("abs_tol must be positive");
        }
        if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
            throw domain_error("rel_tol must lie in (0, 1)");
        }
        if (max_nodes < 100) {
            throw domain_error("max_nodes must be at least 100");
        }
        if (!(upper_cutoff >= 0.0)) {
            throw domain_error("upper_cutoff must be non-negative");
        }
    }
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for Kronrod nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

// One G7/K15 panel with the QUADPACK error heuristic.
template <typename F>
Segment gk15(F& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double resk = fc * kKronrodWeights[7];
    double resg = fc * kGaussWeights[3];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        f1[j] = f(centre - dx);
        f2[j] = f(centre + dx);
        resk += kKronrodWeights[j] * (f1[j] + f2[j]);
        resabs += kKronrodWeights[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) {
            resg += kGaussWeights[j / 2] * (f1[j] + f2[j]);
        }
    }
    const double mean = 0.5 * resk;
    double resasc = kKronrodWeights[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kKronrodWeights[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }
    resk *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((resk - resg * half));
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * resabs, err);
    }
    if (!std::isfinite(resk)) {
        err = std::numeric_limits<double>::infinity();
    }
    return {a, b, resk, err};
}

}  // namespace detail

/// Globally adaptive G7/K15 quadrature on the finite interval [a, b].
/// Never throws on non-convergence; inspect QuadResult::converged.
template <typename F>
QuadResult gauss_kronrod(F&& f, double a, double b, double abs_tol, double rel_tol,
                         std::size_t max_evals = 100000) {
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    // The error estimate never drops below ~50 eps |I|.
    rel_tol = std::max(rel_tol, 100.0 * std::numeric_limits<double>::epsilon());
    std::priority_queue<detail::Segment> heap;
    heap.push(detail::gk15(f, a, b));
    out.evaluations = 15;
    double total = heap.top().value;
    double error = heap.top().error;
    while (true) {
        if (error <= std::max(abs_tol, rel_tol * std::abs(total))) {
            out.converged = true;
            break;
        }
        if (out.evaluations + 30 > max_evals) {
            break;
        }
        const detail::Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            break;  // interval exhausted at machine resolution
        }
        heap.pop();
        const auto left = detail::gk15(f, worst.a, mid);
        const auto right = detail::gk15(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed drift from the incremental updates.
    double sum = 0.0, err = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    out.value = sum;
    out.abs_error = err;
    if (!std::isfinite(sum)) {
        out.converged = false;
    }
    return out;
}

/// Adaptive quadrature on [a, b] honouring a QuadratureSpec; throws on failure.
template <typename F>
QuadResult integrate(F&& f, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    QuadResult r = gauss_kronrod(f, a, b, spec.abs_tol, spec.rel_tol, spec.max_nodes);
    if (!r.converged) {
        throw quadrature_error("adaptive quadrature did not converge", r.value, r.abs_error);
    }
    return r;
}

struct SemiInfiniteOptions {
    double first_width = 1.0;  // width of the first panel; later panels double
    double min_extent = 0.0;   // never stop before a + min_extent
    // Integrand behaves like (x - a)^leading_power at the left end; values in
    // (-1, 0) trigger a power-law substitution on the first panel.
    double leading_power = 0.0;
    std::size_t max_panels = 64;
};

namespace detail {

template <typename F>
QuadResult first_panel(F& f, double a, double w, double leading_power, double abs_tol,
                       double rel_tol, std::size_t max_evals) {
    if (leading_power < 0.0 && leading_power > -1.0) {
        // x = a + w t^m turns (x-a)^p dx into a t^{m(p+1)-1} dt with non-negative exponent.
        const double m = std::ceil(2.0 / (leading_power + 1.0));
        auto g = [&](double t) {
            if (t <= 0.0) {
                return 0.0;
            }
            const double tm1 = std::pow(t, m - 1.0);
            return f(a + w * tm1 * t) * w * m * tm1;
        };
        return gauss_kronrod(g, 0.0, 1.0, abs_tol, rel_tol, max_evals);
    }
    return gauss_kronrod(f, a, a + w, abs_tol, rel_tol, max_evals);
}

}  // namespace detail

/// Integral over [a, inf) of an integrand that eventually decays.
/// Panels double in width until a panel contributes below tolerance while the
/// integrand is in its decaying phase. A positive spec.upper_cutoff replaces
/// the doubling by the fixed interval [a, a + upper_cutoff].
template <typename F>
QuadResult integrate_to_infinity(F&& f, double a, const QuadratureSpec& spec,
                                 const SemiInfiniteOptions& opt = {}) {
    spec.validate();
    QuadResult out;
    if (spec.upper_cutoff > 0.0) {
        const double w = std::min(opt.first_width, spec.upper_cutoff);
        QuadResult head = detail::first_panel(f, a, w, opt.leading_power, spec.abs_tol,
                                              spec.rel_tol, spec.max_nodes);
        QuadResult body = gauss_kronrod(f, a + w, a + spec.upper_cutoff, spec.abs_tol,
                                        spec.rel_tol, spec.max_nodes);
        out.value = head.value + body.value;
        out.abs_error = head.abs_error + body.abs_error;
        out.evaluations = head.evaluations + body.evaluations;
        out.converged = head.converged && body.converged;
        if (!out.converged) {
            throw quadrature_error("quadrature on the fixed cutoff did not converge", out.value,
                                   out.abs_error);
        }
        return out;
    }

    double lo = a;
    double w = opt.first_width;
    double prev = std::numeric_limits<double>::infinity();
    int small_in_a_row = 0;
    for (std::size_t panel = 0; panel < opt.max_panels; ++panel) {
        const std::size_t budget =
            spec.max_nodes > out.evaluations ? spec.max_nodes - out.evaluations : 0;
        if (budget < 15) {
            break;
        }
        const double panel_abs =
            std::max(spec.abs_tol, 0.1 * spec.rel_tol * std::abs(out.value));
        QuadResult r = panel == 0 ? detail::first_panel(f, lo, w, opt.leading_power,
                                                        spec.abs_tol, spec.rel_tol, budget)
                                  : gauss_kronrod(f, lo, lo + w, panel_abs, spec.rel_tol,
                                                  budget);
        out.value += r.value;
        out.abs_error += r.abs_error;
        out.evaluations += r.evaluations;
        if (!r.converged) {
            throw quadrature_error("semi-infinite quadrature: panel did not converge", out.value,
                                   out.abs_error);
        }
        const double mag = std::abs(r.value);
        const bool small = mag <= 0.1 * std::max(spec.abs_tol, spec.rel_tol * std::abs(out.value));
        const bool decaying = mag <= prev;
        small_in_a_row = (small && decaying) ? small_in_a_row + 1 : 0;
        prev = mag;
        lo += w;
        if (lo - a >= opt.min_extent && small_in_a_row >= 2) {
            out.converged = true;
            return out;
        }
        w *= 2.0;
        if (!std::isfinite(lo)) {
            break;
        }
    }
    throw quadrature_error("semi-infinite quadrature: tail did not decay within the panel budget",
                           out.value, out.abs_error);
}

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_N).
template <int N>
struct GaussLegendre {
    std::array<double, N> nodes{};
    std::array<double, N> weights{};

    GaussLegendre() {
        constexpr double pi = 3.14159265358979323846;
        for (int i = 0; i < (N + 1) / 2; ++i) {
            double x = std::cos(pi * (i + 0.75) / (N + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= N; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[N - 1 - i] = x;
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[N - 1 - i] = w;
        }
    }

    static const GaussLegendre& instance() {
        static const GaussLegendre rule;
        return rule;
    }
};

/// Composite N-point Gauss-Legendre rule on `panels` equal sub-intervals.
template <int N = 20, typename F>
double gauss_legendre_composite(F&& f, double a, double b, std::size_t panels) {
    const auto& rule = GaussLegendre<N>::instance();
    const double h = (b - a) / static_cast<double>(panels);
    double total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + h * static_cast<double>(p);
        const double centre = lo + 0.5 * h;
        double s = 0.0;
        for (int i = 0; i < N; ++i) {
            s += rule.weights[i] * f(centre + 0.5 * h * rule.nodes[i]);
        }
        total += 0.5 * h * s;
    }
    return total;
}

}  // namespace gmlcs
