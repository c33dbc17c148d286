#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <string>
#include <type_traits>

#include "gmlcs/errors.hpp"

namespace gmlcs {

/// Value of a truncated series together with its convergence certificate.
struct SeriesResult {
    double value = 0.0;
    std::size_t terms_used = 0;
    double tail_bound = 0.0;  // bound on |sum of discarded terms|
    bool converged = false;
};

struct EvalConfig {
    double rel_tol = 1e-12;
    std::size_t max_terms = 10000;

    void validate() const {
        if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
            throw domain_error("rel_tol must lie in (0, 1)");
        }
        if (max_terms < 10) {
            throw domain_error("max_terms must be at least 10");
        }
    }
};

class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, SeriesResult partial)
        : std::runtime_error(what), partial_(partial) {}

    const SeriesResult& partial() const noexcept { return partial_; }

private:
    SeriesResult partial_;
};

inline std::string describe_nonconvergence(const char* what, const SeriesResult& r) {
    std::ostringstream os;
    os.precision(6);
    os << what << ": no convergence after " << r.terms_used << " terms (partial " << r.value
       << ", tail estimate " << r.tail_bound << ")";
    return os.str();
}

/// Neumaier (improved Kahan) compensated accumulator.
template <typename T>
class NeumaierSum {
public:
    void add(T x) {
        if constexpr (std::is_floating_point_v<T>) {
            add_component(sum_, comp_, x);
            abs_sum_ += std::abs(x);
        } else {
            typename T::value_type re = sum_.real(), im = sum_.imag();
            typename T::value_type cre = comp_.real(), cim = comp_.imag();
            add_component(re, cre, x.real());
            add_component(im, cim, x.imag());
            sum_ = T(re, im);
            comp_ = T(cre, cim);
            abs_sum_ += std::abs(x);
        }
    }

    T value() const { return sum_ + comp_; }

    // Sum of |terms|; value()/abs_sum() measures cancellation.
    double abs_sum() const { return abs_sum_; }

private:
    template <typename R>
    static void add_component(R& sum, R& comp, R x) {
        const R t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }

    T sum_{};
    T comp_{};
    double abs_sum_ = 0.0;
};

}  // namespace gmlcs
