#pragma once

#include <stdexcept>
#include <string>

namespace gmlcs {

// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Result not representable in double precision; use the log-valued variant.
class overflow_error : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

// Adaptive quadrature exhausted its node budget or its cutoff doubling.
class quadrature_error : public std::runtime_error {
public:
    quadrature_error(const std::string& what, double partial, double error_estimate)
        : std::runtime_error(what), partial_(partial), error_estimate_(error_estimate) {}

    double partial() const noexcept { return partial_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double partial_;
    double error_estimate_;
};

// Raising an operator would push significant amplitude out of the Fock window.
class truncation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two evaluation routes disagree, or a ratio denominator underflowed.
class evaluation_error : public std::runtime_error {
public:
    evaluation_error(const std::string& what, double primary, double reference)
        : std::runtime_error(what), primary_(primary), reference_(reference) {}

    double primary() const noexcept { return primary_; }
    double reference() const noexcept { return reference_; }

private:
    double primary_;
    double reference_;
};

}  // namespace gmlcs
