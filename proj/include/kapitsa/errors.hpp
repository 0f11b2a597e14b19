#pragma once

#include <stdexcept>
#include <string>

namespace kapitsa {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature did not reach the requested tolerance.
///
/// Carries the subinterval with the largest remaining error estimate so the
/// caller can see where the integrand misbehaves.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double worst_lo, double worst_hi, double worst_error)
        : std::runtime_error(what), worst_lo_(worst_lo), worst_hi_(worst_hi), worst_error_(worst_error) {}

    double worst_lo() const noexcept { return worst_lo_; }
    double worst_hi() const noexcept { return worst_hi_; }
    double worst_error() const noexcept { return worst_error_; }

private:
    double worst_lo_;
    double worst_hi_;
    double worst_error_;
};

/// The dispersion function k^2 omega(k) is not positive where the solver needs it.
class DispersionError : public std::runtime_error {
public:
    DispersionError(const std::string& what, double k, double omega)
        : std::runtime_error(what), k_(k), omega_(omega) {}

    double k() const noexcept { return k_; }
    double omega() const noexcept { return omega_; }

private:
    double k_;
    double omega_;
};

} // namespace kapitsa
