#pragma once

#include "kapitsa/moments.hpp"

namespace kapitsa::reference {

// Brute-force moments: the mu integral is done by adaptive quadrature at every
// C node instead of through the closed angular forms. Slow; meant for checks.

double t_moment_nested(const MomentIndex& idx, double k, double gamma, const SpectrumParams& sp,
                       const QuadratureConfig& cfg = {});

double j_moment_nested(const MomentIndex& idx, double k, double k1, double gamma, const SpectrumParams& sp,
                       const QuadratureConfig& cfg = {});

/// int_0^1 mu^n / (A + B mu^2) dmu by direct quadrature.
double angular_direct(int n, double a_coef, double b_coef);

/// int_0^1 mu^n / ((A + B1 mu^2)(A + B2 mu^2)) dmu by direct quadrature.
double angular_pair_direct(int n, double a_coef, double b1, double b2);

} // namespace kapitsa::reference
