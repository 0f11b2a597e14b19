#pragma once

namespace kapitsa {

// Closed forms for the direction-cosine integrals that appear in every
// T and J moment. With x = B/A the single-denominator factor is
//
//   F_n(x) = int_0^1 mu^n / (1 + x mu^2) dmu,
//
// and the two-denominator one is
//
//   G_n(x1, x2) = int_0^1 mu^n / ((1 + x1 mu^2)(1 + x2 mu^2)) dmu.
//
// Both use the upward recurrence in n only where it is stable (x above the
// series switch) and a convergent power series below it.

/// F_n(x) for x >= 0 (x = +inf gives 0).
double angular_single(int n, double x, double series_switch = 0.5);
long double angular_single(int n, long double x, long double series_switch = 0.5L);

/// G_n(x1, x2) with x_i = a_i^2, 0 <= a1 <= a2 and gap = a2 - a1 supplied by
/// the caller (so that k ~ k1 does not lose digits in the subtraction).
double angular_pair(int n, double a1, double a2, double gap, double series_switch = 0.5);
long double angular_pair(int n, long double a1, long double a2, long double gap, long double series_switch = 0.5L);

/// int_0^1 mu^n / (A + B mu^2) dmu, A > 0, B >= 0.
double angular_factor(int n, double a_coef, double b_coef);

/// int_0^1 mu^n / ((A + B1 mu^2)(A + B2 mu^2)) dmu, A > 0, B1, B2 >= 0.
double angular_pair_factor(int n, double a_coef, double b1, double b2);

} // namespace kapitsa
