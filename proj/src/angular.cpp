#include "kapitsa/angular.hpp"

#include "kapitsa/errors.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace kapitsa {

namespace {

void check_order(int n)
{
    if (n < 0)
        throw DomainError("angular exponent must be non-negative");
}

template <class Real>
constexpr Real series_cut = std::numeric_limits<Real>::epsilon() / 16;

// atan(z)/z and log1p(t)/t with their removable singularities filled in
template <class Real>
Real atanc(Real z) { return z == 0 ? Real(1) : std::atan(z) / z; }
template <class Real>
Real log1pc(Real t) { return t == 0 ? Real(1) : std::log1p(t) / t; }

template <class Real>
Real single_series(int n, Real x)
{
    // sum_j (-x)^j / (n + 2j + 1)
    Real sum = 0;
    Real power = 1;
    for (int j = 0; j < 400; ++j) {
        const Real term = power / (n + 2 * j + 1);
        sum += (j % 2 == 0) ? term : -term;
        if (term < series_cut<Real> * std::abs(sum))
            break;
        power *= x;
    }
    return sum;
}

template <class Real>
Real pair_series(int n, Real x1, Real x2)
{
    // sum_p (-1)^p h_p / (n + 2p + 1),  h_p = sum_{i+j=p} x1^i x2^j
    Real sum = 0;
    Real h = 1;
    Real x1p = 1;
    for (int p = 0; p < 400; ++p) {
        const Real term = h / (n + 2 * p + 1);
        sum += (p % 2 == 0) ? term : -term;
        if (term < series_cut<Real> * std::abs(sum))
            break;
        x1p *= x1;
        h = x2 * h + x1p;
    }
    return sum;
}

template <class Real>
Real single_impl(int n, Real x, Real series_switch)
{
    check_order(n);
    if (!(x >= 0))
        throw DomainError("angular_single needs x >= 0");
    if (std::isinf(x))
        return 0;
    if (x < series_switch)
        return single_series(n, x);

    const Real a = std::sqrt(x);
    Real f_even = std::atan(a) / a;        // F_0
    Real f_odd = std::log1p(x) / (2 * x);  // F_1
    if (n == 0)
        return f_even;
    if (n == 1)
        return f_odd;
    for (int j = 2; j <= n; ++j) {
        Real& prev = (j % 2 == 0) ? f_even : f_odd;
        prev = (Real(1) / (j - 1) - prev) / x;
    }
    return (n % 2 == 0) ? f_even : f_odd;
}

template <class Real>
Real pair_impl(int n, Real a1, Real a2, Real gap, Real series_switch)
{
    check_order(n);
    if (!(a1 >= 0) || !(a2 >= a1) || !(gap >= 0))
        throw DomainError("angular_pair needs 0 <= a1 <= a2 and gap >= 0");
    const Real x1 = a1 * a1;
    const Real x2 = a2 * a2;
    if (std::isinf(x2))
        return 0;
    if (x2 < series_switch)
        return pair_series(n, x1, x2);

    // base cases written without any subtraction of nearly equal terms
    const Real g0 = (a2 * atanc(gap / (1 + a1 * a2)) / (1 + a1 * a2) + std::atan(a1)) / (a1 + a2);
    const Real g1 = log1pc(gap * (a1 + a2) / (1 + x1)) / (2 * (1 + x1));
    if (n == 0)
        return g0;
    if (n == 1)
        return g1;

    // x2 G_n = F_{n-2}(x1) - G_{n-2}: dividing by the larger argument keeps this stable
    Real g_even = g0;
    Real g_odd = g1;
    for (int j = 2; j <= n; ++j) {
        Real& prev = (j % 2 == 0) ? g_even : g_odd;
        prev = (single_impl(j - 2, x1, series_switch) - prev) / x2;
    }
    return (n % 2 == 0) ? g_even : g_odd;
}

} // namespace

double angular_single(int n, double x, double series_switch) { return single_impl(n, x, series_switch); }

long double angular_single(int n, long double x, long double series_switch)
{
    return single_impl(n, x, series_switch);
}

double angular_pair(int n, double a1, double a2, double gap, double series_switch)
{
    return pair_impl(n, a1, a2, gap, series_switch);
}

long double angular_pair(int n, long double a1, long double a2, long double gap, long double series_switch)
{
    return pair_impl(n, a1, a2, gap, series_switch);
}

double angular_factor(int n, double a_coef, double b_coef)
{
    if (!(a_coef > 0.0))
        throw DomainError("angular_factor needs A > 0");
    if (!(b_coef >= 0.0))
        throw DomainError("angular_factor needs B >= 0");
    return angular_single(n, b_coef / a_coef) / a_coef;
}

double angular_pair_factor(int n, double a_coef, double b1, double b2)
{
    if (!(a_coef > 0.0))
        throw DomainError("angular_pair_factor needs A > 0");
    if (!(b1 >= 0.0) || !(b2 >= 0.0))
        throw DomainError("angular_pair_factor needs B1, B2 >= 0");
    if (b1 > b2)
        std::swap(b1, b2);
    const double a1 = std::sqrt(b1 / a_coef);
    const double a2 = std::sqrt(b2 / a_coef);
    return angular_pair(n, a1, a2, a2 - a1) / (a_coef * a_coef);
}

} // namespace kapitsa
