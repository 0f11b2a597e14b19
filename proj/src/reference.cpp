#include "kapitsa/reference.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>

namespace kapitsa::reference {

namespace {

using Gauss = boost::math::quadrature::gauss<double, 30>;

// Fixed 30-point Gauss on panels [0, 1/a], [1/a, 2/a], [2/a, 4/a], ... so that
// every panel is about as wide as its distance to the pole at mu = i/a.
template <class F>
double mu_integral(F&& f, double a_max)
{
    if (!(a_max > 1.0))
        return Gauss::integrate(f, 0.0, 1.0);
    double lo = 0.0;
    double hi = 1.0 / a_max;
    double total = 0.0;
    while (lo < 1.0) {
        total += Gauss::integrate(f, lo, std::min(hi, 1.0));
        lo = hi;
        hi *= 2.0;
    }
    return total;
}

QuadratureConfig outer_config(QuadratureConfig cfg)
{
    cfg.rel_tol = std::max(cfg.rel_tol, 1e-11);
    return cfg;
}

} // namespace

double angular_direct(int n, double a_coef, double b_coef)
{
    auto f = [&](double mu) { return std::pow(mu, n) / (a_coef + b_coef * mu * mu); };
    return mu_integral(f, std::sqrt(b_coef / a_coef));
}

double angular_pair_direct(int n, double a_coef, double b1, double b2)
{
    auto f = [&](double mu) {
        const double u = mu * mu;
        return std::pow(mu, n) / ((a_coef + b1 * u) * (a_coef + b2 * u));
    };
    return mu_integral(f, std::sqrt(std::max(b1, b2) / a_coef));
}

double t_moment_nested(const MomentIndex& idx, double k, double gamma, const SpectrumParams& sp,
                       const QuadratureConfig& cfg)
{
    const QuadratureConfig outer = outer_config(cfg);
    const double c_max = momentum_for_energy(outer.eps_cutoff, sp);
    auto f = [&](double c) {
        const double eps = energy(c, sp);
        const double v = group_velocity(c, sp);
        const double num = std::pow(v / c, idx.r) * std::pow(eps, idx.s) * std::pow(c, idx.m) *
                           bose_weight_of_energy(eps);
        const double big_a = std::pow(c, 2.0 * gamma);
        const double big_b = k * k * v * v;
        auto inner = [&](double mu) { return std::pow(mu, idx.n) / (big_a + big_b * mu * mu); };
        return num * mu_integral(inner, std::sqrt(big_b / big_a));
    };
    return integrate_from_zero(f, c_max, outer).value;
}

double j_moment_nested(const MomentIndex& idx, double k, double k1, double gamma, const SpectrumParams& sp,
                       const QuadratureConfig& cfg)
{
    const QuadratureConfig outer = outer_config(cfg);
    const double c_max = momentum_for_energy(outer.eps_cutoff, sp);
    auto f = [&](double c) {
        const double eps = energy(c, sp);
        const double v = group_velocity(c, sp);
        const double num = std::pow(v / c, idx.r) * std::pow(eps, idx.s) * std::pow(c, idx.m) *
                           bose_weight_of_energy(eps);
        const double big_a = std::pow(c, 2.0 * gamma);
        const double b1 = k * k * v * v;
        const double b2 = k1 * k1 * v * v;
        auto inner = [&](double mu) {
            const double u = mu * mu;
            return std::pow(mu, idx.n) / ((big_a + b1 * u) * (big_a + b2 * u));
        };
        return num * mu_integral(inner, std::sqrt(std::max(b1, b2) / big_a));
    };
    return integrate_from_zero(f, c_max, outer).value;
}

} // namespace kapitsa::reference
