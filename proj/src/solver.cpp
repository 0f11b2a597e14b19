#include "kapitsa/solver.hpp"

#include "kapitsa/errors.hpp"
#include "kapitsa/parallel.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/interpolators/barycentric_rational.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace kapitsa {

namespace {

constexpr double pi = boost::math::constants::pi<double>();

void check_k(double k)
{
    if (!(k >= 0.0) || !std::isfinite(k))
        throw DomainError("wavenumber must be finite and non-negative");
}

// Real reduced 2x2 system M (e1, e2) = rhs at k > 0, written through the
// identity forms so that every entry carries its exact power of k.
struct Reduced {
    double m11, m12, m21, m22, det;

    std::array<double, 2> solve(double rhs1, double rhs2) const
    {
        return {(m22 * rhs1 - m12 * rhs2) / det, (m11 * rhs2 - m21 * rhs1) / det};
    }
};

Reduced reduced_system(double k, const MomentEngine& eng, const KernelIndices& x)
{
    const ScalarMoments& s = eng.scalars();
    Reduced r;
    r.m11 = 3.0 * k * k / s.g1 * eng.T(x.id1, k);
    r.m12 = k / s.g2 * eng.T(x.lam12, k);
    r.m21 = -3.0 * k / s.g1 * eng.T(x.lam21, k);
    r.m22 = k * k / s.g2 * eng.T(x.id2, k);
    const double om = omega(k, eng);
    if (!(om > 0.0))
        throw DispersionError("dispersion function is not positive", k, om);
    r.det = k * k * om;
    return r;
}

// a + b where the two cancel exactly for the pole-free coefficient; a residue
// at rounding level is set to zero so it cannot swamp the O(1/k^2) tail
double cancelled_sum(double a, double b)
{
    const double sum = a + b;
    return std::abs(sum) <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(a) ? 0.0 : sum;
}

// Second-row sources are differences of moments that agree at k = 0. Below the
// half-point of T^{0,1}_{3g+2,2} the k^2 shift form is exact to rounding; above
// it the shift form cancels O(1) terms and the direct form is used instead.
bool past_half_point(double k, const MomentEngine& eng, const KernelIndices& x)
{
    return eng.T(x.t1b, k) < k * k * eng.T(x.t1b_shift, k);
}

double eps0_constant_term(const ScalarMoments& s, double eps0_hat)
{
    return cancelled_sum(-s.g_eps2 / 3.0, eps0_hat * s.g_eps3 / 2.0);
}

} // namespace

double k_grid_scale(const MomentEngine& eng)
{
    const double fixed = eng.config().k_grid.scale;
    if (fixed > 0.0)
        return fixed;
    const auto x = KernelIndices::for_gamma(eng.gamma());
    const double half = 0.5 * eng.T(x.t1b, 0.0);
    double lo = std::log(1e-14), hi = std::log(1e14);
    for (int i = 0; i < 48; ++i) {
        const double mid = 0.5 * (lo + hi);
        (eng.T(x.t1b, std::exp(mid)) > half ? lo : hi) = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

double eps0_per_Bplus(const MomentEngine& eng)
{
    const ScalarMoments& s = eng.scalars();
    return 2.0 * s.g_eps2 / (3.0 * s.g_eps3);
}

double eps0_per_Bplus_t_ratio(const MomentEngine& eng)
{
    const auto x = KernelIndices::for_gamma(eng.gamma());
    return eng.T(x.t1b, 0.0) / eng.T(x.t2b, 0.0);
}

std::array<double, 2> zeroth_density(double k, const MomentEngine& eng, double eps0_hat)
{
    check_k(k);
    const auto x = KernelIndices::for_gamma(eng.gamma());
    const ScalarMoments& s = eng.scalars();
    const double delta = eps0_constant_term(s, eps0_hat);
    if (k == 0.0) {
        if (std::abs(delta) > 1e-10 * s.g_eps2)
            throw DomainError("order-0 density has a pole at k = 0 unless eps0 is the pole-free value");
        const double om = omega(0.0, eng);
        if (!(om > 0.0))
            throw DispersionError("dispersion function is not positive", 0.0, om);
        const double src = eng.T(x.t1a, 0.0) - eps0_hat * eng.T(x.t2a, 0.0);
        return {0.0, 3.0 / (s.g1 * om) * eng.T(x.lam21, 0.0) * src};
    }
    const Reduced m = reduced_system(k, eng, x);
    const double rhs1 = k * (eng.T(x.t1a, k) - eps0_hat * eng.T(x.t2a, k));
    const double rhs2 = past_half_point(k, eng, x)
                            ? -eng.T(x.t1b, k) + eps0_hat * eng.T(x.t2b, k)
                            : delta + k * k * (eng.T(x.t1b_shift, k) - eps0_hat * eng.T(x.t2b_shift, k));
    return m.solve(rhs1, rhs2);
}

std::array<double, 2> zeroth_density(double k, const MomentEngine& eng)
{
    return zeroth_density(k, eng, eps0_per_Bplus(eng));
}

SpectralDensities zeroth_densities(const std::vector<double>& k_grid, const MomentEngine& eng)
{
    SpectralDensities d;
    d.order = 0;
    d.k_grid = k_grid;
    d.e1.resize(k_grid.size());
    d.e2.resize(k_grid.size());
    const double eps0 = eps0_per_Bplus(eng);
    parallel_for(k_grid.size(), default_jobs(), [&](std::size_t i) {
        const auto e = zeroth_density(k_grid[i], eng, eps0);
        d.e1[i] = e[0];
        d.e2[i] = e[1];
    });
    return d;
}

SpectralDensities zeroth_densities_on_rule(int nodes, const MomentEngine& eng)
{
    const KQuadrature rule = k_quadrature(nodes, k_grid_scale(eng));
    SpectralDensities d = zeroth_densities(rule.k, eng);
    d.weights = rule.weights;
    return d;
}

namespace {

double eps1_on_rule(const MomentEngine& eng, const SpectralDensities& d)
{
    const auto x = KernelIndices::for_gamma(eng.gamma());
    const ScalarMoments& s = eng.scalars();
    double sum = 0.0;
    for (std::size_t j = 0; j < d.k_grid.size(); ++j)
        sum += d.weights[j] * eng.T(x.j22_at_zero, d.k_grid[j]) * d.e2[j];
    return sum / (pi * s.g2) / (s.g_eps3 / 2.0);
}

} // namespace

FirstOrder eps1_per_Bplus(const MomentEngine& eng)
{
    const KGridConfig& grid = eng.config().k_grid;
    FirstOrder out;
    double previous = 0.0;
    bool have_previous = false;
    for (int n = grid.initial_nodes; n <= grid.max_nodes; n *= 2) {
        SpectralDensities d = zeroth_densities_on_rule(n, eng);
        const double eps1 = eps1_on_rule(eng, d);
        out.eps1 = eps1;
        out.nodes = n;
        out.zeroth = std::move(d);
        if (have_previous) {
            out.refinement_change = std::abs(eps1 - previous) / std::max(std::abs(eps1), 1e-300);
            if (out.refinement_change < grid.refine_tol)
                return out;
        }
        previous = eps1;
        have_previous = true;
    }
    throw QuadratureError("k1 quadrature for eps1 did not converge within max_nodes (change " +
                              std::to_string(out.refinement_change) + ")",
                          0.0, 0.0, out.refinement_change);
}

std::array<double, 2> first_density(double k, const MomentEngine& eng, const FirstOrder& first, double eps1_hat)
{
    check_k(k);
    if (k == 0.0)
        throw DomainError("order-1 densities are evaluated at k > 0 only");
    const auto x = KernelIndices::for_gamma(eng.gamma());
    const ScalarMoments& s = eng.scalars();
    const SpectralDensities& d = first.zeroth;

    const bool direct = past_half_point(k, eng, x);
    double s11 = 0.0, s12 = 0.0, s21 = 0.0, s22 = 0.0, s0 = 0.0;
    for (std::size_t j = 0; j < d.k_grid.size(); ++j) {
        const double kj = d.k_grid[j];
        const double w = d.weights[j];
        s11 += w * eng.J(x.j11, k, kj) * d.e1[j];
        s12 += w * eng.J(x.j12, k, kj) * d.e2[j];
        s21 += w * eng.J(x.j21, k, kj) * d.e1[j];
        if (direct) {
            s22 += w * eng.J(x.j22, k, kj) * d.e2[j];
        } else {
            s22 += w * eng.J(x.j22_shift, k, kj) * d.e2[j];
            s0 += w * eng.T(x.j22_at_zero, kj) * d.e2[j];
        }
    }
    const Reduced m = reduced_system(k, eng, x);
    const double rhs1 = -eps1_hat * k * eng.T(x.t2a, k) + (-3.0 / s.g1 * s11 + k / s.g2 * s12) / pi;
    double rhs2 = -3.0 * k / (pi * s.g1) * s21;
    if (direct) {
        rhs2 += eps1_hat * eng.T(x.t2b, k) - s22 / (pi * s.g2);
    } else {
        const double delta = cancelled_sum(-s0 / (pi * s.g2), eps1_hat * s.g_eps3 / 2.0);
        rhs2 += delta - k * k * eps1_hat * eng.T(x.t2b_shift, k) + k * k / (pi * s.g2) * s22;
    }
    return m.solve(rhs1, rhs2);
}

std::array<double, 2> first_density(double k, const MomentEngine& eng, const FirstOrder& first)
{
    return first_density(k, eng, first, first.eps1);
}

SpectralDensities first_densities(const std::vector<double>& k_grid, const MomentEngine& eng, const FirstOrder& first)
{
    SpectralDensities d;
    d.order = 1;
    d.k_grid = k_grid;
    d.e1.resize(k_grid.size());
    d.e2.resize(k_grid.size());
    parallel_for(k_grid.size(), default_jobs(), [&](std::size_t i) {
        const auto e = first_density(k_grid[i], eng, first);
        d.e1[i] = e[0];
        d.e2[i] = e[1];
    });
    return d;
}

PoleProbe pole_probe(int order, const MomentEngine& eng, double perturbation, const FirstOrder* first)
{
    if (order != 0 && order != 1)
        throw DomainError("pole probe is available for orders 0 and 1");
    constexpr double k_small = 1e-4;
    constexpr double k_large = 1e-2;
    auto ratio = [&](auto&& e1) { return std::abs(e1(k_small) / e1(k_large)); };
    PoleProbe p;
    if (order == 0) {
        const double eps0 = eps0_per_Bplus(eng);
        p.ratio = ratio([&](double k) { return zeroth_density(k, eng, eps0)[0]; });
        p.ratio_perturbed = ratio([&](double k) { return zeroth_density(k, eng, eps0 * (1.0 + perturbation))[0]; });
        return p;
    }
    FirstOrder local;
    if (!first) {
        local = eps1_per_Bplus(eng);
        first = &local;
    }
    const double eps1 = first->eps1;
    p.ratio = ratio([&](double k) { return first_density(k, eng, *first, eps1)[0]; });
    p.ratio_perturbed = ratio([&](double k) { return first_density(k, eng, *first, eps1 * (1.0 + perturbation))[0]; });
    return p;
}

EpsT assemble_epsT(double q, double b_plus, int order, double eps0_hat, double eps1_hat)
{
    if (!(q >= 0.0 && q < 1.0))
        throw DomainError("specular reflection coefficient q must lie in [0, 1)");
    if (order != 0 && order != 1)
        throw DomainError("series order must be 0 or 1");
    const double prefactor = (1.0 + q) / (1.0 - q);
    EpsT out;
    double bracket = eps0_hat;
    if (order == 1) {
        bracket += eps1_hat * (1.0 - q);
        out.convergence_ratio = std::abs(eps1_hat * (1.0 - q) / eps0_hat);
    }
    out.eps_T = prefactor * bracket * b_plus;
    return out;
}

SeriesSolution solve_series(double q, int order, const MomentEngine& eng, const std::vector<double>& order1_grid)
{
    if (order != 0 && order != 1)
        throw DomainError("series order must be 0 or 1");
    if (!(q >= 0.0 && q < 1.0))
        throw DomainError("specular reflection coefficient q must lie in [0, 1)");
    SeriesSolution sol;
    sol.order = order;
    sol.q = q;
    const double eps0 = eps0_per_Bplus(eng);
    sol.eps_per_order.push_back(eps0);
    if (order == 0) {
        SpectralDensities d = zeroth_densities_on_rule(eng.config().k_grid.initial_nodes, eng);
        sol.k_nodes = static_cast<int>(d.k_grid.size());
        sol.densities.push_back(std::move(d));
    } else {
        FirstOrder first = eps1_per_Bplus(eng);
        sol.eps_per_order.push_back(first.eps1);
        sol.k_nodes = first.nodes;
        sol.densities.push_back(first.zeroth);
        if (!order1_grid.empty())
            sol.densities.push_back(first_densities(order1_grid, eng, first));
    }
    const EpsT e = assemble_epsT(q, 1.0, order, eps0, order == 1 ? sol.eps_per_order[1] : 0.0);
    sol.eps_T_per_Bplus = e.eps_T;
    sol.convergence_ratio = e.convergence_ratio;
    sol.max_rel_error = eng.max_rel_error();
    return sol;
}

double wall_distribution(double mu, double c, const MomentEngine& eng, const SpectralDensities& densities)
{
    if (!(mu > 0.0 && mu <= 1.0))
        throw DomainError("wall distribution needs mu in (0, 1]");
    if (!(c > 0.0) || !std::isfinite(c))
        throw DomainError("wall distribution needs C > 0");
    if (!densities.quadrature_ready())
        throw DomainError("wall distribution needs densities on a quadrature rule");
    const ScalarMoments& s = eng.scalars();
    const SpectrumParams& sp = eng.spectrum();
    const double gamma = eng.gamma();
    const double v = group_velocity(c, sp);
    const double a = v / c;
    const double eps = energy(c, sp);
    const double base = std::pow(c, 2.0 * (gamma - 1.0));
    const double c1 = 3.0 * v * mu / (2.0 * s.g1);
    const double c2 = eps / (2.0 * s.g2);
    double sum = 0.0;
    for (std::size_t j = 0; j < densities.k_grid.size(); ++j) {
        const double k = densities.k_grid[j];
        const double den = base + k * k * mu * mu * a * a;
        sum += densities.weights[j] * (c1 * densities.e1[j] + c2 * densities.e2[j]) / den;
    }
    const double h = std::pow(c, gamma) / pi * sum;
    if (!std::isfinite(h))
        throw QuadratureError("wall distribution sum is not finite", 0.0, 0.0, h);
    return h;
}

namespace {

// Smooth reconstruction of reduced densities from grid values. In u = log k,
// e1 (k/s + s/k) and e2 (1 + k^2/s^2) tend to constants at both ends (apart
// from a log k growth of the second one at large k), which a barycentric
// rational interpolant follows well; outside the nodes they are continued by
// their end behaviour.
class DensityInterpolant {
public:
    DensityInterpolant(const SpectralDensities& d, double scale) : s_(scale)
    {
        std::vector<std::size_t> order(d.k_grid.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return d.k_grid[a] < d.k_grid[b]; });
        std::vector<double> u, f1, f2;
        for (std::size_t i : order) {
            const double k = d.k_grid[i];
            if (!(k > 0.0))
                continue;
            u.push_back(std::log(k));
            f1.push_back(d.e1[i] * (k / s_ + s_ / k));
            f2.push_back(d.e2[i] * (1.0 + (k / s_) * (k / s_)));
        }
        if (u.size() < 8)
            throw DomainError("profiles need at least 8 positive k nodes");
        u_lo_ = u.front();
        u_hi_ = u.back();
        f1_lo_ = f1.front();
        f1_hi_ = f1.back();
        f2_lo_ = f2.front();
        f2_hi_ = f2.back();
        const std::size_t n = u.size();
        f2_slope_ = (f2[n - 1] - f2[n - 2]) / (u[n - 1] - u[n - 2]);
        std::vector<double> u2 = u;
        e1_.emplace(std::move(u), std::move(f1), 3);
        e2_.emplace(std::move(u2), std::move(f2), 3);
    }

    double e1(double k) const
    {
        if (!(k > 0.0) || !std::isfinite(k))
            return 0.0;
        const double u = std::log(k);
        const double f = u <= u_lo_ ? f1_lo_ : u >= u_hi_ ? f1_hi_ : (*e1_)(u);
        return f / (k / s_ + s_ / k);
    }

    double e2(double k) const
    {
        if (!std::isfinite(k))
            return 0.0;
        if (!(k > 0.0))
            return f2_lo_;
        const double u = std::log(k);
        const double f = u <= u_lo_ ? f2_lo_ : u >= u_hi_ ? f2_hi_ + f2_slope_ * (u - u_hi_) : (*e2_)(u);
        return f / (1.0 + (k / s_) * (k / s_));
    }

private:
    double s_;
    double u_lo_ = 0.0, u_hi_ = 0.0;
    double f1_lo_ = 0.0, f1_hi_ = 0.0, f2_lo_ = 0.0, f2_hi_ = 0.0, f2_slope_ = 0.0;
    std::optional<boost::math::barycentric_rational<double>> e1_, e2_;
};

} // namespace

Profiles profiles(const std::vector<double>& x_grid, const MomentEngine& eng, const SpectralDensities& densities,
                  double rel_tol)
{
    if (!(rel_tol > 0.0))
        throw DomainError("profile tolerance must be positive");
    if (!densities.quadrature_ready())
        throw DomainError("profiles need densities on a quadrature rule");
    for (double x : x_grid)
        if (!(x >= 0.0) || !std::isfinite(x))
            throw DomainError("profile depths must be finite and non-negative");
    const ScalarMoments& s = eng.scalars();
    const DensityInterpolant interp(densities, k_grid_scale(eng));

    double w2_origin = 0.0;
    for (std::size_t j = 0; j < densities.k_grid.size(); ++j)
        w2_origin += densities.weights[j] * densities.e2[j];
    w2_origin /= pi;

    boost::math::quadrature::ooura_fourier_sin<double> sin_rule(rel_tol);
    boost::math::quadrature::ooura_fourier_cos<double> cos_rule(rel_tol);
    auto e1 = [&](double k) { return interp.e1(k); };
    auto e2 = [&](double k) { return interp.e2(k); };

    Profiles p;
    p.x = x_grid;
    for (double x : x_grid) {
        double w1 = 0.0;
        double w2 = w2_origin;
        if (x > 0.0) {
            const auto [i1, err1] = sin_rule.integrate(e1, x);
            const auto [i2, err2] = cos_rule.integrate(e2, x);
            const double worst = std::max(err1, err2);
            if (!(worst <= 10.0 * rel_tol) || !std::isfinite(i1) || !std::isfinite(i2))
                throw QuadratureError("oscillatory k integral did not converge at x = " + std::to_string(x) +
                                          "; use the Chapman-Enskog asymptotic form at this depth",
                                      x, x, worst);
            w1 = -i1 / pi;
            w2 = i2 / pi;
        }
        p.w1.push_back(w1);
        p.w2.push_back(w2);
        p.temperature.push_back(w2 / (2.0 * s.g2));
    }
    return p;
}

} // namespace kapitsa
