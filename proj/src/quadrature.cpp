#include "kapitsa/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

#include <bit>
#include <functional>

namespace kapitsa {

void QuadratureConfig::validate() const
{
    if (!(rel_tol > 0.0 && rel_tol <= 1e-4))
        throw DomainError("rel_tol must lie in (0, 1e-4]");
    if (!(abs_tol >= 0.0))
        throw DomainError("abs_tol must be non-negative");
    if (max_subdivisions < 10)
        throw DomainError("max_subdivisions must be at least 10");
    if (!(eps_cutoff >= 40.0))
        throw DomainError("eps_cutoff below 40 truncates the Bose weight");
    if (!(angular_switch > 0.0 && angular_switch <= 0.75))
        throw DomainError("angular_switch must lie in (0, 0.75]");
    if (!(k_grid.scale >= 0.0) || !std::isfinite(k_grid.scale) || k_grid.initial_nodes < 8 || k_grid.max_nodes < k_grid.initial_nodes ||
        !(k_grid.refine_tol > 0.0))
        throw DomainError("invalid k-grid configuration");
}

std::uint64_t QuadratureConfig::hash() const
{
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(std::bit_cast<std::uint64_t>(rel_tol));
    mix(std::bit_cast<std::uint64_t>(abs_tol));
    mix(std::bit_cast<std::uint64_t>(eps_cutoff));
    mix(static_cast<std::uint64_t>(max_subdivisions));
    mix(std::bit_cast<std::uint64_t>(angular_switch));
    mix(std::bit_cast<std::uint64_t>(k_grid.scale));
    mix(static_cast<std::uint64_t>(k_grid.initial_nodes));
    mix(static_cast<std::uint64_t>(k_grid.max_nodes));
    mix(std::bit_cast<std::uint64_t>(k_grid.refine_tol));
    return h;
}

GaussLegendre gauss_legendre_unit(int n)
{
    if (n < 1)
        throw DomainError("Gauss-Legendre rule needs at least one node");
    // non-negative zeros of P_n on [-1, 1]
    const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(n);
    std::vector<double> x;
    x.reserve(static_cast<std::size_t>(n));
    for (auto it = zeros.rbegin(); it != zeros.rend(); ++it)
        if (*it != 0.0)
            x.push_back(-*it);
    for (double z : zeros)
        x.push_back(z);

    GaussLegendre rule;
    rule.nodes.reserve(x.size());
    rule.weights.reserve(x.size());
    for (double xi : x) {
        const double dp = boost::math::legendre_p_prime(n, xi);
        const double w = 2.0 / ((1.0 - xi * xi) * dp * dp);
        rule.nodes.push_back(0.5 * (1.0 + xi));
        rule.complements.push_back(0.5 * (1.0 - xi));
        rule.weights.push_back(0.5 * w);
    }
    return rule;
}

KQuadrature k_quadrature(int n, double scale)
{
    const GaussLegendre gl = gauss_legendre_unit(n);
    KQuadrature q;
    q.k.reserve(gl.nodes.size());
    q.weights.reserve(gl.nodes.size());
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double t = gl.nodes[i];
        const double om = gl.complements[i];
        q.k.push_back(scale * t / om);
        q.weights.push_back(gl.weights[i] * scale / (om * om));
    }
    return q;
}

} // namespace kapitsa
