#include "kapitsa/resistance.hpp"

#include "kapitsa/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>

namespace kapitsa {

namespace {

constexpr double pi = boost::math::constants::pi<double>();

void check_q(double q)
{
    if (!(q >= 0.0 && q < 1.0))
        throw DomainError("specular reflection coefficient q must lie in [0, 1)");
}

double flux_factor(const PhysicalParams& phys, double g_alpha_eps)
{
    phys.validate();
    if (!(g_alpha_eps > 0.0))
        throw DomainError("g_alpha_eps must be positive");
    const double kt = phys.k_B * phys.T_s;
    return 6.0 * pi * pi * std::pow(phys.hbar, 3) / (phys.degeneracy() * phys.mass_m * kt * kt * kt * g_alpha_eps);
}

} // namespace

int PhysicalParams::degeneracy() const
{
    const double d = 2.0 * spin_s + 1.0;
    if (!(spin_s >= 0.0) || d != std::floor(d))
        throw DomainError("spin must be a non-negative half-integer");
    return static_cast<int>(d);
}

void PhysicalParams::validate() const
{
    degeneracy();
    if (!(T_s > 0.0) || !(mass_m > 0.0) || !(hbar > 0.0) || !(k_B > 0.0))
        throw DomainError("T_s, m, hbar and k_B must be positive");
}

std::string to_string(ConsistencyMode mode)
{
    return mode == ConsistencyMode::derived_chain ? "derived_chain" : "paper_eq29";
}

ConsistencyMode parse_consistency_mode(std::string_view text)
{
    if (text == "derived" || text == "derived_chain")
        return ConsistencyMode::derived_chain;
    if (text == "paper" || text == "paper_eq29")
        return ConsistencyMode::paper_eq29;
    throw DomainError("unknown consistency mode '" + std::string(text) + "'");
}

double b_plus_from_flux(double q_x, const PhysicalParams& phys, double g_alpha_eps)
{
    return q_x * flux_factor(phys, g_alpha_eps);
}

double flux_from_b_plus(double b_plus, const PhysicalParams& phys, double g_alpha_eps)
{
    return b_plus / flux_factor(phys, g_alpha_eps);
}

double jump_coefficient(double gamma, double q, const SpectrumParams& sp, const QuadratureConfig& cfg,
                        ConsistencyMode mode)
{
    check_q(q);
    const ScalarMoments s = scalar_moments(gamma, sp, cfg);
    const double single = 2.0 * pi * pi * s.g_eps2 / (s.g_eps3 * s.g_alpha_eps);
    const double base = mode == ConsistencyMode::derived_chain ? 2.0 * single : single;
    return base * ((1.0 + q) / (1.0 - q));
}

JumpResult jump_result(double q, const MomentEngine& eng, ConsistencyMode mode, int order)
{
    check_q(q);
    if (order != 0 && order != 1)
        throw DomainError("series order must be 0 or 1");
    const ScalarMoments& s = eng.scalars();
    JumpResult r;
    r.consistency_mode = mode;
    r.order = order;
    r.eps0 = eps0_per_Bplus(eng);
    double bracket;
    if (order == 0) {
        // the g-moment ratio equal to eps0
        bracket = 2.0 * s.g_eps2 / (3.0 * s.g_eps3);
    } else {
        r.eps1 = eps1_per_Bplus(eng).eps1;
        bracket = r.eps0 + r.eps1 * (1.0 - q);
        r.convergence_ratio = std::abs(r.eps1 * (1.0 - q) / r.eps0);
    }
    // eps_T / Q_x = (1+q)/(1-q) bracket 6 pi^2 hbar^3 / ((2s+1) m k^3 T_s^3 g_alpha_eps) and R = T_s eps_T / Q_x
    const double single = 3.0 * pi * pi / s.g_alpha_eps * bracket;
    const double base = mode == ConsistencyMode::derived_chain ? 2.0 * single : single;
    r.C_coeff = base * ((1.0 + q) / (1.0 - q));
    r.quad_err = eng.max_rel_error();
    return r;
}

JumpResult resistance(double q, const MomentEngine& eng, const PhysicalParams& phys, ConsistencyMode mode, int order)
{
    phys.validate();
    JumpResult r = jump_result(q, eng, mode, order);
    const double k = phys.k_B;
    r.R = r.C_coeff * std::pow(phys.hbar, 3) / (phys.degeneracy() * k * k * k * phys.T_s * phys.T_s * phys.mass_m);
    r.eps_T_per_flux = r.R / phys.T_s;
    return r;
}

JumpResult resistance(double gamma, double q, const SpectrumParams& sp, const QuadratureConfig& cfg,
                      const PhysicalParams& phys, ConsistencyMode mode, int order)
{
    return resistance(q, MomentEngine(gamma, sp, cfg), phys, mode, order);
}

double temperature_jump(const JumpResult& result, double q_x)
{
    return result.R * q_x;
}

} // namespace kapitsa
