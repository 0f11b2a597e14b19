#pragma once

#include "kapitsa/solver.hpp"

#include <string>
#include <string_view>

namespace kapitsa {

/// Physical constants and gas parameters; SI by default, any consistent units accepted.
struct PhysicalParams {
    double spin_s = 0.0;
    double T_s = 1.0;
    double mass_m = 6.6464731e-27;
    double hbar = 1.054571817e-34;
    double k_B = 1.380649e-23;

    /// 2s + 1, checked to be an integer >= 1.
    int degeneracy() const;
    void validate() const;
};

/// derived_chain propagates eps0 through B+ and gives 4 pi^2; paper_eq29 gives 2 pi^2.
enum class ConsistencyMode { derived_chain, paper_eq29 };

std::string to_string(ConsistencyMode mode);
/// Accepts "derived", "derived_chain", "paper", "paper_eq29".
ConsistencyMode parse_consistency_mode(std::string_view text);

struct JumpResult {
    double C_coeff = 0.0;
    double R = 0.0;              ///< filled by resistance()
    double eps_T_per_flux = 0.0; ///< Delta T / (T_s Q_x), filled by resistance()
    ConsistencyMode consistency_mode = ConsistencyMode::derived_chain;
    int order = 0;
    double eps0 = 0.0; ///< per unit B+
    double eps1 = 0.0; ///< per unit B+, 0 at order 0
    double convergence_ratio = 0.0;
    double quad_err = 0.0;
};

/// B+ = Q_x 6 pi^2 hbar^3 / ((2s+1) m (k T_s)^3 g_alpha_eps).
double b_plus_from_flux(double q_x, const PhysicalParams& phys, double g_alpha_eps);
double flux_from_b_plus(double b_plus, const PhysicalParams& phys, double g_alpha_eps);

/// C(gamma, q) at order 0 from the scalar moments.
double jump_coefficient(double gamma, double q, const SpectrumParams& sp, const QuadratureConfig& cfg = {},
                        ConsistencyMode mode = ConsistencyMode::derived_chain);

/// C(gamma, q) with eps0 (order 0) or eps0 + eps1 (1 - q) (order 1) in place of the g-moment ratio.
JumpResult jump_result(double q, const MomentEngine& eng, ConsistencyMode mode = ConsistencyMode::derived_chain,
                       int order = 0);

/// Adds R = C hbar^3 / ((2s+1) k^3 T_s^2 m) and Delta T / (T_s Q_x) = R / T_s.
JumpResult resistance(double q, const MomentEngine& eng, const PhysicalParams& phys,
                      ConsistencyMode mode = ConsistencyMode::derived_chain, int order = 0);
JumpResult resistance(double gamma, double q, const SpectrumParams& sp, const QuadratureConfig& cfg,
                      const PhysicalParams& phys, ConsistencyMode mode = ConsistencyMode::derived_chain,
                      int order = 0);

/// Delta T = R Q_x.
double temperature_jump(const JumpResult& result, double q_x);

} // namespace kapitsa
