#pragma once

#include "kapitsa/kernel.hpp"

#include <array>
#include <vector>

namespace kapitsa {

// Successive approximations for the characteristic equation. With
// eps_T = (1+q)/(1-q) [eps0 + eps1 (1-q) + ...] and E = 2(1+q)[E0 + E1 (1-q) + ...],
// matching powers of (1-q) gives
//
//   Lambda E0 = B+ T1 - eps0 T2,
//   Lambda Em = -eps_m T2 + (1/pi) int_0^inf J(k, k1) E_{m-1}(k1) dk1.
//
// An overall sign on these right-hand sides cancels in every eps_m. Densities are kept in the real reduced form E = (i e1, e2) and
// are per unit B+.

/// Reduced densities on a set of wavenumbers. `weights` is filled when the
/// grid is a quadrature rule for k in [0, inf).
struct SpectralDensities {
    int order = 0;
    std::vector<double> k_grid;
    std::vector<double> weights;
    std::vector<double> e1;
    std::vector<double> e2;

    bool quadrature_ready() const { return !weights.empty() && weights.size() == k_grid.size(); }
};

/// Scale of the k rule: cfg.k_grid.scale if positive, else the k at which
/// T^{0,1}_{3g+2,2}(k) falls to half its k = 0 value.
double k_grid_scale(const MomentEngine& eng);

/// eps0 / B+ = 2 g_eps2 / (3 g_eps3).
double eps0_per_Bplus(const MomentEngine& eng);

/// eps0 / B+ as T^{0,1}_{3g+2,2}(0) / T^{0,1}_{3g+3,1}(0) through the T-moment code.
double eps0_per_Bplus_t_ratio(const MomentEngine& eng);

/// (e1, e2) of order 0 at k >= 0 for a given eps0/B+; k = 0 returns the
/// analytic limit, which exists only for the pole-free eps0.
std::array<double, 2> zeroth_density(double k, const MomentEngine& eng, double eps0_hat);
std::array<double, 2> zeroth_density(double k, const MomentEngine& eng);

SpectralDensities zeroth_densities(const std::vector<double>& k_grid, const MomentEngine& eng);

/// Order-0 densities on the Gauss-Legendre k rule with `nodes` points.
SpectralDensities zeroth_densities_on_rule(int nodes, const MomentEngine& eng);

struct FirstOrder {
    double eps1 = 0.0;          ///< eps1 / B+
    int nodes = 0;              ///< size of the k1 rule that met the refinement tolerance
    double refinement_change = 0.0; ///< relative change of eps1 at the last doubling
    SpectralDensities zeroth;   ///< order-0 densities on that rule
};

/// eps1 / B+ from boundedness of e1 of order 1 at k = 0. The k1 rule starts at
/// cfg.k_grid.initial_nodes and doubles until eps1 changes by less than
/// cfg.k_grid.refine_tol; QuadratureError if max_nodes is reached first.
FirstOrder eps1_per_Bplus(const MomentEngine& eng);

/// (e1, e2) of order 1 at k > 0 for a given eps1/B+, reusing the k1 rule of `first`.
std::array<double, 2> first_density(double k, const MomentEngine& eng, const FirstOrder& first, double eps1_hat);
std::array<double, 2> first_density(double k, const MomentEngine& eng, const FirstOrder& first);

SpectralDensities first_densities(const std::vector<double>& k_grid, const MomentEngine& eng, const FirstOrder& first);

struct PoleProbe {
    double ratio = 0.0;           ///< |e1(k_small) / e1(k_large)| with the computed coefficient
    double ratio_perturbed = 0.0; ///< same with the coefficient scaled by (1 + perturbation)
};

/// Probe of pole elimination for order 0 or 1 at k_small = 1e-4, k_large = 1e-2.
PoleProbe pole_probe(int order, const MomentEngine& eng, double perturbation = 0.01,
                     const FirstOrder* first = nullptr);

struct EpsT {
    double eps_T = 0.0;
    double convergence_ratio = 0.0; ///< |eps1 (1-q) / eps0|, 0 at order 0
};

/// eps_T = (1+q)/(1-q) [eps0 + eps1 (1-q)] B+ truncated at `order` (0 or 1).
EpsT assemble_epsT(double q, double b_plus, int order, double eps0_hat, double eps1_hat = 0.0);

struct SeriesSolution {
    int order = 0;
    double q = 0.0;
    std::vector<double> eps_per_order; ///< eps_m / B+
    double eps_T_per_Bplus = 0.0;
    double convergence_ratio = 0.0;
    std::vector<SpectralDensities> densities; ///< order 0 on the k1 rule; order 1 on `order1_grid` if given
    int k_nodes = 0;
    double max_rel_error = 0.0;
};

SeriesSolution solve_series(double q, int order, const MomentEngine& eng,
                            const std::vector<double>& order1_grid = {});

/// Wall value h_c(0, mu, C) from reduced densities on a quadrature-ready grid.
double wall_distribution(double mu, double c, const MomentEngine& eng, const SpectralDensities& densities);

struct Profiles {
    std::vector<double> x;
    std::vector<double> w1;
    std::vector<double> w2;
    std::vector<double> temperature; ///< delta T / T_s = W2 / (2 g2)
};

/// W1(x) = -(1/pi) int sin(kx) e1 dk and W2(x) = (1/pi) int cos(kx) e2 dk of
/// reduced densities on a quadrature rule. The densities are interpolated in
/// log k between the nodes and continued by their end behaviour outside; the
/// oscillatory integrals use Ooura's double-exponential rules. x = 0 is the
/// plain quadrature sum.
Profiles profiles(const std::vector<double>& x_grid, const MomentEngine& eng, const SpectralDensities& densities,
                  double rel_tol = 1e-8);

} // namespace kapitsa
