#include <doctest.h>

#include "kapitsa/errors.hpp"
#include "kapitsa/solver.hpp"
#include "oracles.hpp"

#include <Eigen/LU>
#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <numbers>

using namespace kapitsa;

namespace {

double rel(double a, double b) { return std::abs(a / b - 1.0); }

const MomentEngine& engine_1_1()
{
    static const MomentEngine eng(1.0, {SpectrumMode::bogoliubov, 1.0});
    return eng;
}

// Fourier integral int_0^inf f(k) trig(kx) dk by Gauss panels over half periods;
// the alternating tail is summed by repeated averaging of partial sums.
template <class F, class Trig>
double panel_fourier(F&& f, Trig&& trig, double x, int body_half_periods, int tail_half_periods)
{
    using boost::math::quadrature::gauss;
    const double h = std::numbers::pi / x;
    double total = 0.0;
    std::vector<double> partial;
    for (int j = 0; j < body_half_periods + tail_half_periods; ++j) {
        total += gauss<double, 30>::integrate([&](double k) { return f(k) * trig(k * x); }, j * h, (j + 1) * h);
        if (j >= body_half_periods)
            partial.push_back(total);
    }
    while (partial.size() > 1) {
        for (std::size_t i = 0; i + 1 < partial.size(); ++i)
            partial[i] = 0.5 * (partial[i] + partial[i + 1]);
        partial.pop_back();
    }
    return partial.front();
}

} // namespace

TEST_CASE("eps0 by both routes")
{
    const MomentEngine& eng = engine_1_1();
    CHECK(rel(eps0_per_Bplus_t_ratio(eng), eps0_per_Bplus(eng)) <= 1e-12);

    for (double w0 : {0.5, 2.0, 7.0}) {
        const MomentEngine ph(3.0, {SpectrumMode::phonon, w0});
        const double expected = 2.0 / 3.0 * oracle::phonon(0, 1, 5.0, w0) / oracle::phonon(0, 1, 6.0, w0);
        CAPTURE(w0);
        CHECK(rel(eps0_per_Bplus(ph), expected) <= 1e-10);
        CHECK(rel(eps0_per_Bplus_t_ratio(ph), expected) <= 1e-10);
    }
}

TEST_CASE("eps0 is positive over the parameter box")
{
    for (double gamma : {0.0, 1.0, 5.0, 12.0, 20.0})
        for (double w0 : {0.0, 0.3, 4.0, 30.0}) {
            const MomentEngine eng(gamma, {SpectrumMode::bogoliubov, w0});
            CHECK(eps0_per_Bplus(eng) > 0.0);
        }
}

TEST_CASE("order-0 density at the origin")
{
    const MomentEngine& eng = engine_1_1();
    const auto e0 = zeroth_density(0.0, eng);
    CHECK(e0[0] == 0.0);
    CHECK(std::isfinite(e0[1]));
    for (double k : {1e-3, 1e-5, 1e-7}) {
        const auto e = zeroth_density(k, eng);
        CAPTURE(k);
        CHECK(rel(e[1], e0[1]) <= 10.0 * k);
        CHECK(std::abs(k * e[0]) <= k * k);
    }
    CHECK_THROWS_AS(zeroth_density(0.0, eng, 1.01 * eps0_per_Bplus(eng)), DomainError);
    CHECK_THROWS_AS(zeroth_density(-1.0, eng), DomainError);
}

TEST_CASE("order-0 density matches a dense complex solve")
{
    const MomentEngine& eng = engine_1_1();
    const double k = 0.5;
    const double eps0 = eps0_per_Bplus(eng);
    const KernelBundle b = dispersion_matrix(k, eng);
    const Vector2c rhs = b.t1 - eps0 * b.t2;
    const Vector2c sol = b.lambda_mat.fullPivLu().solve(rhs);
    const auto e = zeroth_density(k, eng);
    CHECK(std::abs(sol(0).imag() / e[0] - 1.0) <= 1e-10);
    CHECK(std::abs(sol(1).real() / e[1] - 1.0) <= 1e-10);
    CHECK(std::abs(sol(0).real()) <= 1e-12 * std::abs(sol(0)));
    CHECK(std::abs(sol(1).imag()) <= 1e-12 * std::abs(sol(1)));
}

TEST_CASE("order-0 densities decay and carry the grid")
{
    const MomentEngine& eng = engine_1_1();
    const SpectralDensities d = zeroth_densities_on_rule(64, eng);
    REQUIRE(d.quadrature_ready());
    CHECK(d.order == 0);
    CHECK(std::abs(d.e1.back()) < 1e-3 * std::abs(d.e2.front()));
    CHECK(std::abs(d.e2.back()) < 1e-5 * std::abs(d.e2.front()));
    const auto e = zeroth_density(d.k_grid[10], eng);
    CHECK(e[0] == d.e1[10]);
    CHECK(e[1] == d.e2[10]);
}

TEST_CASE("pole elimination at orders 0 and 1")
{
    for (double w0 : {1.0, 5.0}) {
        const MomentEngine eng(1.0, {SpectrumMode::bogoliubov, w0});
        CAPTURE(w0);
        const PoleProbe p0 = pole_probe(0, eng);
        CHECK(p0.ratio < 10.0);
        CHECK(p0.ratio_perturbed > 50.0);
        const FirstOrder first = eps1_per_Bplus(eng);
        const PoleProbe p1 = pole_probe(1, eng, 0.01, &first);
        CHECK(p1.ratio < 10.0);
        CHECK(p1.ratio_perturbed > 50.0);
        for (double k : {1e-2, 1e-3, 1e-4}) {
            CHECK(std::abs(zeroth_density(k, eng)[0]) < 10.0 * std::abs(zeroth_density(1e-2, eng)[0]));
            CHECK(std::abs(first_density(k, eng, first)[0]) < 10.0 * std::abs(first_density(1e-2, eng, first)[0]));
        }
    }
}

TEST_CASE("eps1 is stable under doubling the k rule")
{
    QuadratureConfig coarse;
    QuadratureConfig fine;
    fine.k_grid.initial_nodes = 2 * coarse.k_grid.initial_nodes;
    const SpectrumParams sp{SpectrumMode::bogoliubov, 1.0};
    const FirstOrder a = eps1_per_Bplus(MomentEngine(1.0, sp, coarse));
    const FirstOrder b = eps1_per_Bplus(MomentEngine(1.0, sp, fine));
    CHECK(a.refinement_change < coarse.k_grid.refine_tol);
    CHECK(rel(a.eps1, b.eps1) <= 1e-6);
    CHECK(std::abs(a.eps1 / eps0_per_Bplus(engine_1_1())) < 1.0);
}

TEST_CASE("eps1 refinement failure is reported")
{
    QuadratureConfig cfg;
    cfg.k_grid.initial_nodes = 8;
    cfg.k_grid.max_nodes = 16;
    cfg.k_grid.refine_tol = 1e-14;
    CHECK_THROWS_AS(eps1_per_Bplus(MomentEngine(1.0, {SpectrumMode::bogoliubov, 1.0}, cfg)), QuadratureError);
}

TEST_CASE("order-1 density is defined away from the origin")
{
    const MomentEngine& eng = engine_1_1();
    const FirstOrder first = eps1_per_Bplus(eng);
    CHECK_THROWS_AS(first_density(0.0, eng, first), DomainError);
    const SpectralDensities d = first_densities({0.01, 0.5, 3.0}, eng, first);
    CHECK(d.order == 1);
    CHECK(!d.quadrature_ready());
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::isfinite(d.e1[i]));
        CHECK(std::isfinite(d.e2[i]));
    }
}

TEST_CASE("series assembly")
{
    CHECK(assemble_epsT(0.0, 1.0, 0, 0.25).eps_T == 0.25);
    CHECK(assemble_epsT(1.0 / 3.0, 1.0, 0, 0.25).eps_T == doctest::Approx(0.5).epsilon(1e-15));
    const double ratio = assemble_epsT(0.9, 1.0, 0, 0.3).eps_T / assemble_epsT(0.5, 1.0, 0, 0.3).eps_T;
    CHECK(rel(ratio, 19.0 / 3.0) <= 4e-15);
    CHECK(assemble_epsT(0.5, 3.0, 1, 0.3, 0.1).eps_T == doctest::Approx(3.0 * assemble_epsT(0.5, 1.0, 1, 0.3, 0.1).eps_T));
    const EpsT first = assemble_epsT(0.5, 1.0, 1, 0.4, 0.2);
    CHECK(first.eps_T == doctest::Approx(3.0 * (0.4 + 0.1)));
    CHECK(first.convergence_ratio == doctest::Approx(0.25));
    CHECK(assemble_epsT(0.5, 1.0, 0, 0.4, 0.2).convergence_ratio == 0.0);
    CHECK_THROWS_AS(assemble_epsT(1.0, 1.0, 0, 0.4), DomainError);
    CHECK_THROWS_AS(assemble_epsT(-0.1, 1.0, 0, 0.4), DomainError);
    CHECK_THROWS_AS(assemble_epsT(0.5, 1.0, 2, 0.4), DomainError);
}

TEST_CASE("series coefficients do not depend on q")
{
    const MomentEngine& eng = engine_1_1();
    const SeriesSolution a = solve_series(0.1, 1, eng);
    const SeriesSolution b = solve_series(0.8, 1, eng);
    REQUIRE(a.eps_per_order.size() == 2);
    CHECK(a.eps_per_order == b.eps_per_order);
    CHECK(a.eps_T_per_Bplus ==
          doctest::Approx(1.1 / 0.9 * (a.eps_per_order[0] + 0.9 * a.eps_per_order[1])).epsilon(1e-14));
    CHECK(b.convergence_ratio == doctest::Approx(0.2 * std::abs(b.eps_per_order[1] / b.eps_per_order[0])));
    const SeriesSolution z = solve_series(0.4, 0, eng);
    CHECK(z.eps_per_order.size() == 1);
    CHECK(z.densities.size() == 1);
    const SeriesSolution g = solve_series(0.4, 1, eng, {0.1, 1.0});
    CHECK(g.densities.size() == 2);
    CHECK(g.densities[1].k_grid.size() == 2);
}

TEST_CASE("wall distribution")
{
    const MomentEngine& eng = engine_1_1();
    const SpectralDensities d = zeroth_densities_on_rule(256, eng);
    const SpectralDensities fine = zeroth_densities_on_rule(512, eng);
    const double h = wall_distribution(0.5, 1.0, eng, d);
    CHECK(rel(wall_distribution(0.5, 1.0, eng, fine), h) <= 1e-6);

    SpectralDensities twice = d;
    for (auto& v : twice.e1)
        v *= 2.0;
    for (auto& v : twice.e2)
        v *= 2.0;
    CHECK(rel(wall_distribution(0.5, 1.0, eng, twice), 2.0 * h) <= 1e-15);

    const double at_zero = wall_distribution(1e-12, 1.0, eng, d);
    CHECK(std::isfinite(at_zero));
    CHECK(std::abs(at_zero - wall_distribution(1e-10, 1.0, eng, d)) <= 1e-6 * std::abs(at_zero));

    CHECK_THROWS_AS(wall_distribution(0.0, 1.0, eng, d), DomainError);
    CHECK_THROWS_AS(wall_distribution(0.5, 0.0, eng, d), DomainError);
    CHECK_THROWS_AS(wall_distribution(0.5, 1.0, eng, first_densities({0.5}, eng, eps1_per_Bplus(eng))),
                    DomainError);
}

TEST_CASE("profiles")
{
    const MomentEngine& eng = engine_1_1();
    const SpectralDensities d = zeroth_densities_on_rule(256, eng);
    const SpectralDensities fine = zeroth_densities_on_rule(512, eng);
    const std::vector<double> xs{0.0, 0.1, 1.0, 5.0};
    const Profiles p = profiles(xs, eng, d);
    const Profiles q = profiles(xs, eng, fine);

    double w2_sum = 0.0;
    for (std::size_t j = 0; j < d.k_grid.size(); ++j)
        w2_sum += d.weights[j] * d.e2[j];
    CHECK(p.w1[0] == 0.0);
    CHECK(rel(p.w2[0], w2_sum / std::numbers::pi) <= 1e-14);

    for (std::size_t i = 1; i < xs.size(); ++i) {
        CAPTURE(xs[i]);
        CHECK(std::abs(p.w2[i] - q.w2[i]) <= 1e-5 * std::abs(q.w2[i]));
        CHECK(std::abs(p.w1[i] - q.w1[i]) <= 1e-5 * std::abs(q.w1[i]));
        CHECK(p.temperature[i] == doctest::Approx(p.w2[i] / (2.0 * eng.scalars().g2)).epsilon(1e-15));
    }
    CHECK(std::abs(profiles({50.0}, eng, d).w2[0]) < 1e-4 * std::abs(p.w2[0]));

    // exact densities through an independent Fourier quadrature
    for (double x : {1.0, 5.0}) {
        auto e1 = [&](double k) { return k > 0.0 ? zeroth_density(k, eng)[0] : 0.0; };
        auto e2 = [&](double k) { return zeroth_density(k, eng)[1]; };
        const double w1 = -panel_fourier(e1, [](double t) { return std::sin(t); }, x, 40, 24) / std::numbers::pi;
        const double w2 = panel_fourier(e2, [](double t) { return std::cos(t); }, x, 40, 24) / std::numbers::pi;
        const Profiles r = profiles({x}, eng, fine);
        CAPTURE(x);
        CHECK(std::abs(r.w1[0] - w1) <= 1e-5 * std::abs(w1));
        CHECK(std::abs(r.w2[0] - w2) <= 1e-5 * std::abs(w2));
    }

    CHECK_THROWS_AS(profiles({-1.0}, eng, d), DomainError);
    CHECK_THROWS_AS(profiles({1.0}, eng, first_densities({0.5}, eng, eps1_per_Bplus(eng))), DomainError);
}
