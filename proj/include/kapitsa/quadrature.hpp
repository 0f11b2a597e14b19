#pragma once

#include "kapitsa/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace kapitsa {

/// Parameters of the compactified wavenumber grid k = scale * t / (1 - t).
/// scale = 0 lets the solver pick the width of the source term.
struct KGridConfig {
    double scale = 0.0;
    int initial_nodes = 128;
    int max_nodes = 4096;
    double refine_tol = 1e-6; ///< relative change that stops node doubling
};

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-300;
    /// Upper momentum cutoff: integrate while eps(C) <= eps_cutoff (g < 1e-320 beyond).
    double eps_cutoff = 750.0;
    int max_subdivisions = 4000;
    /// Below this value of B/A the angular factors use their power series.
    double angular_switch = 0.5;
    KGridConfig k_grid;

    void validate() const;
    std::uint64_t hash() const;
};

template <class Real>
struct BasicQuadResult {
    Real value = 0;
    Real abs_error = 0;
    int evaluations = 0;

    Real rel_error() const { return value != 0 ? abs_error / std::abs(value) : abs_error; }
};

using QuadResult = BasicQuadResult<double>;

namespace detail {

template <class Real>
struct GK21Rule {
    // Non-negative Kronrod abscissae; odd indices carry the embedded 10-point Gauss nodes.
    std::vector<Real> nodes;
    std::vector<Real> kronrod_weights;
    std::vector<Real> gauss_weights; // indexed like `nodes`, zero for pure Kronrod nodes
};

template <class Real>
const GK21Rule<Real>& gk21_rule()
{
    static const GK21Rule<Real> rule = [] {
        using kronrod = boost::math::quadrature::gauss_kronrod<Real, 21>;
        using gauss = boost::math::quadrature::gauss<Real, 10>;
        GK21Rule<Real> r;
        const auto& kx = kronrod::abscissa();
        const auto& kw = kronrod::weights();
        r.nodes.assign(kx.begin(), kx.end());
        r.kronrod_weights.assign(kw.begin(), kw.end());
        r.gauss_weights.assign(r.nodes.size(), Real(0));
        const auto& gx = gauss::abscissa();
        const auto& gw = gauss::weights();
        for (std::size_t j = 0; j < gx.size(); ++j)
            for (std::size_t i = 0; i < r.nodes.size(); ++i)
                if (std::abs(r.nodes[i] - gx[j]) < Real(1e-14))
                    r.gauss_weights[i] = gw[j];
        return r;
    }();
    return rule;
}

template <class Real>
struct Segment {
    Real lo, hi, value, error;
};

template <class Real, class F>
Segment<Real> gk21(F& f, Real lo, Real hi, int& evaluations)
{
    const GK21Rule<Real>& rule = gk21_rule<Real>();
    const Real center = (lo + hi) / 2;
    const Real half = (hi - lo) / 2;
    const std::size_t n = rule.nodes.size();

    Real fv[2 * 11];
    const Real fc = f(center);
    Real kron = rule.kronrod_weights[0] * fc;
    Real gauss = rule.gauss_weights[0] * fc;
    Real resabs = std::abs(kron);
    for (std::size_t i = 1; i < n; ++i) {
        const Real dx = half * rule.nodes[i];
        const Real f1 = f(center - dx);
        const Real f2 = f(center + dx);
        fv[2 * i] = f1;
        fv[2 * i + 1] = f2;
        kron += rule.kronrod_weights[i] * (f1 + f2);
        gauss += rule.gauss_weights[i] * (f1 + f2);
        resabs += rule.kronrod_weights[i] * (std::abs(f1) + std::abs(f2));
    }
    evaluations += static_cast<int>(2 * n - 1);

    const Real mean = kron / 2;
    Real resasc = rule.kronrod_weights[0] * std::abs(fc - mean);
    for (std::size_t i = 1; i < n; ++i)
        resasc += rule.kronrod_weights[i] * (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));

    const Real value = kron * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    Real err = std::abs((kron - gauss) * half);
    // QUADPACK error scaling
    if (resasc != 0 && err != 0)
        err = resasc * std::min(Real(1), std::pow(200 * err / resasc, Real(1.5)));
    constexpr Real eps = std::numeric_limits<Real>::epsilon();
    if (resabs > std::numeric_limits<Real>::min() / (50 * eps))
        err = std::max(50 * eps * resabs, err);
    return {lo, hi, value, err};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (21 point) integration over consecutive
/// breakpoints. The interval with the largest error estimate is bisected
/// until the summed estimate meets max(abs_tol, rel_tol * |I|).
template <class Real = double, class F>
BasicQuadResult<Real> integrate_adaptive(F&& f, std::span<const Real> breakpoints, Real rel_tol, Real abs_tol,
                                         int max_subdivisions)
{
    using Seg = detail::Segment<Real>;
    BasicQuadResult<Real> out;
    if (breakpoints.size() < 2)
        return out;

    auto by_error = [](const Seg& a, const Seg& b) { return a.error < b.error; };
    std::vector<Seg> heap;
    heap.reserve(breakpoints.size() + 64);
    Real total = 0;
    Real total_err = 0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] == breakpoints[i])
            continue;
        auto seg = detail::gk21<Real>(f, breakpoints[i], breakpoints[i + 1], out.evaluations);
        total += seg.value;
        total_err += seg.error;
        heap.push_back(seg);
    }
    std::make_heap(heap.begin(), heap.end(), by_error);

    int subdivisions = 0;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (subdivisions >= max_subdivisions) {
            const auto& worst = heap.front();
            throw QuadratureError("adaptive quadrature hit the subdivision limit", static_cast<double>(worst.lo),
                                  static_cast<double>(worst.hi), static_cast<double>(worst.error));
        }
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const Seg worst = heap.back();
        heap.pop_back();
        const Real mid = (worst.lo + worst.hi) / 2;
        if (!(mid > worst.lo && mid < worst.hi)) {
            throw QuadratureError("adaptive quadrature cannot subdivide further", static_cast<double>(worst.lo),
                                  static_cast<double>(worst.hi), static_cast<double>(worst.error));
        }
        auto left = detail::gk21<Real>(f, worst.lo, mid, out.evaluations);
        auto right = detail::gk21<Real>(f, mid, worst.hi, out.evaluations);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_error);
        ++subdivisions;
        if (subdivisions % 64 == 0) {
            // resum to avoid drift in the running totals
            total = 0;
            total_err = 0;
            for (const auto& s : heap) {
                total += s.value;
                total_err += s.error;
            }
        }
    }
    // final resum in breakpoint order for reproducibility
    std::sort(heap.begin(), heap.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    out.value = 0;
    out.abs_error = 0;
    for (const auto& s : heap) {
        out.value += s.value;
        out.abs_error += s.error;
    }
    return out;
}

/// Integral over C in (0, c_max] of an integrand with a power-law approach to C = 0.
///
/// The range [c_max * 4^-10, c_max] is split geometrically and integrated
/// adaptively; further panels [b/4, b] are added towards zero until their
/// contribution and the extrapolated remainder are negligible.
template <class Real = double, class F>
BasicQuadResult<Real> integrate_from_zero(F&& f, Real c_max, const QuadratureConfig& cfg, Real rel_tol)
{
    constexpr int kInitialPanels = 10;
    constexpr Real kRatio = 0.25;
    const Real abs_tol = static_cast<Real>(cfg.abs_tol);
    std::vector<Real> bp;
    bp.reserve(kInitialPanels + 1);
    Real b = c_max;
    for (int j = 0; j < kInitialPanels; ++j)
        b *= kRatio;
    const Real c_split = b;
    for (Real x = c_split; bp.size() < kInitialPanels + 1; x /= kRatio)
        bp.push_back(bp.size() == kInitialPanels ? c_max : x);

    BasicQuadResult<Real> res =
        integrate_adaptive<Real>(f, std::span<const Real>(bp), rel_tol / 10, abs_tol, cfg.max_subdivisions);

    Real hi = c_split;
    Real prev = std::numeric_limits<Real>::infinity();
    constexpr Real kFloor = 1e-290;
    while (true) {
        const Real lo = hi * kRatio;
        const Real tol_abs = std::max(abs_tol, rel_tol / 10 * std::abs(res.value));
        const Real edges[2] = {lo, hi};
        BasicQuadResult<Real> panel = integrate_adaptive<Real>(f, std::span<const Real>(edges), rel_tol / 10,
                                                               tol_abs / 10, cfg.max_subdivisions);
        res.value += panel.value;
        res.abs_error += panel.abs_error;
        res.evaluations += panel.evaluations;

        const Real mag = std::abs(panel.value);
        const Real ratio = prev > 0 && std::isfinite(prev) ? mag / prev : Real(1);
        prev = mag;
        hi = lo;
        const Real budget = Real(1e-3) * rel_tol * std::abs(res.value);
        if (mag == 0 || (ratio < Real(0.9) && mag * ratio / (1 - ratio) <= std::max(budget, abs_tol))) {
            if (mag != 0)
                res.abs_error += mag * ratio / (1 - ratio);
            break;
        }
        if (hi < kFloor)
            throw QuadratureError("integrand does not decay towards C = 0", 0.0, static_cast<double>(hi),
                                  static_cast<double>(mag));
    }
    return res;
}

template <class F>
QuadResult integrate_from_zero(F&& f, double c_max, const QuadratureConfig& cfg)
{
    return integrate_from_zero<double>(std::forward<F>(f), c_max, cfg, cfg.rel_tol);
}

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> complements; ///< 1 - node, computed without cancellation
    std::vector<double> weights;
};

GaussLegendre gauss_legendre_unit(int n);

/// Quadrature rule for k in [0, inf) built from Gauss-Legendre nodes under k = s t / (1 - t).
struct KQuadrature {
    std::vector<double> k;
    std::vector<double> weights;
};

KQuadrature k_quadrature(int n, double scale);

} // namespace kapitsa
