#include "kapitsa/moments.hpp"

#include "kapitsa/angular.hpp"
#include "kapitsa/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <type_traits>

namespace kapitsa {

void validate_gamma(double gamma)
{
    if (!(gamma >= kGammaMin && gamma <= kGammaMax))
        throw DomainError("gamma must lie in [0, 20]");
}

MomentIndex::MomentIndex(int r_, int s_, double m_, int n_) : r(r_), s(s_), m(m_), n(n_)
{
    if (r < 0 || s < 0)
        throw DomainError("moment exponents r, s must be non-negative");
    if (n < 0 || n > 6)
        throw DomainError("moment exponent n must lie in [0, 6]");
    if (!std::isfinite(m))
        throw DomainError("moment exponent m must be finite");
    if (!(m - r + s - 2.0 > -1.0))
        throw DomainError("moment numerator is not integrable at C = 0");
}

namespace {

template <class Real>
Real ipow(Real x, int e)
{
    Real out = 1;
    for (int i = 0; i < e; ++i)
        out *= x;
    return out;
}

double numerator_exponent(int r, int s, double m, const SpectrumParams& sp)
{
    if (sp.effective_w0() > 0.0)
        return m - r + s - 2.0;
    return m + 2.0 * s - 4.0;
}

void require_integrable(double p, const char* what)
{
    if (!(p > -1.0))
        throw DomainError(std::string(what) + " diverges at C = 0 (leading exponent " + std::to_string(p) + ")");
}

void check_setup(double gamma, const SpectrumParams& sp, const QuadratureConfig& cfg)
{
    validate_gamma(gamma);
    sp.validate();
    cfg.validate();
}

template <class Real>
struct Point {
    Real eps, v, g;
};

template <class Real>
Point<Real> point(Real c, const SpectrumParams& sp)
{
    if constexpr (std::is_same_v<Real, double>) {
        const double eps = energy(c, sp);
        return {eps, group_velocity(c, sp), bose_weight_of_energy(eps)};
    } else {
        const Real w0 = sp.effective_w0();
        Real eps, v;
        if (sp.mode == SpectrumMode::phonon) {
            eps = w0 * c;
            v = w0;
        } else {
            const Real root = std::sqrt(w0 * w0 + c * c / 4);
            eps = c * root;
            v = (w0 * w0 + c * c / 2) / root;
        }
        const Real d = -std::expm1(-eps);
        return {eps, v, std::exp(-eps) / (d * d)};
    }
}

template <class Real>
Real checked(Real value, Real c)
{
    if (!std::isfinite(value))
        throw QuadratureError("moment integrand is not finite", static_cast<double>(c), static_cast<double>(c),
                              static_cast<double>(value));
    return value;
}

// long double carries about three more digits; used where a check subtracts moments that agree to ~1e-8
template <class Real>
Real working_tol(const QuadratureConfig& cfg)
{
    if constexpr (std::is_same_v<Real, double>)
        return cfg.rel_tol;
    else
        return std::min<Real>(cfg.rel_tol, 1e-16L);
}

template <class Real>
BasicQuadResult<Real> weighted_impl(int r, int s, double m, const SpectrumParams& sp, const QuadratureConfig& cfg)
{
    sp.validate();
    cfg.validate();
    require_integrable(numerator_exponent(r, s, m, sp), "scalar moment");
    const Real c_max = momentum_for_energy(cfg.eps_cutoff, sp);
    const Real power = m - r;
    auto f = [&](Real c) {
        const Point<Real> pt = point(c, sp);
        return checked(ipow(pt.v, r) * ipow(pt.eps, s) * std::pow(c, power) * pt.g, c);
    };
    return integrate_from_zero<Real>(f, c_max, cfg, working_tol<Real>(cfg));
}

template <class Real>
BasicQuadResult<Real> t_impl(const MomentIndex& idx, double k, double gamma, const SpectrumParams& sp,
                             const QuadratureConfig& cfg)
{
    check_setup(gamma, sp, cfg);
    if (!(k >= 0.0) || !std::isfinite(k))
        throw DomainError("T moment needs finite k >= 0");
    require_integrable(small_c_exponent(idx, gamma, sp, k), "T moment");

    const Real c_max = momentum_for_energy(cfg.eps_cutoff, sp);
    const Real power = idx.m - idx.r - 2.0 * gamma;
    const Real at_rest = Real(1) / (idx.n + 1);
    const Real kk = k;
    const Real gg = gamma;
    const Real sw = cfg.angular_switch;
    auto f = [&](Real c) {
        const Point<Real> pt = point(c, sp);
        const Real pre = ipow(pt.v, idx.r) * ipow(pt.eps, idx.s) * std::pow(c, power) * pt.g;
        Real ang = at_rest;
        if (kk > 0) {
            const Real a = kk * pt.v * std::pow(c, -gg);
            ang = angular_single(idx.n, a * a, sw);
        }
        return checked(pre * ang, c);
    };
    return integrate_from_zero<Real>(f, c_max, cfg, working_tol<Real>(cfg));
}

} // namespace

QuadResult weighted_moment(int r, int s, double m, const SpectrumParams& sp, const QuadratureConfig& cfg)
{
    return weighted_impl<double>(r, s, m, sp, cfg);
}

long double weighted_moment_extended(int r, int s, double m, const SpectrumParams& sp, const QuadratureConfig& cfg)
{
    return weighted_impl<long double>(r, s, m, sp, cfg).value;
}

ScalarMoments scalar_moments(double gamma, const SpectrumParams& sp, const QuadratureConfig& cfg)
{
    check_setup(gamma, sp, cfg);
    ScalarMoments out;
    out.gamma = gamma;
    out.spectrum = sp;
    out.cfg_hash = cfg.hash();
    auto take = [&](double& slot, int r, int s, double m) {
        const QuadResult q = weighted_moment(r, s, m, sp, cfg);
        slot = q.value;
        out.max_rel_error = std::max(out.max_rel_error, q.rel_error());
    };
    take(out.g1, 1, 0, gamma + 4.0);
    take(out.g2, 0, 2, gamma + 2.0);
    take(out.g_eps2, 0, 1, gamma + 2.0);
    take(out.g_eps3, 0, 1, gamma + 3.0);
    take(out.g_alpha_eps, 2, 1, 4.0);
    return out;
}

double small_c_exponent(const MomentIndex& idx, double gamma, const SpectrumParams& sp, double k, double k1)
{
    const bool phonon_branch = sp.effective_w0() > 0.0;
    const double p_num = numerator_exponent(idx.r, idx.s, idx.m, sp);
    // a = k v C^-gamma grows like C^-beta near 0 when beta > 0
    const double beta = phonon_branch ? gamma : gamma - 1.0;
    const double gain = beta > 0.0 ? beta : 0.0;
    if (k1 < 0.0) {
        double p = p_num - 2.0 * gamma;
        if (k > 0.0)
            p += gain * std::min(idx.n + 1, 2);
        return p;
    }
    double p = p_num - 4.0 * gamma;
    const int active = (k > 0.0 ? 1 : 0) + (k1 > 0.0 ? 1 : 0);
    if (active == 2)
        p += gain * std::min(idx.n + 1, 4);
    else if (active == 1)
        p += gain * std::min(idx.n + 1, 2);
    return p;
}

QuadResult t_moment_result(const MomentIndex& idx, double k, double gamma, const SpectrumParams& sp,
                           const QuadratureConfig& cfg)
{
    return t_impl<double>(idx, k, gamma, sp, cfg);
}

long double t_moment_extended(const MomentIndex& idx, double k, double gamma, const SpectrumParams& sp,
                              const QuadratureConfig& cfg)
{
    return t_impl<long double>(idx, k, gamma, sp, cfg).value;
}

QuadResult j_moment_result(const MomentIndex& idx, double k, double k1, double gamma, const SpectrumParams& sp,
                           const QuadratureConfig& cfg)
{
    check_setup(gamma, sp, cfg);
    if (!(k >= 0.0) || !(k1 >= 0.0) || !std::isfinite(k) || !std::isfinite(k1))
        throw DomainError("J moment needs finite k, k1 >= 0");
    if (k > k1)
        std::swap(k, k1);
    require_integrable(small_c_exponent(idx, gamma, sp, k, k1), "J moment");

    const double c_max = momentum_for_energy(cfg.eps_cutoff, sp);
    const double power = idx.m - idx.r - 4.0 * gamma;
    const double dk = k1 - k;
    auto f = [&](double c) {
        const Point<double> pt = point(c, sp);
        const double pre = ipow(pt.v, idx.r) * ipow(pt.eps, idx.s) * std::pow(c, power) * pt.g;
        const double scale = pt.v * std::pow(c, -gamma);
        const double ang = angular_pair(idx.n, k * scale, k1 * scale, dk * scale, cfg.angular_switch);
        return checked(pre * ang, c);
    };
    return integrate_from_zero(f, c_max, cfg);
}

double t_moment(const MomentIndex& idx, double k, double gamma, const SpectrumParams& sp, const QuadratureConfig& cfg)
{
    return t_moment_result(idx, k, gamma, sp, cfg).value;
}

double j_moment(const MomentIndex& idx, double k, double k1, double gamma, const SpectrumParams& sp,
                const QuadratureConfig& cfg)
{
    return j_moment_result(idx, k, k1, gamma, sp, cfg).value;
}

MomentEngine::MomentEngine(double gamma, SpectrumParams sp, QuadratureConfig cfg)
    : gamma_(gamma), sp_(sp), cfg_(cfg)
{
    check_setup(gamma_, sp_, cfg_);
}

const ScalarMoments& MomentEngine::scalars() const
{
    std::call_once(scalars_once_, [this] {
        scalars_ = scalar_moments(gamma_, sp_, cfg_);
        std::unique_lock lock(mutex_);
        max_rel_error_ = std::max(max_rel_error_, scalars_.max_rel_error);
    });
    return scalars_;
}

std::size_t MomentEngine::KeyHash::operator()(const Key& key) const noexcept
{
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
    mix(static_cast<std::uint64_t>(key.r));
    mix(static_cast<std::uint64_t>(key.s));
    mix(static_cast<std::uint64_t>(key.n));
    mix(key.m);
    mix(key.k);
    mix(key.k1);
    return static_cast<std::size_t>(h);
}

double MomentEngine::lookup_or_compute(const Key& key, auto&& compute) const
{
    {
        std::shared_lock lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end()) {
            ++hits_;
            return it->second;
        }
    }
    const QuadResult res = compute();
    std::unique_lock lock(mutex_);
    max_rel_error_ = std::max(max_rel_error_, res.rel_error());
    cache_.emplace(key, res.value);
    return res.value;
}

double MomentEngine::T(const MomentIndex& idx, double k) const
{
    const Key key{idx.r, idx.s, idx.n, std::bit_cast<std::uint64_t>(idx.m), std::bit_cast<std::uint64_t>(k),
                  std::bit_cast<std::uint64_t>(-1.0)};
    return lookup_or_compute(key, [&] { return t_moment_result(idx, k, gamma_, sp_, cfg_); });
}

double MomentEngine::J(const MomentIndex& idx, double k, double k1) const
{
    if (k > k1)
        std::swap(k, k1);
    const Key key{idx.r, idx.s, idx.n, std::bit_cast<std::uint64_t>(idx.m), std::bit_cast<std::uint64_t>(k),
                  std::bit_cast<std::uint64_t>(k1)};
    return lookup_or_compute(key, [&] { return j_moment_result(idx, k, k1, gamma_, sp_, cfg_); });
}

double MomentEngine::max_rel_error() const
{
    std::shared_lock lock(mutex_);
    return max_rel_error_;
}

std::size_t MomentEngine::cache_size() const
{
    std::shared_lock lock(mutex_);
    return cache_.size();
}

std::size_t MomentEngine::cache_hits() const
{
    return hits_.load();
}

} // namespace kapitsa
