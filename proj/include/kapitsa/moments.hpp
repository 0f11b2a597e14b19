#pragma once

#include "kapitsa/quadrature.hpp"
#include "kapitsa/spectrum.hpp"

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace kapitsa {

inline constexpr double kGammaMin = 0.0;
inline constexpr double kGammaMax = 20.0;

void validate_gamma(double gamma);

/// Exponents (r, s, m, n) of alpha, eps, C and mu in a T or J moment.
struct MomentIndex {
    int r = 0;
    int s = 0;
    double m = 0.0;
    int n = 0;

    MomentIndex() = default;
    /// Checks n in [0, 6] and that the numerator alpha^r eps^s C^m g is
    /// integrable at C = 0 on the phonon branch (m - r + s - 2 > -1).
    MomentIndex(int r_, int s_, double m_, int n_);

    bool operator==(const MomentIndex&) const = default;
};

struct ScalarMoments {
    double g1 = 0.0;
    double g2 = 0.0;
    double g_eps2 = 0.0;
    double g_eps3 = 0.0;
    double g_alpha_eps = 0.0;

    double gamma = 0.0;
    SpectrumParams spectrum;
    std::uint64_t cfg_hash = 0;
    double max_rel_error = 0.0;
};

/// int_0^inf alpha^r eps^s C^m g dC.
QuadResult weighted_moment(int r, int s, double m, const SpectrumParams& sp, const QuadratureConfig& cfg);

ScalarMoments scalar_moments(double gamma, const SpectrumParams& sp, const QuadratureConfig& cfg);

/// Exponent p of the leading power C^p of a T (k1 < 0) or J integrand at C -> 0.
double small_c_exponent(const MomentIndex& idx, double gamma, const SpectrumParams& sp, double k, double k1 = -1.0);

/// T^{r,s}_{m,n}(k) = int int alpha^r eps^s C^m mu^n g / (C^{2 gamma} + k^2 mu^2 alpha^2 C^2).
QuadResult t_moment_result(const MomentIndex& idx, double k, double gamma, const SpectrumParams& sp,
                           const QuadratureConfig& cfg);

/// J^{r,s}_{m,n}(k, k1), the moment with both denominators.
QuadResult j_moment_result(const MomentIndex& idx, double k, double k1, double gamma, const SpectrumParams& sp,
                           const QuadratureConfig& cfg);

/// The same T and scalar integrals evaluated in long double, for checks whose
/// two sides agree to more digits than a double holds.
long double t_moment_extended(const MomentIndex& idx, double k, double gamma, const SpectrumParams& sp,
                              const QuadratureConfig& cfg);
long double weighted_moment_extended(int r, int s, double m, const SpectrumParams& sp, const QuadratureConfig& cfg);

double t_moment(const MomentIndex& idx, double k, double gamma, const SpectrumParams& sp, const QuadratureConfig& cfg);
double j_moment(const MomentIndex& idx, double k, double k1, double gamma, const SpectrumParams& sp,
                const QuadratureConfig& cfg);

/// Memoizing evaluator bound to one (gamma, spectrum, config) triple.
///
/// Safe for concurrent use: lookups take a shared lock, inserts an exclusive one.
class MomentEngine {
public:
    MomentEngine(double gamma, SpectrumParams sp, QuadratureConfig cfg = {});

    double gamma() const noexcept { return gamma_; }
    const SpectrumParams& spectrum() const noexcept { return sp_; }
    const QuadratureConfig& config() const noexcept { return cfg_; }

    const ScalarMoments& scalars() const;

    double T(const MomentIndex& idx, double k) const;
    double J(const MomentIndex& idx, double k, double k1) const;

    /// Largest relative error estimate over everything evaluated so far.
    double max_rel_error() const;
    std::size_t cache_size() const;
    std::size_t cache_hits() const;

private:
    struct Key {
        int r, s, n;
        std::uint64_t m, k, k1;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& key) const noexcept;
    };

    double lookup_or_compute(const Key& key, auto&& compute) const;

    double gamma_;
    SpectrumParams sp_;
    QuadratureConfig cfg_;

    mutable std::once_flag scalars_once_;
    mutable ScalarMoments scalars_;

    mutable std::shared_mutex mutex_;
    mutable std::unordered_map<Key, double, KeyHash> cache_;
    mutable double max_rel_error_ = 0.0;
    mutable std::atomic<std::size_t> hits_{0};
};

} // namespace kapitsa
