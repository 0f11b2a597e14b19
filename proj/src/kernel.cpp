#include "kapitsa/kernel.hpp"

#include "kapitsa/errors.hpp"

#include <cmath>

namespace kapitsa {

namespace {

constexpr std::complex<double> I{0.0, 1.0};

void check_k(double k)
{
    if (!std::isfinite(k))
        throw DomainError("wavenumber must be finite");
}

} // namespace

KernelIndices KernelIndices::for_gamma(double gamma)
{
    const double g = gamma;
    KernelIndices x;
    x.lam11 = {1, 0, 3 * g + 4, 2};
    x.lam12 = {1, 1, 2 * g + 4, 2};
    x.lam21 = {2, 1, 2 * g + 4, 2};
    x.lam22 = {0, 2, 3 * g + 2, 0};
    x.id1 = {3, 0, g + 6, 4};
    x.id2 = {2, 2, g + 4, 2};
    x.t1a = {1, 0, 2 * g + 4, 4};
    x.t1b = {0, 1, 3 * g + 2, 2};
    x.t2a = {1, 0, 2 * g + 5, 3};
    x.t2b = {0, 1, 3 * g + 3, 1};
    x.j11 = {1, 0, 5 * g + 4, 3};
    x.j12 = {1, 1, 4 * g + 4, 3};
    x.j21 = {2, 1, 4 * g + 4, 3};
    x.j22 = {0, 2, 5 * g + 2, 1};
    x.t1b_shift = {2, 1, g + 4, 4};
    x.t2b_shift = {2, 1, g + 5, 3};
    x.j22_shift = {2, 2, 3 * g + 4, 3};
    x.j22_at_zero = {0, 2, 3 * g + 2, 1};
    return x;
}

double omega(double k, const MomentEngine& eng)
{
    check_k(k);
    const auto x = KernelIndices::for_gamma(eng.gamma());
    const ScalarMoments& s = eng.scalars();
    const double ak = std::abs(k);
    const double cross = eng.T(x.lam12, ak) * eng.T(x.lam21, ak);
    if (ak == 0.0)
        return 3.0 / (s.g1 * s.g2) * cross;
    return 3.0 / (s.g1 * s.g2) * (k * k * eng.T(x.id1, ak) * eng.T(x.id2, ak) + cross);
}

KernelBundle dispersion_matrix(double k, const MomentEngine& eng)
{
    check_k(k);
    const auto x = KernelIndices::for_gamma(eng.gamma());
    const ScalarMoments& s = eng.scalars();
    const double ak = std::abs(k);

    KernelBundle b;
    b.k = k;
    Matrix2c& L = b.lambda_mat;
    // at k = 0 both diagonal moments equal their normalizations exactly
    L(0, 0) = ak == 0.0 ? 0.0 : 1.0 - 3.0 / s.g1 * eng.T(x.lam11, ak);
    L(0, 1) = I * k / s.g2 * eng.T(x.lam12, ak);
    L(1, 0) = 3.0 * I * k / s.g1 * eng.T(x.lam21, ak);
    L(1, 1) = ak == 0.0 ? 0.0 : 1.0 - 1.0 / s.g2 * eng.T(x.lam22, ak);

    b.adjugate << L(1, 1), -L(0, 1), -L(1, 0), L(0, 0);
    b.omega = omega(k, eng);
    std::tie(b.t1, b.t2) = source_vectors(k, eng);
    return b;
}

KernelBundle dispersion_matrix(double k, double gamma, const SpectrumParams& sp, const QuadratureConfig& cfg)
{
    return dispersion_matrix(k, MomentEngine(gamma, sp, cfg));
}

std::array<double, 2> identity_residuals(double k, const MomentEngine& eng)
{
    check_k(k);
    if (k == 0.0)
        return {0.0, 0.0};
    const double gamma = eng.gamma();
    const SpectrumParams& sp = eng.spectrum();
    const QuadratureConfig& cfg = eng.config();
    const auto x = KernelIndices::for_gamma(gamma);
    const double ak = std::abs(k);
    // Both sides in long double: at small k the left sides are differences of
    // moments that agree to ~1e-8, below the resolution of a double.
    const long double g1 = weighted_moment_extended(1, 0, gamma + 4.0, sp, cfg);
    const long double g2 = weighted_moment_extended(0, 2, gamma + 2.0, sp, cfg);
    auto t = [&](const MomentIndex& idx) { return t_moment_extended(idx, ak, gamma, sp, cfg); };
    auto residual = [](long double lhs, long double rhs) {
        const long double scale = lhs != 0 ? std::abs(lhs) : 1.0L;
        return static_cast<double>(std::abs(lhs - rhs) / scale);
    };
    const long double kk = static_cast<long double>(k) * k;
    const long double lhs1 = 1 - 3 / g1 * t(x.lam11);
    const long double rhs1 = 3 * kk / g1 * t(x.id1);
    const long double lhs2 = 1 - 1 / g2 * t(x.lam22);
    const long double rhs2 = kk / g2 * t(x.id2);
    return {residual(lhs1, rhs1), residual(lhs2, rhs2)};
}

std::array<double, 2> identity_residuals(double k, double gamma, const SpectrumParams& sp,
                                         const QuadratureConfig& cfg)
{
    return identity_residuals(k, MomentEngine(gamma, sp, cfg));
}

std::pair<Vector2c, Vector2c> source_vectors(double k, const MomentEngine& eng)
{
    check_k(k);
    const auto x = KernelIndices::for_gamma(eng.gamma());
    const double ak = std::abs(k);
    Vector2c t1, t2;
    t1 << (k == 0.0 ? 0.0 : I * k * eng.T(x.t1a, ak)), -eng.T(x.t1b, ak);
    t2 << (k == 0.0 ? 0.0 : I * k * eng.T(x.t2a, ak)), -eng.T(x.t2b, ak);
    return {t1, t2};
}

std::pair<Vector2c, Vector2c> source_vectors(double k, double gamma, const SpectrumParams& sp,
                                             const QuadratureConfig& cfg)
{
    return source_vectors(k, MomentEngine(gamma, sp, cfg));
}

KernelMatrix kernel_matrix(double k, double k1, const MomentEngine& eng)
{
    check_k(k);
    check_k(k1);
    const auto x = KernelIndices::for_gamma(eng.gamma());
    const ScalarMoments& s = eng.scalars();
    const double ak = std::abs(k);
    const double ak1 = std::abs(k1);
    KernelMatrix out;
    out.k = k;
    out.k1 = k1;
    Matrix2c& J = out.entries;
    J(0, 0) = -3.0 / s.g1 * eng.J(x.j11, ak, ak1);
    J(0, 1) = k == 0.0 ? 0.0 : I * k / s.g2 * eng.J(x.j12, ak, ak1);
    J(1, 0) = k == 0.0 ? 0.0 : 3.0 * I * k / s.g1 * eng.J(x.j21, ak, ak1);
    J(1, 1) = -1.0 / s.g2 * eng.J(x.j22, ak, ak1);
    return out;
}

KernelMatrix kernel_matrix(double k, double k1, double gamma, const SpectrumParams& sp, const QuadratureConfig& cfg)
{
    return kernel_matrix(k, k1, MomentEngine(gamma, sp, cfg));
}

} // namespace kapitsa
