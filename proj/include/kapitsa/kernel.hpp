#pragma once

#include "kapitsa/moments.hpp"

#include <Eigen/Core>

#include <array>
#include <complex>
#include <utility>

namespace kapitsa {

using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;

/// Every moment index the characteristic system needs, resolved for one gamma.
struct KernelIndices {
    MomentIndex lam11, lam12, lam21, lam22; // entries of Lambda
    MomentIndex id1, id2;                   // right-hand sides of the two identities
    MomentIndex t1a, t1b, t2a, t2b;         // source vectors
    MomentIndex j11, j12, j21, j22;         // kernel matrix
    MomentIndex t1b_shift, t2b_shift;       // k^2 parts of t1b, t2b
    MomentIndex j22_shift;                  // k^2 part of j22 in its first argument
    MomentIndex j22_at_zero;                // j22(0, k1) as a T moment of k1

    static KernelIndices for_gamma(double gamma);
};

struct KernelBundle {
    double k = 0.0;
    Matrix2c lambda_mat = Matrix2c::Zero();
    Matrix2c adjugate = Matrix2c::Zero();
    double omega = 0.0;
    Vector2c t1 = Vector2c::Zero();
    Vector2c t2 = Vector2c::Zero();

    std::complex<double> det() const
    {
        return lambda_mat(0, 0) * lambda_mat(1, 1) - lambda_mat(0, 1) * lambda_mat(1, 0);
    }
};

struct KernelMatrix {
    double k = 0.0;
    double k1 = 0.0;
    Matrix2c entries = Matrix2c::Zero();
};

/// omega(k) = det Lambda / k^2 assembled from the identity forms; analytic limit at k = 0.
double omega(double k, const MomentEngine& eng);

/// Lambda(k) from the characteristic system, its adjugate D(k), omega(k) and T1, T2.
/// Negative k is accepted: moments depend on |k| and the odd prefactors keep the sign.
KernelBundle dispersion_matrix(double k, const MomentEngine& eng);
KernelBundle dispersion_matrix(double k, double gamma, const SpectrumParams& sp, const QuadratureConfig& cfg = {});

/// Relative residuals of 1 - (3/g1) T^{1,0}_{3g+4,2} = (3k^2/g1) T^{3,0}_{g+6,4}
/// and 1 - (1/g2) T^{0,2}_{3g+2,0} = (k^2/g2) T^{2,2}_{g+4,2}.
std::array<double, 2> identity_residuals(double k, const MomentEngine& eng);
std::array<double, 2> identity_residuals(double k, double gamma, const SpectrumParams& sp,
                                         const QuadratureConfig& cfg = {});

std::pair<Vector2c, Vector2c> source_vectors(double k, const MomentEngine& eng);
std::pair<Vector2c, Vector2c> source_vectors(double k, double gamma, const SpectrumParams& sp,
                                             const QuadratureConfig& cfg = {});

KernelMatrix kernel_matrix(double k, double k1, const MomentEngine& eng);
KernelMatrix kernel_matrix(double k, double k1, double gamma, const SpectrumParams& sp,
                           const QuadratureConfig& cfg = {});

} // namespace kapitsa
