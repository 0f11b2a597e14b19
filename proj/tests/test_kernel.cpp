#include <doctest.h>

#include "kapitsa/kernel.hpp"
#include "kapitsa/reference.hpp"

#include <cmath>
#include <random>

using namespace kapitsa;

namespace {

double rel(double a, double b) { return std::abs(a / b - 1.0); }

} // namespace

TEST_CASE("identity residuals vanish on the grid")
{
    for (double gamma : {1.0, 3.0, 10.0}) {
        for (double w0 : {1.0, 5.0, 20.0}) {
            const MomentEngine eng(gamma, {SpectrumMode::bogoliubov, w0});
            const auto at_zero = identity_residuals(0.0, eng);
            CHECK(at_zero[0] == 0.0);
            CHECK(at_zero[1] == 0.0);
            for (double k : {0.1, 1.0, 5.0, 20.0}) {
                const auto r = identity_residuals(k, eng);
                CAPTURE(gamma);
                CAPTURE(w0);
                CAPTURE(k);
                CHECK(r[0] <= 1e-8);
                CHECK(r[1] <= 1e-8);
            }
        }
    }
}

TEST_CASE("identity residuals at the documented extreme point")
{
    const auto r = identity_residuals(10.0, 10.0, {SpectrumMode::bogoliubov, 20.0});
    CHECK(r[0] <= 1e-7);
    CHECK(r[1] <= 1e-7);
    const auto r2 = identity_residuals(1.3, 1.0, {SpectrumMode::bogoliubov, 5.0});
    CHECK(r2[0] <= 1e-8);
    CHECK(r2[1] <= 1e-8);
}

TEST_CASE("k = 0 reductions")
{
    for (double gamma : {0.5, 2.0, 7.0}) {
        const MomentEngine eng(gamma, {SpectrumMode::bogoliubov, 1.5});
        const KernelBundle b = dispersion_matrix(0.0, eng);
        CHECK(b.lambda_mat(0, 0) == 0.0);
        CHECK(b.lambda_mat(1, 1) == 0.0);
        CHECK(b.lambda_mat(0, 1) == 0.0);
        CHECK(b.lambda_mat(1, 0) == 0.0);
        const ScalarMoments& s = eng.scalars();
        CHECK(b.t1(0) == 0.0);
        CHECK(b.t2(0) == 0.0);
        CHECK(rel(b.t1(1).real(), -s.g_eps2 / 3) < 1e-11);
        CHECK(rel(b.t2(1).real(), -s.g_eps3 / 2) < 1e-11);
        CHECK(b.omega > 0.0);
    }
}

TEST_CASE("determinant equals k^2 omega and the adjugate identity holds")
{
    for (double gamma : {1.0, 3.0, 10.0}) {
        for (double w0 : {1.0, 5.0, 20.0}) {
            const MomentEngine eng(gamma, {SpectrumMode::bogoliubov, w0});
            for (double k : {0.1, 1.0, 5.0}) {
                const KernelBundle b = dispersion_matrix(k, eng);
                const std::complex<double> det = b.det();
                CAPTURE(gamma);
                CAPTURE(w0);
                CAPTURE(k);
                CHECK(std::abs(det.imag()) <= 1e-14 * std::abs(det));
                CHECK(std::abs(det.real() / (k * k * b.omega) - 1.0) <= 1e-9);
                const Matrix2c prod = b.lambda_mat * b.adjugate - det * Matrix2c::Identity();
                CHECK(prod.norm() <= 1e-12 * std::abs(det) + 1e-15 * b.lambda_mat.norm() * b.adjugate.norm());
            }
        }
    }
}

TEST_CASE("omega stays positive")
{
    for (double gamma : {1.0, 3.0, 10.0})
        for (double w0 : {1.0, 5.0, 20.0}) {
            const MomentEngine eng(gamma, {SpectrumMode::bogoliubov, w0});
            for (double k : {0.0, 0.1, 1.0, 5.0, 20.0})
                CHECK(omega(k, eng) > 0.0);
        }
}

TEST_CASE("entry structure and parity")
{
    const MomentEngine eng(1.5, {SpectrumMode::bogoliubov, 2.0});
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uk(0.01, 30.0);
    for (int i = 0; i < 20; ++i) {
        const double k = uk(rng);
        const KernelBundle b = dispersion_matrix(k, eng);
        const KernelBundle m = dispersion_matrix(-k, eng);
        CHECK(b.lambda_mat(0, 0).imag() == 0.0);
        CHECK(b.lambda_mat(1, 1).imag() == 0.0);
        CHECK(b.lambda_mat(0, 1).real() == 0.0);
        CHECK(b.lambda_mat(1, 0).real() == 0.0);
        CHECK(m.lambda_mat == b.lambda_mat.conjugate());
        const std::complex<double> det = b.det();
        const Matrix2c prod = b.lambda_mat * b.adjugate - det * Matrix2c::Identity();
        CHECK(prod.norm() <= 1e-12 * std::abs(det) + 1e-15 * b.lambda_mat.norm() * b.adjugate.norm());
        CHECK(b.t1(0).real() == 0.0);
        CHECK(b.t1(1).real() < 0.0);
        CHECK(b.t2(1).real() < 0.0);
    }
}

TEST_CASE("source vector against nested quadrature")
{
    const double gamma = 1.0;
    const SpectrumParams sp{SpectrumMode::bogoliubov, 1.0};
    const double k = 0.2;
    const auto [t1, t2] = source_vectors(k, gamma, sp);
    const double ref = reference::t_moment_nested({1, 0, 2 * gamma + 4, 4}, k, gamma, sp);
    CHECK(rel(t1(0).imag(), k * ref) < 1e-9);
}

TEST_CASE("kernel matrix")
{
    const double gamma = 1.0;
    const SpectrumParams sp{SpectrumMode::bogoliubov, 1.0};
    const MomentEngine eng(gamma, sp);
    const ScalarMoments& s = eng.scalars();

    const KernelMatrix at0 = kernel_matrix(0.7, 0.0, eng);
    const double t = t_moment({0, 2, 3 * gamma + 2, 1}, 0.7, gamma, sp, {});
    CHECK(rel(at0.entries(1, 1).real(), -t / s.g2) < 1e-9);

    const KernelMatrix kz = kernel_matrix(0.0, 0.9, eng);
    CHECK(kz.entries(0, 1) == 0.0);
    CHECK(kz.entries(1, 0) == 0.0);

    const KernelMatrix km = kernel_matrix(0.4, 0.8, eng);
    const auto x = KernelIndices::for_gamma(gamma);
    CHECK(rel(km.entries(0, 0).real(), -3.0 / s.g1 * reference::j_moment_nested(x.j11, 0.4, 0.8, gamma, sp)) < 1e-8);
    CHECK(rel(km.entries(0, 1).imag(), 0.4 / s.g2 * reference::j_moment_nested(x.j12, 0.4, 0.8, gamma, sp)) < 1e-8);
    CHECK(rel(km.entries(1, 0).imag(), 1.2 / s.g1 * reference::j_moment_nested(x.j21, 0.4, 0.8, gamma, sp)) < 1e-8);
    CHECK(rel(km.entries(1, 1).real(), -1.0 / s.g2 * reference::j_moment_nested(x.j22, 0.4, 0.8, gamma, sp)) < 1e-8);
    CHECK(km.entries(0, 0).imag() == 0.0);
    CHECK(km.entries(1, 1).imag() == 0.0);
    CHECK(km.entries(0, 1).real() == 0.0);
    CHECK(km.entries(1, 0).real() == 0.0);
}
