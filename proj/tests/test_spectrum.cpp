#include <doctest.h>

#include "kapitsa/errors.hpp"
#include "kapitsa/spectrum.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

using namespace kapitsa;

namespace {

SpectrumParams bog(double w0) { return {SpectrumMode::bogoliubov, w0}; }

} // namespace

TEST_CASE("energy closed forms")
{
    CHECK(energy(2.0, bog(0.0)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(energy(1.0, bog(1.0)) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
    CHECK(energy(3.0, {SpectrumMode::phonon, 2.0}) == 6.0);
    CHECK(energy(0.0, bog(2.0)) == 0.0);
    CHECK_THROWS_AS(energy(-1.0, bog(1.0)), DomainError);
    CHECK_THROWS_AS(energy(NAN, bog(1.0)), DomainError);
}

TEST_CASE("group velocity and alpha")
{
    CHECK(group_velocity(0.0, bog(2.0)) == 2.0);
    CHECK(group_velocity(1e-9, bog(2.0)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(group_velocity(0.0, {SpectrumMode::free, 3.0}) == 0.0);
    CHECK(group_velocity(1.5, bog(0.0)) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(group_velocity(1.0, bog(1.0)) == doctest::Approx(1.5 / std::sqrt(1.25)).epsilon(1e-15));
    CHECK(alpha(1.5, bog(0.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(alpha(0.0, bog(1.0)), DomainError);
}

TEST_CASE("Bose weight")
{
    CHECK(bose_weight_of_energy(std::log(2.0)) == doctest::Approx(2.0).epsilon(1e-14));

    using big = boost::multiprecision::cpp_bin_float_50;
    const big e50 = exp(big(-50));
    const big ref = e50 / ((1 - e50) * (1 - e50));
    CHECK(std::abs(bose_weight_of_energy(50.0) / ref.convert_to<double>() - 1.0) < 1e-12);

    const SpectrumParams p = bog(1.0);
    const double c = 1e-4;
    const double eps = energy(c, p);
    CHECK(std::abs(bose_weight(c, p) * eps * eps - 1.0) < 1e-6);
    CHECK(std::isfinite(bose_weight_of_energy(800.0)));
    CHECK_THROWS_AS(bose_weight(0.0, p), DomainError);
}

TEST_CASE("spectrum invariants")
{
    for (double w0 : {0.0, 0.3, 1.0, 7.0}) {
        const SpectrumParams p = bog(w0);
        double prev = -1.0;
        for (double c = 1e-3; c < 100.0; c *= 1.3) {
            const double e = energy(c, p);
            CHECK(e > prev);
            prev = e;
            CHECK(e >= std::max(w0 * c, 0.5 * c * c) * (1 - 1e-15));
            CHECK(e <= (w0 * c + 0.5 * c * c) * (1 + 1e-15));
            if (e < 700.0)
                CHECK(bose_weight(c, p) > 0.0);
        }
        for (double c = 1e-2; c <= 1e2; c *= 1.7) {
            const double h = 1e-6 * c;
            const double fd = (energy(c + h, p) - energy(c - h, p)) / (2 * h);
            CHECK(std::abs(fd - group_velocity(c, p)) <= 1e-6 * std::abs(fd));
        }
    }
}

TEST_CASE("free mode equals bogoliubov with w0 = 0 bit for bit")
{
    const SpectrumParams f{SpectrumMode::free, 4.0};
    const SpectrumParams b = bog(0.0);
    for (double c = 1e-3; c < 50.0; c *= 1.9) {
        CHECK(energy(c, f) == energy(c, b));
        CHECK(group_velocity(c, f) == group_velocity(c, b));
        CHECK(bose_weight(c, f) == bose_weight(c, b));
    }
}

TEST_CASE("parameter validation and parsing")
{
    CHECK_THROWS_AS(SpectrumParams({SpectrumMode::phonon, 0.0}).validate(), DomainError);
    CHECK_THROWS_AS(bog(-1.0).validate(), DomainError);
    CHECK(parse_spectrum_mode("phonon") == SpectrumMode::phonon);
    CHECK(to_string(SpectrumMode::free) == "free");
    CHECK_THROWS_AS(parse_spectrum_mode("roton"), DomainError);
    CHECK(momentum_for_energy(energy(3.7, bog(2.0)), bog(2.0)) == doctest::Approx(3.7).epsilon(1e-14));
}
