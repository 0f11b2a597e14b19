#pragma once

#include <string>
#include <string_view>

namespace kapitsa {

/// Which excitation spectrum is used.
///
/// `bogoliubov` is the full interpolating spectrum; `phonon` keeps only the
/// linear sound branch and `free` only the quadratic particle branch. The free
/// mode is evaluated through the bogoliubov formulas with w0 = 0, so the two
/// agree bit for bit.
enum class SpectrumMode { bogoliubov, phonon, free };

std::string_view to_string(SpectrumMode mode);
SpectrumMode parse_spectrum_mode(std::string_view text);

struct SpectrumParams {
    SpectrumMode mode = SpectrumMode::bogoliubov;
    double w0 = 1.0; ///< dimensionless sound speed u0 / v_T

    /// Throws DomainError for negative/non-finite w0 or a phonon spectrum with w0 = 0.
    void validate() const;

    /// Sound speed actually used by the formulas (0 in free mode).
    double effective_w0() const noexcept { return mode == SpectrumMode::free ? 0.0 : w0; }

    bool operator==(const SpectrumParams&) const = default;
};

/// Dimensionless excitation energy eps(C).
double energy(double c, const SpectrumParams& p);

/// Dimensionless group velocity alpha(C) * C = d eps / dC, finite at C = 0.
double group_velocity(double c, const SpectrumParams& p);

/// alpha(C) itself; diverges at C = 0 unless w0 = 0.
double alpha(double c, const SpectrumParams& p);

/// Bose weight g = e^eps / (e^eps - 1)^2 for a given energy, overflow free.
double bose_weight_of_energy(double eps);

/// Bose weight g(C); requires C > 0.
double bose_weight(double c, const SpectrumParams& p);

/// Momentum at which eps(C) reaches `eps_target`.
double momentum_for_energy(double eps_target, const SpectrumParams& p);

} // namespace kapitsa
