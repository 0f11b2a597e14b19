#include "kapitsa/spectrum.hpp"

#include "kapitsa/errors.hpp"

#include <cmath>

namespace kapitsa {

std::string_view to_string(SpectrumMode mode)
{
    switch (mode) {
    case SpectrumMode::bogoliubov: return "bogoliubov";
    case SpectrumMode::phonon: return "phonon";
    case SpectrumMode::free: return "free";
    }
    return "unknown";
}

SpectrumMode parse_spectrum_mode(std::string_view text)
{
    if (text == "bogoliubov") return SpectrumMode::bogoliubov;
    if (text == "phonon") return SpectrumMode::phonon;
    if (text == "free") return SpectrumMode::free;
    throw DomainError("unknown spectrum mode '" + std::string(text) + "'");
}

void SpectrumParams::validate() const
{
    if (!std::isfinite(w0) || w0 < 0.0)
        throw DomainError("w0 must be finite and non-negative");
    if (mode == SpectrumMode::phonon && w0 == 0.0)
        throw DomainError("phonon spectrum needs w0 > 0");
}

namespace {

void check_momentum(double c)
{
    if (!std::isfinite(c) || c < 0.0)
        throw DomainError("momentum C must be finite and non-negative");
}

} // namespace

double energy(double c, const SpectrumParams& p)
{
    check_momentum(c);
    const double w0 = p.effective_w0();
    if (p.mode == SpectrumMode::phonon)
        return w0 * c;
    // C * sqrt(w0^2 + C^2/4) keeps C^4 out of the radicand.
    return c * std::sqrt(w0 * w0 + 0.25 * c * c);
}

double group_velocity(double c, const SpectrumParams& p)
{
    check_momentum(c);
    const double w0 = p.effective_w0();
    if (p.mode == SpectrumMode::phonon)
        return w0;
    if (c == 0.0)
        return w0;
    return (w0 * w0 + 0.5 * c * c) / std::sqrt(w0 * w0 + 0.25 * c * c);
}

double alpha(double c, const SpectrumParams& p)
{
    check_momentum(c);
    if (c == 0.0) {
        if (p.effective_w0() > 0.0)
            throw DomainError("alpha(C) diverges at C = 0 for w0 > 0; use group_velocity");
        return 1.0;
    }
    return group_velocity(c, p) / c;
}

double bose_weight_of_energy(double eps)
{
    if (!(eps > 0.0))
        throw DomainError("Bose weight needs a positive energy");
    const double em = std::exp(-eps);
    const double d = -std::expm1(-eps);
    return em / (d * d);
}

double bose_weight(double c, const SpectrumParams& p)
{
    if (!(c > 0.0) || !std::isfinite(c))
        throw DomainError("Bose weight g(C) needs C > 0");
    return bose_weight_of_energy(energy(c, p));
}

double momentum_for_energy(double eps_target, const SpectrumParams& p)
{
    const double w0 = p.effective_w0();
    if (p.mode == SpectrumMode::phonon)
        return eps_target / w0;
    // C^2 (w0^2 + C^2/4) = E^2  =>  C^2 = 2 (sqrt(w0^4 + E^2) - w0^2)
    const double w2 = w0 * w0;
    const double e2 = eps_target * eps_target;
    const double c2 = 2.0 * e2 / (std::sqrt(w2 * w2 + e2) + w2);
    return std::sqrt(c2);
}

} // namespace kapitsa
