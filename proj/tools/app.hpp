#pragma once

#include "kapitsa/resistance.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace kapitsa::cli {

enum ExitCode : int { ok = 0, check_failed = 1, invalid_input = 2, quadrature_failure = 3 };

struct Settings {
    double gamma = 1.0;
    double q = 0.0;
    double w0 = 1.0;
    SpectrumMode spectrum = SpectrumMode::bogoliubov;
    int order = 0;
    ConsistencyMode consistency = ConsistencyMode::derived_chain;
    double rel_tol = 1e-10;
    int jobs = 1;
    std::string out;

    std::optional<PhysicalParams> phys;
    std::optional<double> flux;

    QuadratureConfig quadrature() const;
    SpectrumParams spectrum_params(double w0_value) const;
};

enum class SweptParam { gamma, q, w0 };

struct Row {
    double gamma = 0.0;
    double q = 0.0;
    double w0 = 0.0;
    JumpResult result;
};

std::string csv_header();
std::string format_row(const Row& row, const Settings& s);
std::string format_number(double v);

/// One row per (gamma, q, w0) point, in input order; points sharing (gamma, w0)
/// share one moment engine, so q sweeps reuse every moment.
std::vector<Row> evaluate(const std::vector<std::array<double, 3>>& points, const Settings& s);

/// Values outside the domain of `param` are dropped and listed on `note` when given.
std::vector<double> sweep_values(SweptParam param, const std::vector<double>& explicit_values,
                                 std::optional<double> from, std::optional<double> to, std::optional<double> step,
                                 std::ostream* note = nullptr);

struct FigureCurve {
    std::string label;
    std::vector<double> x;
    std::vector<double> c;
};

/// Curves of figure 1..4 on `points` x values each.
std::vector<FigureCurve> figure_data(int figure, const Settings& s, int points = 100);
void write_figure_csv(int figure, const std::vector<FigureCurve>& curves, const Settings& s,
                      const std::filesystem::path& file);

struct CheckLine {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

std::vector<CheckLine> run_checks(bool full, const Settings& s);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace kapitsa::cli
