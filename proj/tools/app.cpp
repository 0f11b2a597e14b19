#include "app.hpp"

#include "kapitsa/errors.hpp"
#include "kapitsa/parallel.hpp"
#include "kapitsa/reference.hpp"

#include <CLI11.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <random>
#include <sstream>

namespace kapitsa::cli {

QuadratureConfig Settings::quadrature() const
{
    QuadratureConfig cfg;
    cfg.rel_tol = rel_tol;
    return cfg;
}

SpectrumParams Settings::spectrum_params(double w0_value) const
{
    SpectrumParams sp;
    sp.mode = spectrum;
    sp.w0 = w0_value;
    return sp;
}

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_header()
{
    return "gamma,q,w0,spectrum_mode,order,consistency_mode,C_coeff,eps0,eps1,convergence_ratio,quad_err";
}

std::string format_row(const Row& row, const Settings& s)
{
    const JumpResult& r = row.result;
    std::ostringstream os;
    os << format_number(row.gamma) << ',' << format_number(row.q) << ',' << format_number(row.w0) << ','
       << to_string(s.spectrum) << ',' << r.order << ',' << to_string(r.consistency_mode) << ','
       << format_number(r.C_coeff) << ',' << format_number(r.eps0) << ',' << format_number(r.eps1) << ','
       << format_number(r.convergence_ratio) << ',' << format_number(r.quad_err);
    return os.str();
}

namespace {

std::string config_comment(const std::string& command, const Settings& s, const std::string& extra = {})
{
    std::ostringstream os;
    os << "# command=" << command << " gamma=" << format_number(s.gamma) << " q=" << format_number(s.q)
       << " w0=" << format_number(s.w0) << " spectrum=" << to_string(s.spectrum) << " order=" << s.order
       << " consistency=" << to_string(s.consistency) << " rel_tol=" << format_number(s.rel_tol)
       << " jobs=" << s.jobs;
    if (!extra.empty())
        os << ' ' << extra;
    return os.str();
}

void validate_point(double gamma, double q, double w0)
{
    validate_gamma(gamma);
    if (!(q >= 0.0 && q < 1.0))
        throw DomainError("q must lie in [0, 1)");
    if (!(w0 >= 0.0) || !std::isfinite(w0))
        throw DomainError("w0 must be finite and non-negative");
}

bool valid_value(SweptParam p, double v)
{
    switch (p) {
    case SweptParam::gamma:
        return v >= kGammaMin && v <= kGammaMax;
    case SweptParam::q:
        return v >= 0.0 && v < 1.0;
    case SweptParam::w0:
        return v >= 0.0 && std::isfinite(v);
    }
    return false;
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

void write_file(const std::filesystem::path& file, const std::string& text)
{
    if (file.has_parent_path())
        std::filesystem::create_directories(file.parent_path());
    std::ofstream os(file, std::ios::binary);
    if (!os)
        throw DomainError("cannot write " + file.string());
    os << text;
    if (!os)
        throw DomainError("cannot write " + file.string());
}

} // namespace

std::vector<Row> evaluate(const std::vector<std::array<double, 3>>& points, const Settings& s)
{
    for (const auto& p : points)
        validate_point(p[0], p[1], p[2]);
    std::map<std::pair<double, double>, std::shared_ptr<MomentEngine>> engines;
    for (const auto& p : points) {
        auto& slot = engines[{p[0], p[2]}];
        if (!slot)
            slot = std::make_shared<MomentEngine>(p[0], s.spectrum_params(p[2]), s.quadrature());
    }
    std::vector<Row> rows(points.size());
    parallel_for(points.size(), s.jobs, [&](std::size_t i) {
        const auto& p = points[i];
        const MomentEngine& eng = *engines.at({p[0], p[2]});
        rows[i] = {p[0], p[1], p[2], s.phys ? resistance(p[1], eng, *s.phys, s.consistency, s.order)
                                             : jump_result(p[1], eng, s.consistency, s.order)};
    });
    return rows;
}

std::vector<double> sweep_values(SweptParam param, const std::vector<double>& explicit_values,
                                 std::optional<double> from, std::optional<double> to, std::optional<double> step,
                                 std::ostream* note)
{
    std::vector<double> raw = explicit_values;
    if (raw.empty()) {
        if (!from || !to || !step)
            throw DomainError("sweep needs --values or all of --from, --to, --step");
        if (!(*step > 0.0) || !(*to >= *from))
            throw DomainError("sweep range needs step > 0 and to >= from");
        const double span = (*to - *from) / *step;
        if (span > 1e6)
            throw DomainError("sweep range has too many points");
        const int n = static_cast<int>(std::floor(span + 1e-9)) + 1;
        for (int i = 0; i < n; ++i)
            raw.push_back(*from + i * *step);
    }
    std::vector<double> out;
    for (double v : raw) {
        if (valid_value(param, v))
            out.push_back(v);
        else if (note)
            *note << "note: dropping out-of-domain value " << format_number(v) << '\n';
    }
    if (out.empty())
        throw DomainError("no sweep value lies in the valid domain");
    return out;
}

std::vector<FigureCurve> figure_data(int figure, const Settings& s, int points)
{
    std::vector<std::array<double, 3>> grid;
    std::vector<std::string> labels;
    std::vector<double> xs;
    auto add_curves = [&](const std::string& name, const std::vector<double>& curve_values, double lo, double hi,
                          auto&& point) {
        xs = linspace(lo, hi, points);
        for (double c : curve_values) {
            labels.push_back(name + "=" + format_number(c));
            for (double x : xs)
                grid.push_back(point(c, x));
        }
    };
    switch (figure) {
    case 1:
        add_curves("w0", {1.0, 2.0, 3.0}, 1.0, 10.0, [](double w0, double g) { return std::array{g, 0.0, w0}; });
        break;
    case 2:
        add_curves("gamma", {1.0, 3.0, 10.0}, 0.0, 0.95, [](double g, double q) { return std::array{g, q, 10.0}; });
        break;
    case 3:
        add_curves("w0", {5.0, 10.0, 20.0}, 0.0, 0.95, [](double w0, double q) { return std::array{1.0, q, w0}; });
        break;
    case 4:
        add_curves("gamma", {1.0, 5.0, 10.0}, 1.0, 20.0, [](double g, double w0) { return std::array{g, 0.5, w0}; });
        break;
    default:
        throw DomainError("figure id must be 1, 2, 3 or 4");
    }
    const std::vector<Row> rows = evaluate(grid, s);
    std::vector<FigureCurve> curves;
    for (std::size_t c = 0; c < labels.size(); ++c) {
        FigureCurve curve{labels[c], xs, {}};
        for (std::size_t i = 0; i < xs.size(); ++i)
            curve.c.push_back(rows[c * xs.size() + i].result.C_coeff);
        curves.push_back(std::move(curve));
    }
    return curves;
}

void write_figure_csv(int figure, const std::vector<FigureCurve>& curves, const Settings& s,
                      const std::filesystem::path& file)
{
    std::ostringstream os;
    os << config_comment("figures", s, "figure=" + std::to_string(figure)) << '\n';
    os << "curve_label,x,C_coeff\n";
    for (const auto& c : curves)
        for (std::size_t i = 0; i < c.x.size(); ++i)
            os << c.label << ',' << format_number(c.x[i]) << ',' << format_number(c.c[i]) << '\n';
    write_file(file, os.str());
}

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

std::vector<CheckLine> run_checks(bool full, const Settings& s)
{
    std::vector<CheckLine> lines;
    auto add = [&](std::string name, double residual, double tol) {
        lines.push_back({std::move(name), residual, tol, residual <= tol});
    };
    const QuadratureConfig cfg = s.quadrature();
    for (double gamma : {1.0, 3.0, 10.0}) {
        for (double w0 : {1.0, 5.0, 20.0}) {
            const MomentEngine eng(gamma, {SpectrumMode::bogoliubov, w0}, cfg);
            const std::string at = "gamma=" + format_number(gamma) + " w0=" + format_number(w0);
            const auto r0 = identity_residuals(0.0, eng);
            add("identity " + at + " k=0", std::max(r0[0], r0[1]), 0.0);
            for (double k : {0.1, 1.0, 5.0}) {
                const auto r = identity_residuals(k, eng);
                add("identity " + at + " k=" + format_number(k), std::max(r[0], r[1]), 1e-8);
                const KernelBundle b = dispersion_matrix(k, eng);
                add("determinant " + at + " k=" + format_number(k), std::abs(b.det() - k * k * b.omega) /
                                                                        (k * k * b.omega), 1e-9);
            }
            add("eps0_paths " + at, rel(eps0_per_Bplus_t_ratio(eng), eps0_per_Bplus(eng)), 1e-12);
        }
    }

    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> ug(0.5, 10.0), uw(0.5, 20.0), uk(0.05, 5.0);
    for (int trial = 0; trial < (full ? 10 : 3); ++trial) {
        const double gamma = ug(rng);
        const MomentEngine eng(gamma, {SpectrumMode::bogoliubov, uw(rng)}, cfg);
        const double k = uk(rng);
        const auto x = KernelIndices::for_gamma(gamma);
        double worst = 0.0;
        for (const MomentIndex& j : {x.j11, x.j12, x.j21, x.j22}) {
            const MomentIndex t(j.r, j.s, j.m - 2.0 * gamma, j.n);
            const double tv = eng.T(t, k);
            worst = std::max({worst, rel(eng.J(j, k, 0.0), tv), rel(eng.J(j, 0.0, k), tv)});
        }
        add("reduction gamma=" + format_number(gamma) + " w0=" + format_number(eng.spectrum().w0) +
                " k=" + format_number(k),
            worst, 1e-9);
    }

    const SpectrumParams sp1{SpectrumMode::bogoliubov, 1.0};
    for (int i = 1; i <= 9; ++i) {
        const double q = 0.1 * i;
        const double c0 = jump_coefficient(1.0, 0.0, sp1, cfg);
        add("prefactor q=" + format_number(q), rel(jump_coefficient(1.0, q, sp1, cfg) / c0, (1.0 + q) / (1.0 - q)),
            1e-14);
    }
    add("mode_ratio",
        std::abs(jump_coefficient(1.0, 0.3, sp1, cfg, ConsistencyMode::derived_chain) /
                     jump_coefficient(1.0, 0.3, sp1, cfg, ConsistencyMode::paper_eq29) -
                 2.0),
        0.0);

    const MomentEngine eng11(1.0, sp1, cfg);
    const PoleProbe p0 = pole_probe(0, eng11);
    add("pole order=0 gamma=1 w0=1 ratio", p0.ratio, 10.0);
    add("pole order=0 gamma=1 w0=1 perturbed_inverse", 1.0 / p0.ratio_perturbed, 1.0 / 50.0);

    if (full) {
        const PoleProbe p1 = pole_probe(1, eng11);
        add("pole order=1 gamma=1 w0=1 ratio", p1.ratio, 10.0);
        add("pole order=1 gamma=1 w0=1 perturbed_inverse", 1.0 / p1.ratio_perturbed, 1.0 / 50.0);

        for (double gamma : {1.0, 3.0, 10.0}) {
            for (double w0 : {1.0, 5.0, 20.0}) {
                const ScalarMoments m = scalar_moments(gamma, {SpectrumMode::phonon, w0}, cfg);
                // int eps^s alpha^r C^m g = w0^{2r-m-1} Gamma(p+1) zeta(p), p = m - r + s
                auto closed = [&](int r, int s_, double m_) {
                    const double p = m_ - r + s_;
                    return std::pow(w0, 2.0 * r - m_ - 1.0) * boost::math::tgamma(p + 1.0) * boost::math::zeta(p);
                };
                const double worst = std::max({rel(m.g1, closed(1, 0, gamma + 4)), rel(m.g2, closed(0, 2, gamma + 2)),
                                               rel(m.g_eps2, closed(0, 1, gamma + 2)),
                                               rel(m.g_eps3, closed(0, 1, gamma + 3)),
                                               rel(m.g_alpha_eps, closed(2, 1, 4.0))});
                add("phonon_closed_form gamma=" + format_number(gamma) + " w0=" + format_number(w0), worst, 1e-10);
            }
        }

        std::uniform_int_distribution<int> pick(0, 3);
        for (int trial = 0; trial < 5; ++trial) {
            const double gamma = 0.5 + 4.0 * ug(rng) / 10.0;
            const SpectrumParams sp{SpectrumMode::bogoliubov, uw(rng)};
            const auto x = KernelIndices::for_gamma(gamma);
            const MomentIndex t_idx[] = {x.lam11, x.lam12, x.t1a, x.t2b};
            const MomentIndex j_idx[] = {x.j11, x.j12, x.j21, x.j22};
            const double k = uk(rng), k1 = uk(rng);
            const int which = pick(rng);
            const std::string at = "gamma=" + format_number(gamma) + " w0=" + format_number(sp.w0);
            const MomentIndex& t = t_idx[which];
            add("nested_T " + at + " k=" + format_number(k),
                rel(t_moment(t, k, gamma, sp, cfg), reference::t_moment_nested(t, k, gamma, sp, cfg)), 1e-8);
            const MomentIndex& j = j_idx[which];
            add("nested_J " + at + " k=" + format_number(k) + " k1=" + format_number(k1),
                rel(j_moment(j, k, k1, gamma, sp, cfg), reference::j_moment_nested(j, k, k1, gamma, sp, cfg)), 1e-8);
        }
    }
    return lines;
}

namespace {

struct Options {
    Settings s;
    std::string spectrum = "bogoliubov";
    std::string consistency = "derived";
    std::optional<int> jobs;
    std::optional<double> temperature, mass, spin, flux;

    std::string param = "q";
    std::vector<double> values;
    std::optional<double> from, to, step;
    std::string figure = "all";
    std::string level = "quick";
};

void finalize(Options& o)
{
    o.s.spectrum = parse_spectrum_mode(o.spectrum);
    o.s.consistency = parse_consistency_mode(o.consistency);
    o.s.jobs = o.jobs ? *o.jobs : default_jobs();
    if (o.s.jobs < 1)
        throw DomainError("--jobs must be at least 1");
    if (o.s.order != 0 && o.s.order != 1)
        throw DomainError("--order must be 0 or 1");
    if (o.temperature || o.mass || o.spin) {
        PhysicalParams p;
        if (o.temperature)
            p.T_s = *o.temperature;
        if (o.mass)
            p.mass_m = *o.mass;
        if (o.spin)
            p.spin_s = *o.spin;
        p.validate();
        o.s.phys = p;
    }
    o.s.flux = o.flux;
    if (o.flux && !o.s.phys)
        throw DomainError("--flux needs physical parameters (--temperature)");
}

int cmd_compute(const Options& o, std::ostream& out, std::ostream& err)
{
    const Settings& s = o.s;
    const Row row = evaluate({{s.gamma, s.q, s.w0}}, s).front();
    const JumpResult& r = row.result;
    out << "gamma: " << format_number(s.gamma) << '\n'
        << "q: " << format_number(s.q) << '\n'
        << "w0: " << format_number(s.w0) << '\n'
        << "spectrum: " << to_string(s.spectrum) << '\n'
        << "order: " << s.order << '\n'
        << "consistency_mode: " << to_string(r.consistency_mode) << '\n'
        << "C_coeff: " << format_number(r.C_coeff) << '\n';
    if (s.phys) {
        out << "R: " << format_number(r.R) << '\n';
        if (s.flux)
            out << "delta_T: " << format_number(temperature_jump(r, *s.flux)) << '\n';
    }
    out << "eps0: " << format_number(r.eps0) << '\n';
    if (s.order >= 1)
        out << "eps1: " << format_number(r.eps1) << '\n';
    out << "convergence_ratio: " << format_number(r.convergence_ratio) << '\n'
        << "quad_err: " << format_number(r.quad_err) << '\n';
    if (r.convergence_ratio >= 1.0)
        err << "warning: the first-order correction exceeds the zeroth order; the series is not converged here\n";
    if (!s.out.empty())
        write_file(s.out, config_comment("compute", s) + '\n' + csv_header() + '\n' + format_row(row, s) + '\n');
    return ok;
}

SweptParam parse_param(const std::string& name)
{
    if (name == "gamma")
        return SweptParam::gamma;
    if (name == "q")
        return SweptParam::q;
    if (name == "w0")
        return SweptParam::w0;
    throw DomainError("--param must be gamma, q or w0");
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err)
{
    const Settings& s = o.s;
    const SweptParam param = parse_param(o.param);
    const std::vector<double> values = sweep_values(param, o.values, o.from, o.to, o.step, &err);
    std::vector<std::array<double, 3>> points;
    for (double v : values) {
        std::array<double, 3> p{s.gamma, s.q, s.w0};
        p[param == SweptParam::gamma ? 0 : param == SweptParam::q ? 1 : 2] = v;
        points.push_back(p);
    }
    const std::vector<Row> rows = evaluate(points, s);
    std::ostringstream os;
    os << config_comment("sweep", s, "param=" + o.param) << '\n' << csv_header() << '\n';
    for (const Row& r : rows)
        os << format_row(r, s) << '\n';
    if (s.out.empty())
        out << os.str();
    else
        write_file(s.out, os.str());
    return ok;
}

int cmd_figures(const Options& o, std::ostream& out)
{
    std::vector<int> ids;
    if (o.figure == "all") {
        ids = {1, 2, 3, 4};
    } else {
        try {
            ids = {std::stoi(o.figure)};
        } catch (const std::exception&) {
            throw DomainError("figure id must be 1, 2, 3, 4 or all");
        }
    }
    const std::filesystem::path dir = o.s.out.empty() ? std::filesystem::path(".") : std::filesystem::path(o.s.out);
    for (int id : ids) {
        const auto curves = figure_data(id, o.s);
        const auto file = dir / ("fig" + std::to_string(id) + ".csv");
        write_figure_csv(id, curves, o.s, file);
        out << "wrote " << file.string() << '\n';
    }
    return ok;
}

int cmd_check(const Options& o, std::ostream& out)
{
    if (o.level != "quick" && o.level != "full")
        throw DomainError("check level must be quick or full");
    const auto lines = run_checks(o.level == "full", o.s);
    int failed = 0;
    for (const auto& l : lines) {
        out << (l.pass ? "PASS " : "FAIL ") << l.name << " residual=" << format_number(l.residual)
            << " tol=" << format_number(l.tolerance) << '\n';
        failed += l.pass ? 0 : 1;
    }
    out << (failed ? "FAILED " : "OK ") << lines.size() - failed << '/' << lines.size() << '\n';
    return failed ? check_failed : ok;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Temperature jump and Kapitsa resistance in a degenerate Bose gas", "kapitsa"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value file read before the command-line flags");
    app.add_option("--gamma", o.s.gamma, "collision-frequency exponent")->capture_default_str();
    app.add_option("--q", o.s.q, "specular reflection coefficient")->capture_default_str();
    app.add_option("--w0", o.s.w0, "dimensionless sound velocity")->capture_default_str();
    app.add_option("--spectrum", o.spectrum, "bogoliubov, phonon or free")->capture_default_str();
    app.add_option("--order", o.s.order, "series order, 0 or 1")->capture_default_str();
    app.add_option("--consistency", o.consistency, "derived or paper")->capture_default_str();
    app.add_option("--rel-tol", o.s.rel_tol, "quadrature relative tolerance")->capture_default_str();
    app.add_option("--out", o.s.out, "output file (compute, sweep) or directory (figures)");
    app.add_option("--jobs", o.jobs, "worker threads (default KAPITSA_JOBS or hardware)");
    app.add_option("--temperature", o.temperature, "surface temperature T_s in K");
    app.add_option("--mass", o.mass, "particle mass in kg");
    app.add_option("--spin", o.spin, "particle spin");
    app.add_option("--flux", o.flux, "heat flux Q_x in W/m^2 for the jump Delta T");
    app.fallthrough();

    auto* compute = app.add_subcommand("compute", "single point");
    auto* sweep = app.add_subcommand("sweep", "one-parameter sweep to CSV");
    sweep->add_option("--param", o.param, "gamma, q or w0")->capture_default_str();
    sweep->add_option("--values", o.values, "explicit values")->delimiter(',');
    sweep->add_option("--from", o.from);
    sweep->add_option("--to", o.to);
    sweep->add_option("--step", o.step);
    auto* figures = app.add_subcommand("figures", "data behind figures 1-4");
    figures->add_option("figure", o.figure, "1, 2, 3, 4 or all")->capture_default_str();
    auto* check = app.add_subcommand("check", "self-check suite");
    check->add_option("level", o.level, "quick or full")->capture_default_str();
    for (auto* sub : {compute, sweep, figures, check})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : invalid_input;
    }

    try {
        finalize(o);
        if (*compute)
            return cmd_compute(o, out, err);
        if (*sweep)
            return cmd_sweep(o, out, err);
        if (*figures)
            return cmd_figures(o, out);
        return cmd_check(o, out);
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
    } catch (const QuadratureError& e) {
        err << "quadrature failure: " << e.what() << '\n';
        return quadrature_failure;
    } catch (const DispersionError& e) {
        err << "quadrature failure: " << e.what() << '\n';
        return quadrature_failure;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
    }
}

} // namespace kapitsa::cli
