#include "kapitsa/errors.hpp"
#include "kapitsa/kernel.hpp"
#include "kapitsa/resistance.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

namespace py = pybind11;
using namespace kapitsa;

namespace {

std::shared_ptr<MomentEngine> make_engine(double gamma, double w0, const std::string& spectrum, double rel_tol)
{
    QuadratureConfig cfg;
    cfg.rel_tol = rel_tol;
    return std::make_shared<MomentEngine>(gamma, SpectrumParams{parse_spectrum_mode(spectrum), w0}, cfg);
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Temperature jump and Kapitsa resistance in a Bose gas";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);
    py::register_exception<DispersionError>(m, "DispersionError", PyExc_RuntimeError);

    py::class_<ScalarMoments>(m, "ScalarMoments")
        .def_readonly("g1", &ScalarMoments::g1)
        .def_readonly("g2", &ScalarMoments::g2)
        .def_readonly("g_eps2", &ScalarMoments::g_eps2)
        .def_readonly("g_eps3", &ScalarMoments::g_eps3)
        .def_readonly("g_alpha_eps", &ScalarMoments::g_alpha_eps);

    py::class_<MomentEngine, std::shared_ptr<MomentEngine>>(m, "Engine")
        .def(py::init(&make_engine), py::arg("gamma"), py::arg("w0") = 1.0, py::arg("spectrum") = "bogoliubov",
             py::arg("rel_tol") = 1e-10)
        .def_property_readonly("gamma", &MomentEngine::gamma)
        .def_property_readonly("w0", [](const MomentEngine& e) { return e.spectrum().w0; })
        .def_property_readonly("scalars", &MomentEngine::scalars)
        .def_property_readonly("max_rel_error", &MomentEngine::max_rel_error)
        .def("T", [](const MomentEngine& e, int r, int s, double mm, int n, double k) { return e.T({r, s, mm, n}, k); },
             py::arg("r"), py::arg("s"), py::arg("m"), py::arg("n"), py::arg("k"))
        .def("J",
             [](const MomentEngine& e, int r, int s, double mm, int n, double k, double k1) {
                 return e.J({r, s, mm, n}, k, k1);
             },
             py::arg("r"), py::arg("s"), py::arg("m"), py::arg("n"), py::arg("k"), py::arg("k1"));

    m.def("identity_residuals", py::overload_cast<double, const MomentEngine&>(&identity_residuals), py::arg("k"),
          py::arg("engine"));
    m.def("omega", &omega, py::arg("k"), py::arg("engine"));
    m.def("determinant",
          [](double k, const MomentEngine& e) { return dispersion_matrix(k, e).det(); }, py::arg("k"),
          py::arg("engine"));

    m.def("eps0", &eps0_per_Bplus, py::arg("engine"), "eps0 per unit B+");
    m.def("eps0_t_ratio", &eps0_per_Bplus_t_ratio, py::arg("engine"));
    m.def("eps1", [](const MomentEngine& e) { return eps1_per_Bplus(e).eps1; }, py::arg("engine"),
          "eps1 per unit B+");
    m.def("zeroth_density", py::overload_cast<double, const MomentEngine&>(&zeroth_density), py::arg("k"),
          py::arg("engine"));

    py::class_<PoleProbe>(m, "PoleProbe")
        .def_readonly("ratio", &PoleProbe::ratio)
        .def_readonly("ratio_perturbed", &PoleProbe::ratio_perturbed);
    m.def("pole_probe", [](int order, const MomentEngine& e, double p) { return pole_probe(order, e, p); },
          py::arg("order"), py::arg("engine"), py::arg("perturbation") = 0.01);

    py::class_<Profiles>(m, "Profiles")
        .def_readonly("x", &Profiles::x)
        .def_readonly("w1", &Profiles::w1)
        .def_readonly("w2", &Profiles::w2)
        .def_readonly("temperature", &Profiles::temperature);
    m.def("profiles",
          [](const std::vector<double>& x, const MomentEngine& e, int nodes) {
              return profiles(x, e, zeroth_densities_on_rule(nodes, e));
          },
          py::arg("x"), py::arg("engine"), py::arg("nodes") = 256);

    py::class_<JumpResult>(m, "JumpResult")
        .def_readonly("C_coeff", &JumpResult::C_coeff)
        .def_readonly("R", &JumpResult::R)
        .def_readonly("eps_T_per_flux", &JumpResult::eps_T_per_flux)
        .def_readonly("order", &JumpResult::order)
        .def_readonly("eps0", &JumpResult::eps0)
        .def_readonly("eps1", &JumpResult::eps1)
        .def_readonly("convergence_ratio", &JumpResult::convergence_ratio)
        .def_readonly("quad_err", &JumpResult::quad_err)
        .def_property_readonly("consistency_mode", [](const JumpResult& r) { return to_string(r.consistency_mode); });

    m.def("jump_coefficient",
          [](double gamma, double q, double w0, const std::string& spectrum, const std::string& mode) {
              return jump_coefficient(gamma, q, {parse_spectrum_mode(spectrum), w0}, {},
                                      parse_consistency_mode(mode));
          },
          py::arg("gamma"), py::arg("q"), py::arg("w0") = 1.0, py::arg("spectrum") = "bogoliubov",
          py::arg("consistency") = "derived");
    m.def("jump_result",
          [](double q, const MomentEngine& e, const std::string& mode, int order) {
              return jump_result(q, e, parse_consistency_mode(mode), order);
          },
          py::arg("q"), py::arg("engine"), py::arg("consistency") = "derived", py::arg("order") = 0);
    m.def("resistance",
          [](double q, const MomentEngine& e, double temperature, double mass, double spin, const std::string& mode,
             int order) {
              PhysicalParams p;
              p.T_s = temperature;
              p.mass_m = mass;
              p.spin_s = spin;
              return resistance(q, e, p, parse_consistency_mode(mode), order);
          },
          py::arg("q"), py::arg("engine"), py::arg("temperature"), py::arg("mass") = PhysicalParams{}.mass_m,
          py::arg("spin") = 0.0, py::arg("consistency") = "derived", py::arg("order") = 0);
}
