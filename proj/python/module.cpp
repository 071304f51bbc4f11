// Python bindings for the fibre-memory channel library.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dimfibre/capacities.hpp"
#include "dimfibre/errors.hpp"
#include "dimfibre/netsim.hpp"
#include "dimfibre/specialfn.hpp"
#include "dimfibre/spectral.hpp"
#include "dimfibre/toeplitz.hpp"

namespace py = pybind11;
using namespace dimfibre;

namespace {

ChannelParams make_params(double lambda, double mu, double nu, double gamma) {
    ChannelParams p{lambda, mu, nu, gamma};
    p.validate();
    return p;
}

}  // namespace

PYBIND11_MODULE(_dimfibre, m) {
    m.doc() = "Optical-fibre memory channel: spectra, decompositions and capacities";

    py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);

    py::enum_<SymbolModel>(m, "SymbolModel")
        .value("DIM", SymbolModel::Dim)
        .value("LIM", SymbolModel::Lim);

    py::enum_<CapacityKind>(m, "CapacityKind")
        .value("Q", CapacityKind::Q)
        .value("Q2", CapacityKind::Q2)
        .value("K", CapacityKind::K);

    py::enum_<CapacityStatus>(m, "CapacityStatus")
        .value("ZERO", CapacityStatus::Zero)
        .value("POSITIVE", CapacityStatus::Positive)
        .value("UNKNOWN", CapacityStatus::Unknown);

    py::class_<ChannelParams>(m, "ChannelParams")
        .def(py::init(&make_params), py::arg("lambda_") = 0.5, py::arg("mu") = 0.0,
             py::arg("nu") = 0.0, py::arg("gamma") = 1.0)
        .def_readonly("lambda_", &ChannelParams::lambda)
        .def_readonly("mu", &ChannelParams::mu)
        .def_readonly("nu", &ChannelParams::nu)
        .def_readonly("gamma", &ChannelParams::gamma);

    // special functions
    m.def("laguerre_gen_m1", &laguerre_gen_m1, py::arg("m"), py::arg("x"));
    m.def(
        "laguerre_row",
        [](int order_max, double x) { return laguerre_row(order_max, x).values; },
        py::arg("order_max"), py::arg("x"));
    m.def("entropy_g", &entropy_g, py::arg("nu"));
    m.def("memory_from_delay", &memory_from_delay, py::arg("delta_t"), py::arg("t_e"));

    // transfer matrix and its decomposition
    m.def(
        "build_dim_matrix",
        [](int n, const ChannelParams& p) { return build_dim_matrix(n, p).entries; },
        py::arg("n"), py::arg("params"));
    m.def(
        "transmissivity_spectrum",
        [](int n, const ChannelParams& p) { return transmissivity_spectrum(n, p).values; },
        py::arg("n"), py::arg("params"));
    m.def(
        "decompose",
        [](int n, const ChannelParams& p) {
            const ChannelDecomposition d = decompose(n, p);
            return py::make_tuple(d.o1, d.o2, d.spectrum.values);
        },
        py::arg("n"), py::arg("params"),
        "Returns (o1, o2, spectrum) with o2.T @ diag(sqrt(spectrum)) @ o1 the transfer matrix");
    m.def("semigroup_residual", &semigroup_residual, py::arg("n"), py::arg("lambda1"),
          py::arg("lambda2"), py::arg("mu"));
    m.def(
        "dump_matrix", [](const Eigen::MatrixXd& mdat) { return dump_matrix(mdat); },
        py::arg("matrix"));

    // finite-M interferometer
    py::class_<FiniteMCoefficients>(m, "FiniteMCoefficients")
        .def_readonly("m_steps", &FiniteMCoefficients::m_steps)
        .def_readonly("n", &FiniteMCoefficients::n)
        .def_readonly("a_matrix", &FiniteMCoefficients::a_matrix)
        .def_readonly("gram_residual", &FiniteMCoefficients::gram_residual);
    m.def("finite_m_coefficients", &finite_m_coefficients, py::arg("m_steps"), py::arg("n"),
          py::arg("lambda_"), py::arg("mu"), py::arg("track_environment") = false);
    m.def("full_interferometer", &full_interferometer, py::arg("m_steps"), py::arg("n"),
          py::arg("lambda_"), py::arg("mu"));
    m.def(
        "convergence_study",
        [](int n, double lambda, double mu, const std::vector<int>& m_list) {
            std::vector<std::pair<int, double>> out;
            for (const auto& p : convergence_study(n, lambda, mu, m_list)) {
                out.emplace_back(p.m_steps, p.max_abs_error);
            }
            return out;
        },
        py::arg("n"), py::arg("lambda_"), py::arg("mu"), py::arg("m_list"));

    // Gaussian states
    py::class_<GaussianState>(m, "GaussianState")
        .def(py::init([](int n, const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov) {
                 GaussianState s{n, mean, cov};
                 s.validate();
                 return s;
             }),
             py::arg("n"), py::arg("mean"), py::arg("covariance"))
        .def_readonly("n", &GaussianState::n)
        .def_readonly("mean", &GaussianState::mean)
        .def_readonly("covariance", &GaussianState::covariance)
        .def("to_json", [](const GaussianState& s) { return to_json(s); });
    m.def("vacuum_state", &vacuum_state, py::arg("n"));
    m.def("thermal_state", &thermal_state, py::arg("n"), py::arg("nu"));
    m.def("gaussian_state_from_json", &gaussian_state_from_json, py::arg("text"));
    m.def("propagate_gaussian", &propagate_gaussian, py::arg("state"), py::arg("n"),
          py::arg("params"));
    m.def("apply_attenuator", &apply_attenuator, py::arg("state"), py::arg("lambda_"),
          py::arg("nu"));
    m.def("apply_passive", &apply_passive, py::arg("state"), py::arg("o"));

    // symbols and tail diagnostics
    m.def("eta_dim", &eta_dim, py::arg("x"), py::arg("lambda_"), py::arg("mu"));
    m.def("eta_lim", &eta_lim, py::arg("x"), py::arg("lambda_"), py::arg("mu"));
    m.def("eta_sup", &eta_sup, py::arg("lambda_"), py::arg("mu"), py::arg("model"));
    m.def("model_spectrum", &model_spectrum, py::arg("n"), py::arg("lambda_"), py::arg("mu"),
          py::arg("gamma"), py::arg("model"));
    m.def(
        "q_positive_crossing",
        [](double lambda, double mu, SymbolModel model) {
            const QCrossing c = q_positive_crossing(lambda, mu, model);
            const char* kind = c.kind == QCrossing::AllAbove    ? "all_above"
                               : c.kind == QCrossing::NoneAbove ? "none_above"
                                                                : "cross_at";
            return py::make_tuple(kind, c.kind == QCrossing::CrossAt
                                            ? py::object(py::float_(c.x_star))
                                            : py::object(py::none()));
        },
        py::arg("lambda_"), py::arg("mu"), py::arg("model"));
    py::class_<TailReport>(m, "TailReport")
        .def_readonly("n", &TailReport::n)
        .def_readonly("j_start", &TailReport::j_start)
        .def_readonly("max_deviation", &TailReport::max_deviation)
        .def_readonly("outside_fraction", &TailReport::outside_fraction)
        .def("to_json", [](const TailReport& r) { return to_json(r); });
    m.def("tail_convergence_report", &tail_convergence_report, py::arg("n"), py::arg("lambda_"),
          py::arg("mu"), py::arg("model"));

    // capacities
    py::class_<PositivityThreshold>(m, "PositivityThreshold")
        .def_readonly("exact", &PositivityThreshold::exact)
        .def_readonly("sqrt_mu", &PositivityThreshold::sqrt_mu)
        .def_readonly("sqrt_mu_necessary", &PositivityThreshold::sqrt_mu_necessary)
        .def_readonly("sqrt_mu_sufficient", &PositivityThreshold::sqrt_mu_sufficient);
    py::class_<CapacityResult>(m, "CapacityResult")
        .def_readonly("value", &CapacityResult::value)
        .def_readonly("lower", &CapacityResult::lower)
        .def_readonly("upper", &CapacityResult::upper)
        .def_readonly("kind", &CapacityResult::kind)
        .def_readonly("model", &CapacityResult::model)
        .def_readonly("is_exact", &CapacityResult::is_exact)
        .def_readonly("quadrature_points", &CapacityResult::quadrature_points)
        .def("to_json", [](const CapacityResult& r) { return to_json(r); });
    m.def("pure_loss_capacity", &pure_loss_capacity, py::arg("lambda_"), py::arg("kind"));
    m.def("attenuator_capacity_status", &attenuator_capacity_status, py::arg("lambda_"),
          py::arg("nu"), py::arg("kind"));
    m.def("dim_positivity_threshold", &dim_positivity_threshold, py::arg("lambda_"),
          py::arg("nu"), py::arg("kind"));
    m.def("channel_capacity", &channel_capacity, py::arg("params"), py::arg("model"),
          py::arg("kind"), py::arg("tolerance") = 1e-9);
    m.def("capacity_brackets", &capacity_brackets, py::arg("params"), py::arg("model"),
          py::arg("kind"), py::arg("p_blocks"));
    m.def("finite_n_capacity_density", &finite_n_capacity_density, py::arg("n"),
          py::arg("params"), py::arg("kind"));

#ifdef DIMFIBRE_VERSION
    m.attr("__version__") = DIMFIBRE_VERSION;
#endif
}
