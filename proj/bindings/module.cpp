#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uavho/estimation.hpp"
#include "uavho/fitting.hpp"
#include "uavho/handover.hpp"
#include "uavho/montecarlo.hpp"
#include "uavho/msd.hpp"
#include "uavho/version.hpp"

namespace py = pybind11;
using namespace uavho;

namespace {

EstimatorConfig make_estimator(double a1, double b1, double c1, double a2, double b2, double c2,
                               double lambda_gbs, double t_window_s) {
    EstimatorConfig cfg;
    cfg.mean_coeffs = {a1, b1, c1};
    cfg.var_coeffs = {a2, b2, c2};
    cfg.lambda_gbs = lambda_gbs;
    cfg.t_window_s = t_window_s;
    cfg.validate();
    return cfg;
}

EstimatorConfig default_estimator(double lambda_gbs, double t_window_s) {
    const auto& row = lookup_coeffs(bundled_coeff_table(), 40.0, 0.0, 100.0, 8);
    EstimatorConfig cfg;
    cfg.mean_coeffs = row.mean_coeffs;
    cfg.var_coeffs = row.var_coeffs;
    cfg.lambda_gbs = lambda_gbs;
    cfg.t_window_s = t_window_s;
    cfg.validate();
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_uavho, m) {
    m.doc() = "UAV handover-count simulation and speed estimation";
    m.attr("__version__") = kVersion;

    py::class_<PowerLawCoeffs>(m, "PowerLawCoeffs")
        .def(py::init<>())
        .def(py::init([](double a, double b, double c) { return PowerLawCoeffs{a, b, c}; }),
             py::arg("a"), py::arg("b"), py::arg("c"))
        .def_readwrite("a", &PowerLawCoeffs::a)
        .def_readwrite("b", &PowerLawCoeffs::b)
        .def_readwrite("c", &PowerLawCoeffs::c)
        .def("eval", &PowerLawCoeffs::eval, py::arg("lambda_gbs"), py::arg("d_km"));

    py::class_<EstimatorConfig>(m, "EstimatorConfig")
        .def(py::init(&make_estimator), py::arg("a1"), py::arg("b1"), py::arg("c1"),
             py::arg("a2"), py::arg("b2"), py::arg("c2"), py::arg("lambda_gbs") = 1.0,
             py::arg("t_window_s") = 12.0)
        .def_readwrite("lambda_gbs", &EstimatorConfig::lambda_gbs)
        .def_readwrite("t_window_s", &EstimatorConfig::t_window_s)
        .def("k1", &EstimatorConfig::k1);

    m.def("default_estimator", &default_estimator, py::arg("lambda_gbs") = 1.0,
          py::arg("t_window_s") = 12.0,
          "Estimator preset: 40 ms gap, no TTT, 100 m flight height, 8 elements");

    m.def("model_mu", &model_mu, py::arg("v_kmh"), py::arg("cfg"));
    m.def("model_sigma2", &model_sigma2, py::arg("v_kmh"), py::arg("cfg"));
    m.def("fisher_information", &fisher_information, py::arg("v_kmh"), py::arg("cfg"));
    m.def("crlb_speed_variance", &crlb_speed_variance, py::arg("v_kmh"), py::arg("cfg"));
    m.def("crlb_speed_rmse", &crlb_speed_rmse, py::arg("v_kmh"), py::arg("cfg"));
    m.def("estimate_speed", &estimate_speed, py::arg("h"), py::arg("cfg"));
    m.def("estimator_mean", &estimator_mean, py::arg("v_kmh"), py::arg("cfg"));
    m.def("estimator_variance", &estimator_variance, py::arg("v_kmh"), py::arg("cfg"));

    py::class_<MobilityConfig>(m, "MobilityConfig")
        .def(py::init([](double v_l, double v_u) {
                 MobilityConfig mob{v_l, v_u};
                 mob.validate();
                 return mob;
             }),
             py::arg("v_l_kmh") = 40.0, py::arg("v_u_kmh") = 80.0)
        .def_readwrite("v_l_kmh", &MobilityConfig::v_l_kmh)
        .def_readwrite("v_u_kmh", &MobilityConfig::v_u_kmh);

    m.def(
        "hoc_thresholds",
        [](const MobilityConfig& mob, const EstimatorConfig& est) {
            const auto t = hoc_thresholds(mob, est);
            return py::make_tuple(t.h_l, t.h_u);
        },
        py::arg("mob"), py::arg("cfg"));
    m.def(
        "detect_state",
        [](double v_hat, const MobilityConfig& mob) {
            return state_name(detect_state(v_hat, mob));
        },
        py::arg("v_hat_kmh"), py::arg("mob"));
    m.def("detection_probability", &detection_probability, py::arg("v_kmh"), py::arg("cfg"),
          py::arg("mob"));

    m.def("gaussian_pmf_eval",
          [](int h, double mu, double sigma2) {
              return gaussian_pmf_eval(h, GaussianPmfParams{mu, sigma2});
          },
          py::arg("h"), py::arg("mu"), py::arg("sigma2"));

    m.def(
        "run_hoc_samples",
        [](double density, double v_kmh, double t_window_s, double h_uav, double t_ttt_ms,
           std::size_t runs, std::uint64_t seed, unsigned threads) {
            CampaignConfig cfg;
            cfg.density = density;
            cfg.v_kmh = v_kmh;
            cfg.t_window_s = t_window_s;
            cfg.h_uav = h_uav;
            cfg.handover.t_ttt_ms = t_ttt_ms;
            auto out = run_hoc_campaign({cfg}, runs, seed, threads);
            return out.front().samples;
        },
        py::arg("density") = 1.0, py::arg("v_kmh") = 60.0, py::arg("t_window_s") = 12.0,
        py::arg("h_uav") = 100.0, py::arg("t_ttt_ms") = 0.0, py::arg("runs") = 100,
        py::arg("seed") = 1, py::arg("threads") = 0,
        "Monte Carlo handover counts for one configuration");

    m.def(
        "fit_power_surface",
        [](const std::vector<std::tuple<double, double, double>>& pts, bool refine) {
            std::vector<SurfacePoint> sp;
            sp.reserve(pts.size());
            for (const auto& [lam, d, y] : pts) sp.push_back({lam, d, y});
            const auto c = fit_power_surface(sp, refine);
            return py::make_tuple(c.a, c.b, c.c);
        },
        py::arg("points"), py::arg("refine_linear") = false,
        "Least-squares fit of y = a lambda^b d^c; points are (lambda, d_km, y)");
}
