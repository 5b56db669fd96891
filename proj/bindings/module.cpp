#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <vector>

#include "arspec/predictor.hpp"
#include "arspec/process_model.hpp"
#include "arspec/simulation.hpp"
#include "arspec/spectral_analysis.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-order AR/MA approximations of stationary processes: "
              "spectra, TAVC and Monte-Carlo checks";

    py::register_exception<arspec::NonStationaryError>(m, "NonStationaryError");
    py::register_exception<arspec::NotAvailableError>(m, "NotAvailableError");
    py::register_exception<arspec::SingularSystemError>(m, "SingularSystemError");
    py::register_exception<arspec::BreakdownError>(m, "BreakdownError");
    py::register_exception<arspec::NearUnitRootError>(m, "NearUnitRootError");
    py::register_exception<arspec::QuadratureError>(m, "QuadratureError");
    py::register_exception<arspec::ParseError>(m, "ParseError");

    py::class_<arspec::CovarianceSequence>(m, "CovarianceSequence")
        .def(py::init<std::vector<double>>(), py::arg("lags"))
        .def_property_readonly("max_lag", &arspec::CovarianceSequence::max_lag)
        .def("at", &arspec::CovarianceSequence::at, py::arg("k"))
        .def_property_readonly("lags", [](const arspec::CovarianceSequence& self) {
            return std::vector<double>(self.lags().begin(), self.lags().end());
        });

    py::class_<arspec::WoldCoefficients>(m, "WoldCoefficients")
        .def(py::init<std::vector<double>, double>(), py::arg("coeffs"),
             py::arg("innovation_variance") = 1.0)
        .def_property_readonly("innovation_variance", &arspec::WoldCoefficients::innovation_variance)
        .def_property_readonly("max_index", &arspec::WoldCoefficients::max_index)
        .def("at", &arspec::WoldCoefficients::at, py::arg("k"))
        .def("l1_norm", &arspec::WoldCoefficients::l1_norm)
        .def("sum", &arspec::WoldCoefficients::sum)
        .def("truncated", &arspec::WoldCoefficients::truncated, py::arg("order"))
        .def_property_readonly("coeffs", [](const arspec::WoldCoefficients& self) {
            return std::vector<double>(self.coeffs().begin(), self.coeffs().end());
        });

    py::class_<arspec::ARCoefficients>(m, "ARCoefficients")
        .def(py::init<std::vector<double>>(), py::arg("coeffs"))
        .def_property_readonly("max_index", &arspec::ARCoefficients::max_index)
        .def("at", &arspec::ARCoefficients::at, py::arg("k"))
        .def("sum", &arspec::ARCoefficients::sum)
        .def_property_readonly("coeffs", [](const arspec::ARCoefficients& self) {
            return std::vector<double>(self.coeffs().begin(), self.coeffs().end());
        });

    py::enum_<arspec::ProcessKind>(m, "ProcessKind")
        .value("ar", arspec::ProcessKind::ar)
        .value("ma", arspec::ProcessKind::ma)
        .value("arma", arspec::ProcessKind::arma)
        .value("raw_covariance", arspec::ProcessKind::raw_covariance);

    py::class_<arspec::ProcessSpec>(m, "ProcessSpec")
        .def_static("ar", &arspec::ProcessSpec::ar, py::arg("coeffs"),
                    py::arg("innovation_variance") = 1.0)
        .def_static("ma", &arspec::ProcessSpec::ma, py::arg("coeffs"),
                    py::arg("innovation_variance") = 1.0)
        .def_static("arma", &arspec::ProcessSpec::arma, py::arg("ar_coeffs"), py::arg("ma_coeffs"),
                    py::arg("innovation_variance") = 1.0)
        .def_static("raw_covariance", &arspec::ProcessSpec::raw_covariance, py::arg("file"))
        .def_static("white_noise", &arspec::ProcessSpec::white_noise,
                    py::arg("innovation_variance") = 1.0)
        .def_property_readonly("kind", &arspec::ProcessSpec::kind)
        .def_property_readonly("ar_poly", &arspec::ProcessSpec::ar_poly)
        .def_property_readonly("ma_poly", &arspec::ProcessSpec::ma_poly)
        .def_property_readonly("innovation_variance", &arspec::ProcessSpec::innovation_variance);

    m.def("load_process_spec", &arspec::load_process_spec, py::arg("path"));
    m.def("load_covariance_csv", &arspec::load_covariance_csv, py::arg("path"));
    m.def("is_stationary_ar",
          [](const std::vector<double>& coeffs) { return arspec::is_stationary_ar(coeffs); },
          py::arg("coeffs"));
    m.def("covariance_from_wold", &arspec::covariance_from_wold, py::arg("wold"),
          py::arg("max_lag"));
    m.def("wold_to_ar", &arspec::wold_to_ar, py::arg("wold"), py::arg("max_order"));
    m.def("ar_to_wold", &arspec::ar_to_wold, py::arg("coeffs"), py::arg("innovation_variance"),
          py::arg("max_order"));
    m.def("spectral_density", &arspec::spectral_density, py::arg("covariance"), py::arg("lambda_"));
    m.def("covariance_from_spectral", &arspec::covariance_from_spectral, py::arg("density"),
          py::arg("k"), py::arg("grid_size") = 4096);
    m.def("wold_from_spec", &arspec::wold_from_spec, py::arg("spec"), py::arg("max_order"));
    m.def("model_covariance", &arspec::model_covariance, py::arg("spec"), py::arg("max_lag") = -1);

    py::class_<arspec::ARPredictor>(m, "ARPredictor")
        .def_readonly("order", &arspec::ARPredictor::order)
        .def_readonly("coeffs", &arspec::ARPredictor::coeffs)
        .def_readonly("innovation_variance", &arspec::ARPredictor::innovation_variance)
        .def_readonly("reflection", &arspec::ARPredictor::reflection)
        .def("coefficient_sum", &arspec::ARPredictor::coefficient_sum);

    m.def("yule_walker_dense", &arspec::yule_walker_dense, py::arg("covariance"), py::arg("order"));
    m.def("levinson_durbin", &arspec::levinson_durbin, py::arg("covariance"), py::arg("max_order"));
    m.def("baxter_gap", &arspec::baxter_gap, py::arg("fitted"), py::arg("limit"));

    py::class_<arspec::SigmaLimitReport>(m, "SigmaLimitReport")
        .def_readonly("sigma2", &arspec::SigmaLimitReport::sigma2)
        .def_readonly("nonincreasing", &arspec::SigmaLimitReport::nonincreasing)
        .def_readonly("max_increase", &arspec::SigmaLimitReport::max_increase)
        .def_readonly("final_gap", &arspec::SigmaLimitReport::final_gap);

    m.def(
        "sigma_limit_check",
        [](const std::vector<arspec::ARPredictor>& predictors, double sigma_true) {
            return arspec::sigma_limit_check(predictors, sigma_true);
        },
        py::arg("predictors"), py::arg("sigma_true"));

    py::class_<arspec::ConvergenceRow>(m, "ConvergenceRow")
        .def_readonly("p", &arspec::ConvergenceRow::p)
        .def_readonly("sigma2_p", &arspec::ConvergenceRow::sigma2_p)
        .def_readonly("sum_b", &arspec::ConvergenceRow::sum_b)
        .def_readonly("s0_predictor", &arspec::ConvergenceRow::s0_predictor)
        .def_readonly("tavc_ar_model", &arspec::ConvergenceRow::tavc_ar_model)
        .def_readonly("l2_ma", &arspec::ConvergenceRow::l2_ma)
        .def_readonly("l2_ar_predictor", &arspec::ConvergenceRow::l2_ar_predictor)
        .def_readonly("baxter_gap", &arspec::ConvergenceRow::baxter_gap);

    m.def("ma_truncation_spectrum", &arspec::ma_truncation_spectrum, py::arg("wold"),
          py::arg("order"), py::arg("lambda_"));
    m.def("predictor_spectrum", &arspec::predictor_spectrum, py::arg("covariance"),
          py::arg("fitted"), py::arg("lambda_"));
    m.def("predictor_spectrum_covariance_form", &arspec::predictor_spectrum_covariance_form,
          py::arg("covariance"), py::arg("fitted"), py::arg("lambda_"));
    m.def("predictor_spectrum_origin", &arspec::predictor_spectrum_origin, py::arg("covariance"),
          py::arg("fitted"));
    m.def("predictor_covariance", &arspec::predictor_covariance, py::arg("covariance"),
          py::arg("fitted"), py::arg("k"));
    m.def("tavc_true", &arspec::tavc_true, py::arg("covariance"));
    m.def("tavc_ar_model", &arspec::tavc_ar_model, py::arg("fitted"));
    m.def("ar_model_spectrum", &arspec::ar_model_spectrum, py::arg("fitted"), py::arg("lambda_"));
    m.def("l2_distance_parseval", &arspec::l2_distance_parseval, py::arg("lhs"), py::arg("rhs"));
    m.def("l2_distance_quadrature", &arspec::l2_distance_quadrature, py::arg("lhs"), py::arg("rhs"),
          py::arg("grid_size") = 4096);
    m.def("convergence_report", &arspec::convergence_report, py::arg("spec"), py::arg("max_order"));

    m.attr("RNG_ALGORITHM") = std::string(arspec::kRngAlgorithm);
    m.def("derive_seed", &arspec::derive_seed, py::arg("master"), py::arg("index"));

    py::class_<arspec::SamplePath>(m, "SamplePath")
        .def_readonly("values", &arspec::SamplePath::values)
        .def_readonly("seed", &arspec::SamplePath::seed)
        .def_property_readonly("spec", [](const arspec::SamplePath& self) { return self.spec; })
        .def("__len__", &arspec::SamplePath::size)
        .def("mean", &arspec::SamplePath::mean);

    py::enum_<arspec::TavcMethod>(m, "TavcMethod")
        .value("ar_model", arspec::TavcMethod::ar_model)
        .value("batch_means", arspec::TavcMethod::batch_means);

    py::class_<arspec::TavcEstimate>(m, "TavcEstimate")
        .def_readonly("value", &arspec::TavcEstimate::value)
        .def_readonly("method", &arspec::TavcEstimate::method)
        .def_readonly("order_or_batches", &arspec::TavcEstimate::order_or_batches)
        .def_readonly("sample_size", &arspec::TavcEstimate::sample_size);

    py::class_<arspec::CltReport>(m, "CltReport")
        .def_readonly("n", &arspec::CltReport::n)
        .def_readonly("replications", &arspec::CltReport::replications)
        .def_readonly("master_seed", &arspec::CltReport::master_seed)
        .def_readonly("target", &arspec::CltReport::target)
        .def_readonly("empirical_variance", &arspec::CltReport::empirical_variance)
        .def_readonly("variance_ratio", &arspec::CltReport::variance_ratio)
        .def_readonly("kurtosis", &arspec::CltReport::kurtosis)
        .def_readonly("statistics", &arspec::CltReport::statistics);

    m.def("simulate_arma", &arspec::simulate_arma, py::arg("spec"), py::arg("n"), py::arg("seed"));
    m.def("sample_autocovariance", &arspec::sample_autocovariance, py::arg("path"),
          py::arg("max_lag"));
    m.def("fit_ar", &arspec::fit_ar, py::arg("path"), py::arg("order"));
    m.def("tavc_ar_estimate", &arspec::tavc_ar_estimate, py::arg("path"), py::arg("order"));
    m.def("tavc_batch_means", &arspec::tavc_batch_means, py::arg("path"), py::arg("batch_count"));
    m.def("clt_experiment", &arspec::clt_experiment, py::arg("spec"), py::arg("n"),
          py::arg("replications"), py::arg("seed"));

#ifdef ARSPEC_VERSION
    m.attr("__version__") = ARSPEC_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
