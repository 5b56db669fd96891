#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arspec/predictor.hpp"
#include "arspec/process_model.hpp"
#include "arspec/simulation.hpp"
#include "arspec/spectral_analysis.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string format_value(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.15g", value);
    return buffer;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw arspec::ParseError("cannot open --out file: " + path);
    return out;
}

struct SweepOptions {
    std::string spec_path;
    int p_max = 0;
    std::string out_path;
};

int run_sweep(const SweepOptions& options) {
    const arspec::ProcessSpec spec = arspec::load_process_spec(options.spec_path);
    const std::vector<arspec::ConvergenceRow> rows =
        arspec::convergence_report(spec, options.p_max);
    std::ofstream out = open_output(options.out_path);
    arspec::write_convergence_csv(out, rows);
    return 0;
}

struct SpectrumOptions {
    std::string spec_path;
    int order = 0;
    int lambda_grid = 256;
    std::string out_path;
};

int run_spectrum(const SpectrumOptions& options) {
    if (options.lambda_grid < 16) throw arspec::ParseError("--lambda-grid must be >= 16");
    const arspec::ProcessSpec spec = arspec::load_process_spec(options.spec_path);
    const bool has_wold = spec.kind() != arspec::ProcessKind::raw_covariance;

    arspec::CovarianceSequence covariance = arspec::model_covariance(spec);
    if (covariance.max_lag() < options.order) {
        if (!has_wold) throw arspec::ParseError("--order exceeds the stored covariance prefix");
        covariance = arspec::model_covariance(spec, options.order);
    }
    std::optional<arspec::WoldCoefficients> wold;
    if (has_wold) wold = arspec::wold_from_spec(spec, std::max(options.order, covariance.max_lag()));
    const arspec::ARPredictor fitted =
        arspec::levinson_durbin(covariance, options.order).back();

    std::ofstream out = open_output(options.out_path);
    out << "lambda,s_true,s_ma_p,s_predictor_p,s_ar_model_p\n";
    const double h = 1.0 / static_cast<double>(options.lambda_grid);
    for (int j = 0; j < options.lambda_grid; ++j) {
        const double lambda = -0.5 + (static_cast<double>(j) + 0.5) * h;
        out << format_value(lambda) << ',' << format_value(arspec::spectral_density(covariance, lambda))
            << ',';
        if (wold)
            out << format_value(arspec::ma_truncation_spectrum(*wold, options.order, lambda));
        out << ',' << format_value(arspec::predictor_spectrum(covariance, fitted, lambda)) << ','
            << format_value(arspec::ar_model_spectrum(fitted, lambda)) << '\n';
    }
    return 0;
}

struct TavcOptions {
    std::string spec_path;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    int order = 0;
    int batches = 0;
    std::string out_path;
};

int run_tavc(const TavcOptions& options) {
    if (options.order <= 0 && options.batches <= 0)
        throw arspec::ParseError("one of --order or --batches is required");
    const arspec::ProcessSpec spec = arspec::load_process_spec(options.spec_path);
    const double target = arspec::tavc_true(arspec::model_covariance(spec));
    const arspec::SamplePath path = arspec::simulate_arma(spec, options.n, options.seed);

    std::vector<arspec::TavcEstimate> estimates;
    if (options.order > 0) estimates.push_back(arspec::tavc_ar_estimate(path, options.order));
    if (options.batches > 0) estimates.push_back(arspec::tavc_batch_means(path, options.batches));

    std::ofstream out = open_output(options.out_path);
    arspec::write_tavc_csv(out, estimates, target, options.seed);

    const arspec::TavcEstimate& lead = estimates.front();
    std::cout << "target=" << format_value(target) << " estimate=" << format_value(lead.value)
              << " rel_error=" << format_value((lead.value - target) / target) << "\n";
    return 0;
}

struct CltOptions {
    std::string spec_path;
    std::uint64_t n = 0;
    int replications = 0;
    std::uint64_t seed = 0;
    std::string out_path;
};

int run_clt(const CltOptions& options) {
    const arspec::ProcessSpec spec = arspec::load_process_spec(options.spec_path);
    const arspec::CltReport report =
        arspec::clt_experiment(spec, options.n, options.replications, options.seed);
    std::ofstream out = open_output(options.out_path);
    arspec::write_clt_csv(out, report);
    std::cout << "target=" << format_value(report.target)
              << " estimate=" << format_value(report.empirical_variance)
              << " rel_error=" << format_value(report.variance_ratio - 1.0) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-order AR/MA approximation of stationary processes"};
    app.require_subcommand(1);

    SweepOptions sweep_options;
    CLI::App* sweep = app.add_subcommand("sweep", "Convergence sweep over predictor orders");
    sweep->add_option("--spec", sweep_options.spec_path, "Process spec JSON")->required();
    sweep->add_option("--p-max", sweep_options.p_max, "Largest predictor order")
        ->required()
        ->check(CLI::PositiveNumber);
    sweep->add_option("--out", sweep_options.out_path, "Output CSV path")->required();

    SpectrumOptions spectrum_options;
    CLI::App* spectrum = app.add_subcommand("spectrum", "Tabulate spectra on a frequency grid");
    spectrum->add_option("--spec", spectrum_options.spec_path, "Process spec JSON")->required();
    spectrum->add_option("--order", spectrum_options.order, "Approximation order")
        ->required()
        ->check(CLI::PositiveNumber);
    spectrum->add_option("--lambda-grid", spectrum_options.lambda_grid,
                         "Number of midpoint frequencies");
    spectrum->add_option("--out", spectrum_options.out_path, "Output CSV path")->required();

    TavcOptions tavc_options;
    CLI::App* tavc = app.add_subcommand("tavc", "Estimate the TAVC from a simulated path");
    tavc->add_option("--spec", tavc_options.spec_path, "Process spec JSON")->required();
    tavc->add_option("--n", tavc_options.n, "Sample size")->required()->check(CLI::PositiveNumber);
    tavc->add_option("--seed", tavc_options.seed, "Master seed")->required();
    tavc->add_option("--order", tavc_options.order, "AR estimator order");
    tavc->add_option("--batches", tavc_options.batches, "Batch-means batch count");
    tavc->add_option("--out", tavc_options.out_path, "Output CSV path")->required();

    CltOptions clt_options;
    CLI::App* clt = app.add_subcommand("clt", "Monte-Carlo check of the mean CLT");
    clt->add_option("--spec", clt_options.spec_path, "Process spec JSON")->required();
    clt->add_option("--n", clt_options.n, "Sample size per replication")
        ->required()
        ->check(CLI::PositiveNumber);
    clt->add_option("--replications", clt_options.replications, "Replication count")
        ->required()
        ->check(CLI::PositiveNumber);
    clt->add_option("--seed", clt_options.seed, "Master seed")->required();
    clt->add_option("--out", clt_options.out_path, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (sweep->parsed()) return run_sweep(sweep_options);
        if (spectrum->parsed()) return run_spectrum(spectrum_options);
        if (tavc->parsed()) return run_tavc(tavc_options);
        if (clt->parsed()) return run_clt(clt_options);
    } catch (const arspec::BreakdownError& e) {
        std::cerr << "numerical failure at order " << e.order() << ": " << e.what() << "\n";
        return kExitNumerical;
    } catch (const arspec::NearUnitRootError& e) {
        std::cerr << "numerical failure at order " << e.order() << ": " << e.what() << "\n";
        return kExitNumerical;
    } catch (const arspec::QuadratureError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
