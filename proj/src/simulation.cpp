#include "arspec/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

#include "arspec/spectral_analysis.hpp"

namespace arspec {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    // splitmix64 finalizer over the master seed advanced by the golden gamma.
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SamplePath::mean() const noexcept {
    if (values.empty()) return 0.0;
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc / static_cast<double>(values.size());
}

std::string_view to_string(TavcMethod method) noexcept {
    switch (method) {
        case TavcMethod::ar_model: return "ar_model";
        case TavcMethod::batch_means: return "batch_means";
    }
    return "unknown";
}

SamplePath simulate_arma(const ProcessSpec& spec, std::size_t n, std::uint64_t seed) {
    if (spec.kind() == ProcessKind::raw_covariance)
        throw NotAvailableError("cannot simulate a covariance-only spec");
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");

    const auto& ar = spec.ar_poly();
    const auto& ma = spec.ma_poly();
    const std::size_t warmup = std::max<std::size_t>(1000, 50 * (ar.size() + ma.size()));

    std::mt19937_64 engine(seed);
    std::normal_distribution<double> innovation(0.0, std::sqrt(spec.innovation_variance()));

    std::vector<double> x_hist(ar.size(), 0.0);   // x_hist[i] = X_{t-1-i}
    std::vector<double> e_hist(ma.size(), 0.0);   // e_hist[i] = eps_{t-1-i}
    std::vector<double> values;
    values.reserve(n);
    const std::size_t total = warmup + n;
    for (std::size_t t = 0; t < total; ++t) {
        const double eps = innovation(engine);
        double x = eps;
        for (std::size_t j = 0; j < ma.size(); ++j) x += ma[j] * e_hist[j];
        for (std::size_t i = 0; i < ar.size(); ++i) x += ar[i] * x_hist[i];
        if (!e_hist.empty()) {
            std::rotate(e_hist.rbegin(), e_hist.rbegin() + 1, e_hist.rend());
            e_hist[0] = eps;
        }
        if (!x_hist.empty()) {
            std::rotate(x_hist.rbegin(), x_hist.rbegin() + 1, x_hist.rend());
            x_hist[0] = x;
        }
        if (t >= warmup) values.push_back(x);
    }
    return SamplePath{std::move(values), spec, seed};
}

CovarianceSequence sample_autocovariance(const SamplePath& path, int max_lag) {
    const std::size_t n = path.size();
    if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= n)
        throw std::invalid_argument("max_lag must satisfy 0 <= max_lag < n");
    const double mean = path.mean();
    std::vector<double> lags(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int k = 0; k <= max_lag; ++k) {
        double acc = 0.0;
        for (std::size_t t = 0; t + static_cast<std::size_t>(k) < n; ++t)
            acc += (path.values[t] - mean) * (path.values[t + static_cast<std::size_t>(k)] - mean);
        lags[static_cast<std::size_t>(k)] = acc / static_cast<double>(n);
    }
    return CovarianceSequence(std::move(lags));
}

ARPredictor fit_ar(const SamplePath& path, int order) {
    if (order < 1) throw std::invalid_argument("order must be >= 1");
    if (static_cast<std::size_t>(order) * 10 >= path.size())
        throw std::invalid_argument("order must be below n/10 to fit from data");
    return levinson_durbin(sample_autocovariance(path, order), order).back();
}

TavcEstimate tavc_ar_estimate(const SamplePath& path, int order) {
    const ARPredictor fitted = fit_ar(path, order);
    return TavcEstimate{tavc_ar_model(fitted), TavcMethod::ar_model, order, path.size()};
}

TavcEstimate tavc_batch_means(const SamplePath& path, int batch_count) {
    if (batch_count < 2) throw std::invalid_argument("batch_count must be >= 2");
    const std::size_t batches = static_cast<std::size_t>(batch_count);
    const std::size_t m = path.size() / batches;
    if (m < 1) throw std::invalid_argument("batch_count exceeds the sample size");

    std::vector<double> means(batches, 0.0);
    for (std::size_t b = 0; b < batches; ++b) {
        double acc = 0.0;
        for (std::size_t t = b * m; t < (b + 1) * m; ++t) acc += path.values[t];
        means[b] = acc / static_cast<double>(m);
    }
    double grand = 0.0;
    for (double value : means) grand += value;
    grand /= static_cast<double>(batches);
    double var = 0.0;
    for (double value : means) var += (value - grand) * (value - grand);
    var /= static_cast<double>(batches - 1);
    return TavcEstimate{static_cast<double>(m) * var, TavcMethod::batch_means, batch_count,
                        path.size()};
}

CltReport clt_experiment(const ProcessSpec& spec, std::size_t n, int replications,
                         std::uint64_t seed) {
    if (replications < 100) throw std::invalid_argument("replications must be >= 100");
    if (n < 1) throw std::invalid_argument("sample size must be >= 1");

    CltReport report;
    report.n = n;
    report.replications = replications;
    report.master_seed = seed;
    report.target = tavc_true(model_covariance(spec));
    report.statistics.reserve(static_cast<std::size_t>(replications));

    const double root_n = std::sqrt(static_cast<double>(n));
    for (int r = 0; r < replications; ++r) {
        const SamplePath path = simulate_arma(spec, n, derive_seed(seed, static_cast<std::uint64_t>(r)));
        report.statistics.push_back(root_n * path.mean());
    }

    double mean = 0.0;
    for (double s : report.statistics) mean += s;
    mean /= static_cast<double>(replications);
    double m2 = 0.0;
    double m4 = 0.0;
    for (double s : report.statistics) {
        const double d = s - mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    report.empirical_variance = m2 / static_cast<double>(replications - 1);
    m2 /= static_cast<double>(replications);
    m4 /= static_cast<double>(replications);
    report.variance_ratio = report.empirical_variance / report.target;
    report.kurtosis = m4 / (m2 * m2);
    return report;
}

namespace {

std::string format_value(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.15g", value);
    return buffer;
}

}  // namespace

void write_tavc_csv(std::ostream& out, std::span<const TavcEstimate> estimates, double target,
                    std::uint64_t seed) {
    out << "# rng=" << kRngAlgorithm << "\n";
    out << "method,n,order_or_batches,estimate,target,rel_error,seed\n";
    for (const TavcEstimate& estimate : estimates) {
        const double rel_error = (estimate.value - target) / target;
        out << to_string(estimate.method) << ',' << estimate.sample_size << ','
            << estimate.order_or_batches << ',' << format_value(estimate.value) << ','
            << format_value(target) << ',' << format_value(rel_error) << ',' << seed << '\n';
    }
}

void write_clt_csv(std::ostream& out, const CltReport& report) {
    out << "# rng=" << kRngAlgorithm << "\n";
    out << "method,n,order_or_batches,estimate,target,rel_error,seed\n";
    for (std::size_t r = 0; r < report.statistics.size(); ++r) {
        const double estimate = report.statistics[r] * report.statistics[r];
        const double rel_error = (estimate - report.target) / report.target;
        out << "clt," << report.n << ',' << (r + 1) << ',' << format_value(estimate) << ','
            << format_value(report.target) << ',' << format_value(rel_error) << ','
            << derive_seed(report.master_seed, r) << '\n';
    }
}

}  // namespace arspec
