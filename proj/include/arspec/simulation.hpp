#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "arspec/predictor.hpp"
#include "arspec/process_model.hpp"

namespace arspec {

/// Generator identity recorded in output metadata. Per-replication seeds are
/// split off the master seed with a splitmix64 mix; draws come from a
/// mt19937_64 engine feeding std::normal_distribution, so results are
/// bit-exact within this implementation.
inline constexpr std::string_view kRngAlgorithm = "splitmix64/mt19937_64/normal";

/// Deterministic seed split: the index-th child seed of a master seed.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

struct SamplePath {
    std::vector<double> values;
    ProcessSpec spec;
    std::uint64_t seed = 0;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double mean() const noexcept;
};

enum class TavcMethod { ar_model, batch_means };
[[nodiscard]] std::string_view to_string(TavcMethod method) noexcept;

struct TavcEstimate {
    double value = 0.0;
    TavcMethod method = TavcMethod::ar_model;
    int order_or_batches = 0;
    std::size_t sample_size = 0;
};

struct CltReport {
    std::size_t n = 0;
    int replications = 0;
    std::uint64_t master_seed = 0;
    double target = 0.0;              // Gamma^2 = S(0) of the spec
    double empirical_variance = 0.0;  // Var of sqrt(n) * sample mean
    double variance_ratio = 0.0;
    double kurtosis = 0.0;            // m4 / m2^2 of the statistic
    std::vector<double> statistics;   // sqrt(n) * mean, one per replication
};

/// Gaussian-innovation ARMA sample path of length n. A warm-up of
/// max(1000, 50 * (len(ar) + len(ma))) samples is generated and discarded so
/// the retained path is approximately stationary. Deterministic given
/// (spec, n, seed); raw-covariance specs raise NotAvailableError.
[[nodiscard]] SamplePath simulate_arma(const ProcessSpec& spec, std::size_t n, std::uint64_t seed);

/// Biased autocovariance estimate with divisor n (keeps the estimated
/// Toeplitz matrices positive semidefinite).
[[nodiscard]] CovarianceSequence sample_autocovariance(const SamplePath& path, int max_lag);

/// Levinson fit of order p on the sample autocovariances. Requires
/// p < n / 10 to guard against overfitting the covariance estimate.
[[nodiscard]] ARPredictor fit_ar(const SamplePath& path, int order);

/// AR-model TAVC estimate sigma_p^2 / (1 - sum b_{k,p})^2 from a fitted path.
[[nodiscard]] TavcEstimate tavc_ar_estimate(const SamplePath& path, int order);

/// Batch-means TAVC estimate: batch size m = floor(n / batch_count), trailing
/// remainder dropped, value = m * Var(batch means) with divisor
/// (batch_count - 1).
[[nodiscard]] TavcEstimate tavc_batch_means(const SamplePath& path, int batch_count);

/// Monte-Carlo check of the CLT sqrt(n)(mean - mu) => N(0, Gamma^2):
/// empirical variance of sqrt(n) * mean across replications against the
/// spectral-density target, plus a fourth-moment (kurtosis) check.
/// Requires replications >= 100.
[[nodiscard]] CltReport clt_experiment(const ProcessSpec& spec, std::size_t n, int replications,
                                       std::uint64_t seed);

/// CSV `method,n,order_or_batches,estimate,target,rel_error,seed`, preceded
/// by a `# rng=...` metadata comment.
void write_tavc_csv(std::ostream& out, std::span<const TavcEstimate> estimates, double target,
                    std::uint64_t seed);

/// Same schema, one row per replication: estimate is the squared statistic
/// (a single-replication variance sample), order_or_batches the replication
/// index, seed the derived per-replication seed.
void write_clt_csv(std::ostream& out, const CltReport& report);

}  // namespace arspec
