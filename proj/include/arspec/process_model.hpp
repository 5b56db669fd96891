#pragma once

#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "arspec/errors.hpp"

namespace arspec {

/// Finite prefix R_0..R_K of a symmetric covariance sequence. The implied
/// full sequence has R_{-k} = R_k; only k >= 0 is stored. Construction
/// verifies that every leading Toeplitz matrix is positive semidefinite by
/// running a residual-variance sweep (all sigma_p^2 >= -1e-9 * R_0).
class CovarianceSequence {
public:
    explicit CovarianceSequence(std::vector<double> lags);

    [[nodiscard]] int max_lag() const noexcept { return static_cast<int>(lags_.size()) - 1; }
    [[nodiscard]] std::size_t size() const noexcept { return lags_.size(); }

    /// R_|k| for |k| <= max_lag, zero beyond the stored prefix.
    [[nodiscard]] double at(int k) const noexcept;

    /// R_k for 0 <= k <= max_lag; no bounds forgiveness.
    [[nodiscard]] double operator[](std::size_t k) const { return lags_.at(k); }

    [[nodiscard]] std::span<const double> lags() const noexcept { return lags_; }

private:
    std::vector<double> lags_;
};

/// Moving-average weights a_0..a_K of the Wold decomposition together with
/// the innovation variance. a_0 is required to be exactly 1.
class WoldCoefficients {
public:
    explicit WoldCoefficients(std::vector<double> coeffs, double innovation_variance = 1.0);

    [[nodiscard]] int max_index() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }

    /// a_k for k >= 0, zero beyond the stored prefix.
    [[nodiscard]] double at(int k) const noexcept;

    [[nodiscard]] double innovation_variance() const noexcept { return innovation_variance_; }
    [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }

    [[nodiscard]] double l1_norm() const noexcept;
    [[nodiscard]] double sum() const noexcept;

    /// Prefix a_0..a_min(order, K) with the same innovation variance.
    [[nodiscard]] WoldCoefficients truncated(int order) const;

private:
    std::vector<double> coeffs_;
    double innovation_variance_;
};

/// Autoregressive weights b_1..b_P (note the 1-based indexing of the model
/// X_n = sum_k b_k X_{n-k} + nu_n).
class ARCoefficients {
public:
    ARCoefficients() = default;
    explicit ARCoefficients(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

    [[nodiscard]] int max_index() const noexcept { return static_cast<int>(coeffs_.size()); }

    /// b_k for k >= 1, zero beyond the stored prefix.
    [[nodiscard]] double at(int k) const noexcept;

    [[nodiscard]] std::span<const double> coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] double sum() const noexcept;

private:
    std::vector<double> coeffs_;
};

enum class ProcessKind { ar, ma, arma, raw_covariance };

/// User-facing description of a ground-truth process: AR/MA/ARMA polynomials
/// plus innovation variance, or a raw covariance file. AR and ARMA kinds are
/// checked for stationarity (all roots of 1 - sum b_k z^k strictly outside
/// the unit circle) on construction.
class ProcessSpec {
public:
    static ProcessSpec ar(std::vector<double> coeffs, double innovation_variance = 1.0);
    static ProcessSpec ma(std::vector<double> coeffs, double innovation_variance = 1.0);
    static ProcessSpec arma(std::vector<double> ar_coeffs, std::vector<double> ma_coeffs,
                            double innovation_variance = 1.0);
    static ProcessSpec raw_covariance(std::filesystem::path file);
    static ProcessSpec white_noise(double innovation_variance = 1.0);

    [[nodiscard]] ProcessKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::vector<double>& ar_poly() const noexcept { return ar_; }
    [[nodiscard]] const std::vector<double>& ma_poly() const noexcept { return ma_; }
    [[nodiscard]] double innovation_variance() const noexcept { return innovation_variance_; }
    [[nodiscard]] const std::filesystem::path& covariance_file() const noexcept { return covariance_file_; }

private:
    ProcessSpec() = default;

    ProcessKind kind_ = ProcessKind::ar;
    std::vector<double> ar_;
    std::vector<double> ma_;
    double innovation_variance_ = 1.0;
    std::filesystem::path covariance_file_;
};

/// True when the polynomial 1 - sum_k coeffs[k-1] z^k has all roots strictly
/// outside the unit circle (step-down recursion: every reflection coefficient
/// has magnitude < 1).
[[nodiscard]] bool is_stationary_ar(std::span<const double> coeffs) noexcept;

/// Parse a spec JSON file: {"kind": "ar"|"ma"|"arma"|"covariance",
/// "ar": [..], "ma": [..], "innovation_variance": number,
/// "covariance_file": string}. A relative covariance_file resolves against
/// the JSON file's directory.
[[nodiscard]] ProcessSpec load_process_spec(const std::filesystem::path& path);

/// Parse a covariance CSV: one `k,R_k` line per lag, k ascending from 0,
/// no header. Gaps or non-monotone k raise ParseError.
[[nodiscard]] CovarianceSequence load_covariance_csv(const std::filesystem::path& path);

/// R_k = sigma^2 sum_n a_n a_{n-k} for k = 0..max_lag, with a_n = 0 beyond
/// the stored prefix. This is the exact covariance of the truncated MA
/// process, so it is positive semidefinite by construction.
[[nodiscard]] CovarianceSequence covariance_from_wold(const WoldCoefficients& wold, int max_lag);

/// Invert the Wold series: b_k = a_k - sum_{j=1}^{k-1} a_j b_{k-j}, so that
/// (1 - sum b_k z^k)(sum a_k z^k) = 1 up to degree max_order.
[[nodiscard]] ARCoefficients wold_to_ar(const WoldCoefficients& wold, int max_order);

/// Impulse response of the AR filter: a_0 = 1, a_k = sum_{j=1}^{k} b_j a_{k-j}.
/// Composing with wold_to_ar is the identity on the stored prefix.
[[nodiscard]] WoldCoefficients ar_to_wold(const ARCoefficients& coeffs, double innovation_variance,
                                          int max_order);

/// S(lambda) = R_0 + 2 sum_{k=1}^{K} R_k cos(2 pi lambda k),
/// lambda in (-1/2, 1/2].
[[nodiscard]] double spectral_density(const CovarianceSequence& covariance, double lambda);

/// Midpoint-rule quadrature of integral S(lambda) e^{2 pi i lambda k} over
/// (-1/2, 1/2]. The grid is doubled once as a refinement check; a change
/// above 1e-8, or an imaginary part above 1e-9, raises QuadratureError.
[[nodiscard]] double covariance_from_spectral(const std::function<double(double)>& density, int k,
                                              int grid_size = 4096);

/// Wold (impulse-response) expansion of an AR/MA/ARMA spec up to max_order.
/// Raises NotAvailableError for raw-covariance specs.
[[nodiscard]] WoldCoefficients wold_from_spec(const ProcessSpec& spec, int max_order);

/// Exact model covariance of a spec. Pure AR kinds solve the covariance
/// equations directly and extend by recursion; MA kinds use the finite
/// convolution; ARMA kinds expand the Wold series to a tail-certified
/// length first. max_lag < 0 picks a prefix long enough that the certified
/// geometric tail is below 1e-12.
[[nodiscard]] CovarianceSequence model_covariance(const ProcessSpec& spec, int max_lag = -1);

/// Certified bound on sum_{k > K} |v_k| assuming a geometric tail, estimated
/// from the trailing entries. Returns 0 for finitely supported sequences and
/// +infinity when no certificate can be made.
[[nodiscard]] double geometric_tail_bound(std::span<const double> values) noexcept;

}  // namespace arspec
