#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "arspec/predictor.hpp"
#include "arspec/process_model.hpp"

namespace arspec {

/// One order of a convergence sweep. Fields that need the Wold expansion
/// stay empty for covariance-only specs; the AR-limit fields additionally
/// need an invertible (minimum-phase) MA polynomial. Absent fields
/// serialize as empty cells.
struct ConvergenceRow {
    int p = 0;
    double sigma2_p = 0.0;
    double sum_b = 0.0;
    double s0_predictor = 0.0;
    double tavc_ar_model = 0.0;
    std::optional<double> l2_ma;
    std::optional<double> l2_ar_predictor;
    std::optional<double> baxter_gap;
};

/// Spectral density of the order-p MA truncation:
/// sigma^2 |sum_{l=0}^{p} a_l e^{-2 pi i l lambda}|^2.
[[nodiscard]] double ma_truncation_spectrum(const WoldCoefficients& wold, int order, double lambda);

/// Spectral density of the order-p predictor output, transfer-function form:
/// |sum_k b_{k,p} e^{-2 pi i k lambda}|^2 S_X(lambda).
[[nodiscard]] double predictor_spectrum(const CovarianceSequence& covariance,
                                        const ARPredictor& fitted, double lambda);

/// Same spectrum computed entirely in the covariance domain (predictor
/// covariances Fourier-summed); agrees with predictor_spectrum to roundoff.
[[nodiscard]] double predictor_spectrum_covariance_form(const CovarianceSequence& covariance,
                                                        const ARPredictor& fitted, double lambda);

/// Predictor spectrum at the origin without quadrature:
/// (sum_j b_{j,p})^2 sum_{k in Z} R_k.
[[nodiscard]] double predictor_spectrum_origin(const CovarianceSequence& covariance,
                                               const ARPredictor& fitted);

/// Covariance of the predictor output at lag k:
/// sum_j b_{j,p}^2 R_k + sum_t sum_j b_{j,p} b_{j+t,p} (R_{k-t} + R_{k+t}).
/// Requires |k| + order <= max_lag so every term is a stored lag.
[[nodiscard]] double predictor_covariance(const CovarianceSequence& covariance,
                                          const ARPredictor& fitted, int k);

/// Covariances R_Y(0..max_lag) of Y_n = sum_{j=1}^{P} filter[j-1] X_{n-j},
/// treating R beyond the stored prefix as zero.
[[nodiscard]] std::vector<double> filtered_covariance(const CovarianceSequence& covariance,
                                                      std::span<const double> filter, int max_lag);

/// Time-average variance constant of the process: S(0) = sum_{k in Z} R_k
/// over the stored prefix.
[[nodiscard]] double tavc_true(const CovarianceSequence& covariance);

/// AR(p) model spectrum at the origin: sigma_p^2 / (1 - sum_k b_{k,p})^2.
/// Raises NearUnitRootError when |1 - sum b| <= 1e-10.
[[nodiscard]] double tavc_ar_model(const ARPredictor& fitted);

/// AR(p) model spectrum sigma_p^2 / |1 - sum_k b_{k,p} e^{-2 pi i k lambda}|^2.
[[nodiscard]] double ar_model_spectrum(const ARPredictor& fitted, double lambda);

/// L2(-1/2, 1/2] distance between the spectra of two covariance sequences,
/// via Parseval: sqrt(sum_{k in Z} (R1_k - R2_k)^2).
[[nodiscard]] double l2_distance_parseval(const CovarianceSequence& lhs,
                                          const CovarianceSequence& rhs);

/// Midpoint-rule estimate of (integral |S1 - S2|^2 d lambda)^{1/2} with the
/// same doubling refinement check as covariance_from_spectral.
[[nodiscard]] double l2_distance_quadrature(const std::function<double(double)>& lhs,
                                            const std::function<double(double)>& rhs,
                                            int grid_size = 4096);

/// Deterministic sweep over p = 1..max_order collecting the residual
/// variance, predictor origin values, model TAVC, L2 distances and the
/// coefficient gap for the given spec.
[[nodiscard]] std::vector<ConvergenceRow> convergence_report(const ProcessSpec& spec,
                                                             int max_order);

/// CSV with header `p,sigma2_p,sum_b,s0_predictor,tavc_ar_model,l2_ma,
/// l2_ar_predictor,baxter_gap`; absent fields serialize as empty cells.
void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows);

}  // namespace arspec
