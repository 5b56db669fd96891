#pragma once

#include <span>
#include <vector>

#include "arspec/process_model.hpp"

namespace arspec {

/// Order-p MMSE linear predictor: coefficients b_{1,p}..b_{p,p} of the
/// modified Yule-Walker system, the residual variance sigma_p^2 and the
/// reflection coefficients kappa_1..kappa_p.
struct ARPredictor {
    int order = 0;
    std::vector<double> coeffs;
    double innovation_variance = 0.0;
    std::vector<double> reflection;

    [[nodiscard]] double coefficient_sum() const noexcept;

    /// b_{k,p} for k >= 1, zero beyond the order.
    [[nodiscard]] double at(int k) const noexcept;
};

/// Solve R_p B_p = r_p by dense Gaussian elimination with partial pivoting.
/// Reflection coefficients are read off as the last coefficient of each
/// lower-order solve, so the result is fully independent of the Levinson
/// recursion and serves as its oracle.
/// Raises SingularSystemError when a pivot falls below 1e-12 * R_0.
[[nodiscard]] ARPredictor yule_walker_dense(const CovarianceSequence& covariance, int order);

/// Levinson-Durbin sweep producing the predictors of every order 1..max_order
/// in O(max_order^2). sigma_p^2 is updated via sigma_{p-1}^2 (1 - kappa_p^2).
/// Raises BreakdownError when sigma_p^2 < 1e-12 * R_0.
[[nodiscard]] std::vector<ARPredictor> levinson_durbin(const CovarianceSequence& covariance,
                                                       int max_order);

/// sum_{k=1}^{p} |b_{k,p} - b_k| against the infinite-order coefficients.
[[nodiscard]] double baxter_gap(const ARPredictor& fitted, const ARCoefficients& limit);

struct SigmaLimitReport {
    std::vector<double> sigma2;
    bool nonincreasing = true;
    double max_increase = 0.0;  // worst sigma_p^2 - sigma_{p-1}^2, 0 if none
    double final_gap = 0.0;     // |sigma_{p_max}^2 - sigma_true|
};

/// Verify the residual variances of a predictor sweep are nonincreasing
/// (1e-12 slack) and report the final gap to sigma_true. Violations are
/// reported, never thrown.
[[nodiscard]] SigmaLimitReport sigma_limit_check(std::span<const ARPredictor> predictors,
                                                 double sigma_true);

}  // namespace arspec
