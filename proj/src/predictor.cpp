#include "arspec/predictor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "internal_linalg.hpp"

namespace arspec {

double ARPredictor::coefficient_sum() const noexcept {
    double acc = 0.0;
    for (double b : coeffs) acc += b;
    return acc;
}

double ARPredictor::at(int k) const noexcept {
    return k >= 1 && static_cast<std::size_t>(k) <= coeffs.size()
               ? coeffs[static_cast<std::size_t>(k) - 1]
               : 0.0;
}

namespace {

// Solve the order-p Yule-Walker system R_p B = r_p with dense elimination.
std::vector<double> dense_solve_order(const CovarianceSequence& covariance, int order,
                                      double pivot_tol) {
    const std::size_t dim = static_cast<std::size_t>(order);
    std::vector<double> matrix(dim * dim);
    std::vector<double> rhs(dim);
    for (std::size_t row = 0; row < dim; ++row) {
        for (std::size_t col = 0; col < dim; ++col)
            matrix[row * dim + col] =
                covariance.at(static_cast<int>(row > col ? row - col : col - row));
        rhs[row] = covariance.at(static_cast<int>(row) + 1);
    }
    if (!detail::gaussian_solve(matrix, rhs, dim, pivot_tol))
        throw SingularSystemError("Yule-Walker system of order " + std::to_string(order) +
                                  " is numerically singular");
    return rhs;
}

}  // namespace

ARPredictor yule_walker_dense(const CovarianceSequence& covariance, int order) {
    if (order < 1) throw std::invalid_argument("order must be >= 1");
    if (order > covariance.max_lag())
        throw std::invalid_argument("order exceeds the stored covariance prefix");
    const double pivot_tol = 1e-12 * covariance[0];

    ARPredictor predictor;
    predictor.order = order;
    predictor.reflection.reserve(static_cast<std::size_t>(order));
    for (int p = 1; p <= order; ++p) {
        std::vector<double> solution = dense_solve_order(covariance, p, pivot_tol);
        predictor.reflection.push_back(solution.back());
        if (p == order) predictor.coeffs = std::move(solution);
    }
    double sigma2 = covariance[0];
    for (int k = 1; k <= order; ++k) sigma2 -= predictor.coeffs[static_cast<std::size_t>(k) - 1] * covariance.at(k);
    predictor.innovation_variance = sigma2;
    return predictor;
}

std::vector<ARPredictor> levinson_durbin(const CovarianceSequence& covariance, int max_order) {
    if (max_order < 1) throw std::invalid_argument("max_order must be >= 1");
    if (max_order > covariance.max_lag())
        throw std::invalid_argument("max_order exceeds the stored covariance prefix");
    const double r0 = covariance[0];
    const double breakdown = 1e-12 * r0;
    if (r0 <= 0.0) throw BreakdownError(0, "process variance R_0 is zero");

    std::vector<ARPredictor> sweep;
    sweep.reserve(static_cast<std::size_t>(max_order));
    std::vector<double> coeffs;
    std::vector<double> next;
    std::vector<double> reflection;
    double sigma2 = r0;
    for (int p = 1; p <= max_order; ++p) {
        double num = covariance.at(p);
        for (int j = 1; j < p; ++j) num -= coeffs[static_cast<std::size_t>(j) - 1] * covariance.at(p - j);
        const double kappa = num / sigma2;
        next.assign(static_cast<std::size_t>(p), 0.0);
        for (int j = 1; j < p; ++j)
            next[static_cast<std::size_t>(j) - 1] =
                coeffs[static_cast<std::size_t>(j) - 1] - kappa * coeffs[static_cast<std::size_t>(p - j) - 1];
        next[static_cast<std::size_t>(p) - 1] = kappa;
        coeffs.swap(next);
        reflection.push_back(kappa);
        sigma2 *= (1.0 - kappa * kappa);
        if (sigma2 < breakdown)
            throw BreakdownError(p, "residual variance reached the determinism boundary at order " +
                                        std::to_string(p));
        sweep.push_back(ARPredictor{p, coeffs, sigma2, reflection});
    }
    return sweep;
}

double baxter_gap(const ARPredictor& fitted, const ARCoefficients& limit) {
    if (limit.max_index() < fitted.order)
        throw std::invalid_argument("limit coefficient prefix is shorter than the fitted order");
    double acc = 0.0;
    for (int k = 1; k <= fitted.order; ++k)
        acc += std::abs(fitted.coeffs[static_cast<std::size_t>(k) - 1] - limit.at(k));
    return acc;
}

SigmaLimitReport sigma_limit_check(std::span<const ARPredictor> predictors, double sigma_true) {
    SigmaLimitReport report;
    report.sigma2.reserve(predictors.size());
    for (const ARPredictor& predictor : predictors) report.sigma2.push_back(predictor.innovation_variance);
    for (std::size_t i = 1; i < report.sigma2.size(); ++i) {
        const double increase = report.sigma2[i] - report.sigma2[i - 1];
        if (increase > 1e-12) {
            report.nonincreasing = false;
            report.max_increase = std::max(report.max_increase, increase);
        }
    }
    if (!report.sigma2.empty()) report.final_gap = std::abs(report.sigma2.back() - sigma_true);
    return report;
}

}  // namespace arspec
