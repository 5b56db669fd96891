#include "arspec/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

namespace arspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// |sum_{j} filter[j-1] e^{-2 pi i j lambda}|^2 with 1-based filter taps.
double transfer_gain(std::span<const double> filter, double lambda) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < filter.size(); ++j) {
        const double phase = kTwoPi * lambda * static_cast<double>(j + 1);
        re += filter[j] * std::cos(phase);
        im -= filter[j] * std::sin(phase);
    }
    return re * re + im * im;
}

// Autocorrelation g_t = sum_j c_j c_{j+t} of a 1-based filter, t = 0..P-1.
std::vector<double> filter_autocorrelation(std::span<const double> filter) {
    const std::size_t taps = filter.size();
    std::vector<double> g(taps, 0.0);
    for (std::size_t t = 0; t < taps; ++t) {
        double acc = 0.0;
        for (std::size_t j = 0; j + t < taps; ++j) acc += filter[j] * filter[j + t];
        g[t] = acc;
    }
    return g;
}

double cosine_series(std::span<const double> lags, double lambda) {
    double acc = lags.empty() ? 0.0 : lags[0];
    for (std::size_t k = 1; k < lags.size(); ++k)
        acc += 2.0 * lags[k] * std::cos(kTwoPi * lambda * static_cast<double>(k));
    return acc;
}

}  // namespace

double ma_truncation_spectrum(const WoldCoefficients& wold, int order, double lambda) {
    if (order < 0 || order > wold.max_index())
        throw std::invalid_argument("truncation order must lie within the stored prefix");
    double re = 0.0;
    double im = 0.0;
    for (int l = 0; l <= order; ++l) {
        const double phase = kTwoPi * lambda * static_cast<double>(l);
        re += wold.at(l) * std::cos(phase);
        im -= wold.at(l) * std::sin(phase);
    }
    return wold.innovation_variance() * (re * re + im * im);
}

double predictor_spectrum(const CovarianceSequence& covariance, const ARPredictor& fitted,
                          double lambda) {
    return transfer_gain(fitted.coeffs, lambda) * spectral_density(covariance, lambda);
}

double predictor_spectrum_covariance_form(const CovarianceSequence& covariance,
                                          const ARPredictor& fitted, double lambda) {
    const std::vector<double> lags =
        filtered_covariance(covariance, fitted.coeffs, covariance.max_lag() + fitted.order);
    return cosine_series(lags, lambda);
}

double predictor_spectrum_origin(const CovarianceSequence& covariance, const ARPredictor& fitted) {
    const double sum_b = fitted.coefficient_sum();
    return sum_b * sum_b * tavc_true(covariance);
}

double predictor_covariance(const CovarianceSequence& covariance, const ARPredictor& fitted,
                            int k) {
    const int p = fitted.order;
    if (std::abs(k) + p > covariance.max_lag())
        throw std::invalid_argument("|k| + order must not exceed the stored covariance prefix");
    const auto& b = fitted.coeffs;
    double diagonal = 0.0;
    for (double coeff : b) diagonal += coeff * coeff;
    double acc = diagonal * covariance.at(k);
    for (int t = 1; t <= p - 1; ++t) {
        double cross = 0.0;
        for (int j = 1; j <= p - t; ++j)
            cross += b[static_cast<std::size_t>(j) - 1] * b[static_cast<std::size_t>(j + t) - 1];
        acc += cross * (covariance.at(k - t) + covariance.at(k + t));
    }
    return acc;
}

std::vector<double> filtered_covariance(const CovarianceSequence& covariance,
                                        std::span<const double> filter, int max_lag) {
    if (max_lag < 0) throw std::invalid_argument("max_lag must be >= 0");
    const std::vector<double> g = filter_autocorrelation(filter);
    std::vector<double> lags(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int k = 0; k <= max_lag; ++k) {
        double acc = g.empty() ? 0.0 : g[0] * covariance.at(k);
        for (std::size_t t = 1; t < g.size(); ++t)
            acc += g[t] * (covariance.at(k - static_cast<int>(t)) + covariance.at(k + static_cast<int>(t)));
        lags[static_cast<std::size_t>(k)] = acc;
    }
    return lags;
}

double tavc_true(const CovarianceSequence& covariance) {
    const auto lags = covariance.lags();
    double acc = lags[0];
    for (std::size_t k = 1; k < lags.size(); ++k) acc += 2.0 * lags[k];
    return acc;
}

double tavc_ar_model(const ARPredictor& fitted) {
    const double denom = 1.0 - fitted.coefficient_sum();
    if (std::abs(denom) <= 1e-10)
        throw NearUnitRootError(fitted.order, "AR model spectrum denominator vanished at order " +
                                                  std::to_string(fitted.order));
    return fitted.innovation_variance / (denom * denom);
}

double ar_model_spectrum(const ARPredictor& fitted, double lambda) {
    double re = 1.0;
    double im = 0.0;
    for (int k = 1; k <= fitted.order; ++k) {
        const double phase = kTwoPi * lambda * static_cast<double>(k);
        re -= fitted.coeffs[static_cast<std::size_t>(k) - 1] * std::cos(phase);
        im += fitted.coeffs[static_cast<std::size_t>(k) - 1] * std::sin(phase);
    }
    const double gain = re * re + im * im;
    if (gain <= 1e-20)
        throw NearUnitRootError(fitted.order, "AR model spectrum denominator vanished at order " +
                                                  std::to_string(fitted.order));
    return fitted.innovation_variance / gain;
}

double l2_distance_parseval(const CovarianceSequence& lhs, const CovarianceSequence& rhs) {
    const int top = std::max(lhs.max_lag(), rhs.max_lag());
    const double d0 = lhs.at(0) - rhs.at(0);
    double acc = d0 * d0;
    for (int k = 1; k <= top; ++k) {
        const double dk = lhs.at(k) - rhs.at(k);
        acc += 2.0 * dk * dk;
    }
    return std::sqrt(acc);
}

namespace {

double quadrature_l2(const std::function<double(double)>& lhs,
                     const std::function<double(double)>& rhs, int n) {
    double acc = 0.0;
    const double h = 1.0 / static_cast<double>(n);
    for (int j = 0; j < n; ++j) {
        const double lambda = -0.5 + (static_cast<double>(j) + 0.5) * h;
        const double diff = lhs(lambda) - rhs(lambda);
        acc += diff * diff;
    }
    return std::sqrt(acc * h);
}

}  // namespace

double l2_distance_quadrature(const std::function<double(double)>& lhs,
                              const std::function<double(double)>& rhs, int grid_size) {
    if (grid_size < 256) throw std::invalid_argument("grid_size must be >= 256");
    const double coarse = quadrature_l2(lhs, rhs, grid_size);
    const double fine = quadrature_l2(lhs, rhs, 2 * grid_size);
    if (std::abs(fine - coarse) > 1e-8)
        throw QuadratureError("quadrature did not settle: doubling the grid moved the result by " +
                              std::to_string(std::abs(fine - coarse)));
    return fine;
}

namespace {

// Parseval distance between two filtered versions of the same process,
// summed over every lag where either filtered covariance can be nonzero.
double filtered_l2_distance(const CovarianceSequence& covariance, std::span<const double> lhs,
                            std::span<const double> rhs) {
    const int reach = covariance.max_lag() +
                      static_cast<int>(std::max(lhs.size(), rhs.size()));
    const std::vector<double> lhs_cov = filtered_covariance(covariance, lhs, reach);
    const std::vector<double> rhs_cov = filtered_covariance(covariance, rhs, reach);
    const double d0 = lhs_cov[0] - rhs_cov[0];
    double acc = d0 * d0;
    for (std::size_t k = 1; k < lhs_cov.size(); ++k) {
        const double dk = lhs_cov[k] - rhs_cov[k];
        acc += 2.0 * dk * dk;
    }
    return std::sqrt(acc);
}

}  // namespace

std::vector<ConvergenceRow> convergence_report(const ProcessSpec& spec, int max_order) {
    if (max_order < 1) throw std::invalid_argument("max_order must be >= 1");
    const bool has_wold = spec.kind() != ProcessKind::raw_covariance;

    // The AR-infinity limit coefficients exist only when the MA polynomial
    // is minimum-phase; inverting a non-invertible polynomial diverges, and
    // the minimum-phase refactorization is out of scope. Those columns stay
    // empty for such specs.
    std::vector<double> negated_ma(spec.ma_poly().size());
    for (std::size_t i = 0; i < negated_ma.size(); ++i) negated_ma[i] = -spec.ma_poly()[i];
    const bool has_ar_limit = has_wold && is_stationary_ar(negated_ma);

    // The covariance prefix must reach max_order for the Levinson sweep and
    // carry a certified tail for the origin formulas.
    CovarianceSequence covariance = model_covariance(spec);
    if (covariance.max_lag() < max_order) {
        if (!has_wold)
            throw std::invalid_argument("max_order exceeds the stored covariance prefix");
        covariance = model_covariance(spec, max_order);
    }

    std::optional<WoldCoefficients> wold;
    ARCoefficients limit_ar;
    if (has_wold) {
        // Expand far enough that both the Wold tail and the AR-coefficient
        // tail are certified below 1e-12.
        int length = std::max(64, 2 * max_order);
        while (true) {
            wold = wold_from_spec(spec, length);
            if (has_ar_limit) limit_ar = wold_to_ar(*wold, length);
            if ((geometric_tail_bound(wold->coeffs()) < 1e-12 &&
                 (!has_ar_limit || geometric_tail_bound(limit_ar.coeffs()) < 1e-12)) ||
                length >= 4096)
                break;
            length *= 2;
        }
    }

    const std::vector<ARPredictor> sweep = levinson_durbin(covariance, max_order);
    std::vector<ConvergenceRow> rows;
    rows.reserve(sweep.size());
    for (const ARPredictor& fitted : sweep) {
        ConvergenceRow row;
        row.p = fitted.order;
        row.sigma2_p = fitted.innovation_variance;
        row.sum_b = fitted.coefficient_sum();
        row.s0_predictor = predictor_spectrum_origin(covariance, fitted);
        row.tavc_ar_model = tavc_ar_model(fitted);
        if (has_wold) {
            row.l2_ma = l2_distance_parseval(
                covariance, covariance_from_wold(wold->truncated(fitted.order), covariance.max_lag()));
        }
        if (has_ar_limit) {
            row.l2_ar_predictor = filtered_l2_distance(covariance, fitted.coeffs, limit_ar.coeffs());
            row.baxter_gap = baxter_gap(fitted, limit_ar);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

void append_field(std::string& line, double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.15g", value);
    line += buffer;
}

void append_field(std::string& line, const std::optional<double>& value) {
    if (value) append_field(line, *value);
}

}  // namespace

void write_convergence_csv(std::ostream& out, std::span<const ConvergenceRow> rows) {
    out << "p,sigma2_p,sum_b,s0_predictor,tavc_ar_model,l2_ma,l2_ar_predictor,baxter_gap\n";
    for (const ConvergenceRow& row : rows) {
        std::string line = std::to_string(row.p);
        line += ',';
        append_field(line, row.sigma2_p);
        line += ',';
        append_field(line, row.sum_b);
        line += ',';
        append_field(line, row.s0_predictor);
        line += ',';
        append_field(line, row.tavc_ar_model);
        line += ',';
        append_field(line, row.l2_ma);
        line += ',';
        append_field(line, row.l2_ar_predictor);
        line += ',';
        append_field(line, row.baxter_gap);
        out << line << '\n';
    }
}

}  // namespace arspec
