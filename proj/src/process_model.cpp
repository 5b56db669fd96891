#include "arspec/process_model.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "internal_linalg.hpp"

namespace arspec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kTailTolerance = 1e-12;
constexpr int kMaxAutoPrefix = 4096;

// Residual-variance sweep used as the PSD construction check. Slightly
// negative variances within -1e-9 * R_0 are treated as the determinism
// boundary; the sweep stops there because later minors are unverifiable
// once the process is numerically deterministic.
bool toeplitz_psd(std::span<const double> lags) {
    const double r0 = lags[0];
    const double reject_below = -1e-9 * r0;
    const double boundary = 1e-13 * r0;
    const int max_order = static_cast<int>(lags.size()) - 1;

    double sigma2 = r0;
    std::vector<double> coeffs;
    std::vector<double> next;
    for (int p = 1; p <= max_order; ++p) {
        double num = lags[p];
        for (int j = 1; j < p; ++j) num -= coeffs[j - 1] * lags[p - j];
        const double kappa = num / sigma2;
        next.assign(p, 0.0);
        for (int j = 1; j < p; ++j) next[j - 1] = coeffs[j - 1] - kappa * coeffs[p - j - 1];
        next[p - 1] = kappa;
        coeffs.swap(next);
        sigma2 *= (1.0 - kappa * kappa);
        if (sigma2 < reject_below) return false;
        if (sigma2 <= boundary) break;
    }
    return true;
}

}  // namespace

CovarianceSequence::CovarianceSequence(std::vector<double> lags) : lags_(std::move(lags)) {
    if (lags_.empty()) throw std::invalid_argument("covariance sequence needs at least R_0");
    for (double value : lags_) {
        if (!std::isfinite(value)) throw std::invalid_argument("covariance sequence must be finite");
    }
    if (lags_[0] < 0.0) throw std::invalid_argument("R_0 must be positive");
    if (lags_[0] == 0.0) {
        // Degenerate zero-variance sequence (e.g. the autocovariance of a
        // constant path): acceptable only when identically zero.
        for (double value : lags_) {
            if (value != 0.0) throw std::invalid_argument("R_0 must be positive");
        }
        return;
    }
    if (!toeplitz_psd(lags_))
        throw std::invalid_argument("covariance sequence is not positive semidefinite");
}

double CovarianceSequence::at(int k) const noexcept {
    const std::size_t idx = static_cast<std::size_t>(k < 0 ? -static_cast<long long>(k) : k);
    return idx < lags_.size() ? lags_[idx] : 0.0;
}

WoldCoefficients::WoldCoefficients(std::vector<double> coeffs, double innovation_variance)
    : coeffs_(std::move(coeffs)), innovation_variance_(innovation_variance) {
    if (coeffs_.empty() || coeffs_[0] != 1.0)
        throw std::invalid_argument("Wold coefficients must start with a_0 = 1");
    if (!(innovation_variance_ > 0.0))
        throw std::invalid_argument("innovation variance must be positive");
}

double WoldCoefficients::at(int k) const noexcept {
    return k >= 0 && static_cast<std::size_t>(k) < coeffs_.size() ? coeffs_[static_cast<std::size_t>(k)]
                                                                  : 0.0;
}

double WoldCoefficients::l1_norm() const noexcept {
    double acc = 0.0;
    for (double a : coeffs_) acc += std::abs(a);
    return acc;
}

double WoldCoefficients::sum() const noexcept {
    double acc = 0.0;
    for (double a : coeffs_) acc += a;
    return acc;
}

WoldCoefficients WoldCoefficients::truncated(int order) const {
    if (order < 0) throw std::invalid_argument("truncation order must be >= 0");
    const auto keep = std::min<std::size_t>(coeffs_.size(), static_cast<std::size_t>(order) + 1);
    return WoldCoefficients(std::vector<double>(coeffs_.begin(), coeffs_.begin() + keep),
                            innovation_variance_);
}

double ARCoefficients::at(int k) const noexcept {
    return k >= 1 && static_cast<std::size_t>(k) <= coeffs_.size()
               ? coeffs_[static_cast<std::size_t>(k) - 1]
               : 0.0;
}

double ARCoefficients::sum() const noexcept {
    double acc = 0.0;
    for (double b : coeffs_) acc += b;
    return acc;
}

bool is_stationary_ar(std::span<const double> coeffs) noexcept {
    std::vector<double> b(coeffs.begin(), coeffs.end());
    for (int p = static_cast<int>(b.size()); p >= 1; --p) {
        const double kappa = b[p - 1];
        if (!(std::abs(kappa) < 1.0)) return false;  // also rejects NaN
        const double denom = 1.0 - kappa * kappa;
        std::vector<double> lower(p - 1);
        for (int j = 1; j <= p - 1; ++j) lower[j - 1] = (b[j - 1] + kappa * b[p - 1 - j]) / denom;
        b = std::move(lower);
    }
    return true;
}

ProcessSpec ProcessSpec::ar(std::vector<double> coeffs, double innovation_variance) {
    if (!(innovation_variance > 0.0))
        throw std::invalid_argument("innovation variance must be positive");
    if (!is_stationary_ar(coeffs))
        throw NonStationaryError("AR polynomial has a root on or inside the unit circle");
    ProcessSpec spec;
    spec.kind_ = ProcessKind::ar;
    spec.ar_ = std::move(coeffs);
    spec.innovation_variance_ = innovation_variance;
    return spec;
}

ProcessSpec ProcessSpec::ma(std::vector<double> coeffs, double innovation_variance) {
    if (!(innovation_variance > 0.0))
        throw std::invalid_argument("innovation variance must be positive");
    ProcessSpec spec;
    spec.kind_ = ProcessKind::ma;
    spec.ma_ = std::move(coeffs);
    spec.innovation_variance_ = innovation_variance;
    return spec;
}

ProcessSpec ProcessSpec::arma(std::vector<double> ar_coeffs, std::vector<double> ma_coeffs,
                              double innovation_variance) {
    if (!(innovation_variance > 0.0))
        throw std::invalid_argument("innovation variance must be positive");
    if (!is_stationary_ar(ar_coeffs))
        throw NonStationaryError("AR polynomial has a root on or inside the unit circle");
    ProcessSpec spec;
    spec.kind_ = ProcessKind::arma;
    spec.ar_ = std::move(ar_coeffs);
    spec.ma_ = std::move(ma_coeffs);
    spec.innovation_variance_ = innovation_variance;
    return spec;
}

ProcessSpec ProcessSpec::raw_covariance(std::filesystem::path file) {
    ProcessSpec spec;
    spec.kind_ = ProcessKind::raw_covariance;
    spec.covariance_file_ = std::move(file);
    return spec;
}

ProcessSpec ProcessSpec::white_noise(double innovation_variance) {
    return ar({}, innovation_variance);
}

ProcessSpec load_process_spec(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open spec file: " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("spec file " + path.string() + ": " + e.what());
    }
    if (!doc.is_object()) throw ParseError("spec file must hold a JSON object");
    if (!doc.contains("kind") || !doc["kind"].is_string())
        throw ParseError("spec field 'kind' is required");
    const std::string kind = doc["kind"].get<std::string>();

    auto read_array = [&](const char* field) -> std::vector<double> {
        if (!doc.contains(field)) return {};
        const auto& node = doc[field];
        if (!node.is_array()) throw ParseError(std::string("spec field '") + field + "' must be an array");
        std::vector<double> values;
        values.reserve(node.size());
        for (const auto& item : node) {
            if (!item.is_number()) throw ParseError(std::string("spec field '") + field + "' must be numeric");
            values.push_back(item.get<double>());
        }
        return values;
    };

    double innovation_variance = 1.0;
    if (doc.contains("innovation_variance")) {
        if (!doc["innovation_variance"].is_number())
            throw ParseError("spec field 'innovation_variance' must be a number");
        innovation_variance = doc["innovation_variance"].get<double>();
        if (!(innovation_variance > 0.0))
            throw ParseError("spec field 'innovation_variance' must be positive");
    }

    if (kind == "ar") return ProcessSpec::ar(read_array("ar"), innovation_variance);
    if (kind == "ma") return ProcessSpec::ma(read_array("ma"), innovation_variance);
    if (kind == "arma")
        return ProcessSpec::arma(read_array("ar"), read_array("ma"), innovation_variance);
    if (kind == "covariance") {
        if (!doc.contains("covariance_file") || !doc["covariance_file"].is_string())
            throw ParseError("spec field 'covariance_file' is required for kind=covariance");
        std::filesystem::path file = doc["covariance_file"].get<std::string>();
        if (file.is_relative()) file = path.parent_path() / file;
        return ProcessSpec::raw_covariance(std::move(file));
    }
    throw ParseError("spec field 'kind' must be one of ar|ma|arma|covariance, got '" + kind + "'");
}

CovarianceSequence load_covariance_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open covariance file: " + path.string());
    std::vector<double> lags;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        long long lag = -1;
        char comma = 0;
        double value = 0.0;
        if (!(fields >> lag >> comma >> value) || comma != ',')
            throw ParseError("covariance file " + path.string() + " line " + std::to_string(line_no) +
                             ": expected 'k,R_k'");
        if (lag != static_cast<long long>(lags.size()))
            throw ParseError("covariance file " + path.string() + " line " + std::to_string(line_no) +
                             ": lags must ascend from 0 without gaps (got k=" + std::to_string(lag) +
                             ", expected " + std::to_string(lags.size()) + ")");
        lags.push_back(value);
    }
    if (lags.empty()) throw ParseError("covariance file " + path.string() + " is empty");
    return CovarianceSequence(std::move(lags));
}

CovarianceSequence covariance_from_wold(const WoldCoefficients& wold, int max_lag) {
    if (max_lag < 0) throw std::invalid_argument("max_lag must be >= 0");
    const auto coeffs = wold.coeffs();
    const int top = wold.max_index();
    std::vector<double> lags(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int k = 0; k <= max_lag; ++k) {
        double acc = 0.0;
        for (int n = k; n <= top; ++n) acc += coeffs[n] * coeffs[n - k];
        lags[static_cast<std::size_t>(k)] = wold.innovation_variance() * acc;
    }
    return CovarianceSequence(std::move(lags));
}

ARCoefficients wold_to_ar(const WoldCoefficients& wold, int max_order) {
    if (max_order < 0) throw std::invalid_argument("max_order must be >= 0");
    std::vector<double> b(static_cast<std::size_t>(max_order), 0.0);
    for (int k = 1; k <= max_order; ++k) {
        double acc = wold.at(k);
        for (int j = 1; j < k; ++j) acc -= wold.at(j) * b[static_cast<std::size_t>(k - j) - 1];
        b[static_cast<std::size_t>(k) - 1] = acc;
    }
    return ARCoefficients(std::move(b));
}

WoldCoefficients ar_to_wold(const ARCoefficients& coeffs, double innovation_variance,
                            int max_order) {
    if (max_order < 0) throw std::invalid_argument("max_order must be >= 0");
    std::vector<double> a(static_cast<std::size_t>(max_order) + 1, 0.0);
    a[0] = 1.0;
    for (int k = 1; k <= max_order; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += coeffs.at(j) * a[static_cast<std::size_t>(k - j)];
        a[static_cast<std::size_t>(k)] = acc;
    }
    return WoldCoefficients(std::move(a), innovation_variance);
}

double spectral_density(const CovarianceSequence& covariance, double lambda) {
    if (!(lambda > -0.5 && lambda <= 0.5))
        throw std::invalid_argument("lambda must lie in (-1/2, 1/2]");
    const auto lags = covariance.lags();
    double acc = lags[0];
    for (std::size_t k = 1; k < lags.size(); ++k)
        acc += 2.0 * lags[k] * std::cos(kTwoPi * lambda * static_cast<double>(k));
    return acc;
}

namespace {

std::complex<double> midpoint_fourier(const std::function<double(double)>& density, int k, int n) {
    std::complex<double> acc{0.0, 0.0};
    const double h = 1.0 / static_cast<double>(n);
    for (int j = 0; j < n; ++j) {
        const double lambda = -0.5 + (static_cast<double>(j) + 0.5) * h;
        const double phase = kTwoPi * lambda * static_cast<double>(k);
        acc += density(lambda) * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return acc * h;
}

}  // namespace

double covariance_from_spectral(const std::function<double(double)>& density, int k,
                                int grid_size) {
    if (grid_size < 64 || grid_size % 2 != 0)
        throw std::invalid_argument("grid_size must be even and >= 64");
    const std::complex<double> coarse = midpoint_fourier(density, k, grid_size);
    const std::complex<double> fine = midpoint_fourier(density, k, 2 * grid_size);
    if (std::abs(fine.imag()) >= 1e-9)
        throw QuadratureError("inverse Fourier integral kept an imaginary part of " +
                              std::to_string(fine.imag()));
    if (std::abs(fine.real() - coarse.real()) > 1e-8)
        throw QuadratureError("quadrature did not settle: doubling the grid moved the result by " +
                              std::to_string(std::abs(fine.real() - coarse.real())));
    return fine.real();
}

WoldCoefficients wold_from_spec(const ProcessSpec& spec, int max_order) {
    if (spec.kind() == ProcessKind::raw_covariance)
        throw NotAvailableError("Wold expansion is unavailable for covariance-only specs");
    if (max_order < 0) throw std::invalid_argument("max_order must be >= 0");
    const auto& ar = spec.ar_poly();
    const auto& ma = spec.ma_poly();
    std::vector<double> a(static_cast<std::size_t>(max_order) + 1, 0.0);
    a[0] = 1.0;
    for (int k = 1; k <= max_order; ++k) {
        double acc = 0.0;
        if (static_cast<std::size_t>(k) <= ma.size()) acc += ma[static_cast<std::size_t>(k) - 1];
        const int reach = std::min<int>(k, static_cast<int>(ar.size()));
        for (int j = 1; j <= reach; ++j)
            acc += ar[static_cast<std::size_t>(j) - 1] * a[static_cast<std::size_t>(k - j)];
        a[static_cast<std::size_t>(k)] = acc;
    }
    return WoldCoefficients(std::move(a), spec.innovation_variance());
}

double geometric_tail_bound(std::span<const double> values) noexcept {
    constexpr std::size_t window = 8;
    const std::size_t n = values.size();
    if (n < 2 * window) return std::numeric_limits<double>::infinity();
    double older = 0.0;
    double newer = 0.0;
    for (std::size_t i = n - 2 * window; i < n - window; ++i) older += std::abs(values[i]);
    for (std::size_t i = n - window; i < n; ++i) newer += std::abs(values[i]);
    if (newer == 0.0) return 0.0;  // finitely supported
    if (older == 0.0) return std::numeric_limits<double>::infinity();
    const double rho_window = newer / older;
    if (rho_window >= 0.99) return std::numeric_limits<double>::infinity();
    // Sum the tail in window-sized blocks, each contracting by rho_window.
    return newer * rho_window / (1.0 - rho_window);
}

namespace {

// Smallest prefix whose certified geometric tail drops below tol, doubling
// from `start` up to kMaxAutoPrefix. expand(L) must yield L+1 values.
template <typename Expand>
int certified_prefix(const Expand& expand, double tol, int start) {
    int length = start;
    while (true) {
        const std::vector<double> values = expand(length);
        if (geometric_tail_bound(values) < tol || length >= kMaxAutoPrefix) return length;
        length *= 2;
    }
}

// Exact covariance of a pure AR spec: solve the (q+1) x (q+1) system from
// R_0 - sum b_j R_j = sigma^2 and R_k = sum b_j R_{|k-j|}, then extend by
// the same recursion.
std::vector<double> pure_ar_covariance(const std::vector<double>& b, double sigma2, int max_lag) {
    const int q = static_cast<int>(b.size());
    const std::size_t dim = static_cast<std::size_t>(q) + 1;
    std::vector<double> matrix(dim * dim, 0.0);
    std::vector<double> rhs(dim, 0.0);
    for (int k = 0; k <= q; ++k) {
        matrix[static_cast<std::size_t>(k) * dim + static_cast<std::size_t>(k)] += 1.0;
        for (int j = 1; j <= q; ++j) {
            const int lag = std::abs(k - j);
            matrix[static_cast<std::size_t>(k) * dim + static_cast<std::size_t>(lag)] -=
                b[static_cast<std::size_t>(j) - 1];
        }
    }
    rhs[0] = sigma2;
    if (!detail::gaussian_solve(matrix, rhs, dim, 1e-300))
        throw NonStationaryError("AR covariance system is singular");
    std::vector<double> lags(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int k = 0; k <= std::min(q, max_lag); ++k) lags[static_cast<std::size_t>(k)] = rhs[static_cast<std::size_t>(k)];
    for (int k = q + 1; k <= max_lag; ++k) {
        double acc = 0.0;
        for (int j = 1; j <= q; ++j)
            acc += b[static_cast<std::size_t>(j) - 1] * lags[static_cast<std::size_t>(k - j)];
        lags[static_cast<std::size_t>(k)] = acc;
    }
    return lags;
}

}  // namespace

CovarianceSequence model_covariance(const ProcessSpec& spec, int max_lag) {
    switch (spec.kind()) {
        case ProcessKind::raw_covariance: {
            CovarianceSequence loaded = load_covariance_csv(spec.covariance_file());
            if (max_lag < 0 || max_lag >= loaded.max_lag()) return loaded;
            std::vector<double> prefix(loaded.lags().begin(),
                                       loaded.lags().begin() + max_lag + 1);
            return CovarianceSequence(std::move(prefix));
        }
        case ProcessKind::ma: {
            const int q = static_cast<int>(spec.ma_poly().size());
            const int lag = max_lag < 0 ? q : max_lag;
            std::vector<double> a(spec.ma_poly());
            a.insert(a.begin(), 1.0);
            return covariance_from_wold(WoldCoefficients(std::move(a), spec.innovation_variance()),
                                        lag);
        }
        case ProcessKind::ar: {
            int lag = max_lag;
            if (lag < 0) {
                lag = certified_prefix(
                    [&](int length) {
                        return pure_ar_covariance(spec.ar_poly(), spec.innovation_variance(), length);
                    },
                    kTailTolerance, 64);
            }
            return CovarianceSequence(
                pure_ar_covariance(spec.ar_poly(), spec.innovation_variance(), lag));
        }
        case ProcessKind::arma: {
            const int wold_len = certified_prefix(
                [&](int length) {
                    const WoldCoefficients w = wold_from_spec(spec, length);
                    return std::vector<double>(w.coeffs().begin(), w.coeffs().end());
                },
                kTailTolerance, 64);
            const WoldCoefficients wold = wold_from_spec(spec, wold_len);
            return covariance_from_wold(wold, max_lag < 0 ? wold_len : max_lag);
        }
    }
    throw std::logic_error("unreachable process kind");
}

}  // namespace arspec
