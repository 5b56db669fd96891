#pragma once

#include <stdexcept>
#include <string>

namespace arspec {

/// Process description has an AR polynomial root on or inside the unit circle.
class NonStationaryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation is undefined for the given process kind (e.g. Wold expansion of
/// a covariance-only spec).
class NotAvailableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense Toeplitz solve hit a pivot below the singularity threshold.
class SingularSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Levinson recursion drove the residual variance to the determinism
/// boundary (sigma_p^2 < 1e-12 * R_0).
class BreakdownError : public std::runtime_error {
public:
    BreakdownError(int order, const std::string& message)
        : std::runtime_error(message), order_(order) {}
    [[nodiscard]] int order() const noexcept { return order_; }

private:
    int order_;
};

/// AR model spectrum denominator |1 - sum b_k| underflowed its threshold.
class NearUnitRootError : public std::runtime_error {
public:
    NearUnitRootError(int order, const std::string& message)
        : std::runtime_error(message), order_(order) {}
    [[nodiscard]] int order() const noexcept { return order_; }

private:
    int order_;
};

/// Midpoint quadrature failed its refinement check, or an integrand that
/// should be real kept a non-negligible imaginary part.
class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed spec JSON or covariance CSV input.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace arspec
