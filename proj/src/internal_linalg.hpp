#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace arspec::detail {

// Gaussian elimination with partial pivoting on a row-major n x n matrix.
// Returns false when the best pivot magnitude falls below pivot_tol; the
// inputs are clobbered either way.
inline bool gaussian_solve(std::vector<double>& matrix, std::vector<double>& rhs, std::size_t n,
                           double pivot_tol) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot_row = col;
        double best = std::abs(matrix[col * n + col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            const double candidate = std::abs(matrix[row * n + col]);
            if (candidate > best) {
                best = candidate;
                pivot_row = row;
            }
        }
        if (best < pivot_tol) return false;
        if (pivot_row != col) {
            for (std::size_t j = col; j < n; ++j)
                std::swap(matrix[col * n + j], matrix[pivot_row * n + j]);
            std::swap(rhs[col], rhs[pivot_row]);
        }
        const double pivot = matrix[col * n + col];
        for (std::size_t row = col + 1; row < n; ++row) {
            const double factor = matrix[row * n + col] / pivot;
            if (factor == 0.0) continue;
            for (std::size_t j = col; j < n; ++j) matrix[row * n + j] -= factor * matrix[col * n + j];
            rhs[row] -= factor * rhs[col];
        }
    }
    for (std::size_t row = n; row-- > 0;) {
        double acc = rhs[row];
        for (std::size_t j = row + 1; j < n; ++j) acc -= matrix[row * n + j] * rhs[j];
        rhs[row] = acc / matrix[row * n + row];
    }
    return true;
}

}  // namespace arspec::detail
