#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace dfh {

// Solves A x = b exactly over a field K by Gaussian elimination.
// Returns nullopt when the system is inconsistent; when it is
// underdetermined, free variables are set to zero.
template <typename K>
std::optional<std::vector<K>> solve_linear(std::vector<std::vector<K>> a, std::vector<K> b) {
    std::size_t rows = a.size();
    if (b.size() != rows) throw std::invalid_argument("rhs size mismatch");
    std::size_t cols = rows ? a[0].size() : 0;
    for (const auto& row : a)
        if (row.size() != cols) throw std::invalid_argument("ragged matrix");

    std::vector<long> pivot_col(rows, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == K(0)) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        K inv = K(1) / a[r][c];
        for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
        b[r] = b[r] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == K(0)) continue;
            K f = a[i][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
            b[i] = b[i] - f * b[r];
        }
        pivot_col[r] = static_cast<long>(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != K(0)) return std::nullopt;
    std::vector<K> x(cols, K(0));
    for (std::size_t i = 0; i < r; ++i) x[static_cast<std::size_t>(pivot_col[i])] = b[i];
    return x;
}

}  // namespace dfh
