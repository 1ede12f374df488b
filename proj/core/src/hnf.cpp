#include "hnf.hpp"

#include <cstdlib>

#include "pcsp/errors.hpp"

namespace pcsp::detail {

namespace {

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

}  // namespace

std::optional<std::vector<Int>> solve_diophantine(const std::vector<std::vector<Int>>& A,
                                                  const std::vector<Int>& b) {
    const int m = static_cast<int>(A.size());
    const int n = m == 0 ? 0 : static_cast<int>(A[0].size());

    // Column-major working copy H and unimodular accumulator U with A*U = H.
    std::vector<std::vector<Int>> H(n, std::vector<Int>(m));
    for (int r = 0; r < m; ++r)
        for (int j = 0; j < n; ++j) H[j][r] = A[r][j];
    std::vector<std::vector<Int>> U(n, std::vector<Int>(n));
    for (int j = 0; j < n; ++j) U[j][j] = 1;

    auto col_axpy = [&](int dst, int src, const Int& q) {
        // column dst -= q * column src
        if (q == 0) return;
        for (int r = 0; r < m; ++r) H[dst][r] -= q * H[src][r];
        for (int r = 0; r < n; ++r) U[dst][r] -= q * U[src][r];
    };

    std::vector<std::pair<int, int>> pivots;  // (row, col)
    int c = 0;
    for (int r = 0; r < m && c < n; ++r) {
        // Euclidean column reduction at row r across columns c..n-1.
        while (true) {
            int best = -1;
            for (int j = c; j < n; ++j)
                if (H[j][r] != 0 && (best == -1 || abs_int(H[j][r]) < abs_int(H[best][r])))
                    best = j;
            if (best == -1) break;
            bool lone = true;
            for (int j = c; j < n; ++j)
                if (j != best && H[j][r] != 0) {
                    col_axpy(j, best, H[j][r] / H[best][r]);
                    lone = lone && H[j][r] == 0;
                }
            if (lone) {
                std::swap(H[best], H[c]);
                std::swap(U[best], U[c]);
                break;
            }
        }
        if (H[c][r] == 0) continue;  // row has no pivot among the free columns
        if (H[c][r] < 0) {
            for (int i = 0; i < m; ++i) H[c][i] = -H[c][i];
            for (int i = 0; i < n; ++i) U[c][i] = -U[c][i];
        }
        // Reduce earlier columns at this row to keep entries small.
        for (int j = 0; j < c; ++j) col_axpy(j, c, floor_div(H[j][r], H[c][r]));
        pivots.emplace_back(r, c);
        ++c;
    }

    // Forward-substitute over pivot rows; every component is forced.
    std::vector<Int> y(n, 0);
    for (const auto& [r, col] : pivots) {
        Int acc = b[r];
        for (int j = 0; j < col; ++j)
            if (H[j][r] != 0) acc -= H[j][r] * y[j];
        if (acc % H[col][r] != 0) return std::nullopt;
        y[col] = acc / H[col][r];
    }
    // Non-pivot rows must agree as well.
    for (int r = 0; r < m; ++r) {
        Int acc = 0;
        for (int j = 0; j < n; ++j)
            if (H[j][r] != 0 && y[j] != 0) acc += H[j][r] * y[j];
        if (acc != b[r]) return std::nullopt;
    }

    std::vector<Int> x(n, 0);
    for (int r = 0; r < n; ++r) {
        Int acc = 0;
        for (int j = 0; j < n; ++j)
            if (U[j][r] != 0 && y[j] != 0) acc += U[j][r] * y[j];
        x[r] = acc;
    }
    return x;
}

}  // namespace pcsp::detail
