#pragma once

#include <vector>

#include "tinregion/scalar.hpp"

namespace tinregion {

template <Scalar T>
struct LpResult {
    T value{};
    std::vector<T> x;
};

/// maximize c.x  subject to  A x <= b, x >= 0, with b >= 0 so that the
/// origin is a feasible starting basis. Dense tableau, Bland's rule.
template <Scalar T>
LpResult<T> simplex_max(const std::vector<std::vector<T>>& A, const std::vector<T>& b,
                        const std::vector<T>& c) {
    using Tr = ScalarTraits<T>;
    const int m = static_cast<int>(A.size());
    const int n = static_cast<int>(c.size());
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(A[i].size()) != n) throw DimensionError("LP row has wrong width");
        if (Tr::less(b[i], T(0))) throw PreconditionError("LP right-hand side must be >= 0");
    }
    const int cols = n + m;
    // Row i < m: constraint rows, last column is the rhs. Row m: reduced costs.
    std::vector<std::vector<T>> tab(m + 1, std::vector<T>(cols + 1, T(0)));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) tab[i][j] = A[i][j];
        tab[i][n + i] = T(1);
        tab[i][cols] = b[i] < T(0) ? T(0) : b[i];
        basis[i] = n + i;
    }
    for (int j = 0; j < n; ++j) tab[m][j] = c[j];

    for (;;) {
        int enter = -1;
        for (int j = 0; j < cols; ++j) {
            if (Tr::less(T(0), tab[m][j])) {
                enter = j;
                break;
            }
        }
        if (enter < 0) break;
        int leave = -1;
        T best{};
        for (int i = 0; i < m; ++i) {
            if (!Tr::less(T(0), tab[i][enter])) continue;
            T ratio = tab[i][cols] / tab[i][enter];
            if (leave < 0 || Tr::less(ratio, best) ||
                (Tr::eq(ratio, best) && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) throw PreconditionError("LP is unbounded");
        T piv = tab[leave][enter];
        for (auto& v : tab[leave]) v = v / piv;
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            T f = tab[i][enter];
            if (f == T(0)) continue;
            for (int j = 0; j <= cols; ++j) {
                if (tab[leave][j] != T(0)) tab[i][j] = tab[i][j] - f * tab[leave][j];
            }
        }
        basis[leave] = enter;
    }

    LpResult<T> res;
    res.x.assign(n, T(0));
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n) res.x[basis[i]] = tab[i][cols];
    }
    res.value = T(0);
    for (int j = 0; j < n; ++j) res.value = res.value + c[j] * res.x[j];
    return res;
}

}  // namespace tinregion
