#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tinregion/strategy.hpp"

namespace tinregion {

/// Power exponents searched: 0, -step, -2 step, ... down to -rmax, and silence.
template <Scalar T>
struct GridSpec {
    T step{};
    T rmax{};
    long long budget = 100'000'000;

    static GridSpec defaults(const BasicChannelStrengths<T>& net) {
        GridSpec g;
        g.step = scalar_cast<T>(Rational(1, 20));
        g.rmax = net.max_alpha() + T(1);
        return g;
    }

    std::vector<Extended<T>> levels() const {
        if (!ScalarTraits<T>::less(T(0), step)) throw PreconditionError("grid step must be positive");
        if (ScalarTraits<T>::less(rmax, step)) throw PreconditionError("grid step must not exceed the depth");
        std::vector<Extended<T>> out;
        for (long long i = 0;; ++i) {
            T v = T(0) - step * T(static_cast<int>(i));
            if (ScalarTraits<T>::less(v, T(0) - rmax)) break;
            out.emplace_back(v);
            if (i > 1'000'000) throw BudgetExceeded("grid has too many levels");
        }
        out.emplace_back(std::nullopt);
        return out;
    }
};

/// Number of (order, power) strategies the grid search visits, saturating.
template <Scalar T>
double grid_strategy_count(const BasicChannelStrengths<T>& net, const GridSpec<T>& grid) {
    double count = 1;
    const double levels = static_cast<double>(grid.levels().size());
    for (int L : net.cell_sizes()) {
        for (int f = 2; f <= L; ++f) count *= f;
        count *= std::pow(levels, L);
    }
    return count;
}

namespace detail {

/// Calls f(strategy, bounds) for every grid strategy; stops when f returns true.
template <Scalar T, class F>
void for_each_grid_strategy(const BasicChannelStrengths<T>& net, Side side,
                            const GridSpec<T>& grid, F&& f) {
    const double count = grid_strategy_count(net, grid);
    if (count > static_cast<double>(grid.budget)) {
        throw BudgetExceeded("grid search needs about " + std::to_string(count) +
                             " strategy evaluations, budget is " + std::to_string(grid.budget));
    }
    const auto lv = grid.levels();
    const int nlev = static_cast<int>(lv.size());
    const auto sizes = net.cell_sizes();
    const int N = net.total_users();
    Strategy<T> s{side, DecodingOrder::identity(sizes), PowerAllocation<T>::all_silent(sizes)};
    for (;;) {
        std::vector<int> idx(N, 0);
        for (;;) {
            for (int u = 0; u < N; ++u) {
                auto [k, l] = net.unflat(u);
                s.power.r[k][l] = lv[idx[u]];
            }
            if (f(s, gdof_bounds(net, s))) return;
            int u = N - 1;
            while (u >= 0 && idx[u] + 1 == nlev) idx[u--] = 0;
            if (u < 0) break;
            ++idx[u];
        }
        int k = net.cells() - 1;
        while (k >= 0 && !std::next_permutation(s.order.perm[k].begin(), s.order.perm[k].end())) --k;
        if (k < 0) break;
    }
}

}  // namespace detail

/// Distinct GDoF tuples reached by grid strategies, in first-seen order.
/// Double tuples are identified when they agree to within 1e-12.
template <Scalar T>
std::vector<GDoFTuple<T>> grid_achievable_points(const BasicChannelStrengths<T>& net, Side side,
                                                 const GridSpec<T>& grid) {
    std::vector<GDoFTuple<T>> out;
    if constexpr (ScalarTraits<T>::exact) {
        std::set<GDoFTuple<T>> seen;
        detail::for_each_grid_strategy(net, side, grid, [&](const Strategy<T>&, const GDoFTuple<T>& d) {
            if (seen.insert(d).second) out.push_back(d);
            return false;
        });
    } else {
        std::set<std::vector<long long>> seen;
        detail::for_each_grid_strategy(net, side, grid, [&](const Strategy<T>&, const GDoFTuple<T>& d) {
            std::vector<long long> key;
            for (const auto& x : d) key.push_back(std::llround(to_double(x) * 1e12));
            if (seen.insert(std::move(key)).second) out.push_back(d);
            return false;
        });
    }
    return out;
}

template <Scalar T>
bool oracle_achievable(const BasicChannelStrengths<T>& net, Side side, const GDoFTuple<T>& d,
                       const GridSpec<T>& grid) {
    if (static_cast<int>(d.size()) != net.total_users()) throw DimensionError("GDoF tuple has wrong length");
    bool found = false;
    detail::for_each_grid_strategy(net, side, grid, [&](const Strategy<T>&, const GDoFTuple<T>& b) {
        for (std::size_t u = 0; u < d.size(); ++u)
            if (!ScalarTraits<T>::leq(d[u], b[u])) return false;
        found = true;
        return true;
    });
    return found;
}

template <Scalar T>
struct OracleMax {
    T value{};
    Strategy<T> strategy;
    GDoFTuple<T> point;
};

/// Best weighted sum over grid strategies; the first maximizer is kept.
template <Scalar T>
OracleMax<T> oracle_max_sum(const BasicChannelStrengths<T>& net, Side side,
                            const std::vector<T>& w, const GridSpec<T>& grid) {
    if (static_cast<int>(w.size()) != net.total_users()) throw DimensionError("weight vector has wrong length");
    OracleMax<T> best;
    bool have = false;
    detail::for_each_grid_strategy(net, side, grid, [&](const Strategy<T>& s, const GDoFTuple<T>& b) {
        T v(0);
        for (std::size_t u = 0; u < w.size(); ++u) v = v + w[u] * b[u];
        if (!have || v > best.value) {
            best = {v, s, b};
            have = true;
        }
        return false;
    });
    return best;
}

}  // namespace tinregion
