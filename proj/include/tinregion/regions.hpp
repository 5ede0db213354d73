#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "tinregion/network.hpp"
#include "tinregion/simplex.hpp"
#include "tinregion/strategy.hpp"

namespace tinregion {

/// Per-cell subsets of participating users, 0-based slots in ascending order.
struct Subnetwork {
    std::vector<std::vector<int>> slots;

    template <Scalar T>
    static Subnetwork full(const BasicChannelStrengths<T>& net) {
        Subnetwork s;
        for (int L : net.cell_sizes()) {
            std::vector<int> v(L);
            std::iota(v.begin(), v.end(), 0);
            s.slots.push_back(std::move(v));
        }
        return s;
    }
    template <Scalar T>
    static Subnetwork empty(const BasicChannelStrengths<T>& net) {
        Subnetwork s;
        s.slots.assign(net.cells(), {});
        return s;
    }

    int size() const {
        int n = 0;
        for (const auto& c : slots) n += static_cast<int>(c.size());
        return n;
    }
    /// The cells with at least one participating user (the set M).
    std::vector<int> active_cells() const {
        std::vector<int> m;
        for (std::size_t k = 0; k < slots.size(); ++k)
            if (!slots[k].empty()) m.push_back(static_cast<int>(k));
        return m;
    }
    bool contains(int cell, int slot) const {
        const auto& c = slots[cell];
        return std::binary_search(c.begin(), c.end(), slot);
    }

    friend bool operator==(const Subnetwork&, const Subnetwork&) = default;
};

/// Cells in cyclic order, rotated so that the smallest id comes first.
using CyclicSequence = std::vector<int>;

/// All cyclically ordered sequences of distinct elements of `cells`, by
/// length, then by the chosen subset, then lexicographically.
inline std::vector<CyclicSequence> cyclic_sequences(std::vector<int> cells) {
    if (cells.empty()) throw PreconditionError("cyclic sequences need a nonempty cell set");
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    const int n = static_cast<int>(cells.size());
    if (n > 20) throw PreconditionError("too many cells for cyclic enumeration");
    std::vector<CyclicSequence> out;
    for (int m = 1; m <= n; ++m) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + m, true);
        do {
            std::vector<int> chosen;
            for (int i = 0; i < n; ++i)
                if (pick[i]) chosen.push_back(cells[i]);
            // Fixing the smallest element first leaves (m-1)! orders of the rest.
            do {
                out.push_back(chosen);
            } while (std::next_permutation(chosen.begin() + 1, chosen.end()));
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return out;
}

/// sum_{u in users} d_u <= bound, with users as sorted flat indices.
template <Scalar T>
struct LinearConstraint {
    std::vector<int> users;
    T bound{};

    friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
    friend bool operator<(const LinearConstraint& a, const LinearConstraint& b) {
        if (a.users != b.users) return a.users < b.users;
        return ScalarTraits<T>::less(a.bound, b.bound);
    }
};

/// d >= 0, d_u = 0 for zero-forced users, and every listed constraint.
template <Scalar T>
struct PolyhedralRegion {
    int dimension = 0;
    std::vector<int> zero;
    std::vector<LinearConstraint<T>> constraints;

    bool nonempty() const {
        return std::all_of(constraints.begin(), constraints.end(), [](const auto& c) {
            return ScalarTraits<T>::leq(T(0), c.bound);
        });
    }
};

/// Constraint lists compared as sets, ignoring generation order.
template <Scalar T>
bool same_constraint_set(const PolyhedralRegion<T>& a, const PolyhedralRegion<T>& b) {
    if (a.dimension != b.dimension || a.zero != b.zero) return false;
    auto x = a.constraints, y = b.constraints;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    y.erase(std::unique(y.begin(), y.end()), y.end());
    return x == y;
}

namespace detail {

template <Scalar T>
void check_subnet_order(const BasicChannelStrengths<T>& net, const DecodingOrder& order,
                        const Subnetwork& S) {
    if (static_cast<int>(S.slots.size()) != net.cells() ||
        static_cast<int>(order.perm.size()) != net.cells()) {
        throw DimensionError("subnetwork and order must list every cell");
    }
    for (int k = 0; k < net.cells(); ++k) {
        for (int s : S.slots[k]) {
            if (s < 0 || s >= net.users_in(k)) {
                throw DimensionError("subnetwork slot out of range in cell " + std::to_string(k + 1));
            }
        }
        if (!std::is_sorted(S.slots[k].begin(), S.slots[k].end()) ||
            std::adjacent_find(S.slots[k].begin(), S.slots[k].end()) != S.slots[k].end()) {
            throw DimensionError("subnetwork slots must be ascending and distinct");
        }
        auto p = order.perm[k];
        std::sort(p.begin(), p.end());
        if (p != S.slots[k]) {
            throw PreconditionError("decoding order of cell " + std::to_string(k + 1) +
                                    " is not a bijection onto its subnetwork users");
        }
    }
}

/// Visits every tuple (l_1..l_m) with 1 <= l_j <= limits[j], last index fastest.
template <class F>
void for_each_prefix_choice(const std::vector<int>& limits, F&& f) {
    std::vector<int> l(limits.size(), 1);
    for (;;) {
        f(l);
        int j = static_cast<int>(l.size()) - 1;
        while (j >= 0 && l[j] == limits[j]) l[j--] = 1;
        if (j < 0) return;
        ++l[j];
    }
}

}  // namespace detail

/// Region of a subnetwork S decoded in the order `order`, where
/// order.perm[k] lists exactly the slots of S_k in decoding order.
template <Scalar T>
PolyhedralRegion<T> polyhedral_region(const BasicChannelStrengths<T>& net,
                                      const DecodingOrder& order, const Subnetwork& S) {
    detail::check_subnet_order(net, order, S);
    PolyhedralRegion<T> reg;
    reg.dimension = net.total_users();
    for (int k = 0; k < net.cells(); ++k)
        for (int l = 0; l < net.users_in(k); ++l)
            if (!S.contains(k, l)) reg.zero.push_back(net.flat(k, l));

    auto prefix_users = [&](int cell, int len, std::vector<int>& into) {
        for (int s = 0; s < len; ++s) into.push_back(net.flat(cell, order.perm[cell][s]));
    };

    const auto M = S.active_cells();
    for (int i : M) {
        for (int l = 1; l <= static_cast<int>(S.slots[i].size()); ++l) {
            LinearConstraint<T> c;
            prefix_users(i, l, c.users);
            std::sort(c.users.begin(), c.users.end());
            c.bound = net.direct(i, order.perm[i][l - 1]);
            reg.constraints.push_back(std::move(c));
        }
    }
    if (M.empty()) return reg;

    for (const auto& seq : cyclic_sequences(M)) {
        const int m = static_cast<int>(seq.size());
        if (m < 2) continue;
        std::vector<int> limits;
        for (int c : seq) limits.push_back(static_cast<int>(S.slots[c].size()));
        detail::for_each_prefix_choice(limits, [&](const std::vector<int>& l) {
            LinearConstraint<T> c;
            c.bound = T(0);
            for (int j = 0; j < m; ++j) {
                const int cell = seq[j];
                const int prev = seq[(j + m - 1) % m];
                const int top = order.perm[cell][l[j] - 1];
                prefix_users(cell, l[j], c.users);
                c.bound = c.bound + net.direct(cell, top) - net.alpha(cell, top, prev);
            }
            std::sort(c.users.begin(), c.users.end());
            reg.constraints.push_back(std::move(c));
        });
    }
    return reg;
}

/// Number of constraints `polyhedral_region` emits for S, from the counting formula.
inline long long expected_constraint_count(const Subnetwork& S) {
    long long n = 0;
    for (const auto& c : S.slots) n += static_cast<long long>(c.size());
    const auto M = S.active_cells();
    const int m = static_cast<int>(M.size());
    // Sum over subsets of size >= 2 of (size-1)! * product of |S_i|.
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
        int size = 0;
        long long prod = 1;
        for (int b = 0; b < m; ++b) {
            if (mask & (1u << b)) {
                ++size;
                prod *= static_cast<long long>(S.slots[M[b]].size());
            }
        }
        if (size < 2) continue;
        long long fact = 1;
        for (int f = 2; f < size; ++f) fact *= f;
        n += fact * prod;
    }
    return n;
}

enum class RegimeLabel { TIN, CTIN_ONLY, GENERAL };

inline const char* regime_name(RegimeLabel r) {
    switch (r) {
        case RegimeLabel::TIN: return "TIN";
        case RegimeLabel::CTIN_ONLY: return "CTIN_ONLY";
        default: return "GENERAL";
    }
}

template <Scalar T>
bool ctin_conditions_hold(const BasicChannelStrengths<T>& net) {
    using Tr = ScalarTraits<T>;
    const int K = net.cells();
    for (int i = 0; i < K; ++i) {
        for (int j = 0; j < K; ++j) {
            if (j == i) continue;
            for (int l = 0; l < net.users_in(i); ++l) {
                for (int lp = 0; lp < l; ++lp) {
                    T rhs = net.alpha(i, l, j) + net.direct(i, lp) - net.alpha(i, lp, j);
                    if (!Tr::leq(rhs, net.direct(i, l))) return false;
                }
            }
            for (int k = 0; k < K; ++k) {
                if (k == i) continue;
                for (int lk = 0; lk < net.users_in(k); ++lk) {
                    T rhs = net.alpha(i, 0, j) + net.alpha(k, lk, i);
                    if (k != j) rhs = rhs - net.alpha(k, lk, j);
                    if (!Tr::leq(rhs, net.direct(i, 0))) return false;
                }
            }
        }
    }
    return true;
}

template <Scalar T>
bool tin_conditions_hold(const BasicChannelStrengths<T>& net) {
    using Tr = ScalarTraits<T>;
    const int K = net.cells();
    for (int i = 0; i < K; ++i) {
        for (int j = 0; j < K; ++j) {
            if (j == i) continue;
            for (int l = 0; l < net.users_in(i); ++l) {
                const T& a = net.direct(i, l);
                const T& b = net.alpha(i, l, j);
                for (int lp = 0; lp < l; ++lp) {
                    const T& ap = net.direct(i, lp);
                    const T& bp = net.alpha(i, lp, j);
                    if (!Tr::leq(b + ap, a) && !Tr::leq(b + b + ap - bp, a)) return false;
                }
            }
            for (int k = 0; k < K; ++k) {
                if (k == i) continue;
                for (int lk = 0; lk < net.users_in(k); ++lk) {
                    if (!Tr::leq(net.alpha(i, 0, j) + net.alpha(k, lk, i), net.direct(i, 0))) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

/// Expects a network whose direct strengths ascend in every cell.
template <Scalar T>
RegimeLabel classify_regime(const BasicChannelStrengths<T>& net) {
    if (!validate(net).empty()) {
        throw PreconditionError("direct strengths must ascend within every cell");
    }
    if (tin_conditions_hold(net)) return RegimeLabel::TIN;
    if (ctin_conditions_hold(net)) return RegimeLabel::CTIN_ONLY;
    return RegimeLabel::GENERAL;
}

/// The cross-cell conditions extended from the weakest user to every user
/// of cell i, which the regime conditions are known to imply.
template <Scalar T>
bool implied_conditions_hold(const BasicChannelStrengths<T>& net, RegimeLabel label) {
    if (label == RegimeLabel::GENERAL) {
        throw PreconditionError("implied conditions are defined for the TIN and CTIN regimes only");
    }
    using Tr = ScalarTraits<T>;
    const bool tin = label == RegimeLabel::TIN;
    const int K = net.cells();
    for (int i = 0; i < K; ++i)
        for (int j = 0; j < K; ++j) {
            if (j == i) continue;
            for (int k = 0; k < K; ++k) {
                if (k == i) continue;
                for (int l = 0; l < net.users_in(i); ++l)
                    for (int lk = 0; lk < net.users_in(k); ++lk) {
                        T rhs = net.alpha(i, l, j) + net.alpha(k, lk, i);
                        if (!tin && k != j) rhs = rhs - net.alpha(k, lk, j);
                        if (!Tr::leq(rhs, net.direct(i, l))) return false;
                    }
            }
        }
    return true;
}

template <Scalar T>
bool contains(const PolyhedralRegion<T>& reg, const GDoFTuple<T>& d) {
    using Tr = ScalarTraits<T>;
    if (static_cast<int>(d.size()) != reg.dimension) {
        throw DimensionError("GDoF tuple has wrong length");
    }
    for (const auto& x : d)
        if (Tr::less(x, T(0))) return false;
    for (int u : reg.zero)
        if (!Tr::eq(d[u], T(0))) return false;
    for (const auto& c : reg.constraints) {
        T sum(0);
        for (int u : c.users) sum = sum + d[u];
        if (!Tr::leq(sum, c.bound)) return false;
    }
    return true;
}

/// A (decoding order, subnetwork) pair identifying one polyhedral region.
struct RegionWitness {
    DecodingOrder order;
    Subnetwork subnet;
};

/// Every (order, subnetwork) pair together with its region, in search order:
/// larger subnetworks first, then lexicographic per-cell orders.
template <Scalar T>
struct RegionUnion {
    std::vector<RegionWitness> members;
    std::vector<PolyhedralRegion<T>> regions;
};

template <Scalar T>
RegionUnion<T> enumerate_regions(const BasicChannelStrengths<T>& net,
                                 long long budget = 2'000'000) {
    const int K = net.cells();
    // Candidate subsets per cell as slot lists.
    std::vector<std::vector<std::vector<int>>> subsets(K);
    for (int k = 0; k < K; ++k) {
        const int L = net.users_in(k);
        if (L > 16) throw BudgetExceeded("cell too large for region enumeration");
        for (unsigned mask = 0; mask < (1u << L); ++mask) {
            std::vector<int> v;
            for (int s = 0; s < L; ++s)
                if (mask & (1u << s)) v.push_back(s);
            subsets[k].push_back(std::move(v));
        }
    }
    std::vector<Subnetwork> all;
    std::vector<int> idx(K, 0);
    for (;;) {
        Subnetwork S;
        for (int k = 0; k < K; ++k) S.slots.push_back(subsets[k][idx[k]]);
        all.push_back(std::move(S));
        int k = K - 1;
        while (k >= 0 && idx[k] + 1 == static_cast<int>(subsets[k].size())) idx[k--] = 0;
        if (k < 0) break;
        ++idx[k];
        if (static_cast<long long>(all.size()) > budget) {
            throw BudgetExceeded("more than " + std::to_string(budget) + " subnetworks");
        }
    }
    auto flat_users = [&](const Subnetwork& S) {
        std::vector<int> u;
        for (int k = 0; k < K; ++k)
            for (int s : S.slots[k]) u.push_back(net.flat(k, s));
        return u;
    };
    std::stable_sort(all.begin(), all.end(), [&](const Subnetwork& a, const Subnetwork& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return flat_users(a) < flat_users(b);
    });

    RegionUnion<T> out;
    for (const auto& S : all) {
        DecodingOrder order;
        order.perm = S.slots;
        for (;;) {
            out.members.push_back({order, S});
            out.regions.push_back(polyhedral_region(net, order, S));
            if (static_cast<long long>(out.regions.size()) > budget) {
                throw BudgetExceeded("more than " + std::to_string(budget) + " regions");
            }
            int k = K - 1;
            while (k >= 0 && !std::next_permutation(order.perm[k].begin(), order.perm[k].end())) --k;
            if (k < 0) break;
        }
    }
    return out;
}

template <Scalar T>
struct MembershipResult {
    bool member = false;
    std::optional<RegionWitness> witness;
};

/// Union membership against a prebuilt enumeration; the first containing
/// region in search order is the witness.
template <Scalar T>
MembershipResult<T> tina_region_contains(const RegionUnion<T>& all, const GDoFTuple<T>& d) {
    for (std::size_t r = 0; r < all.regions.size(); ++r) {
        if (contains(all.regions[r], d)) return {true, all.members[r]};
    }
    return {};
}

template <Scalar T>
MembershipResult<T> tina_region_contains(const BasicChannelStrengths<T>& net,
                                         const GDoFTuple<T>& d) {
    if (static_cast<int>(d.size()) != net.total_users()) {
        throw DimensionError("GDoF tuple has wrong length");
    }
    return tina_region_contains(enumerate_regions(net), d);
}

/// Exact LP optimum of w.d over a region. The argmax has full dimension.
template <Scalar T>
LpResult<T> max_weighted_sum(const PolyhedralRegion<T>& reg, const std::vector<T>& w) {
    using Tr = ScalarTraits<T>;
    if (static_cast<int>(w.size()) != reg.dimension) throw DimensionError("weight vector has wrong length");
    for (const auto& x : w)
        if (Tr::less(x, T(0))) throw PreconditionError("weights must be nonnegative");
    if (!reg.nonempty()) throw PreconditionError("region is empty");

    std::vector<int> var_of(reg.dimension, -1);
    std::vector<int> user_of;
    for (int u = 0; u < reg.dimension; ++u) {
        if (!std::binary_search(reg.zero.begin(), reg.zero.end(), u)) {
            var_of[u] = static_cast<int>(user_of.size());
            user_of.push_back(u);
        }
    }
    const int n = static_cast<int>(user_of.size());
    std::vector<std::vector<T>> A;
    std::vector<T> b;
    for (const auto& c : reg.constraints) {
        std::vector<T> row(n, T(0));
        for (int u : c.users)
            if (var_of[u] >= 0) row[var_of[u]] = T(1);
        A.push_back(std::move(row));
        b.push_back(c.bound);
    }
    std::vector<T> cost(n);
    for (int v = 0; v < n; ++v) cost[v] = w[user_of[v]];
    // Users without any constraint would make the LP unbounded.
    for (int v = 0; v < n; ++v) {
        bool covered = std::any_of(A.begin(), A.end(), [&](const auto& row) { return row[v] != T(0); });
        if (!covered && Tr::less(T(0), cost[v])) throw PreconditionError("LP is unbounded");
    }
    auto lp = simplex_max(A, b, cost);
    LpResult<T> out;
    out.value = lp.value;
    out.x.assign(reg.dimension, T(0));
    for (int v = 0; v < n; ++v) out.x[user_of[v]] = lp.x[v];
    return out;
}

/// Largest weighted sum over the union of all nonempty polyhedral regions.
template <Scalar T>
LpResult<T> union_max_weighted_sum(const RegionUnion<T>& all, const std::vector<T>& w) {
    LpResult<T> best;
    bool have = false;
    for (const auto& reg : all.regions) {
        if (!reg.nonempty()) continue;
        auto r = max_weighted_sum(reg, w);
        if (!have || ScalarTraits<T>::less(best.value, r.value)) {
            best = std::move(r);
            have = true;
        }
    }
    return best;
}

/// The GDoF-scale outer bound for a network in the TIN regime: one
/// prefix-sum bound per user of each cell, and one cyclic bound per ordered
/// cycle of two or more cells and per choice of strongest participating user.
template <Scalar T>
PolyhedralRegion<T> outer_bound_region(const BasicChannelStrengths<T>& net) {
    if (classify_regime(net) != RegimeLabel::TIN) {
        throw PreconditionError("the outer bound is only established in the TIN regime");
    }
    const int K = net.cells();
    PolyhedralRegion<T> reg;
    reg.dimension = net.total_users();
    for (int i = 0; i < K; ++i) {
        for (int l = 0; l < net.users_in(i); ++l) {
            LinearConstraint<T> c;
            for (int s = 0; s <= l; ++s) c.users.push_back(net.flat(i, s));
            c.bound = net.direct(i, l);
            reg.constraints.push_back(std::move(c));
        }
    }
    // Ordered cycles: every arrangement whose first cell is its smallest.
    std::vector<int> cells(K);
    std::iota(cells.begin(), cells.end(), 0);
    for (unsigned mask = 0; mask < (1u << K); ++mask) {
        std::vector<int> cyc;
        for (int k = 0; k < K; ++k)
            if (mask & (1u << k)) cyc.push_back(k);
        if (cyc.size() < 2) continue;
        std::sort(cyc.begin(), cyc.end());
        do {
            if (cyc.front() != *std::min_element(cyc.begin(), cyc.end())) continue;
            const int m = static_cast<int>(cyc.size());
            std::vector<int> top(m, 0);
            for (;;) {
                LinearConstraint<T> c;
                c.bound = T(0);
                for (int j = 0; j < m; ++j) {
                    const int cell = cyc[j];
                    const int prev = j == 0 ? cyc[m - 1] : cyc[j - 1];
                    for (int s = 0; s <= top[j]; ++s) c.users.push_back(net.flat(cell, s));
                    c.bound = c.bound + (net.direct(cell, top[j]) - net.alpha(cell, top[j], prev));
                }
                std::sort(c.users.begin(), c.users.end());
                reg.constraints.push_back(std::move(c));
                int j = m - 1;
                while (j >= 0 && top[j] + 1 == net.users_in(cyc[j])) top[j--] = 0;
                if (j < 0) break;
                ++top[j];
            }
        } while (std::next_permutation(cyc.begin(), cyc.end()));
    }
    return reg;
}

/// Interference alignment figures for a two-cell network with two users in
/// cell 1 and one in cell 2.
template <Scalar T>
struct IaReport {
    T d_tina{};
    T gamma_ia{};
    T d_ia{};
    bool applicable = false;
};

template <Scalar T>
IaReport<T> ia_sum_gdof(const BasicChannelStrengths<T>& net) {
    using Tr = ScalarTraits<T>;
    if (net.cells() != 2 || net.users_in(0) != 2 || net.users_in(1) != 1) {
        throw DimensionError("IA figures need two cells with 2 and 1 users");
    }
    const T a1 = net.alpha(0, 0, 0), a2 = net.alpha(0, 0, 1);
    const T b1 = net.alpha(0, 1, 0), b2 = net.alpha(0, 1, 1);
    const T g1 = net.alpha(1, 0, 0), g2 = net.alpha(1, 0, 1);

    IaReport<T> rep;
    rep.d_tina = (b1 - b2) + (g2 - g1);
    rep.gamma_ia = std::min((a1 - a2) - (b1 - b2 - b2), (b1 - b2) - (a1 - a2));
    const bool ctin = validate(net).empty() && ctin_conditions_hold(net);
    const bool tin_strictly_violated = Tr::less(b1 - b2, a1) && Tr::less(b1 - b2 - b2, a1 - a2);
    rep.applicable = ctin && tin_strictly_violated && Tr::leq(b2, a2) &&
                     Tr::less(a1 - a2, b1 - b2);
    rep.d_ia = rep.applicable ? rep.d_tina + rep.gamma_ia : rep.d_tina;
    return rep;
}

/// Users 0..count-1 of `cell` split by whether the strongest of them,
/// after losing its interference from `predecessor`, still sees them below it.
struct UserPartition {
    int cell = 0;
    int predecessor = 0;
    int count = 0;
    std::vector<int> more_noisy;      // ascending, ends with count-1
    std::vector<int> not_more_noisy;  // ascending
};

template <Scalar T>
UserPartition partition_users(const BasicChannelStrengths<T>& net, int cell, int predecessor,
                              int count) {
    if (cell < 0 || cell >= net.cells() || predecessor < 0 || predecessor >= net.cells()) {
        throw DimensionError("cell index out of range");
    }
    if (predecessor == cell) throw PreconditionError("predecessor must differ from the cell");
    if (count < 1 || count > net.users_in(cell)) throw DimensionError("user count out of range");
    UserPartition p{cell, predecessor, count, {}, {}};
    const int l = count - 1;
    const T head = net.direct(cell, l) - net.alpha(cell, l, predecessor);
    for (int s = 0; s < l; ++s) {
        if (ScalarTraits<T>::leq(net.direct(cell, s), head)) {
            p.more_noisy.push_back(s);
        } else {
            p.not_more_noisy.push_back(s);
        }
    }
    p.more_noisy.push_back(l);
    return p;
}

/// Chain conditions between consecutive not-more-noisy users (the strongest
/// participating user closes the chain), and the strict decrease of their
/// interference from the predecessor cell.
template <Scalar T>
bool lemma4_holds(const BasicChannelStrengths<T>& net, const UserPartition& part) {
    using Tr = ScalarTraits<T>;
    std::vector<int> q = part.not_more_noisy;
    q.push_back(part.count - 1);
    auto a = [&](int s) { return net.direct(part.cell, s); };
    auto b = [&](int s) { return net.alpha(part.cell, s, part.predecessor); };
    for (std::size_t s = 0; s + 1 < q.size(); ++s) {
        const int lo = q[s], hi = q[s + 1];
        if (!Tr::less(a(hi) - b(hi), a(lo))) return false;
        if (!Tr::leq(a(lo) - b(lo), a(hi) - b(hi) - b(hi))) return false;
        if (!Tr::less(b(hi), b(lo))) return false;
    }
    return true;
}

// Region file (JSON):
//   { "zero": [[cell, slot], ...],
//     "constraints": [ { "users": [[cell, slot], ...], "bound": number }, ... ] }
// with 1-based cell and slot numbers.
std::string serialize_region(const ChannelStrengths& net, const PolyhedralRegion<Rational>& reg);
std::string serialize_region(const BasicChannelStrengths<double>& net,
                             const PolyhedralRegion<double>& reg);

// Subnetwork file: { "S": [[1-based slots per cell]] }.
Subnetwork parse_subnetwork(std::string_view text, const std::vector<int>& sizes);
// Order file: { "order": [[1-based slots of S_k in decoding order]] }.
DecodingOrder parse_subnet_order(std::string_view text);

}  // namespace tinregion
