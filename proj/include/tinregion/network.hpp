#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "tinregion/scalar.hpp"

namespace tinregion {

/// User (UE) identifier, 1-based as in the usual (slot, cell) notation.
struct UserId {
    int cell = 1;
    int slot = 1;
    friend auto operator<=>(const UserId&, const UserId&) = default;
};

/// Channel strength exponents of a K-cell network.
///
/// `alpha(k, l, i)` is the strength of the link between base station i and
/// user l of cell k (all indices 0-based here). The same number describes the
/// downlink link BS-i -> UE-(l,k) and the uplink link UE-(l,k) -> BS-i.
/// Users are also addressed through a flat, cell-major index which is the
/// layout of every per-user vector in this library.
template <Scalar T>
class BasicChannelStrengths {
public:
    BasicChannelStrengths() = default;

    /// `alpha[k][l][i]`; negative entries are clamped to zero.
    explicit BasicChannelStrengths(std::vector<std::vector<std::vector<T>>> alpha)
        : alpha_(std::move(alpha)) {
        if (alpha_.empty()) {
            throw DimensionError("network needs at least one cell");
        }
        const std::size_t K = alpha_.size();
        offsets_.assign(K + 1, 0);
        for (std::size_t k = 0; k < K; ++k) {
            if (alpha_[k].empty()) {
                throw DimensionError("cell " + std::to_string(k + 1) + " has no users");
            }
            for (auto& row : alpha_[k]) {
                if (row.size() != K) {
                    throw DimensionError("cell " + std::to_string(k + 1) +
                                         ": expected " + std::to_string(K) + " strengths per user");
                }
                for (auto& a : row) {
                    if (a < T(0)) a = T(0);
                }
            }
            offsets_[k + 1] = offsets_[k] + static_cast<int>(alpha_[k].size());
        }
    }

    int cells() const { return static_cast<int>(alpha_.size()); }
    int users_in(int k) const { return static_cast<int>(alpha_[k].size()); }
    int total_users() const { return offsets_.back(); }
    std::vector<int> cell_sizes() const {
        std::vector<int> L;
        for (int k = 0; k < cells(); ++k) L.push_back(users_in(k));
        return L;
    }

    const T& alpha(int k, int l, int i) const { return alpha_[k][l][i]; }
    const T& direct(int k, int l) const { return alpha_[k][l][k]; }
    const T& alpha(UserId u, int tx_cell) const {
        return alpha_[u.cell - 1][u.slot - 1][tx_cell - 1];
    }

    int flat(int k, int l) const { return offsets_[k] + l; }
    int offset(int k) const { return offsets_[k]; }
    /// 0-based (cell, slot) of a flat index.
    std::pair<int, int> unflat(int index) const {
        int k = static_cast<int>(std::upper_bound(offsets_.begin(), offsets_.end(), index) -
                                 offsets_.begin()) - 1;
        return {k, index - offsets_[k]};
    }
    UserId user_id(int index) const {
        auto [k, l] = unflat(index);
        return {k + 1, l + 1};
    }

    T max_alpha() const {
        T best(0);
        for (const auto& cell : alpha_)
            for (const auto& row : cell)
                for (const auto& a : row) best = std::max(best, a);
        return best;
    }

    const std::vector<std::vector<std::vector<T>>>& raw() const { return alpha_; }

    template <Scalar U>
    BasicChannelStrengths<U> as() const {
        std::vector<std::vector<std::vector<U>>> out(alpha_.size());
        for (std::size_t k = 0; k < alpha_.size(); ++k) {
            for (const auto& row : alpha_[k]) {
                std::vector<U> r;
                for (const auto& a : row) r.push_back(convert<U>(a));
                out[k].push_back(std::move(r));
            }
        }
        return BasicChannelStrengths<U>(std::move(out));
    }

    friend bool operator==(const BasicChannelStrengths& a, const BasicChannelStrengths& b) {
        return a.alpha_ == b.alpha_;
    }

private:
    template <Scalar U>
    static U convert(const T& a) {
        if constexpr (std::is_same_v<T, U>) {
            return a;
        } else if constexpr (std::is_same_v<T, Rational>) {
            return scalar_cast<U>(a);
        } else {
            return Rational::from_double(static_cast<double>(a));
        }
    }

    std::vector<std::vector<std::vector<T>>> alpha_;
    std::vector<int> offsets_{0};
};

/// Strengths as parsed from decimal text: exact.
using ChannelStrengths = BasicChannelStrengths<Rational>;

/// Per-cell stable sort permutation produced by `canonicalize`.
/// `sorted_to_original[k][s]` is the 0-based original slot now at slot s.
struct CanonicalizationRecord {
    std::vector<std::vector<int>> sorted_to_original;

    bool is_identity() const {
        for (const auto& p : sorted_to_original)
            for (std::size_t s = 0; s < p.size(); ++s)
                if (p[s] != static_cast<int>(s)) return false;
        return true;
    }
    friend bool operator==(const CanonicalizationRecord&, const CanonicalizationRecord&) = default;
};

/// A pair of adjacent slots (1-based) in one cell whose direct strengths descend.
struct OrderViolation {
    int cell = 0;
    int lower_slot = 0;
    int upper_slot = 0;
    friend bool operator==(const OrderViolation&, const OrderViolation&) = default;
};

/// Checks that direct strengths ascend within every cell. An empty result means ok.
template <Scalar T>
std::vector<OrderViolation> validate(const BasicChannelStrengths<T>& net) {
    std::vector<OrderViolation> out;
    for (int k = 0; k < net.cells(); ++k) {
        for (int l = 0; l + 1 < net.users_in(k); ++l) {
            if (ScalarTraits<T>::less(net.direct(k, l + 1), net.direct(k, l))) {
                out.push_back({k + 1, l + 1, l + 2});
            }
        }
    }
    return out;
}

template <Scalar T>
std::pair<BasicChannelStrengths<T>, CanonicalizationRecord> canonicalize(
    const BasicChannelStrengths<T>& net) {
    auto alpha = net.raw();
    CanonicalizationRecord record;
    for (int k = 0; k < net.cells(); ++k) {
        std::vector<int> perm(net.users_in(k));
        std::iota(perm.begin(), perm.end(), 0);
        std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) {
            return net.direct(k, a) < net.direct(k, b);
        });
        for (std::size_t s = 0; s < perm.size(); ++s) {
            alpha[k][s] = net.raw()[k][perm[s]];
        }
        record.sorted_to_original.push_back(std::move(perm));
    }
    return {BasicChannelStrengths<T>(std::move(alpha)), std::move(record)};
}

// Network file (JSON):
//   { "K": int, "L": [int, ...], "alpha": [[[a_{k,l,i} for i] for l] for k] }
// where alpha[k][l][i] (0-based) is the strength from BS i+1 to UE (l+1, k+1).
ChannelStrengths parse_network(std::string_view text);
std::string serialize_network(const ChannelStrengths& net);

}  // namespace tinregion
