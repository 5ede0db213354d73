#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "tinregion/network.hpp"

namespace tinregion {

enum class Side { Downlink, Uplink };

inline const char* side_name(Side s) { return s == Side::Downlink ? "ibc" : "imac"; }

/// Per-cell successive decoding order. `perm[k][s]` is the 0-based slot of
/// the user decoded s-th in cell k. The uplink reuses the same permutation;
/// its reversed decoding is already part of the uplink bound.
struct DecodingOrder {
    std::vector<std::vector<int>> perm;

    static DecodingOrder identity(const std::vector<int>& sizes) {
        DecodingOrder o;
        for (int L : sizes) {
            std::vector<int> p(L);
            std::iota(p.begin(), p.end(), 0);
            o.perm.push_back(std::move(p));
        }
        return o;
    }

    /// Throws DimensionError unless every cell holds a permutation of its slots.
    void check(const std::vector<int>& sizes) const {
        if (perm.size() != sizes.size()) {
            throw DimensionError("decoding order has " + std::to_string(perm.size()) +
                                 " cells, network has " + std::to_string(sizes.size()));
        }
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            std::vector<int> p = perm[k];
            std::sort(p.begin(), p.end());
            for (int s = 0; s < sizes[k]; ++s) {
                if (static_cast<int>(p.size()) != sizes[k] || p[s] != s) {
                    throw DimensionError("decoding order of cell " + std::to_string(k + 1) +
                                         " is not a permutation");
                }
            }
        }
    }

    /// position[k][slot] = decode position of that slot.
    std::vector<std::vector<int>> positions() const {
        std::vector<std::vector<int>> pos(perm.size());
        for (std::size_t k = 0; k < perm.size(); ++k) {
            pos[k].assign(perm[k].size(), 0);
            for (std::size_t s = 0; s < perm[k].size(); ++s) pos[k][perm[k][s]] = static_cast<int>(s);
        }
        return pos;
    }

    friend bool operator==(const DecodingOrder&, const DecodingOrder&) = default;
};

/// Per-user transmit power exponent r <= 0, indexed by [cell][slot].
/// An empty optional is a silent user (no power, exponent -inf).
template <Scalar T>
struct PowerAllocation {
    std::vector<std::vector<Extended<T>>> r;

    static PowerAllocation full_power(const std::vector<int>& sizes) {
        PowerAllocation p;
        for (int L : sizes) p.r.emplace_back(L, T(0));
        return p;
    }
    static PowerAllocation all_silent(const std::vector<int>& sizes) {
        PowerAllocation p;
        for (int L : sizes) p.r.emplace_back(L, std::nullopt);
        return p;
    }

    void check(const std::vector<int>& sizes) const {
        if (r.size() != sizes.size()) throw DimensionError("power allocation cell count mismatch");
        for (std::size_t k = 0; k < sizes.size(); ++k) {
            if (static_cast<int>(r[k].size()) != sizes[k]) {
                throw DimensionError("power allocation of cell " + std::to_string(k + 1) +
                                     " has wrong user count");
            }
            for (const auto& x : r[k]) {
                if (x && ScalarTraits<T>::less(T(0), *x)) {
                    throw PreconditionError("power exponents must be <= 0");
                }
            }
        }
    }

    friend bool operator==(const PowerAllocation&, const PowerAllocation&) = default;
};

template <Scalar T>
struct Strategy {
    Side side = Side::Downlink;
    DecodingOrder order;
    PowerAllocation<T> power;
};

/// Flat, cell-major per-user vectors (see BasicChannelStrengths::flat).
template <Scalar T>
using GDoFTuple = std::vector<T>;
template <Scalar T>
using EffectiveLevels = std::vector<T>;

namespace detail {

template <Scalar T>
void check_strategy(const BasicChannelStrengths<T>& net, const DecodingOrder& order,
                    const PowerAllocation<T>& power) {
    auto sizes = net.cell_sizes();
    order.check(sizes);
    power.check(sizes);
}

/// max over users (l_j, j), j != k, of alpha(k, rx_slot, j) + r_j^[l_j]:
/// the strongest inter-cell signal heard by downlink receiver (rx_slot, k).
template <Scalar T>
Extended<T> downlink_intercell(const BasicChannelStrengths<T>& net, const PowerAllocation<T>& p,
                               int k, int rx_slot) {
    Extended<T> best;
    for (int j = 0; j < net.cells(); ++j) {
        if (j == k) continue;
        Extended<T> strongest_power;
        for (const auto& r : p.r[j]) strongest_power = ext_max(strongest_power, r);
        best = ext_max(best, ext_add(strongest_power, net.alpha(k, rx_slot, j)));
    }
    return best;
}

/// max over users (l_j, j), j != k, of alpha(j, l_j, k) + rbar_j^[l_j]:
/// inter-cell interference received by uplink base station k.
template <Scalar T>
Extended<T> uplink_intercell(const BasicChannelStrengths<T>& net, const PowerAllocation<T>& p,
                             int k) {
    Extended<T> best;
    for (int j = 0; j < net.cells(); ++j) {
        if (j == k) continue;
        for (int l = 0; l < net.users_in(j); ++l) {
            best = ext_max(best, ext_add(p.r[j][l], net.alpha(j, l, k)));
        }
    }
    return best;
}

}  // namespace detail

/// Effective interference level of every downlink user:
///   gamma = alpha_kk + max{ max_{later positions} r,
///                           max_{m >= own position} (I_m)^+ - alpha_kk^[pi(m)] }
/// where I_m is the inter-cell interference at the m-th decoder.
template <Scalar T>
EffectiveLevels<T> gamma_ibc(const BasicChannelStrengths<T>& net, const DecodingOrder& order,
                             const PowerAllocation<T>& power) {
    detail::check_strategy(net, order, power);
    EffectiveLevels<T> gamma(net.total_users(), T(0));
    for (int k = 0; k < net.cells(); ++k) {
        const auto& pi = order.perm[k];
        const int L = net.users_in(k);
        std::vector<T> margin(L);  // (I_m)^+ - alpha_kk at position m
        for (int m = 0; m < L; ++m) {
            margin[m] = positive_part(detail::downlink_intercell(net, power, k, pi[m])) -
                        net.direct(k, pi[m]);
        }
        for (int pos = 0; pos < L; ++pos) {
            Extended<T> later;
            for (int q = pos + 1; q < L; ++q) later = ext_max(later, power.r[k][pi[q]]);
            Extended<T> worst;
            for (int m = pos; m < L; ++m) worst = ext_max(worst, Extended<T>(margin[m]));
            gamma[net.flat(k, pi[pos])] = net.direct(k, pi[pos]) + *ext_max(later, worst);
        }
    }
    return gamma;
}

/// Uplink interference level:
///   gammabar = max{0, max_{earlier positions} alpha_kk + rbar, inter-cell}.
template <Scalar T>
EffectiveLevels<T> gamma_imac(const BasicChannelStrengths<T>& net, const DecodingOrder& order,
                              const PowerAllocation<T>& power) {
    detail::check_strategy(net, order, power);
    EffectiveLevels<T> gamma(net.total_users(), T(0));
    for (int k = 0; k < net.cells(); ++k) {
        const auto& pi = order.perm[k];
        Extended<T> inter = detail::uplink_intercell(net, power, k);
        Extended<T> earlier;
        for (int pos = 0; pos < net.users_in(k); ++pos) {
            gamma[net.flat(k, pi[pos])] = positive_part(ext_max(earlier, inter));
            earlier = ext_max(earlier, ext_add(power.r[k][pi[pos]], net.direct(k, pi[pos])));
        }
    }
    return gamma;
}

/// Largest downlink GDoF of every user under a fixed strategy, evaluated
/// directly as the minimum over all decoders of the user's message.
template <Scalar T>
GDoFTuple<T> gdof_bounds_ibc(const BasicChannelStrengths<T>& net, const DecodingOrder& order,
                             const PowerAllocation<T>& power) {
    detail::check_strategy(net, order, power);
    GDoFTuple<T> d(net.total_users(), T(0));
    for (int k = 0; k < net.cells(); ++k) {
        const auto& pi = order.perm[k];
        const int L = net.users_in(k);
        std::vector<Extended<T>> inter(L);
        for (int m = 0; m < L; ++m) inter[m] = detail::downlink_intercell(net, power, k, pi[m]);
        for (int pos = 0; pos < L; ++pos) {
            const Extended<T>& own = power.r[k][pi[pos]];
            if (!own) continue;
            Extended<T> later;
            for (int q = pos + 1; q < L; ++q) later = ext_max(later, power.r[k][pi[q]]);
            Extended<T> best;
            for (int m = pos; m < L; ++m) {
                const T& a = net.direct(k, pi[m]);
                T noise = positive_part(ext_max(ext_add(later, a), inter[m]));
                T term = a + *own - noise;
                best = best ? std::min(*best, term) : term;
            }
            d[net.flat(k, pi[pos])] = positive_part(best);
        }
    }
    return d;
}

/// Largest uplink GDoF of every user under a fixed strategy.
template <Scalar T>
GDoFTuple<T> gdof_bounds_imac(const BasicChannelStrengths<T>& net, const DecodingOrder& order,
                              const PowerAllocation<T>& power) {
    detail::check_strategy(net, order, power);
    GDoFTuple<T> d(net.total_users(), T(0));
    for (int k = 0; k < net.cells(); ++k) {
        const auto& pi = order.perm[k];
        Extended<T> inter = detail::uplink_intercell(net, power, k);
        Extended<T> earlier;
        for (int pos = 0; pos < net.users_in(k); ++pos) {
            const int slot = pi[pos];
            const Extended<T>& own = power.r[k][slot];
            if (own) {
                T received = net.direct(k, slot) + *own;
                d[net.flat(k, slot)] = positive_part(
                    Extended<T>(received - positive_part(ext_max(earlier, inter))));
            }
            earlier = ext_max(earlier, ext_add(own, net.direct(k, slot)));
        }
    }
    return d;
}

template <Scalar T>
GDoFTuple<T> gdof_bounds(const BasicChannelStrengths<T>& net, const Strategy<T>& s) {
    return s.side == Side::Downlink ? gdof_bounds_ibc(net, s.order, s.power)
                                    : gdof_bounds_imac(net, s.order, s.power);
}

/// True iff 0 <= d <= bounds of the strategy, componentwise.
template <Scalar T>
bool achievable_with_strategy(const BasicChannelStrengths<T>& net, const Strategy<T>& s,
                              const GDoFTuple<T>& d) {
    if (static_cast<int>(d.size()) != net.total_users()) {
        throw DimensionError("GDoF tuple has wrong length");
    }
    auto bound = gdof_bounds(net, s);
    for (std::size_t u = 0; u < d.size(); ++u) {
        if (ScalarTraits<T>::less(d[u], T(0)) || !ScalarTraits<T>::leq(d[u], bound[u])) {
            return false;
        }
    }
    return true;
}

struct FiniteSnrConfig {
    long double P = 1e6L;
};

struct UserRate {
    long double sinr = 0;
    long double rate = 0;  // bits per channel use
};

/// Downlink SINR and rate at nominal power P with per-user powers
/// q = P^r / L_k (silent users get q = 0). Indexed like GDoFTuple.
template <Scalar T>
std::vector<UserRate> sinr_rates_ibc(const BasicChannelStrengths<T>& net,
                                     const DecodingOrder& order, const PowerAllocation<T>& power,
                                     FiniteSnrConfig cfg) {
    detail::check_strategy(net, order, power);
    if (!(cfg.P > 1)) throw PreconditionError("nominal power P must exceed 1");
    using LD = long double;
    const LD P = cfg.P;
    auto gain = [&](const T& a) { return std::pow(P, static_cast<LD>(to_double(a))); };

    std::vector<std::vector<LD>> q(net.cells());
    std::vector<LD> cell_power(net.cells(), 0);
    for (int k = 0; k < net.cells(); ++k) {
        for (int l = 0; l < net.users_in(k); ++l) {
            const auto& r = power.r[k][l];
            LD v = r ? std::pow(P, static_cast<LD>(to_double(*r))) / net.users_in(k) : 0;
            q[k].push_back(v);
            cell_power[k] += v;
        }
    }

    std::vector<UserRate> out(net.total_users());
    for (int k = 0; k < net.cells(); ++k) {
        const auto& pi = order.perm[k];
        const int L = net.users_in(k);
        for (int pos = 0; pos < L; ++pos) {
            const int slot = pi[pos];
            if (q[k][slot] == 0) continue;
            LD sinr = std::numeric_limits<LD>::infinity();
            for (int m = pos; m < L; ++m) {
                const int rx = pi[m];
                LD g = gain(net.direct(k, rx));
                LD denom = 1;
                for (int q2 = pos + 1; q2 < L; ++q2) denom += g * q[k][pi[q2]];
                for (int j = 0; j < net.cells(); ++j) {
                    if (j != k) denom += gain(net.alpha(k, rx, j)) * cell_power[j];
                }
                sinr = std::min(sinr, g * q[k][slot] / denom);
            }
            out[net.flat(k, slot)] = {sinr, std::log2(1 + sinr)};
        }
    }
    return out;
}

// Strategy file (JSON):
//   { "side": "ibc"|"imac", "order": [[1-based perm per cell]],
//     "r": [[number or "off" per user slot]] }
Strategy<Rational> parse_strategy(std::string_view text, const std::vector<int>& sizes);
std::string serialize_strategy(const Strategy<Rational>& s);

}  // namespace tinregion
