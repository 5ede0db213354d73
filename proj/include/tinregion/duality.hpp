#pragma once

#include <cassert>
#include <utility>

#include "tinregion/strategy.hpp"

namespace tinregion {

/// Outcome of mapping a strategy to its dual side.
template <Scalar T>
struct DualizationReport {
    Strategy<T> input;
    Strategy<T> output;
    /// gamma (downlink input) or gammabar (uplink input), flat per user,
    /// evaluated on the strategy that was actually dualized.
    EffectiveLevels<T> levels;
    /// Set when the uplink input had to be normalized first.
    bool normalized = false;
};

namespace detail {

/// Negated levels as power exponents; silent users stay silent.
template <Scalar T>
PowerAllocation<T> negate_levels(const BasicChannelStrengths<T>& net,
                                 const PowerAllocation<T>& power,
                                 const EffectiveLevels<T>& levels) {
    PowerAllocation<T> out = power;
    for (int k = 0; k < net.cells(); ++k) {
        for (int l = 0; l < net.users_in(k); ++l) {
            if (power.r[k][l]) out.r[k][l] = -levels[net.flat(k, l)];
        }
    }
    return out;
}

/// Received uplink level alpha_kk + rbar, -inf for silent users.
template <Scalar T>
Extended<T> received_level(const BasicChannelStrengths<T>& net, const PowerAllocation<T>& power,
                           int k, int slot) {
    return ext_add(power.r[k][slot], net.direct(k, slot));
}

/// a >= b on the extended line, with -inf >= -inf.
template <Scalar T>
bool ext_geq(const Extended<T>& a, const Extended<T>& b) {
    if (!b) return true;
    if (!a) return false;
    return ScalarTraits<T>::leq(*b, *a);
}

}  // namespace detail

/// Uplink powers rbar = -gamma for a downlink strategy.
template <Scalar T>
PowerAllocation<T> dualize_ibc_to_imac(const BasicChannelStrengths<T>& net,
                                       const DecodingOrder& order,
                                       const PowerAllocation<T>& power) {
    return detail::negate_levels(net, power, gamma_ibc(net, order, power));
}

/// True iff, in every cell, users later in the decoding order are received
/// at least as strongly at their base station as users earlier in it.
template <Scalar T>
bool satisfies_received_power_order(const BasicChannelStrengths<T>& net,
                                    const DecodingOrder& order, const PowerAllocation<T>& power) {
    detail::check_strategy(net, order, power);
    for (int k = 0; k < net.cells(); ++k) {
        const auto& pi = order.perm[k];
        for (int lo = 0; lo < net.users_in(k); ++lo) {
            for (int hi = lo + 1; hi < net.users_in(k); ++hi) {
                if (!detail::ext_geq(detail::received_level(net, power, k, pi[hi]),
                                     detail::received_level(net, power, k, pi[lo]))) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Repairs received-power order violations of an uplink strategy.
///
/// The first violating adjacent pair (by cell, then lower position) has its
/// decode positions swapped and the weaker user, which could not get any
/// GDoF, is silenced. Repeats until no violation is left. Only adjacent pairs
/// are swapped: moving a user across intermediate positions would expose it
/// to their interference and could shrink its bound.
template <Scalar T>
std::pair<DecodingOrder, PowerAllocation<T>> normalize_imac_strategy(
    const BasicChannelStrengths<T>& net, const DecodingOrder& order,
    const PowerAllocation<T>& power) {
    detail::check_strategy(net, order, power);
    DecodingOrder pi = order;
    PowerAllocation<T> r = power;
    // Each step silences an active user or moves a silent one earlier.
    const int n = net.total_users();
    const int step_cap = (n + 1) * n * n + 1;
    int steps = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int k = 0; k < net.cells() && !changed; ++k) {
            auto& p = pi.perm[k];
            for (int pos = 0; pos + 1 < net.users_in(k); ++pos) {
                auto lower = detail::received_level(net, r, k, p[pos]);
                auto upper = detail::received_level(net, r, k, p[pos + 1]);
                if (!detail::ext_geq(upper, lower)) {
                    std::swap(p[pos], p[pos + 1]);
                    r.r[k][p[pos]] = std::nullopt;
                    changed = true;
                    break;
                }
            }
        }
        if (changed && ++steps > step_cap) {
            assert(false && "normalization failed to terminate");
            throw std::logic_error("normalization failed to terminate");
        }
    }
    return {std::move(pi), std::move(r)};
}

/// Downlink dual of an uplink strategy: r = -gammabar. Unless disabled, an
/// uplink strategy violating the received-power order is normalized first,
/// which may change the decoding order carried in the output.
template <Scalar T>
DualizationReport<T> dualize_imac_to_ibc(const BasicChannelStrengths<T>& net,
                                         const DecodingOrder& order,
                                         const PowerAllocation<T>& power,
                                         bool auto_normalize = true) {
    DualizationReport<T> rep;
    rep.input = {Side::Uplink, order, power};
    DecodingOrder pi = order;
    PowerAllocation<T> r = power;
    if (auto_normalize && !satisfies_received_power_order(net, order, power)) {
        std::tie(pi, r) = normalize_imac_strategy(net, order, power);
        rep.normalized = true;
    }
    rep.levels = gamma_imac(net, pi, r);
    rep.output = {Side::Downlink, pi, detail::negate_levels(net, r, rep.levels)};
    return rep;
}

/// Same report shape for the downlink-to-uplink direction.
template <Scalar T>
DualizationReport<T> dualize_report_ibc(const BasicChannelStrengths<T>& net,
                                        const DecodingOrder& order,
                                        const PowerAllocation<T>& power) {
    DualizationReport<T> rep;
    rep.input = {Side::Downlink, order, power};
    rep.levels = gamma_ibc(net, order, power);
    rep.output = {Side::Uplink, order, detail::negate_levels(net, power, rep.levels)};
    return rep;
}

}  // namespace tinregion
