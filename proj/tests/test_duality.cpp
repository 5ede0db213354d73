#include "doctest.h"
#include "support.hpp"
#include "tinregion/duality.hpp"

using namespace tinregion;
using namespace testing;

namespace {

using Q = Rational;
using X = Extended<Q>;

PowerAllocation<Q> power(std::vector<std::vector<X>> r) { return PowerAllocation<Q>{std::move(r)}; }

bool dominates(const std::vector<Q>& hi, const std::vector<Q>& lo) {
    for (std::size_t u = 0; u < hi.size(); ++u)
        if (hi[u] < lo[u]) return false;
    return true;
}

}  // namespace

TEST_SUITE("duality") {

TEST_CASE("downlink to uplink") {
    CHECK(dualize_ibc_to_imac(p2p(), DecodingOrder::identity({1}), power({{Q(0)}})).r[0][0] == X(Q(0)));
    auto r = dualize_ibc_to_imac(single_bc(), DecodingOrder::identity({2}), power({{Q(0), R("-0.6")}}));
    CHECK(r.r[0] == std::vector<X>{Q(0), Q(0)});
    auto silent = dualize_ibc_to_imac(single_bc(), DecodingOrder::identity({2}), power({{std::nullopt, Q(0)}}));
    CHECK_FALSE(silent.r[0][0].has_value());

    auto net = net_a();
    auto sizes = net.cell_sizes();
    auto id = DecodingOrder::identity(sizes);
    auto full = PowerAllocation<Q>::full_power(sizes);
    auto up = dualize_ibc_to_imac(net, id, full);
    CHECK(dominates(gdof_bounds_imac(net, id, up), gdof_bounds_ibc(net, id, full)));
}

TEST_CASE("uplink to downlink") {
    auto rep = dualize_imac_to_ibc(p2p(), DecodingOrder::identity({1}), power({{Q(0)}}));
    CHECK(rep.output.power.r[0][0] == X(Q(0)));
    auto bc = dualize_imac_to_ibc(single_bc(), DecodingOrder::identity({2}), power({{Q(0), Q(0)}}));
    CHECK_FALSE(bc.normalized);
    CHECK(bc.levels == Rs({"0", "0.6"}));
    CHECK(bc.output.power.r[0] == std::vector<X>{Q(0), R("-0.6")});
    CHECK(bc.output.side == Side::Downlink);

    auto net = net_a();
    auto sizes = net.cell_sizes();
    auto id = DecodingOrder::identity(sizes);
    auto full = PowerAllocation<Q>::full_power(sizes);
    auto back = dualize_imac_to_ibc(net, id, dualize_ibc_to_imac(net, id, full));
    CHECK(dominates(gdof_bounds(net, back.output), gdof_bounds_ibc(net, id, full)));
}

TEST_CASE("received-power order") {
    auto id = DecodingOrder::identity({2});
    CHECK(satisfies_received_power_order(single_bc(), id, power({{Q(0), Q(0)}})));
    CHECK_FALSE(satisfies_received_power_order(single_bc(), id, power({{Q(0), R("-0.5")}})));
    CHECK(satisfies_received_power_order(single_bc(), id, power({{Q(0), std::nullopt}})) == false);
    CHECK(satisfies_received_power_order(single_bc(), id, power({{std::nullopt, std::nullopt}})));
    CHECK(satisfies_received_power_order(net_a().as<Q>(), DecodingOrder::identity({2, 1}),
                                         power({{Q(0), Q(0)}, {R("-2")}})));
    auto singles = make_net({{{"1", "0.5"}}, {{"0.7", "0.2"}}});
    CHECK(satisfies_received_power_order(singles, DecodingOrder::identity({1, 1}),
                                         power({{R("-1")}, {std::nullopt}})));
}

TEST_CASE("normalization of a violating uplink strategy") {
    auto net = single_bc();
    auto id = DecodingOrder::identity({2});
    auto p = power({{Q(0), R("-0.5")}});
    auto [order, fixed] = normalize_imac_strategy(net, id, p);
    CHECK(order.perm[0] == std::vector<int>{1, 0});
    CHECK_FALSE(fixed.r[0][1].has_value());
    CHECK(fixed.r[0][0] == X(Q(0)));
    CHECK(satisfies_received_power_order(net, order, fixed));
    CHECK(dominates(gdof_bounds_imac(net, order, fixed), gdof_bounds_imac(net, id, p)));

    auto [o2, p2] = normalize_imac_strategy(net, id, power({{Q(0), Q(0)}}));
    CHECK(o2 == id);
    CHECK(p2 == power({{Q(0), Q(0)}}));
    auto quiet = power({{std::nullopt, std::nullopt}});
    auto [o3, p3] = normalize_imac_strategy(net, id, quiet);
    CHECK(o3 == id);
    CHECK(p3 == quiet);
}

TEST_CASE("normalization only swaps neighbours") {
    // Received levels 0.3, 0.5, 0.2 in decoding order. Exchanging the first
    // and last users directly would put the first user behind the 0.5 user
    // and cost it all of its 0.3 GDoF.
    auto net = make_net({{{"0.5"}, {"0.6"}, {"0.7"}}});
    auto id = DecodingOrder::identity({3});
    auto p = power({{R("-0.2"), R("-0.1"), R("-0.5")}});
    auto before = gdof_bounds_imac(net, id, p);
    CHECK(before == Rs({"0.3", "0.2", "0"}));

    DecodingOrder far{{{2, 1, 0}}};
    auto far_power = power({{R("-0.2"), R("-0.1"), std::nullopt}});
    CHECK(gdof_bounds_imac(net, far, far_power)[0] == Q(0));

    auto [order, fixed] = normalize_imac_strategy(net, id, p);
    CHECK(satisfies_received_power_order(net, order, fixed));
    CHECK(dominates(gdof_bounds_imac(net, order, fixed), before));
}

TEST_CASE("inclusions on random networks") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 300; ++t) {
        auto sizes = random_sizes(rng, 1, 3, 3);
        auto net = random_net(rng, sizes);
        auto o = random_order(rng, sizes);
        auto p = random_power(rng, sizes);

        auto up = dualize_ibc_to_imac(net, o, p);
        for (const auto& c : up.r)
            for (const auto& x : c) CHECK((!x || *x <= Q(0)));
        CHECK(dominates(gdof_bounds_imac(net, o, up), gdof_bounds_ibc(net, o, p)));

        auto [no, np] = normalize_imac_strategy(net, o, p);
        CHECK(satisfies_received_power_order(net, no, np));
        CHECK(dominates(gdof_bounds_imac(net, no, np), gdof_bounds_imac(net, o, p)));

        auto rep = dualize_imac_to_ibc(net, o, p);
        CHECK(dominates(gdof_bounds(net, rep.output), gdof_bounds_imac(net, o, p)));
        CHECK(rep.normalized == !satisfies_received_power_order(net, o, p));
    }
}

TEST_CASE("report for the downlink direction") {
    auto rep = dualize_report_ibc(single_bc(), DecodingOrder::identity({2}), power({{Q(0), R("-0.6")}}));
    CHECK(rep.output.side == Side::Uplink);
    CHECK(rep.levels == Rs({"0", "0"}));
}

}
