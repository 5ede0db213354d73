#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "tinregion/adt.hpp"
#include "tinregion/duality.hpp"
#include "tinregion/oracle.hpp"
#include "tinregion/regions.hpp"

using namespace tinregion;
using testing::R;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

bool leq_all(const GDoFTuple<Rational>& a, const GDoFTuple<Rational>& b) {
    for (std::size_t u = 0; u < a.size(); ++u)
        if (b[u] < a[u]) return false;
    return true;
}

std::vector<int> sizes_k23_l3(std::mt19937_64& rng) { return testing::random_sizes(rng, 2, 3, 3); }

ChannelStrengths sample_ctin(std::mt19937_64& rng, const std::vector<int>& sizes) {
    for (long t = 0; t < 5'000'000; ++t) {
        auto net = testing::random_net(rng, sizes, 50, 200, 60);
        if (classify_regime(net) != RegimeLabel::GENERAL) return net;
    }
    throw std::runtime_error("rejection sampling did not find a CTIN network");
}

Outcome duality_downlink() {
    std::mt19937_64 rng(101);
    long checked = 0, bad = 0;
    for (int n = 0; n < 500; ++n) {
        auto sizes = sizes_k23_l3(rng);
        auto net = testing::random_net(rng, sizes);
        for (int s = 0; s < 5; ++s) {
            auto pi = testing::random_order(rng, sizes);
            auto r = testing::random_power(rng, sizes);
            auto up = dualize_ibc_to_imac(net, pi, r);
            if (!leq_all(gdof_bounds_ibc(net, pi, r), gdof_bounds_imac(net, pi, up))) ++bad;
            ++checked;
        }
    }
    return {bad == 0, std::to_string(checked) + " strategies, " + std::to_string(bad) + " violations"};
}

Outcome duality_uplink() {
    std::mt19937_64 rng(202);
    long checked = 0, bad = 0;
    for (int n = 0; n < 500; ++n) {
        auto sizes = sizes_k23_l3(rng);
        auto net = testing::random_net(rng, sizes);
        for (int s = 0; s < 5; ++s) {
            auto [pi, r] = normalize_imac_strategy(net, testing::random_order(rng, sizes),
                                                   testing::random_power(rng, sizes));
            auto rep = dualize_imac_to_ibc(net, pi, r, false);
            if (!(rep.output.order == pi)) ++bad;
            if (!leq_all(gdof_bounds_imac(net, pi, r), gdof_bounds(net, rep.output))) ++bad;
            ++checked;
        }
    }
    return {bad == 0, std::to_string(checked) + " strategies, " + std::to_string(bad) + " violations"};
}

std::vector<ChannelStrengths> two_one_nets(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ChannelStrengths> nets;
    for (int n = 0; n < 20; ++n) nets.push_back(testing::random_net(rng, {2, 1}));
    return nets;
}

GridSpec<double> double_grid(const BasicChannelStrengths<double>& net, double step) {
    auto g = GridSpec<double>::defaults(net);
    g.step = step;
    return g;
}

Outcome dual_oracle_grid() {
    double worst = 0;
    for (const auto& exact : two_one_nets(303)) {
        auto net = exact.as<double>();
        const std::vector<double> w(3, 1.0);
        auto g = double_grid(net, 0.05);
        double dl = oracle_max_sum(net, Side::Downlink, w, g).value;
        double ul = oracle_max_sum(net, Side::Uplink, w, g).value;
        worst = std::max(worst, std::abs(dl - ul));
    }
    return {worst <= 0.2, "20 nets, max |downlink - uplink| = " + fmt(worst)};
}

Outcome region_soundness() {
    long points = 0, bad = 0;
    for (const auto& net : two_one_nets(404)) {
        auto all = enumerate_regions(net);
        for (const auto& side : {Side::Downlink, Side::Uplink}) {
            for (const auto& d : grid_achievable_points(net, side, GridSpec<Rational>::defaults(net))) {
                ++points;
                if (!tina_region_contains(all, d).member) ++bad;
            }
        }
    }
    return {bad == 0, std::to_string(points) + " grid points, " + std::to_string(bad) + " outside the union"};
}

Outcome region_completeness() {
    double worst_coarse = 0;
    long non_monotone = 0;
    for (const auto& exact : two_one_nets(404)) {
        auto lp = union_max_weighted_sum(enumerate_regions(exact), std::vector<Rational>(3, Rational(1)));
        const double region = to_double(lp.value);
        auto net = exact.as<double>();
        const std::vector<double> w(3, 1.0);
        double coarse = region - oracle_max_sum(net, Side::Downlink, w, double_grid(net, 0.05)).value;
        double fine = region - oracle_max_sum(net, Side::Downlink, w, double_grid(net, 0.025)).value;
        worst_coarse = std::max(worst_coarse, coarse);
        if (fine > coarse + 1e-9 || coarse < -1e-9) ++non_monotone;
    }
    return {worst_coarse <= 0.2 && non_monotone == 0,
            "max gap at 0.05 = " + fmt(worst_coarse) + ", " + std::to_string(non_monotone) +
                " nets where the gap grew or went negative"};
}

Outcome ctin_collapse() {
    std::mt19937_64 rng(606);
    long tuples = 0, bad = 0, inside = 0;
    for (int n = 0; n < 200; ++n) {
        auto sizes = sizes_k23_l3(rng);
        auto net = sample_ctin(rng, sizes);
        auto all = enumerate_regions(net);
        auto single = polyhedral_region(net, DecodingOrder::identity(sizes), Subnetwork::full(net));
        for (int t = 0; t < 100; ++t) {
            // Half the tuples come from a shrunken box so that both answers occur.
            const int scale = t % 2 == 0 ? 100 : net.total_users() * 100;
            GDoFTuple<Rational> d;
            for (int k = 0; k < net.cells(); ++k)
                for (int l = 0; l < net.users_in(k); ++l) {
                    std::uniform_int_distribution<int> U(0, 100);
                    d.push_back(net.direct(k, l) * Rational(U(rng), scale));
                }
            const bool a = tina_region_contains(all, d).member;
            const bool b = contains(single, d);
            inside += a;
            bad += a != b;
            ++tuples;
        }
    }
    return {bad == 0, std::to_string(tuples) + " tuples (" + std::to_string(inside) + " inside), " +
                          std::to_string(bad) + " discrepancies"};
}

std::vector<ChannelStrengths> tin_nets(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<ChannelStrengths> nets;
    for (int n = 0; n < 200; ++n) nets.push_back(testing::sample_regime(rng, sizes_k23_l3(rng), RegimeLabel::TIN));
    return nets;
}

Outcome outer_bound_identity() {
    long bad = 0;
    for (const auto& net : tin_nets(707)) {
        auto inner = polyhedral_region(net, DecodingOrder::identity(net.cell_sizes()), Subnetwork::full(net));
        if (!same_constraint_set(outer_bound_region(net), inner)) ++bad;
    }
    return {bad == 0, "200 TIN nets, " + std::to_string(bad) + " mismatches"};
}

Outcome ia_gain() {
    auto net = testing::two_one_net(testing::Rs({"1.0", "0.5", "1.2", "0.4", "0.2", "1.0"}));
    auto rep = ia_sum_gdof(net);
    bool fixture = rep.d_tina == R("1.6") && rep.gamma_ia == R("0.1") && rep.d_ia == R("1.7") && rep.applicable;
    auto dnet = net.as<double>();
    double oracle = oracle_max_sum(dnet, Side::Downlink, std::vector<double>(3, 1.0), double_grid(dnet, 0.05)).value;
    bool oracle_ok = oracle <= 1.6 + 0.15 + 1e-9;

    std::mt19937_64 rng(808);
    int found = 0, nonpositive = 0;
    for (long t = 0; t < 50'000'000 && found < 100; ++t) {
        auto cand = testing::random_net(rng, {2, 1});
        auto r = ia_sum_gdof(cand);
        if (!r.applicable) continue;
        ++found;
        if (!(Rational(0) < r.gamma_ia)) ++nonpositive;
    }
    return {fixture && oracle_ok && found == 100 && nonpositive == 0,
            "fixture d_TINA=" + rep.d_tina.to_string() + " gamma=" + rep.gamma_ia.to_string() +
                " d_IA=" + rep.d_ia.to_string() + ", oracle=" + fmt(oracle) + ", " + std::to_string(found) +
                " applicable nets, " + std::to_string(nonpositive) + " without gain"};
}

Outcome lemma4() {
    long triples = 0, bad = 0;
    for (const auto& net : tin_nets(909)) {
        for (int k = 0; k < net.cells(); ++k)
            for (int j = 0; j < net.cells(); ++j) {
                if (j == k) continue;
                for (int c = 1; c <= net.users_in(k); ++c) {
                    ++triples;
                    if (!lemma4_holds(net, partition_users(net, k, j, c))) ++bad;
                }
            }
    }
    return {bad == 0, std::to_string(triples) + " triples, " + std::to_string(bad) + " failures"};
}

std::vector<AdtDistribution> product_samples(int q, int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<AdtDistribution> out{AdtDistribution::uniform(q)};
    for (int t = 0; t < n; ++t) out.push_back(AdtDistribution::product_bernoulli(q, rng));
    return out;
}

Outcome adt_less_noisy() {
    AdtParams p{3, 1, 4, 1};
    auto rep = check_less_noisy(p, product_samples(p.q(), 1000, 1010));
    return {rep.min_slack >= -1e-9, std::to_string(rep.checked) + " distributions, min slack " + fmt(rep.min_slack)};
}

Outcome adt_entropy_diff() {
    AdtParams p{4, 2, 4, 1};
    auto rep = check_entropy_diff(p, product_samples(p.q(), 1000, 1111));
    int sets = 0, failed = 0;
    double worst = rep.min_slack;
    for (int m1 = 0; m1 <= 6; ++m1)
        for (int m2 = 0; m2 <= m1; ++m2)
            for (int n1 = 0; n1 <= 6; ++n1)
                for (int n2 = 0; n2 <= n1; ++n2) {
                    AdtParams s{m1, m2, n1, n2};
                    if (s.q() == 0 || !entropy_diff_regime(s)) continue;
                    auto r = check_entropy_diff(s, sample_distributions(s.q(), 60, 1200 + sets));
                    ++sets;
                    worst = std::min(worst, r.min_slack);
                    failed += !r.passed();
                }
    return {rep.min_slack >= -1e-9 && failed == 0,
            "main min slack " + fmt(rep.min_slack) + ", sweep of " + std::to_string(sets) +
                " parameter sets min slack " + fmt(worst)};
}

Outcome finite_snr() {
    auto net = testing::single_bc();
    auto order = DecodingOrder::identity({2});
    PowerAllocation<Rational> r{{{Rational(0), R("-0.6")}}};
    auto d = gdof_bounds_ibc(net, order, r);
    std::vector<double> prev(2, 1e9);
    bool monotone = true;
    double last = 0;
    std::string detail;
    for (long double P : {1e6L, 1e12L, 1e20L}) {
        auto rates = sinr_rates_ibc(net, order, r, {P});
        double worst = 0;
        for (int u = 0; u < 2; ++u) {
            double err = std::abs(static_cast<double>(rates[u].rate / std::log2(P)) - to_double(d[u]));
            if (err > prev[u] + 1e-12) monotone = false;
            prev[u] = err;
            worst = std::max(worst, err);
        }
        last = worst;
        detail += (detail.empty() ? "" : ", ") + fmt(worst);
    }
    return {monotone && last <= 0.05, "max error per P in {1e6,1e12,1e20}: " + detail};
}

Outcome classifier_consistency() {
    std::mt19937_64 rng(1313);
    long counts[3] = {0, 0, 0}, bad = 0;
    for (int n = 0; n < 10'000; ++n) {
        auto sizes = testing::random_sizes(rng, 1, 3, 3);
        // Alternate between the full range and strong direct links so every label shows up.
        auto net = n % 2 == 0 ? testing::random_net(rng, sizes) : testing::random_net(rng, sizes, 50, 200, 60);
        auto label = classify_regime(net);
        ++counts[static_cast<int>(label)];
        if (label == RegimeLabel::TIN && !ctin_conditions_hold(net)) ++bad;
        if (label != RegimeLabel::GENERAL && !implied_conditions_hold(net, label)) ++bad;
    }
    return {bad == 0, "TIN " + std::to_string(counts[0]) + ", CTIN only " + std::to_string(counts[1]) +
                          ", general " + std::to_string(counts[2]) + ", " + std::to_string(bad) +
                          " counterexamples"};
}

}  // namespace

int main() {
    const std::vector<std::function<Outcome()>> criteria{
        duality_downlink, duality_uplink,   dual_oracle_grid, region_soundness, region_completeness,
        ctin_collapse,    outer_bound_identity, ia_gain,    lemma4,           adt_less_noisy,
        adt_entropy_diff, finite_snr,       classifier_consistency};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %zu: %s (%s; %.1fs)\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += !o.pass;
    }
    return failures == 0 ? 0 : 1;
}
