#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tinregion/network.hpp"
#include "tinregion/regions.hpp"
#include "tinregion/strategy.hpp"

namespace testing {

using tinregion::ChannelStrengths;
using tinregion::DecodingOrder;
using tinregion::Extended;
using tinregion::PowerAllocation;
using tinregion::Rational;

inline Rational R(const char* s) { return Rational::parse(s); }

inline std::vector<Rational> Rs(std::initializer_list<const char*> xs) {
    std::vector<Rational> out;
    for (const char* x : xs) out.push_back(R(x));
    return out;
}

inline std::string data_path(const std::string& name) { return std::string(TINREGION_TEST_DATA) + "/" + name; }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// alpha[k][l][i] from decimal strings.
inline ChannelStrengths make_net(const std::vector<std::vector<std::vector<const char*>>>& a) {
    std::vector<std::vector<std::vector<Rational>>> out;
    for (const auto& cell : a) {
        std::vector<std::vector<Rational>> c;
        for (const auto& row : cell) {
            std::vector<Rational> r;
            for (const char* x : row) r.push_back(R(x));
            c.push_back(std::move(r));
        }
        out.push_back(std::move(c));
    }
    return ChannelStrengths(std::move(out));
}

// a = (1,1), b = (2,1), c = (1,2) in (slot, cell) notation; flat order a, b, c.
inline ChannelStrengths net_a() { return make_net({{{"0.6", "0.2"}, {"1.0", "0.1"}}, {{"0.3", "1.0"}}}); }
inline ChannelStrengths net_b() { return make_net({{{"1.0", "0.5"}, {"1.2", "0.4"}}, {{"0.2", "1.0"}}}); }
inline ChannelStrengths single_bc() { return make_net({{{"0.6"}, {"1.0"}}}); }
inline ChannelStrengths p2p(const char* a = "1.0") { return make_net({{{a}}}); }

/// Two-cell network with cell sizes (2, 1) from the six strengths
/// alpha1, alpha2, beta1, beta2, gamma1, gamma2.
inline ChannelStrengths two_one_net(const std::vector<Rational>& v) {
    return ChannelStrengths({{{v[0], v[1]}, {v[2], v[3]}}, {{v[4], v[5]}}});
}

inline Rational grid_value(std::mt19937_64& rng, int lo, int hi) {
    std::uniform_int_distribution<int> U(lo, hi);
    return Rational(U(rng), 100);
}

/// Random network on the 0.01 grid with strengths in [0, 2], direct links
/// sorted ascending per cell.
inline ChannelStrengths random_net(std::mt19937_64& rng, const std::vector<int>& sizes, int direct_lo = 0,
                                   int direct_hi = 200, int cross_hi = 200) {
    const int K = static_cast<int>(sizes.size());
    std::vector<std::vector<std::vector<Rational>>> a(K);
    for (int k = 0; k < K; ++k) {
        for (int l = 0; l < sizes[k]; ++l) {
            std::vector<Rational> row;
            for (int i = 0; i < K; ++i) {
                row.push_back(i == k ? grid_value(rng, direct_lo, direct_hi) : grid_value(rng, 0, cross_hi));
            }
            a[k].push_back(std::move(row));
        }
    }
    return tinregion::canonicalize(ChannelStrengths(std::move(a))).first;
}

inline std::vector<int> random_sizes(std::mt19937_64& rng, int kmin, int kmax, int lmax) {
    std::uniform_int_distribution<int> UK(kmin, kmax), UL(1, lmax);
    std::vector<int> s(UK(rng));
    for (auto& x : s) x = UL(rng);
    return s;
}

inline DecodingOrder random_order(std::mt19937_64& rng, const std::vector<int>& sizes) {
    auto o = DecodingOrder::identity(sizes);
    for (auto& p : o.perm) std::shuffle(p.begin(), p.end(), rng);
    return o;
}

/// Exponents in [-2, 0] on the 0.01 grid, silent with probability 1/8.
inline PowerAllocation<Rational> random_power(std::mt19937_64& rng, const std::vector<int>& sizes) {
    std::uniform_int_distribution<int> U(0, 200), S(0, 7);
    PowerAllocation<Rational> p;
    for (int L : sizes) {
        std::vector<Extended<Rational>> row;
        for (int l = 0; l < L; ++l) {
            if (S(rng) == 0) {
                row.emplace_back(std::nullopt);
            } else {
                row.emplace_back(Rational(-U(rng), 100));
            }
        }
        p.r.push_back(std::move(row));
    }
    return p;
}

/// Rejection sampling of a network with the requested label.
inline ChannelStrengths sample_regime(std::mt19937_64& rng, const std::vector<int>& sizes,
                                      tinregion::RegimeLabel want, long max_tries = 2'000'000) {
    for (long t = 0; t < max_tries; ++t) {
        auto net = random_net(rng, sizes, 50, 200, 60);
        if (tinregion::classify_regime(net) == want) return net;
    }
    throw std::runtime_error("rejection sampling did not find a network");
}

}  // namespace testing
