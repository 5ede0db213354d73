#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace tinregion {

/// Two-user deterministic channel: receiver a sees levels (m1, m2) of the
/// inputs, receiver b sees (n1, n2).
struct AdtParams {
    int m1 = 0, m2 = 0, n1 = 0, n2 = 0;

    int q() const;
    /// Throws PreconditionError unless m1 >= m2 >= 0 and n1 >= n2 >= 0.
    void check() const;
    std::string to_string() const;
};

/// A bit vector of length q stored as an integer whose most significant of
/// the q bits is position 1 (the top level).
using BitVector = std::uint32_t;

/// Independent inputs: one probability table over the 2^q values per source.
struct AdtDistribution {
    std::vector<double> p1;
    std::vector<double> p2;

    static AdtDistribution uniform(int q);
    static AdtDistribution point(int q, BitVector x1, BitVector x2);
    /// Independent bits, each with its own probability of being 1.
    static AdtDistribution product_bernoulli(int q, std::mt19937_64& rng);
    /// Arbitrary table per source (exponential weights, then normalized).
    static AdtDistribution random_table(int q, std::mt19937_64& rng);

    /// Throws PreconditionError unless both tables have 2^q entries summing to 1.
    void check(int q) const;
};

/// Moves the top q - t bits down by t positions, zero-filling the top.
BitVector downshift(BitVector x, int t);

std::pair<BitVector, BitVector> adt_output(const AdtParams& p, BitVector x1, BitVector x2);

/// Shannon entropy in bits of a mass table, 0 log 0 = 0.
double entropy(const std::vector<double>& mass);

struct AdtQuantities {
    double h_ya = 0, h_yb = 0;
    double i_x1_ya = 0, i_x1_yb = 0;
    /// I(x1; ya) through H(ya) - H(downshifted x2), valid under independence.
    double i_x1_ya_chain = 0;
    /// H(ya, yb | x1, x2), zero for a deterministic channel.
    double h_out_given_in = 0;
};

AdtQuantities adt_quantities(const AdtParams& p, const AdtDistribution& dist);

struct AdtReport {
    std::string mode;
    AdtParams params;
    int checked = 0;
    /// min over distributions of the inequality's slack; negative means violated.
    double min_slack = 0;
    int worst_index = -1;
    AdtDistribution worst;
    bool passed() const { return min_slack >= -1e-9; }
};

struct AdtLimits {
    int q_cap = 8;
};

/// I(x1; yb) - I(x1; ya) >= 0 when n1 - n2 >= m1.
AdtReport check_less_noisy(const AdtParams& p, const std::vector<AdtDistribution>& dists,
                           AdtLimits lim = {});
/// (m2 - n2) - (H(ya) - H(yb)) >= 0 when n1 - 2 n2 >= m1 - m2 and n2 <= m2.
AdtReport check_entropy_diff(const AdtParams& p, const std::vector<AdtDistribution>& dists,
                             AdtLimits lim = {});

bool less_noisy_regime(const AdtParams& p);
bool entropy_diff_regime(const AdtParams& p);

/// Uniform inputs, then `trials` random distributions alternating between
/// product-Bernoulli and (for q <= 6) full tables.
std::vector<AdtDistribution> sample_distributions(int q, int trials, std::uint64_t seed);

std::string serialize_adt_report(const AdtReport& r);

}  // namespace tinregion
