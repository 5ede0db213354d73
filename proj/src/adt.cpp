#include "tinregion/adt.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "json.hpp"
#include "tinregion/scalar.hpp"

namespace tinregion {

int AdtParams::q() const { return std::max({m1, m2, n1, n2}); }

void AdtParams::check() const {
    if (m1 < 0 || m2 < 0 || n1 < 0 || n2 < 0) throw PreconditionError("ADT levels must be nonnegative");
    if (m1 < m2 || n1 < n2) throw PreconditionError("ADT levels need m1 >= m2 and n1 >= n2");
}

std::string AdtParams::to_string() const {
    return "(" + std::to_string(m1) + "," + std::to_string(m2) + "," + std::to_string(n1) + "," +
           std::to_string(n2) + ")";
}

AdtDistribution AdtDistribution::uniform(int q) {
    const std::size_t n = std::size_t{1} << q;
    return {std::vector<double>(n, 1.0 / n), std::vector<double>(n, 1.0 / n)};
}

AdtDistribution AdtDistribution::point(int q, BitVector x1, BitVector x2) {
    const std::size_t n = std::size_t{1} << q;
    AdtDistribution d{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    d.p1.at(x1) = 1.0;
    d.p2.at(x2) = 1.0;
    return d;
}

namespace {

std::vector<double> bernoulli_table(int q, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> bit(q);
    for (auto& b : bit) b = U(rng);
    std::vector<double> t(std::size_t{1} << q, 1.0);
    for (std::size_t x = 0; x < t.size(); ++x) {
        for (int i = 0; i < q; ++i) t[x] *= (x >> i) & 1u ? bit[i] : 1.0 - bit[i];
    }
    return t;
}

std::vector<double> weight_table(int q, std::mt19937_64& rng) {
    std::exponential_distribution<double> E(1.0);
    std::vector<double> t(std::size_t{1} << q);
    double sum = 0;
    for (auto& v : t) sum += (v = E(rng));
    for (auto& v : t) v /= sum;
    return t;
}

double entropy_of_sparse(const std::unordered_map<std::uint64_t, double>& m) {
    double h = 0;
    for (const auto& [k, p] : m)
        if (p > 0) h -= p * std::log2(p);
    return h;
}

struct Support {
    std::vector<BitVector> x;
    std::vector<double> p;
};

Support support_of(const std::vector<double>& table) {
    Support s;
    for (std::size_t v = 0; v < table.size(); ++v) {
        if (table[v] > 0) {
            s.x.push_back(static_cast<BitVector>(v));
            s.p.push_back(table[v]);
        }
    }
    return s;
}

/// Mass table of (x >> shift) under `table`.
std::vector<double> pushforward(const std::vector<double>& table, int shift) {
    std::vector<double> out(table.size(), 0.0);
    for (std::size_t v = 0; v < table.size(); ++v) out[downshift(static_cast<BitVector>(v), shift)] += table[v];
    return out;
}

/// Distribution of (x1 >> s1) ^ (x2 >> s2) for independent x1, x2.
std::vector<double> xor_output(const Support& a, const Support& b, int s1, int s2, std::size_t n) {
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        const BitVector u = downshift(a.x[i], s1);
        for (std::size_t j = 0; j < b.x.size(); ++j) out[u ^ downshift(b.x[j], s2)] += a.p[i] * b.p[j];
    }
    return out;
}

/// I(x1; (x1 >> s1) ^ (x2 >> s2)) from the joint table of (x1, y).
double mi_direct(const Support& a, const Support& b, int s1, int s2, int q,
                 const std::vector<double>& p1, double h_y) {
    const std::size_t n = std::size_t{1} << q;
    std::vector<double> joint(n * n, 0.0);
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        const BitVector u = downshift(a.x[i], s1);
        for (std::size_t j = 0; j < b.x.size(); ++j) {
            joint[static_cast<std::size_t>(a.x[i]) * n + (u ^ downshift(b.x[j], s2))] += a.p[i] * b.p[j];
        }
    }
    return entropy(p1) + h_y - entropy(joint);
}

void check_q(const AdtParams& p, const AdtLimits& lim) {
    p.check();
    if (p.q() > lim.q_cap) {
        throw BudgetExceeded("ADT depth q=" + std::to_string(p.q()) + " exceeds the cap " +
                             std::to_string(lim.q_cap));
    }
}

}  // namespace

AdtDistribution AdtDistribution::product_bernoulli(int q, std::mt19937_64& rng) {
    auto a = bernoulli_table(q, rng);
    auto b = bernoulli_table(q, rng);
    return {std::move(a), std::move(b)};
}

AdtDistribution AdtDistribution::random_table(int q, std::mt19937_64& rng) {
    auto a = weight_table(q, rng);
    auto b = weight_table(q, rng);
    return {std::move(a), std::move(b)};
}

void AdtDistribution::check(int q) const {
    const std::size_t n = std::size_t{1} << q;
    for (const auto* t : {&p1, &p2}) {
        if (t->size() != n) throw PreconditionError("ADT distribution table must have 2^q entries");
        double sum = 0;
        for (double v : *t) {
            if (v < 0) throw PreconditionError("ADT probabilities must be nonnegative");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-12) throw PreconditionError("ADT marginal does not sum to 1");
    }
}

BitVector downshift(BitVector x, int t) { return t >= 32 ? 0 : x >> t; }

std::pair<BitVector, BitVector> adt_output(const AdtParams& p, BitVector x1, BitVector x2) {
    const int q = p.q();
    return {downshift(x1, q - p.m1) ^ downshift(x2, q - p.m2),
            downshift(x1, q - p.n1) ^ downshift(x2, q - p.n2)};
}

double entropy(const std::vector<double>& mass) {
    double h = 0;
    for (double p : mass)
        if (p > 0) h -= p * std::log2(p);
    return h;
}

AdtQuantities adt_quantities(const AdtParams& p, const AdtDistribution& dist) {
    check_q(p, {});
    const int q = p.q();
    dist.check(q);
    const std::size_t n = std::size_t{1} << q;
    const auto a = support_of(dist.p1), b = support_of(dist.p2);
    AdtQuantities r;
    r.h_ya = entropy(xor_output(a, b, q - p.m1, q - p.m2, n));
    r.h_yb = entropy(xor_output(a, b, q - p.n1, q - p.n2, n));
    r.i_x1_ya = mi_direct(a, b, q - p.m1, q - p.m2, q, dist.p1, r.h_ya);
    r.i_x1_yb = mi_direct(a, b, q - p.n1, q - p.n2, q, dist.p1, r.h_yb);
    r.i_x1_ya_chain = r.h_ya - entropy(pushforward(dist.p2, q - p.m2));

    std::unordered_map<std::uint64_t, double> in, all;
    for (std::size_t i = 0; i < a.x.size(); ++i) {
        for (std::size_t j = 0; j < b.x.size(); ++j) {
            const double m = a.p[i] * b.p[j];
            auto [ya, yb] = adt_output(p, a.x[i], b.x[j]);
            const std::uint64_t key_in = (std::uint64_t{a.x[i]} << q) | b.x[j];
            in[key_in] += m;
            all[(((key_in << q) | ya) << q) | yb] += m;
        }
    }
    r.h_out_given_in = entropy_of_sparse(all) - entropy_of_sparse(in);
    return r;
}

bool less_noisy_regime(const AdtParams& p) { return p.n1 - p.n2 >= p.m1; }

bool entropy_diff_regime(const AdtParams& p) {
    return p.n1 - 2 * p.n2 >= p.m1 - p.m2 && p.n2 <= p.m2;
}

AdtReport check_less_noisy(const AdtParams& p, const std::vector<AdtDistribution>& dists,
                           AdtLimits lim) {
    check_q(p, lim);
    if (!less_noisy_regime(p)) throw PreconditionError("less-noisy check needs n1 - n2 >= m1");
    const int q = p.q();
    const std::size_t n = std::size_t{1} << q;
    AdtReport rep{"lessnoisy", p, 0, 0.0, -1, {}};
    for (std::size_t k = 0; k < dists.size(); ++k) {
        dists[k].check(q);
        const auto a = support_of(dists[k].p1), b = support_of(dists[k].p2);
        const double ha = entropy(xor_output(a, b, q - p.m1, q - p.m2, n));
        const double hb = entropy(xor_output(a, b, q - p.n1, q - p.n2, n));
        const double slack = mi_direct(a, b, q - p.n1, q - p.n2, q, dists[k].p1, hb) -
                             mi_direct(a, b, q - p.m1, q - p.m2, q, dists[k].p1, ha);
        if (rep.worst_index < 0 || slack < rep.min_slack) {
            rep.min_slack = slack;
            rep.worst_index = static_cast<int>(k);
        }
        ++rep.checked;
    }
    if (rep.worst_index >= 0) rep.worst = dists[rep.worst_index];
    return rep;
}

AdtReport check_entropy_diff(const AdtParams& p, const std::vector<AdtDistribution>& dists,
                             AdtLimits lim) {
    check_q(p, lim);
    if (!entropy_diff_regime(p)) {
        throw PreconditionError("entropy-difference check needs n1 - 2 n2 >= m1 - m2 and n2 <= m2");
    }
    const int q = p.q();
    const std::size_t n = std::size_t{1} << q;
    AdtReport rep{"entropydiff", p, 0, 0.0, -1, {}};
    for (std::size_t k = 0; k < dists.size(); ++k) {
        dists[k].check(q);
        const auto a = support_of(dists[k].p1), b = support_of(dists[k].p2);
        const double ha = entropy(xor_output(a, b, q - p.m1, q - p.m2, n));
        const double hb = entropy(xor_output(a, b, q - p.n1, q - p.n2, n));
        const double slack = (p.m2 - p.n2) - (ha - hb);
        if (rep.worst_index < 0 || slack < rep.min_slack) {
            rep.min_slack = slack;
            rep.worst_index = static_cast<int>(k);
        }
        ++rep.checked;
    }
    if (rep.worst_index >= 0) rep.worst = dists[rep.worst_index];
    return rep;
}

std::vector<AdtDistribution> sample_distributions(int q, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<AdtDistribution> out{AdtDistribution::uniform(q)};
    for (int t = 0; t < trials; ++t) {
        if (t % 2 == 1 && q <= 6) {
            out.push_back(AdtDistribution::random_table(q, rng));
        } else {
            out.push_back(AdtDistribution::product_bernoulli(q, rng));
        }
    }
    return out;
}

std::string serialize_adt_report(const AdtReport& r) {
    nlohmann::json doc;
    doc["mode"] = r.mode;
    doc["params"] = {r.params.m1, r.params.m2, r.params.n1, r.params.n2};
    doc["checked"] = r.checked;
    doc["min_slack"] = r.min_slack;
    doc["passed"] = r.passed();
    if (r.worst_index >= 0) {
        doc["worst_case_dist"] = {{"index", r.worst_index}, {"p1", r.worst.p1}, {"p2", r.worst.p2}};
    } else {
        doc["worst_case_dist"] = nullptr;
    }
    return doc.dump();
}

}  // namespace tinregion
