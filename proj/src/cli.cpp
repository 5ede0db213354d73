#include "tinregion/cli.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tinregion/adt.hpp"
#include "tinregion/duality.hpp"
#include "tinregion/oracle.hpp"
#include "tinregion/regions.hpp"

namespace tinregion::cli {

using nlohmann::json;

namespace {

struct IoError : DomainError {
    using DomainError::DomainError;
    const char* kind() const noexcept override { return "io"; }
};

struct Options {
    std::string net, strategy, side, order = "id", subnet = "all";
    std::string weights, point, grid, rmax, params, mode = "lessnoisy";
    double pnominal = 1e6;
    int trials = 1000;
    long long budget = 100'000'000;
    std::uint64_t seed = 1;
    bool exact = false, use_float = false, csv = false, outer = false, no_normalize = false;
};

/// Everything a command consumed, hashed into the report.
struct Inputs {
    std::string digest_material;

    std::string read(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot read " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        std::string text = ss.str();
        digest_material += '\0';
        digest_material += text;
        return text;
    }
};

std::vector<Rational> parse_list(const std::string& text, const char* what) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(Rational::parse(item));
        } catch (const std::exception&) {
            throw tinregion::ParseError(std::string("bad number in ") + what + ": '" + item + "'");
        }
    }
    return out;
}

template <Scalar T>
std::vector<T> convert_list(const std::vector<Rational>& v) {
    std::vector<T> out;
    for (const auto& x : v) out.push_back(scalar_cast<T>(x));
    return out;
}

template <Scalar T>
PowerAllocation<T> convert_power(const PowerAllocation<Rational>& p) {
    PowerAllocation<T> out;
    for (const auto& cell : p.r) {
        std::vector<Extended<T>> row;
        for (const auto& x : cell) row.push_back(x ? Extended<T>(scalar_cast<T>(*x)) : std::nullopt);
        out.r.push_back(std::move(row));
    }
    return out;
}

template <Scalar T>
json numbers(const std::vector<T>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_double(x));
    return a;
}

json order_json(const DecodingOrder& o) {
    json a = json::array();
    for (const auto& p : o.perm) {
        json cell = json::array();
        for (int s : p) cell.push_back(s + 1);
        a.push_back(std::move(cell));
    }
    return a;
}

template <Scalar T>
json power_json(const PowerAllocation<T>& p) {
    json a = json::array();
    for (const auto& cell : p.r) {
        json row = json::array();
        for (const auto& x : cell) {
            if (x) {
                row.push_back(to_double(*x));
            } else {
                row.push_back("off");
            }
        }
        a.push_back(std::move(row));
    }
    return a;
}

template <Scalar T>
json strategy_json(const Strategy<T>& s) {
    return {{"side", side_name(s.side)}, {"order", order_json(s.order)}, {"r", power_json(s.power)}};
}

template <Scalar T>
std::string exact_text(const T& x) {
    if constexpr (std::is_same_v<T, Rational>) {
        return x.to_string();
    } else {
        std::ostringstream ss;
        ss << std::setprecision(17) << x;
        return ss.str();
    }
}

Side parse_side(const std::string& s) {
    if (s == "ibc") return Side::Downlink;
    if (s == "imac") return Side::Uplink;
    throw tinregion::ParseError("side must be ibc or imac");
}

class Runner {
public:
    Runner(Options o, Inputs& in) : opt_(std::move(o)), in_(in) {}

    ChannelStrengths load_net() { return parse_network(in_.read(opt_.net)); }

    Strategy<Rational> load_strategy(const ChannelStrengths& net) {
        if (opt_.strategy.empty()) throw tinregion::ParseError("--strategy is required");
        auto s = parse_strategy(in_.read(opt_.strategy), net.cell_sizes());
        if (!opt_.side.empty()) s.side = parse_side(opt_.side);
        return s;
    }

    Subnetwork load_subnet(const ChannelStrengths& net) {
        if (opt_.subnet == "all") return Subnetwork::full(net);
        return parse_subnetwork(in_.read(opt_.subnet), net.cell_sizes());
    }

    DecodingOrder load_order(const Subnetwork& S) {
        if (opt_.order == "id") {
            DecodingOrder o;
            o.perm = S.slots;
            return o;
        }
        return parse_subnet_order(in_.read(opt_.order));
    }

    bool exact(bool by_default) const {
        if (opt_.exact && opt_.use_float) throw tinregion::ParseError("--exact and --float exclude each other");
        if (opt_.exact) return true;
        if (opt_.use_float) return false;
        return by_default;
    }

    json validate() {
        auto net = load_net();
        auto v = tinregion::validate(net);
        json out;
        out["ok"] = v.empty();
        json list = json::array();
        for (const auto& x : v) list.push_back({{"cell", x.cell}, {"slots", {x.lower_slot, x.upper_slot}}});
        out["violations"] = std::move(list);
        if (!v.empty()) {
            out["error"] = {{"kind", "validation"},
                            {"message", "direct strengths must ascend within every cell"}};
            failed_ = true;
        }
        return out;
    }

    template <Scalar T>
    json classify(const ChannelStrengths& raw) {
        auto net = raw.as<T>();
        auto label = classify_regime(net);
        json out{{"regime", regime_name(label)},
                 {"ctin_conditions", ctin_conditions_hold(net)},
                 {"tin_conditions", tin_conditions_hold(net)}};
        out["implied_conditions"] =
            label == RegimeLabel::GENERAL ? json(nullptr) : json(implied_conditions_hold(net, label));
        return out;
    }

    template <Scalar T>
    json region(const ChannelStrengths& raw) {
        auto net = raw.as<T>();
        PolyhedralRegion<T> reg;
        if (opt_.outer) {
            reg = outer_bound_region(net);
        } else {
            auto S = load_subnet(raw);
            reg = polyhedral_region(net, load_order(S), S);
        }
        json out = json::parse(serialize_region(net, reg));
        out["constraint_count"] = reg.constraints.size();
        out["nonempty"] = reg.nonempty();
        return out;
    }

    template <Scalar T>
    json member(const ChannelStrengths& raw, bool restricted) {
        auto net = raw.as<T>();
        auto d = convert_list<T>(parse_list(opt_.point, "--point"));
        if (static_cast<int>(d.size()) != net.total_users()) {
            throw DimensionError("--point needs one value per user");
        }
        json out;
        if (restricted) {
            auto S = load_subnet(raw);
            out["member"] = contains(polyhedral_region(net, load_order(S), S), d);
            return out;
        }
        auto res = tina_region_contains(net, d);
        out["member"] = res.member;
        if (res.witness) {
            json S = json::array();
            for (const auto& c : res.witness->subnet.slots) {
                json cell = json::array();
                for (int s : c) cell.push_back(s + 1);
                S.push_back(std::move(cell));
            }
            out["witness"] = {{"order", order_json(res.witness->order)}, {"S", std::move(S)}};
        } else {
            out["witness"] = nullptr;
        }
        return out;
    }

    template <Scalar T>
    std::vector<T> weights(int n) {
        if (opt_.weights.empty()) return std::vector<T>(n, T(1));
        auto w = convert_list<T>(parse_list(opt_.weights, "--weights"));
        if (static_cast<int>(w.size()) != n) throw DimensionError("--weights needs one value per user");
        return w;
    }

    template <Scalar T>
    json maxsum(const ChannelStrengths& raw) {
        auto net = raw.as<T>();
        auto S = load_subnet(raw);
        auto reg = polyhedral_region(net, load_order(S), S);
        auto lp = max_weighted_sum(reg, weights<T>(net.total_users()));
        return {{"value", to_double(lp.value)},
                {"value_exact", exact_text(lp.value)},
                {"argmax", numbers(lp.x)}};
    }

    template <Scalar T>
    json bounds(const ChannelStrengths& raw) {
        auto net = raw.as<T>();
        auto s0 = load_strategy(raw);
        Strategy<T> s{s0.side, s0.order, convert_power<T>(s0.power)};
        auto levels = s.side == Side::Downlink ? gamma_ibc(net, s.order, s.power)
                                               : gamma_imac(net, s.order, s.power);
        return {{"side", side_name(s.side)},
                {"bounds", numbers(gdof_bounds(net, s))},
                {"levels", numbers(levels)}};
    }

    json rates(const ChannelStrengths& raw) {
        auto s = load_strategy(raw);
        if (s.side != Side::Downlink) throw PreconditionError("finite-SNR rates are provided for the downlink only");
        auto net = raw.as<double>();
        auto power = convert_power<double>(s.power);
        FiniteSnrConfig cfg{static_cast<long double>(opt_.pnominal)};
        auto r = sinr_rates_ibc(net, s.order, power, cfg);
        auto b = gdof_bounds_ibc(net, s.order, power);
        const long double logp = std::log2(cfg.P);
        json users = json::array();
        for (std::size_t u = 0; u < r.size(); ++u) {
            users.push_back({{"sinr", static_cast<double>(r[u].sinr)},
                             {"rate", static_cast<double>(r[u].rate)},
                             {"normalized", static_cast<double>(r[u].rate / logp)},
                             {"gdof_bound", b[u]}});
        }
        return {{"P", opt_.pnominal}, {"users", std::move(users)}};
    }

    template <Scalar T>
    json dualize(const ChannelStrengths& raw) {
        auto net = raw.as<T>();
        auto s0 = load_strategy(raw);
        auto power = convert_power<T>(s0.power);
        DualizationReport<T> rep = s0.side == Side::Downlink
                                       ? dualize_report_ibc(net, s0.order, power)
                                       : dualize_imac_to_ibc(net, s0.order, power, !opt_.no_normalize);
        return {{"input", strategy_json(rep.input)},
                {"output", strategy_json(rep.output)},
                {"levels", numbers(rep.levels)},
                {"normalized", rep.normalized},
                {"input_bounds", numbers(gdof_bounds(net, rep.input))},
                {"output_bounds", numbers(gdof_bounds(net, rep.output))}};
    }

    template <Scalar T>
    json oracle(const ChannelStrengths& raw, std::ostream& out) {
        auto net = raw.as<T>();
        const Side side = opt_.side.empty() ? Side::Downlink : parse_side(opt_.side);
        auto grid = GridSpec<T>::defaults(net);
        if (!opt_.grid.empty()) grid.step = scalar_cast<T>(parse_list(opt_.grid, "--grid").at(0));
        if (!opt_.rmax.empty()) grid.rmax = scalar_cast<T>(parse_list(opt_.rmax, "--rmax").at(0));
        grid.budget = opt_.budget;
        if (opt_.csv) {
            for (const auto& d : grid_achievable_points(net, side, grid)) {
                for (std::size_t u = 0; u < d.size(); ++u) {
                    out << (u ? "," : "") << std::setprecision(12) << to_double(d[u]);
                }
                out << '\n';
            }
            csv_written_ = true;
            return {};
        }
        auto best = oracle_max_sum(net, side, weights<T>(net.total_users()), grid);
        return {{"side", side_name(side)},
                {"grid", to_double(grid.step)},
                {"rmax", to_double(grid.rmax)},
                {"strategies", grid_strategy_count(net, grid)},
                {"max_sum", to_double(best.value)},
                {"argmax", numbers(best.point)},
                {"strategy", strategy_json(best.strategy)}};
    }

    template <Scalar T>
    json ia(const ChannelStrengths& raw) {
        auto rep = ia_sum_gdof(raw.as<T>());
        return {{"d_tina", to_double(rep.d_tina)},
                {"gamma_ia", to_double(rep.gamma_ia)},
                {"d_ia", to_double(rep.d_ia)},
                {"d_tina_exact", exact_text(rep.d_tina)},
                {"gamma_ia_exact", exact_text(rep.gamma_ia)},
                {"d_ia_exact", exact_text(rep.d_ia)},
                {"applicable", rep.applicable}};
    }

    json adt() {
        std::vector<int> v;
        std::stringstream ss(opt_.params);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                v.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw tinregion::ParseError("--params needs four integers m1,m2,n1,n2");
            }
        }
        if (v.size() != 4) throw tinregion::ParseError("--params needs four integers m1,m2,n1,n2");
        AdtParams p{v[0], v[1], v[2], v[3]};
        p.check();
        if (p.q() > AdtLimits{}.q_cap) throw BudgetExceeded("ADT depth exceeds the cap of 8");
        auto dists = sample_distributions(p.q(), opt_.trials, opt_.seed);
        AdtReport rep;
        if (opt_.mode == "lessnoisy") {
            rep = check_less_noisy(p, dists);
        } else if (opt_.mode == "entropydiff") {
            rep = check_entropy_diff(p, dists);
        } else {
            throw tinregion::ParseError("--mode must be lessnoisy or entropydiff");
        }
        in_.digest_material += '\0' + std::to_string(opt_.seed);
        return json::parse(serialize_adt_report(rep));
    }

    bool failed() const { return failed_; }
    bool csv_written() const { return csv_written_; }

private:
    Options opt_;
    Inputs& in_;
    bool failed_ = false;
    bool csv_written_ = false;
};

}  // namespace

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    std::ostringstream ss;
    for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return ss.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"TIN GDoF regions for multi-cell downlink and uplink networks", "tinregion"};
    app.require_subcommand(1);
    Options o;

    auto net_opt = [&](CLI::App* c) { c->add_option("--net", o.net, "network JSON file")->required(); };
    auto arith = [&](CLI::App* c) {
        c->add_flag("--exact", o.exact, "exact rational arithmetic");
        c->add_flag("--float", o.use_float, "double arithmetic with 1e-9 tolerance");
    };
    auto region_opts = [&](CLI::App* c) {
        c->add_option("--order", o.order, "id or an order JSON file");
        c->add_option("--subnet", o.subnet, "all or a subnetwork JSON file");
    };

    auto* validate = app.add_subcommand("validate", "check ascending direct strengths");
    net_opt(validate);
    auto* classify = app.add_subcommand("classify", "TIN / CTIN regime of a network");
    net_opt(classify);
    arith(classify);
    auto* region = app.add_subcommand("region", "constraints of one polyhedral region");
    net_opt(region);
    region_opts(region);
    arith(region);
    region->add_flag("--outer", o.outer, "emit the TIN-regime outer bound instead");
    auto* member = app.add_subcommand("member", "membership of a GDoF tuple");
    net_opt(member);
    region_opts(member);
    arith(member);
    member->add_option("--point", o.point, "comma separated GDoF tuple")->required();
    auto* maxsum = app.add_subcommand("maxsum", "weighted sum-GDoF LP over one region");
    net_opt(maxsum);
    region_opts(maxsum);
    arith(maxsum);
    maxsum->add_option("--weights", o.weights, "comma separated nonnegative weights");
    auto* bounds = app.add_subcommand("bounds", "per-user GDoF bounds of a strategy");
    net_opt(bounds);
    arith(bounds);
    bounds->add_option("--strategy", o.strategy, "strategy JSON file")->required();
    bounds->add_option("--side", o.side, "ibc or imac, overrides the file");
    auto* rates = app.add_subcommand("rates", "finite-SNR downlink SINR and rates");
    net_opt(rates);
    rates->add_option("--strategy", o.strategy, "strategy JSON file")->required();
    rates->add_option("--pnominal", o.pnominal, "nominal power P > 1");
    auto* dualize = app.add_subcommand("dualize", "map a strategy to the dual side");
    net_opt(dualize);
    arith(dualize);
    dualize->add_option("--strategy", o.strategy, "strategy JSON file")->required();
    dualize->add_option("--side", o.side, "ibc or imac, overrides the file");
    dualize->add_flag("--no-normalize", o.no_normalize, "do not repair the received-power order");
    auto* oracle = app.add_subcommand("oracle", "grid search over strategies");
    net_opt(oracle);
    arith(oracle);
    oracle->add_option("--side", o.side, "ibc (default) or imac");
    oracle->add_option("--grid", o.grid, "exponent step");
    oracle->add_option("--rmax", o.rmax, "exponent depth");
    oracle->add_option("--budget", o.budget, "maximum strategy evaluations");
    oracle->add_option("--weights", o.weights, "comma separated weights");
    oracle->add_flag("--csv", o.csv, "dump all points as CSV");
    auto* ia = app.add_subcommand("ia", "alignment gain figures for a (2,1) network");
    net_opt(ia);
    arith(ia);
    auto* adt = app.add_subcommand("adt", "deterministic-model lemma checks");
    adt->add_option("--params", o.params, "m1,m2,n1,n2")->required();
    adt->add_option("--trials", o.trials, "random distributions");
    adt->add_option("--mode", o.mode, "lessnoisy or entropydiff");
    adt->add_option("--seed", o.seed, "sampling seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << "run with --help for usage\n";
        return 2;
    }

    CLI::App* cmd = app.get_subcommands().front();
    Inputs inputs;
    for (const auto& a : args) {
        inputs.digest_material += a;
        inputs.digest_material += '\0';
    }
    Runner runner(o, inputs);
    json report;
    try {
        const std::string verb = cmd->get_name();
        if (verb == "adt") {
            report = runner.adt();
        } else if (verb == "validate") {
            report = runner.validate();
        } else {
            auto net = runner.load_net();
            if (verb == "classify") {
                report = runner.exact(true) ? runner.classify<Rational>(net) : runner.classify<double>(net);
            } else if (verb == "region") {
                report = runner.exact(true) ? runner.region<Rational>(net) : runner.region<double>(net);
            } else if (verb == "member") {
                const bool restricted = cmd->count("--order") + cmd->count("--subnet") > 0;
                report = runner.exact(true) ? runner.member<Rational>(net, restricted)
                                            : runner.member<double>(net, restricted);
            } else if (verb == "maxsum") {
                report = runner.exact(true) ? runner.maxsum<Rational>(net) : runner.maxsum<double>(net);
            } else if (verb == "bounds") {
                report = runner.exact(true) ? runner.bounds<Rational>(net) : runner.bounds<double>(net);
            } else if (verb == "rates") {
                report = runner.rates(net);
            } else if (verb == "dualize") {
                report = runner.exact(true) ? runner.dualize<Rational>(net) : runner.dualize<double>(net);
            } else if (verb == "oracle") {
                report = runner.exact(false) ? runner.oracle<Rational>(net, out)
                                             : runner.oracle<double>(net, out);
            } else if (verb == "ia") {
                report = runner.exact(true) ? runner.ia<Rational>(net) : runner.ia<double>(net);
            }
        }
    } catch (const DomainError& e) {
        out << json{{"error", {{"kind", e.kind()}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    } catch (const std::overflow_error& e) {
        out << json{{"error", {{"kind", "overflow"}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    }
    if (runner.csv_written()) return 0;
    report["version"] = kVersion;
    report["input_digest"] = sha256_hex(inputs.digest_material);
    out << report.dump() << "\n";
    return runner.failed() ? 1 : 0;
}

}  // namespace tinregion::cli
