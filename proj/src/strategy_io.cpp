#include "tinregion/strategy.hpp"

#include "json.hpp"

namespace tinregion {

using nlohmann::json;

Strategy<Rational> parse_strategy(std::string_view text, const std::vector<int>& sizes) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed strategy JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("order") || !doc.contains("r")) {
        throw ParseError("strategy file needs \"order\" and \"r\"");
    }
    Strategy<Rational> s;
    std::string side = doc.value("side", "ibc");
    if (side == "ibc") {
        s.side = Side::Downlink;
    } else if (side == "imac") {
        s.side = Side::Uplink;
    } else {
        throw ParseError("side must be \"ibc\" or \"imac\"");
    }

    const json& order = doc["order"];
    if (!order.is_array()) throw ParseError("order must be an array of per-cell permutations");
    for (const auto& cell : order) {
        if (!cell.is_array()) throw ParseError("order entries must be arrays");
        std::vector<int> p;
        for (const auto& v : cell) {
            if (!v.is_number_integer()) throw ParseError("order entries must be integers");
            p.push_back(v.get<int>() - 1);
        }
        s.order.perm.push_back(std::move(p));
    }

    const json& r = doc["r"];
    if (!r.is_array()) throw ParseError("r must be an array of per-cell exponent lists");
    for (const auto& cell : r) {
        if (!cell.is_array()) throw ParseError("r entries must be arrays");
        std::vector<Extended<Rational>> row;
        for (const auto& v : cell) {
            if (v.is_string()) {
                auto str = v.get<std::string>();
                if (str == "off") {
                    row.emplace_back(std::nullopt);
                } else {
                    try {
                        row.emplace_back(Rational::parse(str));
                    } catch (const std::exception&) {
                        throw ParseError("power exponent must be a number or \"off\"");
                    }
                }
            } else if (v.is_number_integer()) {
                row.emplace_back(Rational(v.get<std::int64_t>()));
            } else if (v.is_number()) {
                row.emplace_back(Rational::from_double(v.get<double>()));
            } else {
                throw ParseError("power exponent must be a number or \"off\"");
            }
        }
        s.power.r.push_back(std::move(row));
    }
    s.order.check(sizes);
    s.power.check(sizes);
    return s;
}

std::string serialize_strategy(const Strategy<Rational>& s) {
    json doc;
    doc["side"] = side_name(s.side);
    json order = json::array();
    for (const auto& p : s.order.perm) {
        json cell = json::array();
        for (int slot : p) cell.push_back(slot + 1);
        order.push_back(std::move(cell));
    }
    doc["order"] = std::move(order);
    json r = json::array();
    for (const auto& cell : s.power.r) {
        json row = json::array();
        for (const auto& x : cell) {
            if (x) {
                row.push_back(x->to_double());
            } else {
                row.push_back("off");
            }
        }
        r.push_back(std::move(row));
    }
    doc["r"] = std::move(r);
    return doc.dump();
}

}  // namespace tinregion
