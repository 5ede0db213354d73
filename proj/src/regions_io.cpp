#include "tinregion/regions.hpp"

#include "json.hpp"

namespace tinregion {

using nlohmann::json;

namespace {

template <Scalar T>
std::string region_json(const BasicChannelStrengths<T>& net, const PolyhedralRegion<T>& reg) {
    auto id = [&](int u) {
        auto v = net.user_id(u);
        return json::array({v.cell, v.slot});
    };
    json doc;
    json zero = json::array();
    for (int u : reg.zero) zero.push_back(id(u));
    doc["zero"] = std::move(zero);
    json cs = json::array();
    for (const auto& c : reg.constraints) {
        json users = json::array();
        for (int u : c.users) users.push_back(id(u));
        cs.push_back({{"users", std::move(users)}, {"bound", to_double(c.bound)}});
    }
    doc["constraints"] = std::move(cs);
    return doc.dump();
}

json parse_object(std::string_view text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed ") + what + " JSON: " + e.what());
    }
}

std::vector<std::vector<int>> slot_lists(const json& arr, const char* what) {
    if (!arr.is_array()) throw ParseError(std::string(what) + " must be an array of per-cell lists");
    std::vector<std::vector<int>> out;
    for (const auto& cell : arr) {
        if (!cell.is_array()) throw ParseError(std::string(what) + " entries must be arrays");
        std::vector<int> v;
        for (const auto& x : cell) {
            if (!x.is_number_integer()) throw ParseError(std::string(what) + " entries must be integers");
            v.push_back(x.get<int>() - 1);
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

std::string serialize_region(const ChannelStrengths& net, const PolyhedralRegion<Rational>& reg) {
    return region_json(net, reg);
}

std::string serialize_region(const BasicChannelStrengths<double>& net,
                             const PolyhedralRegion<double>& reg) {
    return region_json(net, reg);
}

Subnetwork parse_subnetwork(std::string_view text, const std::vector<int>& sizes) {
    json doc = parse_object(text, "subnetwork");
    if (!doc.is_object() || !doc.contains("S")) throw ParseError("subnetwork file needs \"S\"");
    Subnetwork S;
    S.slots = slot_lists(doc["S"], "S");
    if (S.slots.size() != sizes.size()) throw DimensionError("subnetwork must list every cell");
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        std::sort(S.slots[k].begin(), S.slots[k].end());
        for (std::size_t s = 0; s < S.slots[k].size(); ++s) {
            if (S.slots[k][s] < 0 || S.slots[k][s] >= sizes[k] ||
                (s > 0 && S.slots[k][s] == S.slots[k][s - 1])) {
                throw DimensionError("subnetwork slots of cell " + std::to_string(k + 1) +
                                     " must be distinct and in range");
            }
        }
    }
    return S;
}

DecodingOrder parse_subnet_order(std::string_view text) {
    json doc = parse_object(text, "order");
    if (!doc.is_object() || !doc.contains("order")) throw ParseError("order file needs \"order\"");
    DecodingOrder o;
    o.perm = slot_lists(doc["order"], "order");
    return o;
}

}  // namespace tinregion
