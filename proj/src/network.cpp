#include "tinregion/network.hpp"

#include "json.hpp"

namespace tinregion {

using nlohmann::json;

namespace {

Rational number_from_json(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (v.is_number_unsigned()) return Rational(static_cast<std::int64_t>(v.get<std::uint64_t>()));
    if (v.is_number_float()) return Rational::from_double(v.get<double>());
    throw ParseError(where + ": expected a number, got " + std::string(v.type_name()));
}

int int_from_json(const json& v, const std::string& where) {
    if (!v.is_number_integer() && !v.is_number_unsigned()) {
        throw ParseError(where + ": expected an integer");
    }
    return v.get<int>();
}

}  // namespace

ChannelStrengths parse_network(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed network JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("network file must be a JSON object");
    for (const char* key : {"K", "L", "alpha"}) {
        if (!doc.contains(key)) throw ParseError(std::string("network file lacks \"") + key + "\"");
    }

    const int K = int_from_json(doc["K"], "K");
    if (K < 1) throw DimensionError("K must be at least 1");
    const json& Ls = doc["L"];
    if (!Ls.is_array() || static_cast<int>(Ls.size()) != K) {
        throw DimensionError("L must list exactly K cell sizes");
    }
    std::vector<int> L;
    for (std::size_t k = 0; k < Ls.size(); ++k) {
        int lk = int_from_json(Ls[k], "L[" + std::to_string(k) + "]");
        if (lk < 1) throw DimensionError("every cell needs at least one user");
        L.push_back(lk);
    }

    const json& A = doc["alpha"];
    if (!A.is_array() || static_cast<int>(A.size()) != K) {
        throw DimensionError("alpha must have K cell blocks");
    }
    std::vector<std::vector<std::vector<Rational>>> alpha(K);
    for (int k = 0; k < K; ++k) {
        if (!A[k].is_array() || static_cast<int>(A[k].size()) != L[k]) {
            throw DimensionError("alpha[" + std::to_string(k) + "] must have L[" +
                                 std::to_string(k) + "] user rows");
        }
        for (int l = 0; l < L[k]; ++l) {
            const json& row = A[k][l];
            if (!row.is_array() || static_cast<int>(row.size()) != K) {
                throw DimensionError("alpha[" + std::to_string(k) + "][" + std::to_string(l) +
                                     "] must have K entries");
            }
            std::vector<Rational> r;
            for (int i = 0; i < K; ++i) {
                r.push_back(number_from_json(row[i], "alpha[" + std::to_string(k) + "][" +
                                                         std::to_string(l) + "][" +
                                                         std::to_string(i) + "]"));
            }
            alpha[k].push_back(std::move(r));
        }
    }
    return ChannelStrengths(std::move(alpha));
}

std::string serialize_network(const ChannelStrengths& net) {
    json doc;
    doc["K"] = net.cells();
    doc["L"] = net.cell_sizes();
    json A = json::array();
    for (int k = 0; k < net.cells(); ++k) {
        json cell = json::array();
        for (int l = 0; l < net.users_in(k); ++l) {
            json row = json::array();
            for (int i = 0; i < net.cells(); ++i) row.push_back(net.alpha(k, l, i).to_double());
            cell.push_back(std::move(row));
        }
        A.push_back(std::move(cell));
    }
    doc["alpha"] = std::move(A);
    return doc.dump();
}

}  // namespace tinregion
