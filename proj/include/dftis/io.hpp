// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dftis/rac.hpp"
#include "dftis/transceiver.hpp"

// JSON interchange formats:
//   sequence       [[re, im], ...]; a bare number x stands for [x, 0]
//   eigensequence  {"lambda": "+1"|"-1"|"+j"|"-j", "seq": sequence}
//   frame          {"case": "2"|"3/123"|..., "y": sequence}
//   registry       [{"user_id", "group", "signature", "priority"?}, ...]
//   session        {"case", "b", "e_max" | "M", "users": registry,
//                   "bitstreams"?: {user_id: "0101..."}, "random_bits"?: n, "seed"?: n}

namespace dftis::io {

using json = nlohmann::json;

inline json to_json(const sequence& x) {
    json arr = json::array();
    for (const auto& v : x) arr.push_back(json::array({v.real(), v.imag()}));
    return arr;
}

inline sequence sequence_from_json(const json& j) {
    if (!j.is_array()) throw parse_error("sequence must be a JSON array");
    std::vector<complex> s;
    for (const auto& e : j) {
        if (e.is_number()) {
            s.emplace_back(e.get<double>(), 0.0);
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            s.emplace_back(e[0].get<double>(), e[1].get<double>());
        } else {
            throw parse_error("sequence entries must be numbers or [re, im] pairs");
        }
    }
    if (s.empty()) throw parse_error("sequence is empty");
    return sequence(std::move(s));
}

inline json to_json(const eigensequence& x) {
    return {{"lambda", std::string(to_string(x.lambda()))}, {"seq", to_json(x.seq())}};
}

inline eigensequence eigensequence_from_json(const json& j, tolerance tol = {}) {
    if (!j.is_object() || !j.contains("lambda") || !j.contains("seq"))
        throw parse_error("eigensequence must be an object with 'lambda' and 'seq'");
    if (!j["lambda"].is_string()) throw parse_error("'lambda' must be a string");
    eigenvalue l;
    try {
        l = parse_eigenvalue(j["lambda"].get<std::string>());
    } catch (const invalid_input& e) {
        throw parse_error(e.what());
    }
    return eigensequence::make(sequence_from_json(j["seq"]), l, tol);
}

inline json to_json(const channel_frame& f) { return {{"case", f.rac.name()}, {"y", to_json(f.y)}}; }

inline rac_case case_from_json(const json& j) {
    if (j.is_string()) return rac_case::parse(j.get<std::string>());
    if (j.is_number_integer() && j.get<int>() == 2) return rac_case::parse("2");
    if (j.is_number_integer() && j.get<int>() == 4) return rac_case::parse("4");
    throw parse_error("case must be one of \"2\", \"3/123\", \"3/124\", \"3/134\", \"3/234\", \"4\"");
}

inline channel_frame frame_from_json(const json& j) {
    if (!j.is_object() || !j.contains("case") || !j.contains("y"))
        throw parse_error("frame must be an object with 'case' and 'y'");
    return {sequence_from_json(j["y"]), case_from_json(j["case"])};
}

/// A registered user plus its scheduling weight.
struct registry_entry {
    user_signature user;
    double priority = 1.0;
};

inline json to_json(const user_signature& u) {
    return {{"user_id", u.user_id()}, {"group", u.group()}, {"signature", to_json(u.signature())}};
}

/// "signature" may be an eigensequence object or a bare sequence.
inline registry_entry registry_entry_from_json(const json& j, tolerance tol = {}) {
    if (!j.is_object() || !j.contains("user_id") || !j.contains("group") || !j.contains("signature"))
        throw parse_error("registry entries need 'user_id', 'group' and 'signature'");
    if (!j["group"].is_number_integer()) throw parse_error("'group' must be an integer");
    const std::string id = j["user_id"].is_string() ? j["user_id"].get<std::string>() : j["user_id"].dump();
    const int group = j["group"].get<int>();
    const json& sig = j["signature"];
    const sequence seq = sig.is_object() ? sequence_from_json(sig.value("seq", json())) : sequence_from_json(sig);
    if (sig.is_object() && sig.contains("lambda") && sig["lambda"].is_string() &&
        parse_eigenvalue(sig["lambda"].get<std::string>()) != group_eigenvalue(group))
        throw invalid_input("user '" + id + "': signature eigenvalue does not match group " + std::to_string(group));
    double priority = 1.0;
    if (j.contains("priority")) {
        if (!j["priority"].is_number()) throw parse_error("'priority' must be a number");
        priority = j["priority"].get<double>();
    }
    return {user_signature::make(id, group, seq, tol), priority};
}

inline std::vector<registry_entry> registry_from_json(const json& j, tolerance tol = {}) {
    if (!j.is_array()) throw parse_error("signature registry must be a JSON array");
    std::vector<registry_entry> out;
    for (const auto& e : j) out.push_back(registry_entry_from_json(e, tol));
    return out;
}

struct session_config {
    rac_case rac;
    unsigned bits;
    std::optional<double> e_max;
    std::optional<double> peak;
    std::vector<registry_entry> users;
    /// user_id -> bitstream; empty when random_bits is used.
    std::vector<std::pair<std::string, std::string>> bitstreams;
    std::size_t random_bits = 0;
    std::optional<std::uint64_t> seed;
};

inline session_config session_from_json(const json& j, tolerance tol = {}) {
    if (!j.is_object()) throw parse_error("session config must be a JSON object");
    for (const char* key : {"case", "b", "users"})
        if (!j.contains(key)) throw parse_error(std::string("session config is missing '") + key + "'");
    if (!j["b"].is_number_unsigned()) throw parse_error("'b' must be a positive integer");
    session_config s{case_from_json(j["case"]), j["b"].get<unsigned>(), std::nullopt, std::nullopt,
                     registry_from_json(j["users"], tol), {}, 0, std::nullopt};
    if (j.contains("e_max")) {
        if (!j["e_max"].is_number()) throw parse_error("'e_max' must be a number");
        s.e_max = j["e_max"].get<double>();
    }
    if (j.contains("M")) {
        if (!j["M"].is_number()) throw parse_error("'M' must be a number");
        s.peak = j["M"].get<double>();
    }
    if (s.e_max.has_value() == s.peak.has_value())
        throw configuration_error("session config needs exactly one of 'e_max' or 'M'");
    if (j.contains("bitstreams")) {
        if (!j["bitstreams"].is_object()) throw parse_error("'bitstreams' must map user_id to a bit string");
        for (const auto& [id, bits] : j["bitstreams"].items()) {
            if (!bits.is_string()) throw parse_error("bitstream for '" + id + "' must be a string");
            s.bitstreams.emplace_back(id, bits.get<std::string>());
        }
    }
    if (j.contains("random_bits")) {
        if (!j["random_bits"].is_number_unsigned()) throw parse_error("'random_bits' must be a non-negative integer");
        s.random_bits = j["random_bits"].get<std::size_t>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) throw parse_error("'seed' must be a non-negative integer");
        s.seed = j["seed"].get<std::uint64_t>();
    }
    return s;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw parse_error("'" + path + "': " + e.what());
    }
}

} // namespace dftis::io
