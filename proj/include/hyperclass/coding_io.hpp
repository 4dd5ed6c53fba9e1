#pragma once

// JSON form of a coding:
//
//     {"mode": "rational", "slopes": ["1", "3/2", "2", ...], ...}
//
// Rational slopes are "p/q" strings (or "p"); float slopes are decimal
// strings at full working precision. Plain JSON numbers are accepted on input.
// Extra keys are carried along as metadata and ignored here.

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperclass/coding.hpp"
#include "hyperclass/errors.hpp"
#include "hyperclass/numeric.hpp"

namespace hyperclass {

template <Scalar T>
nlohmann::json coding_to_json(const PrimeCoding<T>& c) {
    nlohmann::json slopes = nlohmann::json::array();
    for (const T& s : c.slopes()) slopes.push_back(format_scalar(s));
    return {{"mode", scalar_traits<T>::mode}, {"slopes", slopes}};
}

/// The "mode" field of a coding document, defaulting to "rational".
inline std::string coding_mode(const nlohmann::json& j) {
    if (!j.is_object()) throw ArgumentError("coding must be a JSON object");
    if (!j.contains("mode")) return "rational";
    if (!j["mode"].is_string()) throw ArgumentError("coding mode must be a string");
    const std::string m = j["mode"].get<std::string>();
    if (m != "rational" && m != "float") throw ArgumentError("coding mode must be 'rational' or 'float'");
    return m;
}

template <Scalar T>
PrimeCoding<T> coding_from_json(const nlohmann::json& j) {
    coding_mode(j);
    if (!j.contains("slopes") || !j["slopes"].is_array())
        throw ArgumentError("coding needs a 'slopes' array");
    std::vector<T> xi;
    for (const auto& s : j["slopes"]) {
        if (s.is_string()) {
            xi.push_back(parse_scalar<T>(s.get<std::string>()));
        } else if (s.is_number_integer()) {
            xi.push_back(T(s.get<long long>()));
        } else if (s.is_number()) {
            // Doubles are binary fractions, so this conversion is exact.
            xi.push_back(convert_scalar<T>(Rational(s.get<double>())));
        } else {
            throw ArgumentError("slopes must be numbers or numeric strings");
        }
    }
    return PrimeCoding<T>(std::move(xi));
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open '" + path + "'");
    try {
        nlohmann::json j;
        in >> j;
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError("'" + path + "' is not valid JSON: " + e.what());
    }
}

}  // namespace hyperclass
