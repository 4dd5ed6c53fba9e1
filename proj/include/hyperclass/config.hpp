#pragma once

// Run configuration shared by the command-line tools. Sources are layered:
// built-in defaults, then a JSON config file, then ER_* environment
// variables, then explicit flags.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperclass/errors.hpp"
#include "hyperclass/numeric.hpp"

namespace hyperclass {

enum class Mode { rational, floating };
enum class OutputFormat { json, csv };

inline Mode parse_mode(const std::string& s) {
    if (s == "rational") return Mode::rational;
    if (s == "float") return Mode::floating;
    throw ArgumentError("mode must be 'rational' or 'float', got '" + s + "'");
}

inline std::string to_string(Mode m) { return m == Mode::rational ? "rational" : "float"; }

inline OutputFormat parse_format(const std::string& s) {
    if (s == "json") return OutputFormat::json;
    if (s == "csv") return OutputFormat::csv;
    throw ArgumentError("output format must be 'json' or 'csv', got '" + s + "'");
}

inline std::string to_string(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }

struct RunConfig {
    unsigned precision_bits = kDefaultPrecisionBits;  // >= 53
    Mode mode = Mode::rational;
    double tolerance_rel = kDefaultRelativeTolerance;  // > 0
    std::uint64_t seed = 0;
    OutputFormat output_format = OutputFormat::json;

    void validate() const {
        if (precision_bits < 53) throw ArgumentError("precision must be at least 53 bits");
        if (!(tolerance_rel > 0)) throw ArgumentError("tolerance must be positive");
    }
};

inline nlohmann::json to_json(const RunConfig& c) {
    return {{"precision_bits", c.precision_bits},
            {"mode", to_string(c.mode)},
            {"tolerance_rel", c.tolerance_rel},
            {"seed", c.seed},
            {"output_format", to_string(c.output_format)}};
}

/// Applies the keys present in `j`; unknown keys are rejected.
inline void apply_json(RunConfig& c, const nlohmann::json& j) {
    if (!j.is_object()) throw ArgumentError("config must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "precision_bits") c.precision_bits = value.get<unsigned>();
            else if (key == "mode") c.mode = parse_mode(value.get<std::string>());
            else if (key == "tolerance_rel") c.tolerance_rel = value.get<double>();
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else if (key == "output_format") c.output_format = parse_format(value.get<std::string>());
            else throw ArgumentError("unknown config key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("bad config value: ") + e.what());
    }
}

inline void apply_config_file(RunConfig& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    apply_json(c, j);
}

namespace detail {

inline std::optional<std::string> env(const char* name) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
}

template <class Int>
Int parse_unsigned(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used != s.size() || s.front() == '-') throw std::invalid_argument(s);
        return static_cast<Int>(v);
    } catch (const std::exception&) {
        throw ArgumentError(std::string("bad ") + what + " '" + s + "'");
    }
}

inline double parse_positive_double(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ArgumentError(std::string("bad ") + what + " '" + s + "'");
    }
}

}  // namespace detail

/// ER_PRECISION, ER_MODE, ER_TOL, ER_SEED, ER_FORMAT.
inline void apply_environment(RunConfig& c) {
    if (auto v = detail::env("ER_PRECISION")) c.precision_bits = detail::parse_unsigned<unsigned>(*v, "ER_PRECISION");
    if (auto v = detail::env("ER_MODE")) c.mode = parse_mode(*v);
    if (auto v = detail::env("ER_TOL")) c.tolerance_rel = detail::parse_positive_double(*v, "ER_TOL");
    if (auto v = detail::env("ER_SEED")) c.seed = detail::parse_unsigned<std::uint64_t>(*v, "ER_SEED");
    if (auto v = detail::env("ER_FORMAT")) c.output_format = parse_format(*v);
}

/// One alpha of a characterization sweep. agreement <=> lists equal.
struct SweepRecord {
    long alpha = 0;
    std::vector<long> characterized_partitions;
    std::vector<long> sieve_partitions;
    bool agreement = false;
    std::optional<double> timing_ms;  // reported only on request; keeps output reproducible
};

inline nlohmann::json to_json(const SweepRecord& r) {
    nlohmann::json j = {{"alpha", r.alpha},
                        {"k0_list", r.characterized_partitions},
                        {"sieve_k0_list", r.sieve_partitions},
                        {"sieve_agreement", r.agreement}};
    if (r.timing_ms) j["timing_ms"] = *r.timing_ms;
    return j;
}

}  // namespace hyperclass
