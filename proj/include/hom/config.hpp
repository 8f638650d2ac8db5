// config.hpp — experiment configuration files
//
// Line-oriented `key = value`; `#` starts a comment; keys are case-sensitive.
// Unknown and duplicate keys are rejected. `bandwidth` and `seed` are
// required, everything else has a default.

#pragma once

#include <charconv>
#include <cstdio>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numbers>
#include <limits>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "hom/core_model.hpp"
#include "hom/ensemble.hpp"
#include "hom/error.hpp"

namespace hom {

struct ExperimentConfig {
    double theta0_deg = 90.0;
    double q = 0.0;
    SpectrumShape spectrum = SpectrumShape::rect;
    double bandwidth = 0.0; // rad/s, required
    std::size_t n_pairs = 100000;
    std::uint64_t seed = 0; // required
    std::size_t tau_points = 400;
    double tau_max_over_bandwidth = 10.0;
    Convention convention = Convention::eq8;
    double i0 = 1.0;
    bool keep_traces = false;

    // Degrees are converted as (deg / 180)·π so 90° and 45° map to exactly
    // π/2 and π/4.
    double theta0_rad() const { return theta0_deg / 180.0 * std::numbers::pi; }

    SpectrumConfig spectrum_config() const { return {spectrum, bandwidth, n_pairs, seed}; }
    ModelParams model_params() const { return {theta0_rad(), q, i0, convention}; }
    double tau_max() const { return tau_max_over_bandwidth / bandwidth; }
    std::vector<double> tau_grid() const { return make_tau_grid(tau_max(), tau_points); }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

class ConfigLine {
public:
    ConfigLine(std::size_t line, std::string_view key, std::string_view value)
        : line_(line), key_(key), value_(value) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError("line " + std::to_string(line_) + ": key '" + std::string(key_) + "': " + what);
    }

    double real(double lo, double hi, bool lo_open = false) const {
        double v = 0.0;
        const auto* end = value_.data() + value_.size();
        const auto [ptr, ec] = std::from_chars(value_.data(), end, v);
        if (ec != std::errc{} || ptr != end || !std::isfinite(v)) fail("cannot parse '" + std::string(value_) + "' as a number");
        const bool below = lo_open ? !(v > lo) : !(v >= lo);
        if (below || v > hi) {
            fail("value " + std::string(value_) + " out of range " + (lo_open ? "(" : "[") + num(lo) + ", " + num(hi) +
                 (std::isinf(hi) ? ")" : "]"));
        }
        return v;
    }

    std::uint64_t integer(std::uint64_t lo) const {
        std::uint64_t v = 0;
        const auto* end = value_.data() + value_.size();
        const auto [ptr, ec] = std::from_chars(value_.data(), end, v);
        if (ec != std::errc{} || ptr != end) fail("cannot parse '" + std::string(value_) + "' as an unsigned integer");
        if (v < lo) fail("value " + std::string(value_) + " must be >= " + std::to_string(lo));
        return v;
    }

    template <typename Enum>
    Enum choice(std::initializer_list<std::pair<std::string_view, Enum>> options) const {
        std::string names;
        for (const auto& [name, e] : options) {
            if (value_ == name) return e;
            names += (names.empty() ? "" : "|") + std::string(name);
        }
        fail("expected one of {" + names + "}, got '" + std::string(value_) + "'");
    }

private:
    static std::string num(double v) {
        if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%g", v);
        return buf;
    }

    std::size_t line_;
    std::string_view key_;
    std::string_view value_;
};

} // namespace detail

inline ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::map<std::string, std::size_t, std::less<>> seen; // key -> line
    constexpr double inf = std::numeric_limits<double>::infinity();

    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value', got '" + std::string(line) + "'");
        }
        const auto key = detail::trim(line.substr(0, eq));
        const auto value = detail::trim(line.substr(eq + 1));
        const detail::ConfigLine entry{line_no, key, value};
        if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": missing key before '='");
        if (const auto it = seen.find(key); it != seen.end()) {
            entry.fail("duplicate key (first set on line " + std::to_string(it->second) + ")");
        }
        seen.emplace(std::string(key), line_no);

        if (key == "theta0_deg") {
            cfg.theta0_deg = entry.real(-inf, inf);
        } else if (key == "q") {
            cfg.q = entry.real(0.0, 1.0);
        } else if (key == "spectrum") {
            cfg.spectrum = entry.choice<SpectrumShape>({{"rect", SpectrumShape::rect}, {"gaussian", SpectrumShape::gaussian}});
        } else if (key == "bandwidth") {
            cfg.bandwidth = entry.real(0.0, inf, true);
        } else if (key == "n_pairs") {
            cfg.n_pairs = entry.integer(1);
        } else if (key == "seed") {
            cfg.seed = entry.integer(0);
        } else if (key == "tau_points") {
            cfg.tau_points = entry.integer(1);
        } else if (key == "tau_max_over_bandwidth") {
            cfg.tau_max_over_bandwidth = entry.real(0.0, inf, true);
        } else if (key == "convention") {
            cfg.convention = entry.choice<Convention>({{"eq8", Convention::eq8}, {"product45", Convention::product45}});
        } else if (key == "i0") {
            cfg.i0 = entry.real(0.0, inf, true);
        } else if (key == "keep_traces") {
            cfg.keep_traces = entry.choice<bool>({{"true", true}, {"false", false}});
        } else {
            entry.fail("unknown key");
        }
    }

    for (const char* required : {"bandwidth", "seed"}) {
        if (!seen.contains(std::string_view{required})) {
            throw ConfigError("line " + std::to_string(line_no) + " (end of input): missing required key '" + required + "'");
        }
    }
    return cfg;
}

} // namespace hom
