// cli.hpp — subcommand bodies of the `hom` tool, independent of process I/O
//
// Each runner is a pure function of the configuration and options and returns
// the exact bytes to emit.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hom/config.hpp"
#include "hom/core_model.hpp"
#include "hom/ensemble.hpp"
#include "hom/error.hpp"
#include "hom/oracle.hpp"
#include "hom/parallel.hpp"

namespace hom::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kRegression = 3 };

inline constexpr double kCompareThreshold = 1e-9;

struct RunOptions {
    Execution exec;
    std::size_t trace_cap = 64;
};

// 17 significant digits, enough for any double to round-trip.
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Spectrum draw followed by the per-pair dephasing weights, both keyed on cfg.seed.
inline std::vector<SpdcPair> build_ensemble(const ExperimentConfig& cfg) {
    const auto pairs = sample_spectrum(cfg.spectrum_config());
    return apply_q_weight(pairs, cfg.q, cfg.seed);
}

inline std::string run_sweep(const ExperimentConfig& cfg, const RunOptions& opts = {}) {
    const auto params = cfg.model_params();
    params.validate();
    const auto pairs = build_ensemble(cfg);
    const auto grid = cfg.tau_grid();
    const auto curve = correlation_sweep(pairs, grid, params, false, opts.exec);

    std::optional<TraceMatrix> traces;
    if (cfg.keep_traces) {
        const std::size_t n = std::min(opts.trace_cap, pairs.size());
        traces = pair_traces(std::span(pairs).first(n), grid, params, opts.exec);
    }

    std::string out = "tau,delta_tau,r_raw,r_norm";
    if (traces) {
        for (std::size_t j = 0; j < traces->rows; ++j) out += ",trace_" + std::to_string(j);
    }
    out += '\n';
    for (std::size_t k = 0; k < grid.size(); ++k) {
        out += format_number(grid[k]);
        out += ',' + format_number(cfg.bandwidth * grid[k]);
        out += ',' + format_number(curve.r_raw[k]);
        out += ',' + format_number(curve.r_norm[k]);
        if (traces) {
            for (std::size_t j = 0; j < traces->rows; ++j) out += ',' + format_number(traces->at(j, k));
        }
        out += '\n';
    }
    return out;
}

// Phase and dephasing of each published panel; the base config supplies
// everything else. Panel b also turns on per-pair traces.
inline ExperimentConfig apply_panel(ExperimentConfig cfg, char panel) {
    switch (panel) {
    case 'a': cfg.theta0_deg = 90.0; cfg.q = 0.0; break;
    case 'b': cfg.theta0_deg = 90.0; cfg.q = 0.0; cfg.keep_traces = true; break;
    case 'c': cfg.theta0_deg = 0.0; cfg.q = 0.0; break;
    case 'd': cfg.theta0_deg = 90.0; cfg.q = 0.5; break;
    case 'e': cfg.theta0_deg = 45.0; cfg.q = 0.0; break;
    case 'f': cfg.theta0_deg = 90.0; cfg.q = 1.0; break;
    default: throw ConfigError(std::string("unknown panel '") + panel + "', expected one of a..f");
    }
    return cfg;
}

inline std::string run_panel(const ExperimentConfig& cfg, char panel, const RunOptions& opts = {}) {
    return run_sweep(apply_panel(cfg, panel), opts);
}

// Port means averaged over the delay grid, as `mean_ic,mean_id`.
inline std::string run_intensities(const ExperimentConfig& cfg, const RunOptions& opts = {}) {
    const auto params = cfg.model_params();
    params.validate();
    const auto pairs = build_ensemble(cfg);
    const auto grid = cfg.tau_grid();
    std::vector<IntensitySummary> per_tau(grid.size());
    parallel_for(grid.size(), opts.exec, [&](std::size_t k) { per_tau[k] = mean_intensities(pairs, grid[k], params); });
    const double n = static_cast<double>(grid.size());
    const double ic = pairwise_sum(grid.size(), [&](std::size_t k) { return per_tau[k].mean_ic; }) / n;
    const double id = pairwise_sum(grid.size(), [&](std::size_t k) { return per_tau[k].mean_id; }) / n;
    return format_number(ic) + ',' + format_number(id) + '\n';
}

struct CompareOutcome {
    std::string json;
    int exit_code = kOk;
};

inline CompareOutcome run_compare(const ExperimentConfig& cfg, const RunOptions& opts = {}) {
    if (std::abs(cfg.theta0_deg) != 90.0) throw ConfigError("compare requires theta0_deg = +-90");
    if (cfg.q != 0.0) throw ConfigError("compare requires q = 0");
    if (cfg.convention != Convention::eq8) throw ConfigError("compare requires convention = eq8");

    const auto pairs = build_ensemble(cfg);
    const auto grid = cfg.tau_grid();
    const auto params = cfg.model_params();

    // Split over pairs; per-chunk reports are merged in chunk order.
    const std::size_t chunks = std::min<std::size_t>(pairs.size(), 64);
    std::vector<oracle::DeviationReport> parts(chunks);
    std::vector<double> sum_sq(chunks);
    parallel_for(chunks, opts.exec, [&](std::size_t c) {
        const std::size_t lo = pairs.size() * c / chunks, hi = pairs.size() * (c + 1) / chunks;
        parts[c] = oracle::compare_models(std::span(pairs).subspan(lo, hi - lo), grid, params);
        sum_sq[c] = parts[c].rms_dev * parts[c].rms_dev * static_cast<double>(parts[c].n_samples);
    });
    oracle::DeviationReport total;
    double total_sq = 0.0;
    for (std::size_t c = 0; c < chunks; ++c) {
        total.max_abs_dev = std::max(total.max_abs_dev, parts[c].max_abs_dev);
        total.n_samples += parts[c].n_samples;
        total_sq += sum_sq[c];
    }
    total.rms_dev = std::sqrt(total_sq / static_cast<double>(total.n_samples));

    const nlohmann::ordered_json j = {
        {"max_abs_dev", total.max_abs_dev},
        {"rms_dev", total.rms_dev},
        {"n_samples", total.n_samples},
        {"convention", to_string(cfg.convention)},
    };
    return {j.dump() + '\n', total.max_abs_dev <= kCompareThreshold ? kOk : kRegression};
}

} // namespace hom::cli
