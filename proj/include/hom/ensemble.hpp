// ensemble.hpp — spectral ensembles of SPDC pairs and their averages
//
// Detunings are drawn per pair from a stream derived from (seed, pair index),
// so a given ensemble never depends on how work is scheduled. The delay sweep
// evaluates each τ independently with a fixed pairwise reduction order.

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "hom/core_model.hpp"
#include "hom/error.hpp"
#include "hom/parallel.hpp"

namespace hom {

enum class SpectrumShape { rect, gaussian };

inline std::string to_string(SpectrumShape s) { return s == SpectrumShape::rect ? "rect" : "gaussian"; }

struct SpectrumConfig {
    SpectrumShape shape = SpectrumShape::rect;
    double bandwidth = 1.0; // rad/s; rect: half-width of [-Δ, Δ], gaussian: std dev σ
    std::size_t n_pairs = 100000;
    std::uint64_t seed = 0;

    void validate() const {
        if (n_pairs == 0) throw ConfigError("n_pairs must be >= 1");
        if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) throw ConfigError("bandwidth must be finite and > 0");
    }
};

struct IntensitySummary {
    double mean_ic = 0.0;
    double mean_id = 0.0;
};

// Row-major pair × τ matrix.
struct TraceMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

struct CorrelationCurve {
    std::vector<double> tau_grid; // s, strictly increasing
    std::vector<double> r_raw;    // ⟨R_cd(τ)⟩, intensity²
    std::vector<double> r_norm;   // r_raw / (I₀²/2)
    std::optional<TraceMatrix> per_pair; // per-pair normalised traces, n_pairs × tau_grid.size()
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Independent generator for element `index` of stream `salt`.
inline std::mt19937_64 element_rng(std::uint64_t seed, std::uint64_t salt, std::uint64_t index) {
    return std::mt19937_64{splitmix64(splitmix64(seed ^ salt) + index)};
}

inline constexpr std::uint64_t kSpectrumStream = 0x5350454354ULL; // "SPECT"
inline constexpr std::uint64_t kWeightStream = 0x5157454947ULL;   // "QWEIG"

inline void require_nonempty(std::span<const SpdcPair> pairs) {
    if (pairs.empty()) throw ConfigError("ensemble is empty");
}

inline double norm_unit(const ModelParams& p) { return p.i0 * p.i0 / 2.0; }

// 1 - sin(x)/x, by its series near 0.
inline double one_minus_sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return x2 / 6.0 - x2 * x2 / 120.0;
    }
    return 1.0 - std::sin(x) / x;
}

} // namespace detail

inline std::vector<SpdcPair> sample_spectrum(const SpectrumConfig& cfg) {
    cfg.validate();
    std::vector<SpdcPair> pairs(cfg.n_pairs);
    for (std::size_t j = 0; j < cfg.n_pairs; ++j) {
        auto rng = detail::element_rng(cfg.seed, detail::kSpectrumStream, j);
        double dw = 0.0;
        if (cfg.shape == SpectrumShape::rect) {
            dw = std::uniform_real_distribution<double>{-cfg.bandwidth, cfg.bandwidth}(rng);
        } else {
            dw = std::normal_distribution<double>{0.0, cfg.bandwidth}(rng);
        }
        pairs[j] = SpdcPair{dw, 1.0};
    }
    return pairs;
}

// Draws one weight per pair, uniform on [1 - q, 1], fixed for the whole run.
// The draw for pair j uses u_j from the (seed, j) stream as w = 1 - q·u_j, so
// runs that differ only in q share the same u_j.
inline std::vector<SpdcPair> apply_q_weight(std::span<const SpdcPair> pairs, double q, std::uint64_t seed) {
    if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("q must lie in [0, 1]");
    std::vector<SpdcPair> out(pairs.begin(), pairs.end());
    if (q == 0.0) return out;
    for (std::size_t j = 0; j < out.size(); ++j) {
        auto rng = detail::element_rng(seed, detail::kWeightStream, j);
        const double u = std::uniform_real_distribution<double>{0.0, 1.0}(rng);
        out[j].q_weight = 1.0 - q * u;
    }
    return out;
}

// (1/2N) Σ_j [(I)_j + (I)'_j] for both output ports.
inline IntensitySummary mean_intensities(std::span<const SpdcPair> pairs, double tau, const ModelParams& p) {
    detail::require_nonempty(pairs);
    const std::size_t n = pairs.size();
    auto port_sum = [&](bool port_c) {
        return pairwise_sum(n, [&](std::size_t j) {
            const double s = detail::interference_sine(pairs[j], tau, p);
            const auto direct = detail::unit_intensities(s);
            const auto swapped = detail::unit_swapped_intensities(s);
            return port_c ? direct.c + swapped.c : direct.d + swapped.d;
        });
    };
    const double denom = 2.0 * static_cast<double>(n);
    return {p.i0 * (port_sum(true) / denom), p.i0 * (port_sum(false) / denom)};
}

inline double correlation_at(std::span<const SpdcPair> pairs, double tau, const ModelParams& p) {
    detail::require_nonempty(pairs);
    const double sum = pairwise_sum(pairs.size(), [&](std::size_t j) { return pair_coincidence(pairs[j], tau, p); });
    return sum / static_cast<double>(pairs.size());
}

// Symmetric grid with `points` samples and spacing tau_max / (points / 2),
// running from -tau_max upward. τ = 0 is always a grid point; for even counts
// the last point is tau_max - spacing.
inline std::vector<double> make_tau_grid(double tau_max, std::size_t points) {
    if (points == 0) throw ConfigError("tau grid needs at least one point");
    if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw ConfigError("tau_max must be finite and > 0");
    const std::size_t half = points / 2;
    std::vector<double> grid(points);
    if (half == 0) return grid;
    const double step = tau_max / static_cast<double>(half);
    for (std::size_t k = 0; k < points; ++k) {
        grid[k] = (static_cast<double>(k) - static_cast<double>(half)) * step;
    }
    return grid;
}

// Per-pair normalised coincidence 2·R_j/I₀² for every (pair, τ).
inline TraceMatrix pair_traces(std::span<const SpdcPair> pairs, std::span<const double> tau_grid,
                               const ModelParams& p, const Execution& exec = {}) {
    TraceMatrix m{pairs.size(), tau_grid.size(), std::vector<double>(pairs.size() * tau_grid.size())};
    const double unit = detail::norm_unit(p);
    parallel_for(pairs.size(), exec, [&](std::size_t j) {
        for (std::size_t k = 0; k < tau_grid.size(); ++k) m.at(j, k) = pair_coincidence(pairs[j], tau_grid[k], p) / unit;
    });
    return m;
}

inline CorrelationCurve correlation_sweep(std::span<const SpdcPair> pairs, std::span<const double> tau_grid,
                                          const ModelParams& p, bool keep_traces, const Execution& exec = {}) {
    detail::require_nonempty(pairs);
    p.validate();
    for (std::size_t k = 1; k < tau_grid.size(); ++k) {
        if (!(tau_grid[k] > tau_grid[k - 1])) throw ConfigError("tau grid must be strictly increasing");
    }
    CorrelationCurve curve;
    curve.tau_grid.assign(tau_grid.begin(), tau_grid.end());
    curve.r_raw.resize(tau_grid.size());
    curve.r_norm.resize(tau_grid.size());
    const double unit = detail::norm_unit(p);
    parallel_for(tau_grid.size(), exec, [&](std::size_t k) {
        curve.r_raw[k] = correlation_at(pairs, tau_grid[k], p);
        curve.r_norm[k] = curve.r_raw[k] / unit;
    });
    if (keep_traces) curve.per_pair = pair_traces(pairs, tau_grid, p, exec);
    return curve;
}

inline bool is_quadrature_phase(double theta0) {
    return std::abs(std::abs(theta0) - std::numbers::pi / 2) <= 1e-12;
}

// Closed-form ensemble dip r_norm(τ) for θ₀ = ±π/2 and Q = 0:
//   r_norm = 1 - ⟨cos 2φ⟩ = 1 - Re χ(2τ)   (eq8, φ = δω·τ)
// with χ the characteristic function of the detuning distribution
// (sinc for rect, Gaussian for gaussian). product45 doubles the argument.
inline double analytic_dip(SpectrumShape shape, double bandwidth, double theta0, double tau,
                           Convention convention) {
    if (!is_quadrature_phase(theta0)) throw DomainError("analytic_dip: closed form exists only for theta0 = +-pi/2");
    if (!(bandwidth > 0.0)) throw ConfigError("bandwidth must be > 0");
    const double scale = convention == Convention::eq8 ? 2.0 : 4.0;
    const double x = scale * bandwidth * tau;
    if (shape == SpectrumShape::rect) return detail::one_minus_sinc(x);
    return -std::expm1(-0.5 * x * x);
}

} // namespace hom
