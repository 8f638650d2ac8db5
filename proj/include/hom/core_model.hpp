// core_model.hpp — per-pair coherence model of two-photon interference on a
// balanced beam splitter
//
// One SPDC pair j has detunings ±δω_j about the degenerate centre. With the
// idler delayed by τ, the pair's phase is Δ_j = w_j·δω_j·τ (w_j is the
// dephasing weight, 1 for an ideal pair) and the inputs on ports a, b are
//
//   E_a = 1,  E_b = exp(i(2Δ_j + θ₀))          (units of E₀, carrier removed)
//
// The 50/50 splitter maps them to
//
//   [E_c]        1   [1 i] [E_a]
//   [E_d]  =    ---  [i 1] [E_b]
//               √2
//
// giving I_c = I₀(1 − sin(2Δ_j + θ₀)), I_d = I₀(1 + sin(2Δ_j + θ₀)). The
// swapped path assignment of the entangled state flips the sign of the sine.
//
// The common carrier exp(i(kx − 2πf₀t − Δ_j)) multiplies every amplitude and
// never reaches an intensity, so it is not represented.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>

#include "hom/error.hpp"

namespace hom {

// Complex field amplitude in units of E₀.
using ComplexAmp = std::complex<double>;

struct AmpPair {
    ComplexAmp first;
    ComplexAmp second;
};

struct IntensityPair {
    double c = 0.0;
    double d = 0.0;
};

// Which τ-scaling the per-pair coincidence uses.
//   eq8       : R_j = I₀² cos²(φ_j + θ₀),   φ_j = w_j·δω_j·τ
//   product45 : R_j = I_c·I_d = I₀² cos²(2φ_j + θ₀)
// The two differ by a factor 2 in the delay axis; eq8 is the one that agrees
// with the two-photon amplitude calculation in oracle.hpp.
enum class Convention { eq8, product45 };

inline std::string to_string(Convention c) { return c == Convention::eq8 ? "eq8" : "product45"; }

struct SpdcPair {
    double delta_omega = 0.0; // rad/s, signed; the partner photon sits at -delta_omega
    double q_weight = 1.0;    // in [1 - Q, 1]
};

struct ModelParams {
    double theta0 = std::numbers::pi / 2; // rad
    double q = 0.0;                       // dephasing factor in [0, 1]
    double i0 = 1.0;                      // single-photon intensity, > 0
    Convention convention = Convention::eq8;

    void validate() const {
        if (!std::isfinite(theta0)) throw ConfigError("theta0 must be finite");
        if (!(q >= 0.0 && q <= 1.0)) throw ConfigError("q must lie in [0, 1]");
        if (!(i0 > 0.0) || !std::isfinite(i0)) throw ConfigError("i0 must be finite and > 0");
    }
};

// Δ_j in radians.
inline double pair_phase(const SpdcPair& pair, double tau) { return pair.q_weight * pair.delta_omega * tau; }

namespace detail {

inline ComplexAmp times_i(ComplexAmp z) { return {-z.imag(), z.real()}; }

inline double interference_sine(const SpdcPair& pair, double tau, const ModelParams& p) {
    return std::sin(2.0 * pair_phase(pair, tau) + p.theta0);
}

// Port intensities in units of I₀. The two entries of a direct/swapped pair
// sum to exactly 2, so ensemble means can be formed before scaling by I₀.
inline IntensityPair unit_intensities(double s) { return {1.0 - s, 1.0 + s}; }
inline IntensityPair unit_swapped_intensities(double s) { return {1.0 + s, 1.0 - s}; }

} // namespace detail

// (c, d) = (a + i·b, i·a + b) / √2
inline AmpPair bs_transform(ComplexAmp a, ComplexAmp b) {
    constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    return {inv_sqrt2 * (a + detail::times_i(b)), inv_sqrt2 * (detail::times_i(a) + b)};
}

inline AmpPair pair_input_fields(const SpdcPair& pair, double tau, const ModelParams& p) {
    return {ComplexAmp{1.0, 0.0}, std::polar(1.0, 2.0 * pair_phase(pair, tau) + p.theta0)};
}

// E_c, E_d in units of E₀ with the carrier factored out.
inline AmpPair output_amplitudes(const SpdcPair& pair, double tau, const ModelParams& p) {
    const auto in = pair_input_fields(pair, tau, p);
    return bs_transform(in.first, in.second);
}

inline IntensityPair output_intensities(const SpdcPair& pair, double tau, const ModelParams& p) {
    const auto u = detail::unit_intensities(detail::interference_sine(pair, tau, p));
    return {p.i0 * u.c, p.i0 * u.d};
}

// Second path-photon correlation term: signal and idler exchange input ports.
inline IntensityPair swapped_intensities(const SpdcPair& pair, double tau, const ModelParams& p) {
    const auto u = detail::unit_swapped_intensities(detail::interference_sine(pair, tau, p));
    return {p.i0 * u.c, p.i0 * u.d};
}

// Per-pair coincidence term R_j of the second-order correlation, in units of
// intensity². Always in [0, I₀²].
inline double pair_coincidence(const SpdcPair& pair, double tau, const ModelParams& p) {
    switch (p.convention) {
    case Convention::eq8: {
        // cos²x = (1 + cos 2x)/2 keeps the θ₀ = ±π/2, τ = 0 case at exactly 0.
        const double x = pair_phase(pair, tau) + p.theta0;
        return p.i0 * p.i0 * (0.5 * (1.0 + std::cos(2.0 * x)));
    }
    case Convention::product45: {
        // I_c·I_d with I₀² applied once so the product stays within [0, I₀²].
        const auto u = detail::unit_intensities(detail::interference_sine(pair, tau, p));
        return p.i0 * p.i0 * (u.c * u.d);
    }
    }
    return 0.0;
}

} // namespace hom
