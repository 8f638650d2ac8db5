// oracle.hpp — two-photon amplitude reference for the coincidence rate
//
// Independent of core_model.hpp: builds the splitter matrix itself and sums
// the two indistinguishable coincidence histories (both photons transmitted,
// both reflected) for one detuned pair. Used to cross-check the coherence
// model per pair and, through quadrature over the detuning density, the
// closed-form ensemble dip.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "hom/core_model.hpp"
#include "hom/ensemble.hpp"
#include "hom/error.hpp"

namespace hom::oracle {

struct QuantumPairResult {
    double p_coincidence = 0.0;
    ComplexAmp amp_both_transmitted;
    ComplexAmp amp_both_reflected;
};

struct DeviationReport {
    double max_abs_dev = 0.0;
    double rms_dev = 0.0;
    std::size_t n_samples = 0;
    Convention convention = Convention::eq8;
};

namespace detail {

// U[out][in], out ∈ {c, d}, in ∈ {a, b}; reflection carries the factor i.
inline std::array<std::array<ComplexAmp, 2>, 2> splitter() {
    const double h = 1.0 / std::numbers::sqrt2;
    return {{{ComplexAmp{h, 0.0}, ComplexAmp{0.0, h}}, {ComplexAmp{0.0, h}, ComplexAmp{h, 0.0}}}};
}

} // namespace detail

// Photon at +δω enters port a, its partner at -δω enters port b delayed by τ.
// The transmit-transmit and reflect-reflect histories end with the two
// frequencies on exchanged detectors, a relative phase of 2·δω·τ.
inline QuantumPairResult quantum_pair_coincidence(double delta_omega, double tau) {
    constexpr std::size_t a = 0, b = 1, c = 0, d = 1;
    const auto u = detail::splitter();
    const double half_phase = delta_omega * tau;
    QuantumPairResult r;
    r.amp_both_transmitted = u[c][a] * u[d][b] * std::polar(1.0, half_phase);
    r.amp_both_reflected = u[d][a] * u[c][b] * std::polar(1.0, -half_phase);
    r.p_coincidence = std::norm(r.amp_both_transmitted + r.amp_both_reflected);
    return r;
}

// Compares the coherence model's normalised per-pair coincidence R_j/I₀² with
// the amplitude result over every (pair, τ).
inline DeviationReport compare_models(std::span<const SpdcPair> pairs, std::span<const double> tau_grid,
                                      const ModelParams& p) {
    if (!is_quadrature_phase(p.theta0)) throw DomainError("compare_models: requires theta0 = +-pi/2");
    if (p.convention != Convention::eq8) throw DomainError("compare_models: requires convention eq8");
    if (p.q != 0.0) throw DomainError("compare_models: requires q = 0");
    if (pairs.empty() || tau_grid.empty()) throw ConfigError("compare_models: empty ensemble or tau grid");

    DeviationReport rep;
    rep.convention = p.convention;
    double sum_sq = 0.0;
    const double i0_sq = p.i0 * p.i0;
    for (const auto& pair : pairs) {
        for (double tau : tau_grid) {
            const double model = pair_coincidence(pair, tau, p) / i0_sq;
            const double reference = quantum_pair_coincidence(pair.q_weight * pair.delta_omega, tau).p_coincidence;
            const double dev = std::abs(model - reference);
            rep.max_abs_dev = std::max(rep.max_abs_dev, dev);
            sum_sq += dev * dev;
            ++rep.n_samples;
        }
    }
    rep.rms_dev = std::sqrt(sum_sq / static_cast<double>(rep.n_samples));
    return rep;
}

// Ensemble-averaged coincidence in units of I₀²/2, 2·∫ p(ω, τ) ρ(ω) dω, by
// composite 20-point Gauss-Legendre. Panels are sized to resolve the
// oscillation of the integrand in ω.
inline double ensemble_dip(SpectrumShape shape, double bandwidth, double tau) {
    if (!(bandwidth > 0.0)) throw ConfigError("bandwidth must be > 0");
    using Rule = boost::math::quadrature::gauss<double, 20>;

    double lo = -bandwidth, hi = bandwidth;
    if (shape == SpectrumShape::gaussian) {
        lo = -12.0 * bandwidth;
        hi = 12.0 * bandwidth;
    }
    const auto density = [&](double w) {
        if (shape == SpectrumShape::rect) return 0.5 / bandwidth;
        const double z = w / bandwidth;
        return std::exp(-0.5 * z * z) / (bandwidth * std::sqrt(2.0 * std::numbers::pi));
    };
    const auto integrand = [&](double w) { return 2.0 * quantum_pair_coincidence(w, tau).p_coincidence * density(w); };

    const double periods = (hi - lo) * std::abs(tau) / std::numbers::pi;
    const auto panels = static_cast<std::size_t>(16.0 + 4.0 * std::ceil(periods));
    const double width = (hi - lo) / static_cast<double>(panels);
    double total = 0.0;
    for (std::size_t i = 0; i < panels; ++i) {
        const double x0 = lo + static_cast<double>(i) * width;
        total += Rule::integrate(integrand, x0, x0 + width);
    }
    return total;
}

} // namespace hom::oracle
