#include "wva/postselect.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "wva/errors.hpp"
#include "wva/numeric.hpp"

namespace wva {

void PpsAngles::validate() const {
    if (!std::isfinite(theta_i) || !std::isfinite(theta_f) || !std::isfinite(phi_0)) {
        throw std::invalid_argument("PpsAngles: angles must be finite");
    }
}

PpsCoefficients pps_coefficients(const PpsAngles& angles) {
    angles.validate();
    const double ci = std::cos(angles.theta_i), cf = std::cos(angles.theta_f);
    const double si = std::sin(angles.theta_i), sf = std::sin(angles.theta_f);
    return {0.5 * (1.0 + ci * cf), 0.5 * si * sf, 0.5 * (ci + cf)};
}

double phase_deviation(double phi_0, double theta) noexcept {
    const double st = std::sin(theta);
    return 2.0 * std::cos(phi_0) * st * st + std::sin(phi_0) * std::sin(2.0 * theta);
}

RelativePhase relative_phase(double phi_0, double theta) noexcept {
    const double c0 = std::cos(phi_0), s0 = std::sin(phi_0);
    const double c2 = std::cos(2.0 * theta), s2 = std::sin(2.0 * theta);
    return {c2 * c0 - s2 * s0, s2 * c0 + c2 * s0};
}

double interference_factor(const PpsCoefficients& k, double phi_0, double theta) noexcept {
    return (k.a_coef + k.b_coef * std::cos(phi_0)) - k.b_coef * phase_deviation(phi_0, theta);
}

namespace {

struct BranchWeights {
    double lower;                // cos(theta_i/2) cos(theta_f/2), attached to |phi_->
    std::complex<double> upper;  // sin(theta_i/2) sin(theta_f/2) e^{i phi_0}, attached to |phi_+>
};

BranchWeights branch_weights(const PpsAngles& angles) {
    angles.validate();
    const double lower = std::cos(angles.theta_i / 2) * std::cos(angles.theta_f / 2);
    const double upper = std::sin(angles.theta_i / 2) * std::sin(angles.theta_f / 2);
    return {lower, std::polar(upper, angles.phi_0)};
}

}  // namespace

TruncatedMeterState PostselectedState::normalized() const {
    TruncatedMeterState out = unnormalized;
    const double scale = 1.0 / std::sqrt(p_f);
    for (auto& c : out.amplitudes) c *= scale;
    out.tail_bound = unnormalized.tail_bound / p_f;
    return out;
}

PostselectedState postselected_state(const PpsAngles& angles, const CoherentProbe& probe,
                                     const CouplingConfig& coupling, int n_max) {
    const auto [lower, upper] = branch_weights(angles);
    const auto meter = coherent_amplitudes(probe, n_max);
    const auto minus = encode_phase(meter, coupling, -1);
    const auto plus = encode_phase(meter, coupling, +1);

    PostselectedState out;
    out.unnormalized.amplitudes.resize(meter.amplitudes.size());
    for (std::size_t n = 0; n < meter.amplitudes.size(); ++n) {
        out.unnormalized.amplitudes[n] = lower * minus.amplitudes[n] + upper * plus.amplitudes[n];
    }
    out.unnormalized.tail_bound = meter.tail_bound;
    out.p_f = out.unnormalized.norm_squared();
    if (out.p_f < kMinPostselectionProbability) {
        throw degenerate_postselection(out.p_f);
    }
    return out;
}

double postselection_probability(const PpsAngles& angles, const CoherentProbe& probe,
                                 const CouplingConfig& coupling, int n_max) {
    const auto k = pps_coefficients(angles);
    if (k.b_coef == 0.0) return k.a_coef;
    // e^{-N} sum N^n/n! = 1 is applied analytically; only the chi-dependent
    // deviation from cos(phi_0) is summed, so chi = 0 is exact.
    const auto w = poisson_weights(probe.mean_photons(), n_max);
    CompensatedSum deviation;
    for (int n = 1; n <= n_max; ++n) {
        const double theta = coupling.chi() * integer_power(n, coupling.order());
        deviation.add(w[n] * phase_deviation(angles.phi_0, theta));
    }
    return (k.a_coef + k.b_coef * std::cos(angles.phi_0)) - k.b_coef * deviation.value();
}

std::complex<double> weak_value(const PpsAngles& angles) {
    angles.validate();
    const double ci = std::cos(angles.theta_i / 2), si = std::sin(angles.theta_i / 2);
    const double cf = std::cos(angles.theta_f / 2), sf = std::sin(angles.theta_f / 2);
    const std::complex<double> upper = std::polar(si * sf, angles.phi_0);
    const std::complex<double> overlap = ci * cf + upper;
    if (std::abs(overlap) <= kMinOverlap) {
        throw DivergentWeakValue("weak_value: <f|i> vanishes, weak value diverges");
    }
    return (upper - ci * cf) / overlap;
}

std::complex<double> amplified_strength(const CouplingConfig& coupling, const PpsAngles& angles) {
    return coupling.chi() * weak_value(angles);
}

}  // namespace wva
