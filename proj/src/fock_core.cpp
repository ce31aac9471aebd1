#include "wva/fock_core.hpp"

#include <cmath>
#include <stdexcept>

#include "wva/numeric.hpp"

namespace wva {

CoherentProbe::CoherentProbe(double mean_photons) : mean_photons_(mean_photons) {
    if (!std::isfinite(mean_photons) || mean_photons < 0.0) {
        throw std::invalid_argument("CoherentProbe: mean photon number must be finite and >= 0");
    }
}

double CoherentProbe::alpha() const noexcept { return std::sqrt(mean_photons_); }

CouplingConfig::CouplingConfig(double chi, int order) : chi_(chi), order_(order) {
    if (!std::isfinite(chi)) throw std::invalid_argument("CouplingConfig: chi must be finite");
    if (order < 1) throw std::invalid_argument("CouplingConfig: order must be >= 1");
}

double TruncatedMeterState::norm_squared() const noexcept {
    CompensatedSum acc;
    for (const auto& c : amplitudes) acc.add(std::norm(c));
    return acc.value();
}

namespace {

// Far enough past the mean that the remaining Poisson mass underflows.
int tail_horizon(double mean) {
    return static_cast<int>(std::ceil(mean + 40.0 * std::sqrt(mean) + 60.0));
}

// suffix[n] = P(X >= n) for n = 0..horizon, summed from the top.
std::vector<double> upper_tail_table(double mean) {
    const int horizon = tail_horizon(mean);
    const auto w = poisson_weights(mean, horizon);
    std::vector<double> suffix(w.size() + 1, 0.0);
    CompensatedSum acc;
    for (int n = horizon; n >= 0; --n) {
        acc.add(w[n]);
        suffix[n] = acc.value();
    }
    return suffix;
}

}  // namespace

double poisson_tail(const CoherentProbe& probe, int n_max) {
    if (n_max < 0) return 1.0;
    const auto suffix = upper_tail_table(probe.mean_photons());
    const auto idx = static_cast<std::size_t>(n_max) + 1;
    return idx < suffix.size() ? suffix[idx] : 0.0;
}

int truncation_cutoff(const CoherentProbe& probe, double tail_tol) {
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
        throw std::invalid_argument("truncation_cutoff: tail_tol must lie in (0, 1)");
    }
    if (probe.mean_photons() == 0.0) return 0;
    const auto suffix = upper_tail_table(probe.mean_photons());
    int n = 0;
    while (suffix[n + 1] >= tail_tol) ++n;
    return n;
}

int working_cutoff(const CoherentProbe& probe, double tail_tol) {
    return truncation_cutoff(probe, tail_tol) + kCutoffMargin;
}

TruncatedMeterState coherent_amplitudes(const CoherentProbe& probe, int n_max) {
    if (n_max < 0) throw std::invalid_argument("coherent_amplitudes: n_max < 0");
    const auto w = poisson_weights(probe.mean_photons(), n_max);
    TruncatedMeterState state;
    state.amplitudes.reserve(w.size());
    for (double p : w) state.amplitudes.emplace_back(std::sqrt(p), 0.0);
    state.tail_bound = poisson_tail(probe, n_max);
    return state;
}

TruncatedMeterState encode_phase(const TruncatedMeterState& state,
                                 const CouplingConfig& coupling, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("encode_phase: sign must be +1 or -1");
    TruncatedMeterState out = state;
    if (coupling.chi() == 0.0) return out;
    for (int n = 0; n <= out.n_max(); ++n) {
        const double phase = sign * coupling.chi() * integer_power(n, coupling.order());
        out.amplitudes[n] *= std::polar(1.0, phase);
    }
    return out;
}

double photon_moment_series(const CoherentProbe& probe, int power, int n_max) {
    if (power < 0) throw std::invalid_argument("photon_moment_series: negative power");
    const auto w = poisson_weights(probe.mean_photons(), n_max);
    CompensatedSum acc;
    for (int n = 0; n <= n_max; ++n) acc.add(w[n] * integer_power(n, power));
    return acc.value();
}

double photon_moment(const CoherentProbe& probe, int power, int n_max) {
    if (power < 1 || power > 4) throw std::invalid_argument("photon_moment: power must be in 1..4");
    return photon_moment_series(probe, power, n_max);
}

}  // namespace wva
