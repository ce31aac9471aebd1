#include "wva/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wva/errors.hpp"
#include "wva/numeric.hpp"

namespace wva {

namespace {

// Per-level ingredients shared by the series formulas: Poisson weight w_n,
// the encoded power m_n = n^k, cos and sin of the relative phase
// x_n = 2 chi m_n + phi_0, and the interference factor A + B cos x_n.
struct LevelSeries {
    std::vector<double> weight;
    std::vector<double> power;
    std::vector<double> cos_phase;
    std::vector<double> sin_phase;
    std::vector<double> factor;
};

LevelSeries level_series(const PpsAngles& angles, const CoherentProbe& probe,
                         const CouplingConfig& coupling, int n_max) {
    const auto k = pps_coefficients(angles);
    LevelSeries s;
    s.weight = poisson_weights(probe.mean_photons(), n_max);
    s.power.resize(s.weight.size());
    s.cos_phase.resize(s.weight.size());
    s.sin_phase.resize(s.weight.size());
    s.factor.resize(s.weight.size());
    for (int n = 0; n <= n_max; ++n) {
        s.power[n] = integer_power(n, coupling.order());
        const double theta = coupling.chi() * s.power[n];
        const auto x = relative_phase(angles.phi_0, theta);
        s.cos_phase[n] = x.cos;
        s.sin_phase[n] = x.sin;
        s.factor[n] = interference_factor(k, angles.phi_0, theta);
    }
    return s;
}

double checked_probability(const PpsAngles& angles, const CoherentProbe& probe,
                           const CouplingConfig& coupling, int n_max) {
    const double p_f = postselection_probability(angles, probe, coupling, n_max);
    if (p_f < kMinPostselectionProbability) throw degenerate_postselection(p_f);
    return p_f;
}

std::vector<double> outcome_probs(const PpsAngles& angles, const CoherentProbe& probe,
                                  const CouplingConfig& coupling, int n_max, double p_f) {
    const auto s = level_series(angles, probe, coupling, n_max);
    std::vector<double> probs(s.weight.size());
    for (std::size_t n = 0; n < probs.size(); ++n) probs[n] = s.weight[n] * s.factor[n] / p_f;
    return probs;
}

}  // namespace

OutcomeDistribution outcome_distribution(const PpsAngles& angles, const CoherentProbe& probe,
                                         const CouplingConfig& coupling, int n_max) {
    const double p_f = checked_probability(angles, probe, coupling, n_max);
    return {outcome_probs(angles, probe, coupling, n_max, p_f), p_f};
}

double classical_fisher(const PpsAngles& angles, const CoherentProbe& probe,
                        const CouplingConfig& coupling, int n_max) {
    const double p_f = checked_probability(angles, probe, coupling, n_max);
    const auto k = pps_coefficients(angles);
    const auto s = level_series(angles, probe, coupling, n_max);

    CompensatedSum dp_acc;
    for (std::size_t n = 0; n < s.weight.size(); ++n) {
        dp_acc.add(s.weight[n] * s.power[n] * s.sin_phase[n]);
    }
    const double dp_f = -2.0 * k.b_coef * dp_acc.value();

    CompensatedSum fisher;
    for (std::size_t n = 0; n < s.weight.size(); ++n) {
        const double prob = s.weight[n] * s.factor[n] / p_f;
        if (prob < kProbabilityFloor) continue;
        const double dprob =
            s.weight[n] * (-2.0 * s.power[n] * k.b_coef * s.sin_phase[n]) / p_f -
            prob * dp_f / p_f;
        fisher.add(dprob * dprob / prob);
    }
    return fisher.value();
}

double default_fd_step(const CouplingConfig& coupling, int n_max) {
    const double top = std::max(1.0, integer_power(n_max, coupling.order()));
    return 1e-3 * std::max(1.0, std::abs(coupling.chi())) / top;
}

double classical_fisher_fd(const PpsAngles& angles, const CoherentProbe& probe,
                           const CouplingConfig& coupling, int n_max, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("classical_fisher_fd: step must be positive");
    const CouplingConfig lo(coupling.chi() - step, coupling.order());
    const CouplingConfig hi(coupling.chi() + step, coupling.order());
    const auto centre = outcome_distribution(angles, probe, coupling, n_max);
    const auto below = outcome_distribution(angles, probe, lo, n_max);
    const auto above = outcome_distribution(angles, probe, hi, n_max);

    CompensatedSum fisher;
    for (std::size_t n = 0; n < centre.probs.size(); ++n) {
        if (centre.probs[n] < kProbabilityFloor) continue;
        const double d = (above.probs[n] - below.probs[n]) / (2.0 * step);
        fisher.add(d * d / centre.probs[n]);
    }
    return fisher.value();
}

double classical_fisher_fd(const PpsAngles& angles, const CoherentProbe& probe,
                           const CouplingConfig& coupling, int n_max) {
    return classical_fisher_fd(angles, probe, coupling, n_max, default_fd_step(coupling, n_max));
}

double qfi_derivative_path(const PpsAngles& angles, const CoherentProbe& probe,
                           const CouplingConfig& coupling, int n_max) {
    const auto post = postselected_state(angles, probe, coupling, n_max);
    const auto meter = coherent_amplitudes(probe, n_max);
    const auto minus = encode_phase(meter, coupling, -1);
    const auto plus = encode_phase(meter, coupling, +1);
    const double lower = std::cos(angles.theta_i / 2) * std::cos(angles.theta_f / 2);
    const std::complex<double> upper =
        std::polar(std::sin(angles.theta_i / 2) * std::sin(angles.theta_f / 2), angles.phi_0);

    const auto& psi = post.unnormalized.amplitudes;
    std::vector<std::complex<double>> dpsi(psi.size());
    for (std::size_t n = 0; n < psi.size(); ++n) {
        const double m = integer_power(static_cast<int>(n), coupling.order());
        dpsi[n] = std::complex<double>(0.0, -m) * (lower * minus.amplitudes[n] - upper * plus.amplitudes[n]);
    }

    CompensatedComplexSum overlap;
    for (std::size_t n = 0; n < psi.size(); ++n) overlap.add(std::conj(psi[n]) * dpsi[n]);
    const double p_f = post.p_f;
    const double dp_f = 2.0 * overlap.value().real();

    // d/dchi of psi / sqrt(p_f)
    const double inv_root = 1.0 / std::sqrt(p_f);
    const double shift = 0.5 * dp_f / (p_f * std::sqrt(p_f));
    CompensatedSum norm;
    CompensatedComplexSum proj;
    for (std::size_t n = 0; n < psi.size(); ++n) {
        const std::complex<double> phi = psi[n] * inv_root;
        const std::complex<double> dphi = dpsi[n] * inv_root - psi[n] * shift;
        norm.add(std::norm(dphi));
        proj.add(std::conj(phi) * dphi);
    }
    return 4.0 * (norm.value() - std::norm(proj.value()));
}

double qfi_closed_form(const PpsAngles& angles, const CoherentProbe& probe,
                       const CouplingConfig& coupling, int n_max) {
    const double p_f = checked_probability(angles, probe, coupling, n_max);
    const auto k = pps_coefficients(angles);
    const auto s = level_series(angles, probe, coupling, n_max);

    const int order = coupling.order();
    const double moment = order == 2 ? photon_moment(probe, 2, n_max)
                                     : photon_moment_series(probe, order, n_max);
    const double moment_sq = order == 2 ? photon_moment(probe, 4, n_max)
                                        : photon_moment_series(probe, 2 * order, n_max);

    CompensatedSum cos_sum, sin_sum;
    for (std::size_t n = 0; n < s.weight.size(); ++n) {
        cos_sum.add(s.weight[n] * s.power[n] * s.power[n] * s.cos_phase[n]);
        sin_sum.add(s.weight[n] * s.power[n] * s.sin_phase[n]);
    }
    const double c_term = k.c_coef * moment;
    const double s_term = sin_sum.value();
    const double wva_qfi = 4.0 * (k.a_coef * moment_sq - c_term * c_term / p_f -
                                  k.b_coef * cos_sum.value() -
                                  k.b_coef * k.b_coef * s_term * s_term / p_f);
    return wva_qfi / p_f;
}

double qfi_conventional(const CoherentProbe& probe) {
    const double n = probe.mean_photons();
    return 4.0 * (4.0 * n * n * n + 6.0 * n * n + n);
}

double qfi_conventional_series(const CoherentProbe& probe, int order, int n_max) {
    const double m1 = photon_moment_series(probe, order, n_max);
    const double m2 = photon_moment_series(probe, 2 * order, n_max);
    return 4.0 * (m2 - m1 * m1);
}

double crb_bound(double p_f, double fisher) {
    const double info = p_f * fisher;
    if (!(info > 0.0)) throw NonpositiveInformation("crb_bound: p_f * fisher must be positive");
    return 1.0 / std::sqrt(info);
}

FisherReport fisher_report(const PpsAngles& angles, const CoherentProbe& probe,
                           const CouplingConfig& coupling, double tail_tol) {
    const int n_max = working_cutoff(probe, tail_tol);
    FisherReport r;
    r.n_max = n_max;
    r.p_f = checked_probability(angles, probe, coupling, n_max);
    r.f_classical = classical_fisher(angles, probe, coupling, n_max);

    const double q_state = qfi_derivative_path(angles, probe, coupling, n_max);
    const double q_closed = qfi_closed_form(angles, probe, coupling, n_max);
    const double scale = std::max({std::abs(q_state), std::abs(q_closed), 1e-300});
    if (std::abs(q_state - q_closed) > kPathMismatchTolerance * scale) {
        throw PathMismatch("fisher_report: QFI paths disagree (" + std::to_string(q_state) +
                           " vs " + std::to_string(q_closed) + ")");
    }
    r.q_quantum = q_state;
    r.wva_fi = r.p_f * r.f_classical;
    r.wva_qfi = r.p_f * r.q_quantum;
    r.q_conventional = coupling.order() == 2 ? qfi_conventional(probe)
                                             : qfi_conventional_series(probe, coupling.order(), n_max);
    r.crb = r.wva_fi > 0.0 ? crb_bound(r.p_f, r.f_classical)
                           : std::numeric_limits<double>::infinity();
    return r;
}

}  // namespace wva
