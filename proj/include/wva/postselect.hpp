#pragma once

#include <complex>

#include "wva/fock_core.hpp"

namespace wva {

// Below this success probability the postselected state is not constructed.
inline constexpr double kMinPostselectionProbability = 1e-12;
inline constexpr double kMinOverlap = 1e-12;

// Pre/post-selection qubit states
//   |i> = cos(theta_i/2)|1> + sin(theta_i/2) e^{i phi_i}|2>
//   |f> = cos(theta_f/2)|1> + sin(theta_f/2) e^{i phi_f}|2>
// Only the relative phase phi_0 = phi_i - phi_f enters any observable, so
// that is all we store.
struct PpsAngles {
    double theta_i = 0.0;
    double theta_f = 0.0;
    double phi_0 = 0.0;

    void validate() const;
};

struct PpsCoefficients {
    double a_coef;  // (1 + cos theta_i cos theta_f) / 2
    double b_coef;  // sin theta_i sin theta_f / 2
    double c_coef;  // (cos theta_i + cos theta_f) / 2
};

PpsCoefficients pps_coefficients(const PpsAngles& angles);

// cos(phi_0) - cos(2 theta + phi_0), expanded as
// 2 cos(phi_0) sin^2(theta) + sin(phi_0) sin(2 theta) so it stays accurate
// when theta = chi n^k is small.
double phase_deviation(double phi_0, double theta) noexcept;

// cos and sin of 2 theta + phi_0 by angle addition. Avoids rounding
// 2 theta + phi_0 as a single argument, which loses the small-theta
// information next to phi_0 ~ pi.
struct RelativePhase {
    double cos;
    double sin;
};
RelativePhase relative_phase(double phi_0, double theta) noexcept;

// A + B cos(2 chi n^k + phi_0): the unnormalized outcome weight of level n
// relative to its Poisson weight.
double interference_factor(const PpsCoefficients& k, double phi_0, double theta) noexcept;

struct PostselectedState {
    TruncatedMeterState unnormalized;
    double p_f;

    TruncatedMeterState normalized() const;
};

// <f|Psi_J>: the meter state conditioned on a successful postselection.
// Throws DegeneratePostselection when p_f < kMinPostselectionProbability.
PostselectedState postselected_state(const PpsAngles& angles, const CoherentProbe& probe,
                                     const CouplingConfig& coupling, int n_max);

// Success probability from the Poisson series. Never throws on small values.
double postselection_probability(const PpsAngles& angles, const CoherentProbe& probe,
                                 const CouplingConfig& coupling, int n_max);

// <f|sigma_z|i> / <f|i>, with phi_f = 0 and phi_i = phi_0.
std::complex<double> weak_value(const PpsAngles& angles);

// chi times the weak value.
std::complex<double> amplified_strength(const CouplingConfig& coupling, const PpsAngles& angles);

}  // namespace wva
