#pragma once

#include <complex>
#include <vector>

namespace wva {

inline constexpr double kDefaultTailTol = 1e-12;
inline constexpr int kCutoffMargin = 5;
inline constexpr double kNormTolerance = 1e-12;

// Coherent probe field |alpha> with alpha = sqrt(N) real and nonnegative.
class CoherentProbe {
public:
    explicit CoherentProbe(double mean_photons);

    double mean_photons() const noexcept { return mean_photons_; }
    double alpha() const noexcept;

private:
    double mean_photons_;
};

// chi is the integrated coupling strength, order the exponent k in
// exp(i chi sigma_z n^k). The physical model has k = 2.
class CouplingConfig {
public:
    explicit CouplingConfig(double chi, int order = 2);

    double chi() const noexcept { return chi_; }
    int order() const noexcept { return order_; }

private:
    double chi_;
    int order_;
};

// Meter state over Fock levels 0..n_max. tail_bound is the probability mass
// discarded by the truncation.
struct TruncatedMeterState {
    std::vector<std::complex<double>> amplitudes;
    double tail_bound = 0.0;

    int n_max() const noexcept { return static_cast<int>(amplitudes.size()) - 1; }
    double norm_squared() const noexcept;
};

// Upper Poisson(N) tail mass above n_max, i.e. P(n > n_max).
double poisson_tail(const CoherentProbe& probe, int n_max);

// Smallest n_max whose discarded Poisson mass is below tail_tol.
int truncation_cutoff(const CoherentProbe& probe, double tail_tol);

// truncation_cutoff plus the fixed safety margin; what the evaluators use.
int working_cutoff(const CoherentProbe& probe, double tail_tol = kDefaultTailTol);

TruncatedMeterState coherent_amplitudes(const CoherentProbe& probe, int n_max);

// Multiplies amplitude(n) by exp(i * sign * chi * n^order). sign must be +1 or -1.
TruncatedMeterState encode_phase(const TruncatedMeterState& state,
                                 const CouplingConfig& coupling, int sign);

// <n^power> over the coherent state by direct Poisson series to n_max.
double photon_moment(const CoherentProbe& probe, int power, int n_max);

// Same series without the 1..4 restriction; used for order != 2 couplings.
double photon_moment_series(const CoherentProbe& probe, int power, int n_max);

}  // namespace wva
