#pragma once

#include <vector>

#include "wva/fock_core.hpp"
#include "wva/postselect.hpp"

namespace wva {

// Outcome terms with P_f(n) below this are left out of the Fisher sum.
inline constexpr double kProbabilityFloor = 1e-300;
// Relative disagreement between the two QFI evaluations that aborts a report.
inline constexpr double kPathMismatchTolerance = 1e-6;

struct OutcomeDistribution {
    std::vector<double> probs;  // P_f(n), n = 0..n_max
    double p_f;
};

struct FisherReport {
    double p_f = 0.0;
    double f_classical = 0.0;     // F_f, photon counting on the postselected meter
    double q_quantum = 0.0;       // Q_f
    double wva_fi = 0.0;          // p_f F_f
    double wva_qfi = 0.0;         // p_f Q_f
    double q_conventional = 0.0;  // Q_cm, no postselection
    double crb = 0.0;             // 1/sqrt(p_f F_f); +inf when F_f = 0
    int n_max = 0;
};

OutcomeDistribution outcome_distribution(const PpsAngles& angles, const CoherentProbe& probe,
                                         const CouplingConfig& coupling, int n_max);

// F_f with the analytic chi-derivative of P_f(n).
double classical_fisher(const PpsAngles& angles, const CoherentProbe& probe,
                        const CouplingConfig& coupling, int n_max);

// Default central-difference step: about 1e-3 rad of phase on the highest
// retained Fock level.
double default_fd_step(const CouplingConfig& coupling, int n_max);

// F_f from central differences of P_f(n) at chi +/- step. Verification path.
double classical_fisher_fd(const PpsAngles& angles, const CoherentProbe& probe,
                           const CouplingConfig& coupling, int n_max, double step);
double classical_fisher_fd(const PpsAngles& angles, const CoherentProbe& probe,
                           const CouplingConfig& coupling, int n_max);

// Q_f = 4(<dPhi|dPhi> - |<Phi|dPhi>|^2) from the normalized state and its
// analytic chi-derivative.
double qfi_derivative_path(const PpsAngles& angles, const CoherentProbe& probe,
                           const CouplingConfig& coupling, int n_max);

// Q_f from the closed-form expression in A, B, C and coherent moments.
double qfi_closed_form(const PpsAngles& angles, const CoherentProbe& probe,
                       const CouplingConfig& coupling, int n_max);

// Q_cm = 4(4N^3 + 6N^2 + N) for the quadratic coupling.
double qfi_conventional(const CoherentProbe& probe);

// 4 Var(n^order) by series; equals qfi_conventional for order 2.
double qfi_conventional_series(const CoherentProbe& probe, int order, int n_max);

// Cramer-Rao bound 1/sqrt(p_f * fisher).
double crb_bound(double p_f, double fisher);

FisherReport fisher_report(const PpsAngles& angles, const CoherentProbe& probe,
                           const CouplingConfig& coupling,
                           double tail_tol = kDefaultTailTol);

}  // namespace wva
