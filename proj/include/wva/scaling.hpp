#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "wva/fock_core.hpp"
#include "wva/infotheory.hpp"
#include "wva/postselect.hpp"

namespace wva {

enum class SweepAxis { ThetaF, Chi, MeanPhotons };

std::string_view axis_name(SweepAxis axis) noexcept;
SweepAxis parse_axis(std::string_view name);

struct SweepSpec {
    SweepAxis axis = SweepAxis::ThetaF;
    double start = 0.0;
    double stop = 1.0;
    int points = 2;
    bool log_spaced = false;

    // Parameter point held fixed; the swept field is overwritten per row.
    PpsAngles angles{};
    double mean_photons = 1.0;
    double chi = 0.0;
    int order = 2;
    double tail_tol = kDefaultTailTol;

    void validate() const;
    std::vector<double> grid() const;
};

// Why a row carries no information values. Numeric values are what the
// degenerate_flag column shows.
enum class RowFlag : int {
    Ok = 0,
    Degenerate = 1,    // p_f below the floor; only p_f and q_conventional are set
    PathMismatch = 2,  // the two QFI evaluations disagree (near-degenerate, tiny chi)
};

struct SweepRow {
    double axis_value = 0.0;
    FisherReport report{};
    RowFlag flag = RowFlag::Ok;

    bool degenerate() const noexcept { return flag != RowFlag::Ok; }
};

// Rows evaluated in parallel. Output order and values do not depend on the
// thread count. threads <= 0 uses the OpenMP default.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 0);

// Single-threaded reference for run_sweep.
std::vector<SweepRow> run_sweep_serial(const SweepSpec& spec);

SweepRow evaluate_row(const SweepSpec& spec, double axis_value);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double residual_max = 0.0;
};

// OLS of log y against log x.
ScalingFit fit_power_law(std::span<const double> xs, std::span<const double> ys);

}  // namespace wva
