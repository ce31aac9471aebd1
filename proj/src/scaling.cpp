#include "wva/scaling.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <string>

#include "wva/errors.hpp"
#include "wva/numeric.hpp"

namespace wva {

std::string_view axis_name(SweepAxis axis) noexcept {
    switch (axis) {
        case SweepAxis::ThetaF: return "theta_f";
        case SweepAxis::Chi: return "chi";
        case SweepAxis::MeanPhotons: return "mean_photons";
    }
    return "?";
}

SweepAxis parse_axis(std::string_view name) {
    if (name == "theta_f") return SweepAxis::ThetaF;
    if (name == "chi") return SweepAxis::Chi;
    if (name == "mean_photons" || name == "N") return SweepAxis::MeanPhotons;
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
    if (points < 2) throw std::invalid_argument("SweepSpec: points must be >= 2");
    if (!std::isfinite(start) || !std::isfinite(stop) || !(start < stop)) {
        throw std::invalid_argument("SweepSpec: need finite start < stop");
    }
    if (log_spaced && !(start > 0.0)) {
        throw std::invalid_argument("SweepSpec: log spacing needs start > 0");
    }
    if (axis == SweepAxis::MeanPhotons && start < 0.0) {
        throw std::invalid_argument("SweepSpec: mean photon number cannot be negative");
    }
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw std::invalid_argument("SweepSpec: tail_tol must lie in (0, 1)");
    angles.validate();
    CoherentProbe{mean_photons};
    CouplingConfig{chi, order};
}

std::vector<double> SweepSpec::grid() const {
    validate();
    std::vector<double> g(static_cast<std::size_t>(points));
    const double last = points - 1;
    if (log_spaced) {
        const double a = std::log(start), b = std::log(stop);
        for (int i = 0; i < points; ++i) g[i] = std::exp(a + (b - a) * (i / last));
    } else {
        for (int i = 0; i < points; ++i) g[i] = start + (stop - start) * (i / last);
    }
    // pin the endpoints against rounding in exp/log
    g.front() = start;
    g.back() = stop;
    return g;
}

SweepRow evaluate_row(const SweepSpec& spec, double axis_value) {
    PpsAngles angles = spec.angles;
    double mean_photons = spec.mean_photons;
    double chi = spec.chi;
    switch (spec.axis) {
        case SweepAxis::ThetaF: angles.theta_f = axis_value; break;
        case SweepAxis::Chi: chi = axis_value; break;
        case SweepAxis::MeanPhotons: mean_photons = axis_value; break;
    }
    const CoherentProbe probe(mean_photons);
    const CouplingConfig coupling(chi, spec.order);

    SweepRow row;
    row.axis_value = axis_value;
    try {
        row.report = fisher_report(angles, probe, coupling, spec.tail_tol);
        return row;
    } catch (const DegeneratePostselection&) {
        row.flag = RowFlag::Degenerate;
    } catch (const PathMismatch&) {
        row.flag = RowFlag::PathMismatch;
    }
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    const int n_max = working_cutoff(probe, spec.tail_tol);
    row.report = FisherReport{postselection_probability(angles, probe, coupling, n_max),
                              nan, nan, nan, nan,
                              spec.order == 2 ? qfi_conventional(probe)
                                              : qfi_conventional_series(probe, spec.order, n_max),
                              nan, n_max};
    return row;
}

std::vector<SweepRow> run_sweep_serial(const SweepSpec& spec) {
    const auto grid = spec.grid();
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double v : grid) rows.push_back(evaluate_row(spec, v));
    return rows;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
    const auto grid = spec.grid();
    const int count = static_cast<int>(grid.size());
    const int workers = threads > 0 ? threads : omp_get_max_threads();
    std::vector<SweepRow> rows(grid.size());
    std::vector<std::exception_ptr> failures(grid.size());

#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (int i = 0; i < count; ++i) {
        try {
            rows[i] = evaluate_row(spec, grid[i]);
        } catch (...) {
            failures[i] = std::current_exception();
        }
    }

    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }
    return rows;
}

ScalingFit fit_power_law(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_power_law: x and y lengths differ");
    if (xs.size() < 3) throw InsufficientPoints("fit_power_law: need at least 3 points");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
            throw NonpositiveData("fit_power_law: x and y must be strictly positive");
        }
    }
    const std::size_t n = xs.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    const double mx = compensated_sum(lx) / n;
    const double my = compensated_sum(ly) / n;
    CompensatedSum sxx, sxy, syy;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = lx[i] - mx, dy = ly[i] - my;
        sxx.add(dx * dx);
        sxy.add(dx * dy);
        syy.add(dy * dy);
    }
    if (sxx.value() == 0.0) throw InsufficientPoints("fit_power_law: x values all coincide");

    ScalingFit fit;
    fit.slope = sxy.value() / sxx.value();
    fit.intercept = my - fit.slope * mx;
    CompensatedSum ss_res;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss_res.add(r * r);
        fit.residual_max = std::max(fit.residual_max, std::abs(r));
    }
    fit.r_squared = syy.value() > 0.0 ? 1.0 - ss_res.value() / syy.value() : 1.0;
    fit.r_squared = std::clamp(fit.r_squared, 0.0, 1.0);
    return fit;
}

}  // namespace wva
