#include "wva/figures.hpp"

#include <numbers>
#include <stdexcept>

namespace wva {

namespace {

constexpr double kPi = std::numbers::pi;

// theta_i = pi/2, phi_0 = pi: the AAV-regime configuration of every figure.
SweepSpec aav_base(double mean_photons, double chi) {
    SweepSpec s;
    s.angles = PpsAngles{kPi / 2, kPi / 2, kPi};
    s.mean_photons = mean_photons;
    s.chi = chi;
    return s;
}

SweepSpec fig1(double chi) {
    auto s = aav_base(8.0, chi);
    s.axis = SweepAxis::ThetaF;
    s.start = 0.0;
    s.stop = 2 * kPi;
    s.points = 201;
    return s;
}

}  // namespace

std::optional<FigureId> parse_figure(std::string_view name) {
    for (auto id : {FigureId::Fig1a, FigureId::Fig1b, FigureId::Fig1c, FigureId::Fig1d,
                    FigureId::Fig2, FigureId::Fig3, FigureId::Fig4}) {
        if (figure_name(id) == name) return id;
    }
    return std::nullopt;
}

std::string_view figure_name(FigureId id) noexcept {
    switch (id) {
        case FigureId::Fig1a: return "fig1a";
        case FigureId::Fig1b: return "fig1b";
        case FigureId::Fig1c: return "fig1c";
        case FigureId::Fig1d: return "fig1d";
        case FigureId::Fig2: return "fig2";
        case FigureId::Fig3: return "fig3";
        case FigureId::Fig4: return "fig4";
    }
    return "?";
}

std::vector<SweepSpec> figure_sweeps(FigureId id) {
    switch (id) {
        case FigureId::Fig1a: return {fig1(0.001)};
        case FigureId::Fig1b: return {fig1(0.005)};
        case FigureId::Fig1c: return {fig1(0.01)};
        case FigureId::Fig1d: return {fig1(0.1)};
        case FigureId::Fig2: {
            auto s = aav_base(8.0, 0.0);
            s.axis = SweepAxis::Chi;
            s.start = 1e-4;
            s.stop = 0.2;
            s.points = 200;
            s.log_spaced = true;
            return {s};
        }
        case FigureId::Fig3: {
            std::vector<SweepSpec> out;
            for (double chi : {0.001, 0.01, 0.1}) {
                auto s = aav_base(1.0, chi);
                s.axis = SweepAxis::MeanPhotons;
                s.start = 1.0;
                s.stop = 64.0;
                s.points = 128;
                out.push_back(s);
            }
            return out;
        }
        case FigureId::Fig4: {
            auto s = aav_base(kFig4MinPhotons, kFig4Chi);
            s.axis = SweepAxis::MeanPhotons;
            s.start = kFig4MinPhotons;
            s.stop = kFig4MaxPhotons;
            s.points = kFig4Points;
            s.log_spaced = true;
            return {s};
        }
    }
    throw std::invalid_argument("figure_sweeps: unknown figure");
}

Fig4Result fig4_scaling(const SweepSpec& spec, int threads) {
    if (spec.axis != SweepAxis::MeanPhotons) {
        throw std::invalid_argument("fig4_scaling: sweep must run over mean_photons");
    }
    Fig4Result out;
    out.rows = run_sweep(spec, threads);
    std::vector<double> n_fi, fi, n_cm, cm;
    for (const auto& row : out.rows) {
        if (!row.degenerate()) {
            n_fi.push_back(row.axis_value);
            fi.push_back(row.report.wva_fi);
        }
        const CoherentProbe probe(row.axis_value);
        n_cm.push_back(row.axis_value);
        cm.push_back(spec.order == 2 ? qfi_conventional(probe)
                                     : qfi_conventional_series(probe, spec.order,
                                                               working_cutoff(probe, spec.tail_tol)));
    }
    out.wva_fi_fit = fit_power_law(n_fi, fi);
    out.q_cm_fit = fit_power_law(n_cm, cm);
    return out;
}

}  // namespace wva
