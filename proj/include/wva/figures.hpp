#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wva/scaling.hpp"

namespace wva {

enum class FigureId { Fig1a, Fig1b, Fig1c, Fig1d, Fig2, Fig3, Fig4 };

std::optional<FigureId> parse_figure(std::string_view name);
std::string_view figure_name(FigureId id) noexcept;

// One sweep per curve. Fig. 3 has a curve per coupling strength.
std::vector<SweepSpec> figure_sweeps(FigureId id);

// Amplification applied to the chi = 0.001 curve of Fig. 3 for display.
inline constexpr double kFig3DisplayScale = 1e3;
inline constexpr double kFig3ScaledChi = 0.001;

struct Fig4Result {
    std::vector<SweepRow> rows;
    ScalingFit wva_fi_fit;
    ScalingFit q_cm_fit;
};

inline constexpr double kFig4Chi = 0.01;
inline constexpr double kFig4MinPhotons = 20.0;
inline constexpr double kFig4MaxPhotons = 120.0;
inline constexpr int kFig4Points = 12;

Fig4Result fig4_scaling(const SweepSpec& spec, int threads = 0);

}  // namespace wva
