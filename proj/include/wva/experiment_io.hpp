#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wva/figures.hpp"
#include "wva/infotheory.hpp"
#include "wva/scaling.hpp"

namespace wva {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    PpsAngles pps{};
    double mean_photons = 8.0;
    double chi = 0.01;
    int order = 2;
    std::optional<SweepSpec> sweep;
    double tail_tol = kDefaultTailTol;
    OutputFormat output_format = OutputFormat::Csv;

    // Re-checks every physical invariant; throws ConfigError.
    void validate() const;
    // The sweep merged with the fixed parameters above. Throws ConfigError
    // when no sweep is configured.
    SweepSpec sweep_spec() const;
};

// Accepts "1.5", "1.5pi", "pi", "-pi", "pi/2", "0.75pi/2".
double parse_angle(std::string_view text);

// Applies one "key=value" assignment. Keys: theta_i, theta_f, phi_0,
// mean_photons (alias N), chi, order, tail_tol, format, sweep.axis,
// sweep.start, sweep.stop, sweep.points, sweep.log.
void apply_setting(ExperimentConfig& config, std::string_view assignment);

// Overrides one fixed parameter (or sweep.start/stop/points/log) of a
// prepared sweep, e.g. a figure default.
void apply_override(SweepSpec& spec, std::string_view assignment);

// key=value lines; blank lines and '#' comments ignored.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

// Full-precision (17 significant digit) rendering; "nan"/"inf"/"-inf" otherwise.
std::string format_number(double x);

// Space-separated key=value echo of every parameter in the config.
std::string describe(const ExperimentConfig& config);
std::string describe(const SweepSpec& spec);

void write_point(std::ostream& out, const ExperimentConfig& config,
                 const FisherReport& report, OutputFormat format);

void write_error_record(std::ostream& out, std::string_view kind, std::string_view message,
                        std::optional<double> p_f);

void write_sweep(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows,
                 std::string_view label, OutputFormat format);

// Writes one figure. Fig4 also carries the two power-law fits.
void write_figure(std::ostream& out, FigureId id, const std::vector<SweepSpec>& specs,
                  OutputFormat format, int threads);

// Parsed CSV emitted by the writers above.
struct CsvTable {
    std::string metadata;  // first line without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

// Throws ConfigError when a data row does not match the header width.
CsvTable read_csv(std::istream& in);

// |g1 g2|^2 / (delta1^2 delta2). All inputs in one angular-frequency unit;
// the result is in that unit. Throws ZeroDetuning.
double estimate_chi(double g1, double g2, double delta1, double delta2);

}  // namespace wva
