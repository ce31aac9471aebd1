// wvasim: postselected nonlinear-coupling metrology from the command line.
//
//   wvasim point   [--config f] [key=value ...]
//   wvasim fig     <fig1a|fig1b|fig1c|fig1d|fig2|fig3|fig4> [key=value ...]
//   wvasim sweep   [--config f] sweep.axis=chi sweep.start=... [key=value ...]
//   wvasim estimate-chi --g1 G1 --g2 G2 --delta1 D1 --delta2 D2
//
// Exit codes: 0 ok, 2 config error, 3 degenerate postselection, 4 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wva/errors.hpp"
#include "wva/experiment_io.hpp"
#include "wva/figures.hpp"
#include "wva/infotheory.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitIo = 4;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string format;
    std::optional<double> tail_tol;
    int threads = 0;
    std::vector<std::string> settings;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_config) {
    if (with_config) cmd->add_option("--config", opts.config_path, "key=value config file");
    cmd->add_option("--out", opts.out_path, "write output here instead of stdout");
    cmd->add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--tail-tol", opts.tail_tol, "discarded Poisson mass per series");
    cmd->add_option("--threads", opts.threads, "sweep worker threads (0 = OpenMP default)");
    cmd->add_option("settings", opts.settings, "key=value parameter overrides");
}

wva::ExperimentConfig build_config(const CommonOptions& opts) {
    wva::ExperimentConfig config;
    if (!opts.config_path.empty()) config = wva::load_config(opts.config_path);
    for (const auto& s : opts.settings) wva::apply_setting(config, s);
    if (opts.tail_tol) config.tail_tol = *opts.tail_tol;
    if (!opts.format.empty()) wva::apply_setting(config, "format=" + opts.format);
    config.validate();
    return config;
}

wva::OutputFormat pick_format(const std::string& flag) {
    return flag == "json" ? wva::OutputFormat::Json : wva::OutputFormat::Csv;
}

int deliver(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        std::cout.flush();
        return std::cout ? 0 : kExitIo;
    }
    std::ofstream out(out_path, std::ios::binary);
    out << text;
    out.close();
    if (!out) {
        std::cerr << "wvasim: cannot write '" << out_path << "'\n";
        return kExitIo;
    }
    return 0;
}

int run_point(const CommonOptions& opts) {
    const auto config = build_config(opts);
    if (config.sweep) throw wva::ConfigError("point does not take sweep.* settings");
    try {
        const auto report = wva::fisher_report(config.pps, wva::CoherentProbe(config.mean_photons),
                                               wva::CouplingConfig(config.chi, config.order),
                                               config.tail_tol);
        std::ostringstream text;
        wva::write_point(text, config, report, config.output_format);
        return deliver(text.str(), opts.out_path);
    } catch (const wva::DegeneratePostselection& e) {
        wva::write_error_record(std::cout, "DegeneratePostselection", e.what(), e.p_f());
        std::cerr << "wvasim: " << e.what() << '\n';
        return kExitDegenerate;
    }
}

int run_sweep_cmd(const CommonOptions& opts) {
    const auto config = build_config(opts);
    const auto spec = config.sweep_spec();
    std::ostringstream text;
    wva::write_sweep(text, spec, wva::run_sweep(spec, opts.threads), "sweep", config.output_format);
    return deliver(text.str(), opts.out_path);
}

int run_fig(const std::string& which, const CommonOptions& opts) {
    const auto id = wva::parse_figure(which);
    if (!id) throw wva::ConfigError("unknown figure '" + which + "'");
    auto specs = wva::figure_sweeps(*id);
    for (auto& spec : specs) {
        for (const auto& s : opts.settings) wva::apply_override(spec, s);
        if (opts.tail_tol) wva::apply_override(spec, "tail_tol=" + wva::format_number(*opts.tail_tol));
    }
    std::ostringstream text;
    wva::write_figure(text, *id, specs, pick_format(opts.format), opts.threads);
    return deliver(text.str(), opts.out_path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Postselected (weak-value) metrology with quadratic nonlinear coupling"};
    app.require_subcommand(1);

    CommonOptions point_opts, sweep_opts, fig_opts;
    auto* point = app.add_subcommand("point", "Fisher report at one parameter point");
    add_common(point, point_opts, true);

    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter (set sweep.axis etc.)");
    add_common(sweep, sweep_opts, true);

    std::string which;
    auto* fig = app.add_subcommand("fig", "Regenerate the data behind a figure");
    fig->add_option("which", which, "fig1a|fig1b|fig1c|fig1d|fig2|fig3|fig4")->required();
    add_common(fig, fig_opts, false);

    double g1 = 0, g2 = 0, delta1 = 0, delta2 = 0;
    std::string chi_out;
    auto* chi_cmd = app.add_subcommand("estimate-chi", "Dispersive chi = |g1 g2|^2 / (delta1^2 delta2)");
    chi_cmd->add_option("--g1", g1, "|g> <-> |e'> coupling")->required();
    chi_cmd->add_option("--g2", g2, "|e'> <-> |e> coupling")->required();
    chi_cmd->add_option("--delta1", delta1, "one-photon detuning")->required();
    chi_cmd->add_option("--delta2", delta2, "two-photon detuning")->required();
    chi_cmd->add_option("--out", chi_out, "write output here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*point) return run_point(point_opts);
        if (*sweep) return run_sweep_cmd(sweep_opts);
        if (*fig) return run_fig(which, fig_opts);
        if (*chi_cmd) return deliver(wva::format_number(wva::estimate_chi(g1, g2, delta1, delta2)) + "\n", chi_out);
    } catch (const wva::ConfigError& e) {
        std::cerr << "wvasim: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const wva::ZeroDetuning& e) {
        std::cerr << "wvasim: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "wvasim: invalid parameter: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "wvasim: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
