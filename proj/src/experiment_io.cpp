#include "wva/experiment_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "wva/errors.hpp"

namespace wva {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw ConfigError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

int parse_int(std::string_view text) {
    text = trim(text);
    int value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw ConfigError("not an integer: '" + std::string(text) + "'");
    }
    return value;
}

bool parse_bool(std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("not a boolean: '" + std::string(text) + "'");
}

std::pair<std::string, std::string_view> split_assignment(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
    }
    return {std::string(trim(assignment.substr(0, eq))), trim(assignment.substr(eq + 1))};
}

// Keys shared by configs and sweep overrides. Returns false if unknown.
bool apply_physical(std::string_view key, std::string_view value, PpsAngles& pps,
                    double& mean_photons, double& chi, int& order, double& tail_tol) {
    if (key == "theta_i") pps.theta_i = parse_angle(value);
    else if (key == "theta_f") pps.theta_f = parse_angle(value);
    else if (key == "phi_0") pps.phi_0 = parse_angle(value);
    else if (key == "mean_photons" || key == "N") mean_photons = parse_real(value);
    else if (key == "chi") chi = parse_real(value);
    else if (key == "order") order = parse_int(value);
    else if (key == "tail_tol") tail_tol = parse_real(value);
    else return false;
    return true;
}

bool apply_range(std::string_view key, std::string_view value, SweepSpec& s) {
    if (key == "sweep.start") s.start = parse_angle(value);
    else if (key == "sweep.stop") s.stop = parse_angle(value);
    else if (key == "sweep.points") s.points = parse_int(value);
    else if (key == "sweep.log") s.log_spaced = parse_bool(value);
    else return false;
    return true;
}

}  // namespace

double parse_angle(std::string_view text) {
    text = trim(text);
    const auto pos = text.find("pi");
    if (pos == std::string_view::npos) return parse_real(text);

    const auto coef_text = trim(text.substr(0, pos));
    double coef = 1.0;
    if (coef_text == "-") coef = -1.0;
    else if (!coef_text.empty() && coef_text != "+") coef = parse_real(coef_text);

    auto rest = trim(text.substr(pos + 2));
    double denom = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') throw ConfigError("bad angle: '" + std::string(text) + "'");
        denom = parse_real(rest.substr(1));
        if (denom == 0.0) throw ConfigError("bad angle: division by zero");
    }
    return coef * std::numbers::pi / denom;
}

void ExperimentConfig::validate() const {
    try {
        pps.validate();
        CoherentProbe{mean_photons};
        CouplingConfig{chi, order};
        if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw std::invalid_argument("tail_tol must lie in (0, 1)");
        if (sweep) sweep_spec().validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

SweepSpec ExperimentConfig::sweep_spec() const {
    if (!sweep) throw ConfigError("no sweep configured (set sweep.axis)");
    SweepSpec s = *sweep;
    s.angles = pps;
    s.mean_photons = mean_photons;
    s.chi = chi;
    s.order = order;
    s.tail_tol = tail_tol;
    return s;
}

void apply_setting(ExperimentConfig& config, std::string_view assignment) {
    const auto [key, value] = split_assignment(assignment);
    if (apply_physical(key, value, config.pps, config.mean_photons, config.chi, config.order,
                       config.tail_tol)) {
        return;
    }
    if (key == "format") {
        if (value == "csv") config.output_format = OutputFormat::Csv;
        else if (value == "json") config.output_format = OutputFormat::Json;
        else throw ConfigError("format must be csv or json");
        return;
    }
    if (key.starts_with("sweep.")) {
        if (!config.sweep) config.sweep.emplace();
        if (key == "sweep.axis") {
            try {
                config.sweep->axis = parse_axis(value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
            return;
        }
        if (apply_range(key, value, *config.sweep)) return;
    }
    throw ConfigError("unknown key '" + key + "'");
}

void apply_override(SweepSpec& spec, std::string_view assignment) {
    const auto [key, value] = split_assignment(assignment);
    if (apply_physical(key, value, spec.angles, spec.mean_photons, spec.chi, spec.order,
                       spec.tail_tol) ||
        apply_range(key, value, spec)) {
        try {
            spec.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        return;
    }
    throw ConfigError("key '" + key + "' cannot be overridden here");
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig config;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto body = std::string_view(line);
        if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        body = trim(body);
        if (body.empty()) continue;
        try {
            apply_setting(config, body);
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    return parse_config(in);
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string describe_fixed(const PpsAngles& a, double mean_photons, double chi, int order,
                           double tail_tol) {
    return "theta_i=" + format_number(a.theta_i) + " theta_f=" + format_number(a.theta_f) +
           " phi_0=" + format_number(a.phi_0) + " mean_photons=" + format_number(mean_photons) +
           " chi=" + format_number(chi) + " order=" + std::to_string(order) +
           " tail_tol=" + format_number(tail_tol);
}

std::string describe_range(const SweepSpec& s) {
    return "sweep.axis=" + std::string(axis_name(s.axis)) + " sweep.start=" + format_number(s.start) +
           " sweep.stop=" + format_number(s.stop) + " sweep.points=" + std::to_string(s.points) +
           " sweep.log=" + (s.log_spaced ? "true" : "false");
}

// A numeric table rendered either as CSV or as a JSON document.
struct Table {
    std::string metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

nlohmann::ordered_json json_number(double x) {
    if (!std::isfinite(x)) return format_number(x);
    return x;
}

void emit(std::ostream& out, const Table& t, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        out << "# " << t.metadata << '\n';
        for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
            out << '\n';
        }
        return;
    }
    nlohmann::ordered_json doc;
    doc["metadata"] = t.metadata;
    for (auto it = t.extra.begin(); it != t.extra.end(); ++it) doc[it.key()] = it.value();
    doc["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_number(row[i]);
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

std::vector<double> sweep_values(const SweepRow& r) {
    return {r.axis_value, r.report.p_f, r.report.wva_fi, r.report.wva_qfi,
            r.report.q_conventional, static_cast<double>(r.flag)};
}

Table sweep_table(const SweepSpec& spec, const std::vector<SweepRow>& rows, std::string_view label) {
    Table t;
    t.metadata = "wvasim " + std::string(label) + " " + describe(spec);
    t.columns = {std::string(axis_name(spec.axis)), "p_f", "wva_fi", "wva_qfi", "q_cm",
                 "degenerate_flag"};
    for (const auto& r : rows) t.rows.push_back(sweep_values(r));
    return t;
}

nlohmann::ordered_json fit_json(const ScalingFit& f) {
    return {{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared},
            {"residual_max", f.residual_max}};
}

std::string fit_text(std::string_view name, const ScalingFit& f) {
    const std::string p = "fit." + std::string(name) + ".";
    return p + "slope=" + format_number(f.slope) + " " + p + "intercept=" + format_number(f.intercept) +
           " " + p + "r_squared=" + format_number(f.r_squared) + " " + p +
           "residual_max=" + format_number(f.residual_max);
}

}  // namespace

std::string describe(const ExperimentConfig& config) {
    std::string s = describe_fixed(config.pps, config.mean_photons, config.chi, config.order,
                                   config.tail_tol);
    if (config.sweep) s += " " + describe_range(*config.sweep);
    return s;
}

std::string describe(const SweepSpec& spec) {
    return describe_range(spec) + " " +
           describe_fixed(spec.angles, spec.mean_photons, spec.chi, spec.order, spec.tail_tol);
}

void write_point(std::ostream& out, const ExperimentConfig& config, const FisherReport& r,
                 OutputFormat format) {
    Table t;
    t.metadata = "wvasim point " + describe(config);
    t.columns = {"p_f", "F_f", "Q_f", "p_fF_f", "p_fQ_f", "Q_cm", "crb", "n_max"};
    t.rows.push_back({r.p_f, r.f_classical, r.q_quantum, r.wva_fi, r.wva_qfi, r.q_conventional,
                      r.crb, static_cast<double>(r.n_max)});
    emit(out, t, format);
}

void write_error_record(std::ostream& out, std::string_view kind, std::string_view message,
                        std::optional<double> p_f) {
    nlohmann::ordered_json doc;
    doc["error"] = kind;
    doc["message"] = message;
    if (p_f) doc["p_f"] = json_number(*p_f);
    out << doc.dump() << '\n';
}

void write_sweep(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows,
                 std::string_view label, OutputFormat format) {
    emit(out, sweep_table(spec, rows, label), format);
}

void write_figure(std::ostream& out, FigureId id, const std::vector<SweepSpec>& specs,
                  OutputFormat format, int threads) {
    const auto label = figure_name(id);
    if (id == FigureId::Fig4) {
        const auto result = fig4_scaling(specs.at(0), threads);
        Table t = sweep_table(specs[0], result.rows, label);
        t.metadata += " " + fit_text("wva_fi", result.wva_fi_fit) + " " + fit_text("q_cm", result.q_cm_fit);
        t.extra["fits"] = {{"wva_fi", fit_json(result.wva_fi_fit)},
                           {"q_cm", fit_json(result.q_cm_fit)}};
        emit(out, t, format);
        return;
    }
    if (id == FigureId::Fig3) {
        Table t;
        t.metadata = "wvasim fig3";
        t.columns = {"mean_photons", "chi", "p_f", "wva_fi", "wva_qfi", "q_cm",
                     "degenerate_flag", "wva_fi_display"};
        for (std::size_t k = 0; k < specs.size(); ++k) {
            const auto& spec = specs[k];
            t.metadata += (k ? " | " : " ") + describe(spec);
            const double scale = spec.chi == kFig3ScaledChi ? kFig3DisplayScale : 1.0;
            for (const auto& r : run_sweep(spec, threads)) {
                auto v = sweep_values(r);
                v.insert(v.begin() + 1, spec.chi);
                v.push_back(r.report.wva_fi * scale);
                t.rows.push_back(std::move(v));
            }
        }
        emit(out, t, format);
        return;
    }
    const auto& spec = specs.at(0);
    write_sweep(out, spec, run_sweep(spec, threads), label, format);
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    if (!std::getline(in, line) || !line.starts_with("# ")) {
        throw ConfigError("csv: first line must be a '# ' metadata comment");
    }
    table.metadata = line.substr(2);
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!s.empty() && s.back() == ',') cells.emplace_back();
        return cells;
    };
    if (!std::getline(in, line)) throw ConfigError("csv: missing header line");
    table.columns = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split(line);
        if (cells.size() != table.columns.size()) {
            throw ConfigError("csv: row " + std::to_string(table.rows.size() + 1) + " has " +
                              std::to_string(cells.size()) + " cells, header has " +
                              std::to_string(table.columns.size()));
        }
        table.rows.push_back(std::move(cells));
    }
    return table;
}

double estimate_chi(double g1, double g2, double delta1, double delta2) {
    if (delta1 == 0.0 || delta2 == 0.0) throw ZeroDetuning("estimate_chi: detunings must be nonzero");
    const double g = g1 * g2;
    return g * g / (delta1 * delta1 * delta2);
}

}  // namespace wva
