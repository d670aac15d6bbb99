#include "qotto/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qotto/analysis.hpp"
#include "qotto/errors.hpp"
#include "qotto/thermo.hpp"

namespace qotto::cli {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, const std::string& what) {
    const std::string_view t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ConfigError(what + ": not a number: '" + std::string(t) + "'");
    }
    return value;
}

int parse_int(std::string_view text, const std::string& what) {
    const std::string_view t = trim(text);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ConfigError(what + ": not an integer: '" + std::string(t) + "'");
    }
    return value;
}

double parse_positive(std::string_view text, const std::string& what) {
    const double value = parse_double(text, what);
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ConfigError(what + ": must be > 0, got '" + std::string(trim(text)) + "'");
    }
    return value;
}

Format parse_format(std::string_view text, const std::string& what) {
    const std::string_view t = trim(text);
    if (t == "csv") return Format::csv;
    if (t == "jsonl") return Format::jsonl;
    if (t == "human") return Format::human;
    throw ConfigError(what + ": expected csv, jsonl or human, got '" + std::string(t) + "'");
}

std::vector<double> parse_ratio_list(std::string_view text, const std::string& what) {
    std::vector<double> ratios;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = std::min(text.find(',', pos), text.size());
        ratios.push_back(parse_positive(text.substr(pos, comma - pos), what));
        pos = comma + 1;
    }
    return ratios;
}

/// Exact round-trip rendering for config files (emitters use format_number).
std::string render_double(double value) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, r.ptr);
}

void apply_line(RunConfig& config, std::string_view key, std::string_view value,
                const std::string& source_name, int line_no) {
    const std::string where = source_name + ":" + std::to_string(line_no);
    const std::string tag = where + ": key " + std::string(key);
    if (key == "m_h") { config.m_h = parse_positive(value, tag); return; }
    if (key == "m_c") { config.m_c = parse_positive(value, tag); return; }
    if (key == "l_h") { config.l_h = parse_positive(value, tag); return; }
    if (key == "l_c") { config.l_c = parse_positive(value, tag); return; }
    if (key == "t_h") { config.t_h = parse_positive(value, tag); return; }
    if (key == "t_c") { config.t_c = parse_positive(value, tag); return; }
    if (key == "n_levels") {
        if (value == "auto") { config.n_levels.reset(); return; }
        const int n = parse_int(value, tag);
        if (n < 2) throw ConfigError(tag + ": must be an integer >= 2 or auto");
        config.n_levels = n;
        return;
    }
    if (key == "ratios") {
        if (value == "auto") { config.ratios.clear(); return; }
        config.ratios = parse_ratio_list(value, tag);
        return;
    }
    if (key == "r_lo") { config.r_lo = parse_positive(value, tag); return; }
    if (key == "r_hi") { config.r_hi = parse_positive(value, tag); return; }
    if (key == "r_count") {
        const int n = parse_int(value, tag);
        if (n < 2) throw ConfigError(tag + ": must be an integer >= 2");
        config.r_count = n;
        return;
    }
    if (key == "gamma") {
        const double g = parse_double(value, tag);
        if (!(g > 1.0) || !std::isfinite(g)) throw ConfigError(tag + ": must be > 1");
        config.gamma = g;
        return;
    }
    if (key == "bracket_lo") {
        if (value == "auto") { config.bracket_lo.reset(); return; }
        config.bracket_lo = parse_positive(value, tag);
        return;
    }
    if (key == "bracket_hi") {
        if (value == "auto") { config.bracket_hi.reset(); return; }
        config.bracket_hi = parse_positive(value, tag);
        return;
    }
    if (key == "tol") { config.tol = parse_positive(value, tag); return; }
    if (key == "output") {
        config.output = (value == "-") ? std::string{} : std::string(value);
        return;
    }
    if (key == "format") { config.format = parse_format(value, tag); return; }
    throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
}

/// Cross-field checks shared by the flag and config-file paths.
void check_config(const RunConfig& config) {
    if (!(config.r_hi > config.r_lo)) {
        throw ConfigError("sweep range: need r_lo < r_hi, got " + render_double(config.r_lo) +
                          ":" + render_double(config.r_hi));
    }
    if (config.bracket_lo.has_value() != config.bracket_hi.has_value()) {
        throw ConfigError("bracket: bracket_lo and bracket_hi must be set together");
    }
    if (config.bracket_lo && !(*config.bracket_hi > *config.bracket_lo)) {
        throw ConfigError("bracket: need bracket_lo < bracket_hi, got " +
                          render_double(*config.bracket_lo) + ":" +
                          render_double(*config.bracket_hi));
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read config file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("failed while reading config file: " + path);
    }
    return buffer.str();
}

/// Default sweep series: the bracketing ratios plus the one that reaches
/// Carnot efficiency without compression (m_h/m_c = T_c/T_h), ascending.
std::vector<double> default_ratios(double t_c, double t_h) {
    std::vector<double> ratios{0.25, 0.5, 1.0, 2.0, t_c / t_h};
    std::sort(ratios.begin(), ratios.end());
    ratios.erase(std::unique(ratios.begin(), ratios.end()), ratios.end());
    return ratios;
}

/// Engine-feasible mass-ratio interval for m_c/m_h at compression ratio r:
/// the gap ratio q r^2 must sit strictly inside (1, T_h/T_c). The interval
/// is shrunk by 1e-4 of its width on both sides so the endpoints are not
/// pinned to the zero-work boundary.
std::pair<double, double> default_bracket(double r, double t_h, double t_c) {
    if (!(t_h > t_c)) {
        throw ConfigError("optimize: no engine-feasible bracket when t_h <= t_c; "
                          "pass --bracket lo:hi explicitly");
    }
    const double lo = 1.0 / (r * r);
    const double hi = (t_h / t_c) / (r * r);
    const double margin = 1e-4 * (hi - lo);
    return {lo + margin, hi - margin};
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        std::fflush(stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open output file: " + path);
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out.good()) {
        throw IoError("failed while writing output file: " + path);
    }
}

std::string render_populations(const ThermalState& state) {
    std::string text;
    for (size_t i = 0; i < state.populations.size(); ++i) {
        if (i > 0) text += ' ';
        text += format_number(state.populations[i]);
    }
    return text;
}

std::string json_string(std::string_view value) {
    std::string out = "\"";
    for (char c : value) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string_view to_string(Command command) {
    switch (command) {
        case Command::levels: return "levels";
        case Command::cycle: return "cycle";
        case Command::sweep: return "sweep";
        case Command::optimize: return "optimize";
    }
    return "cycle";
}

std::string_view to_string(Format format) {
    switch (format) {
        case Format::csv: return "csv";
        case Format::jsonl: return "jsonl";
        case Format::human: return "human";
    }
    return "human";
}

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

RunConfig apply_config_text(std::string_view text, RunConfig base,
                            const std::string& source_name) {
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t eol = std::min(text.find('\n', pos), text.size());
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        line = line.substr(0, std::min(line.find('#'), line.size()));
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(source_name + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + std::string(line) + "'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(source_name + ":" + std::to_string(line_no) +
                              ": missing key before '='");
        }
        if (value.empty()) {
            throw ConfigError(source_name + ":" + std::to_string(line_no) +
                              ": key " + std::string(key) + ": missing value");
        }
        apply_line(base, key, value, source_name, line_no);
    }
    return base;
}

std::string render_config(const RunConfig& config) {
    std::string out = "# qotto run configuration\n";
    const auto kv = [&out](std::string_view key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    kv("m_h", render_double(config.m_h));
    kv("m_c", render_double(config.m_c));
    kv("l_h", render_double(config.l_h));
    kv("l_c", render_double(config.l_c));
    kv("t_h", render_double(config.t_h));
    kv("t_c", render_double(config.t_c));
    kv("n_levels", config.n_levels ? std::to_string(*config.n_levels) : "auto");
    if (config.ratios.empty()) {
        kv("ratios", "auto");
    } else {
        std::string list;
        for (size_t i = 0; i < config.ratios.size(); ++i) {
            if (i > 0) list += ',';
            list += render_double(config.ratios[i]);
        }
        kv("ratios", list);
    }
    kv("r_lo", render_double(config.r_lo));
    kv("r_hi", render_double(config.r_hi));
    kv("r_count", std::to_string(config.r_count));
    kv("gamma", render_double(config.gamma));
    kv("bracket_lo", config.bracket_lo ? render_double(*config.bracket_lo) : "auto");
    kv("bracket_hi", config.bracket_hi ? render_double(*config.bracket_hi) : "auto");
    kv("tol", render_double(config.tol));
    kv("output", config.output.empty() ? "-" : config.output);
    kv("format", std::string(to_string(config.format)));
    return out;
}

RunConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"Quantum Otto machine on a particle-in-a-box spectrum", "qotto"};
    app.require_subcommand(1);

    double m_h = 0, m_c = 0, l_h = 0, l_c = 0, t_h = 0, t_c = 0;
    int n_levels = 0;
    double tol = 0, gamma = 0;
    std::string config_path, output, format_name, ratios_text, r_text, bracket_text;

    auto* o_m_h = app.add_option("--m-h", m_h, "hot-stage effective mass (> 0)")
                      ->check(CLI::PositiveNumber);
    auto* o_m_c = app.add_option("--m-c", m_c, "cold-stage effective mass (> 0)")
                      ->check(CLI::PositiveNumber);
    auto* o_l_h = app.add_option("--l-h", l_h, "hot-stage well width (> 0)")
                      ->check(CLI::PositiveNumber);
    auto* o_l_c = app.add_option("--l-c", l_c, "cold-stage well width (> 0)")
                      ->check(CLI::PositiveNumber);
    auto* o_t_h = app.add_option("--t-h", t_h, "hot bath temperature (> 0)")
                      ->check(CLI::PositiveNumber);
    auto* o_t_c = app.add_option("--t-c", t_c, "cold bath temperature (> 0)")
                      ->check(CLI::PositiveNumber);
    auto* o_n = app.add_option("--n-levels", n_levels,
                               "retained levels (>= 2; default: tail-bound choice)")
                    ->check(CLI::Range(2, 1'000'000));
    auto* o_config = app.add_option("--config", config_path,
                                    "config file of 'key = value' lines "
                                    "(falls back to $QOTTO_CONFIG)");
    auto* o_output = app.add_option("--output", output, "output path (default: stdout)");
    auto* o_format = app.add_option("--format", format_name, "csv | jsonl | human");
    auto* o_ratios = app.add_option("--ratios", ratios_text,
                                    "comma-separated m_h/m_c series for sweep");
    auto* o_r = app.add_option("--r", r_text, "sweep grid lo:hi:count over L_c/L_h");
    auto* o_bracket = app.add_option("--bracket", bracket_text,
                                     "optimizer m_c/m_h search interval lo:hi");
    auto* o_tol = app.add_option("--tol", tol, "optimizer interval tolerance (> 0)")
                      ->check(CLI::PositiveNumber);
    auto* o_gamma = app.add_option("--gamma", gamma,
                                   "classical heat-capacity ratio for the Otto baseline (> 1)");

    auto* sub_levels = app.add_subcommand("levels", "print the hot and cold spectra");
    auto* sub_cycle = app.add_subcommand("cycle", "run one four-stroke cycle");
    auto* sub_sweep =
        app.add_subcommand("sweep", "tabulate efficiency against the compression ratio");
    auto* sub_optimize =
        app.add_subcommand("optimize", "maximize extracted work over the mass ratio");
    for (auto* sub : {sub_levels, sub_cycle, sub_sweep, sub_optimize}) {
        sub->fallthrough();
    }

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("qotto");
    for (const auto& arg : args) {
        argv.push_back(arg.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& error) {
        throw ConfigError(error.what());
    }

    RunConfig config;
    std::string config_source = config_path;
    if (o_config->count() == 0) {
        if (const char* env = std::getenv("QOTTO_CONFIG"); env != nullptr && *env != '\0') {
            config_source = env;
        }
    }
    if (!config_source.empty()) {
        config = apply_config_text(read_file(config_source), config, config_source);
    }

    if (sub_levels->parsed()) config.command = Command::levels;
    if (sub_cycle->parsed()) config.command = Command::cycle;
    if (sub_sweep->parsed()) config.command = Command::sweep;
    if (sub_optimize->parsed()) config.command = Command::optimize;

    if (o_m_h->count() > 0) config.m_h = m_h;
    if (o_m_c->count() > 0) config.m_c = m_c;
    if (o_l_h->count() > 0) config.l_h = l_h;
    if (o_l_c->count() > 0) config.l_c = l_c;
    if (o_t_h->count() > 0) config.t_h = t_h;
    if (o_t_c->count() > 0) config.t_c = t_c;
    if (o_n->count() > 0) config.n_levels = n_levels;
    if (o_output->count() > 0) config.output = output;
    if (o_format->count() > 0) config.format = parse_format(format_name, "--format");
    if (o_ratios->count() > 0) config.ratios = parse_ratio_list(ratios_text, "--ratios");
    if (o_r->count() > 0) {
        const size_t c1 = r_text.find(':');
        const size_t c2 = (c1 == std::string::npos) ? std::string::npos
                                                    : r_text.find(':', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw ConfigError("--r: expected lo:hi:count, got '" + r_text + "'");
        }
        config.r_lo = parse_positive(std::string_view(r_text).substr(0, c1), "--r lo");
        config.r_hi =
            parse_positive(std::string_view(r_text).substr(c1 + 1, c2 - c1 - 1), "--r hi");
        config.r_count = parse_int(std::string_view(r_text).substr(c2 + 1), "--r count");
        if (config.r_count < 2) {
            throw ConfigError("--r count: must be an integer >= 2");
        }
    }
    if (o_bracket->count() > 0) {
        const size_t colon = bracket_text.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("--bracket: expected lo:hi, got '" + bracket_text + "'");
        }
        config.bracket_lo =
            parse_positive(std::string_view(bracket_text).substr(0, colon), "--bracket lo");
        config.bracket_hi =
            parse_positive(std::string_view(bracket_text).substr(colon + 1), "--bracket hi");
    }
    if (o_tol->count() > 0) config.tol = tol;
    if (o_gamma->count() > 0) {
        if (!(gamma > 1.0) || !std::isfinite(gamma)) {
            throw ConfigError("--gamma: must be > 1");
        }
        config.gamma = gamma;
    }

    check_config(config);
    return config;
}

int resolve_n_levels(const RunConfig& config) {
    if (config.n_levels) {
        return *config.n_levels;
    }
    // Shared truncation: both spectra keep the same N, so take the larger
    // tail-bound choice over every spectrum/bath pairing the run visits.
    int n = choose_truncation(config.m_h, config.l_h, config.t_h);
    switch (config.command) {
        case Command::levels:
        case Command::cycle:
            n = std::max(n, choose_truncation(config.m_c, config.l_c, config.t_c));
            break;
        case Command::sweep: {
            const auto ratios =
                config.ratios.empty() ? default_ratios(config.t_c, config.t_h) : config.ratios;
            const double rho_min = *std::min_element(ratios.begin(), ratios.end());
            // Densest cold spectrum in the sweep: largest m_c L_c^2.
            n = std::max(n, choose_truncation(config.m_h / rho_min,
                                              config.r_hi * config.l_h, config.t_c));
            break;
        }
        case Command::optimize: {
            const double r = config.l_c / config.l_h;
            const double hi = config.bracket_hi
                                  ? *config.bracket_hi
                                  : default_bracket(r, config.t_h, config.t_c).second;
            n = std::max(n, choose_truncation(hi * config.m_h, r * config.l_h, config.t_c));
            break;
        }
    }
    return n;
}

std::string emit_levels(const OttoCycleSpec& spec, Format format) {
    validate(spec);
    const BoxSpectrum hot{spec.m_h, spec.l_h, spec.n_levels};
    const BoxSpectrum cold{spec.m_c, spec.l_c, spec.n_levels};
    std::string out;
    switch (format) {
        case Format::csv:
            out += "n,e_hot,e_cold\n";
            for (int n = 1; n <= spec.n_levels; ++n) {
                out += std::to_string(n) + "," + format_number(energy_level(hot, n)) + "," +
                       format_number(energy_level(cold, n)) + "\n";
            }
            break;
        case Format::jsonl:
            for (int n = 1; n <= spec.n_levels; ++n) {
                out += "{\"n\":" + std::to_string(n) +
                       ",\"e_hot\":" + format_number(energy_level(hot, n)) +
                       ",\"e_cold\":" + format_number(energy_level(cold, n)) + "}\n";
            }
            break;
        case Format::human:
            out += "hot spectrum:  mass=" + format_number(hot.mass) +
                   " length=" + format_number(hot.length) + "\n";
            out += "cold spectrum: mass=" + format_number(cold.mass) +
                   " length=" + format_number(cold.length) + "\n";
            for (int n = 1; n <= spec.n_levels; ++n) {
                out += "n=" + std::to_string(n) +
                       ": e_hot=" + format_number(energy_level(hot, n)) +
                       " e_cold=" + format_number(energy_level(cold, n)) + "\n";
            }
            break;
    }
    return out;
}

std::string emit_cycle(const CycleResult& result, Format format) {
    std::string out;
    switch (format) {
        case Format::csv:
            out += "q_hot,q_cold,work,work_extracted,efficiency,regime\n";
            out += format_number(result.q_hot) + "," + format_number(result.q_cold) + "," +
                   format_number(result.work) + "," + format_number(result.work_extracted) +
                   "," + (result.efficiency ? format_number(*result.efficiency) : "") + "," +
                   std::string(to_string(result.regime)) + "\n";
            break;
        case Format::jsonl:
            out += "{\"q_hot\":" + format_number(result.q_hot) +
                   ",\"q_cold\":" + format_number(result.q_cold) +
                   ",\"work\":" + format_number(result.work) +
                   ",\"work_extracted\":" + format_number(result.work_extracted) +
                   ",\"efficiency\":" +
                   (result.efficiency ? format_number(*result.efficiency) : "null") +
                   ",\"regime\":" + json_string(to_string(result.regime)) + "}\n";
            break;
        case Format::human:
            out += "q_hot=" + format_number(result.q_hot) + "\n";
            out += "q_cold=" + format_number(result.q_cold) + "\n";
            out += "work=" + format_number(result.work) + "\n";
            out += "work_extracted=" + format_number(result.work_extracted) + "\n";
            out += "efficiency=" +
                   (result.efficiency ? format_number(*result.efficiency) : "n/a") + "\n";
            out += "regime=" + std::string(to_string(result.regime)) + "\n";
            for (const StageState& stage : result.states) {
                out += stage.label;
                out += ": mass=" + format_number(stage.spectrum.mass) +
                       " length=" + format_number(stage.spectrum.length) +
                       " p=" + render_populations(stage.state) + "\n";
            }
            break;
    }
    return out;
}

std::string emit_sweep(const SweepGrid& grid, Format format) {
    std::string out;
    switch (format) {
        case Format::csv:
            out += "series,r,eta,eta_over_carnot,work_extracted,regime\n";
            for (const SweepSeries& series : grid.series) {
                for (const SweepRecord& record : series.records) {
                    out += series.label + "," + format_number(record.axis) + "," +
                           format_number(record.eta) + "," +
                           format_number(record.eta_over_carnot) + "," +
                           format_number(record.work_extracted) + "," +
                           std::string(to_string(record.regime)) + "\n";
                }
            }
            break;
        case Format::jsonl:
            for (const SweepSeries& series : grid.series) {
                for (const SweepRecord& record : series.records) {
                    out += "{\"series\":" + json_string(series.label) +
                           ",\"r\":" + format_number(record.axis) +
                           ",\"eta\":" + format_number(record.eta) +
                           ",\"eta_over_carnot\":" + format_number(record.eta_over_carnot) +
                           ",\"work_extracted\":" + format_number(record.work_extracted) +
                           ",\"regime\":" + json_string(to_string(record.regime)) + "}\n";
                }
            }
            break;
        case Format::human:
            out += "axis=" + grid.axis_name +
                   " r_carnot=" + format_number(grid.r_carnot) + "\n";
            for (const SweepSeries& series : grid.series) {
                out += "series " + series.label + ":\n";
                for (const SweepRecord& record : series.records) {
                    out += "  r=" + format_number(record.axis) +
                           " eta=" + format_number(record.eta) +
                           " eta_over_carnot=" + format_number(record.eta_over_carnot) +
                           " work_extracted=" + format_number(record.work_extracted) +
                           " regime=" + std::string(to_string(record.regime)) + "\n";
                }
            }
            break;
    }
    return out;
}

std::string emit_optimization(const OptimizationResult& result, Format format) {
    std::string out;
    switch (format) {
        case Format::csv:
            out += "best_mass_ratio,best_work_extracted,evaluations,bracket_lo,bracket_hi,"
                   "regime\n";
            out += format_number(result.best_mass_ratio) + "," +
                   format_number(result.best_work_extracted) + "," +
                   std::to_string(result.evaluations) + "," +
                   format_number(result.bracket_lo) + "," +
                   format_number(result.bracket_hi) + "," +
                   std::string(to_string(result.regime)) + "\n";
            break;
        case Format::jsonl:
            out += "{\"best_mass_ratio\":" + format_number(result.best_mass_ratio) +
                   ",\"best_work_extracted\":" + format_number(result.best_work_extracted) +
                   ",\"evaluations\":" + std::to_string(result.evaluations) +
                   ",\"bracket_lo\":" + format_number(result.bracket_lo) +
                   ",\"bracket_hi\":" + format_number(result.bracket_hi) +
                   ",\"regime\":" + json_string(to_string(result.regime)) + "}\n";
            break;
        case Format::human:
            out += "best_mass_ratio=" + format_number(result.best_mass_ratio) + "\n";
            out += "best_work_extracted=" + format_number(result.best_work_extracted) + "\n";
            out += "evaluations=" + std::to_string(result.evaluations) + "\n";
            out += "bracket_lo=" + format_number(result.bracket_lo) + "\n";
            out += "bracket_hi=" + format_number(result.bracket_hi) + "\n";
            out += "regime=" + std::string(to_string(result.regime)) + "\n";
            break;
    }
    return out;
}

std::string dispatch(const RunConfig& config) {
    const int n_levels = resolve_n_levels(config);
    const OttoCycleSpec spec{config.m_h, config.m_c, config.l_h, config.l_c,
                             config.t_h, config.t_c, n_levels};
    switch (config.command) {
        case Command::levels:
            return emit_levels(spec, config.format);
        case Command::cycle:
            return emit_cycle(run_cycle(spec), config.format);
        case Command::sweep: {
            const auto ratios =
                config.ratios.empty() ? default_ratios(config.t_c, config.t_h) : config.ratios;
            const SweepReference ref{config.m_h, config.l_h, n_levels};
            const SweepGrid grid =
                efficiency_sweep(ratios, config.r_lo, config.r_hi, config.r_count,
                                 config.t_c, config.t_h, config.gamma, ref);
            return emit_sweep(grid, config.format);
        }
        case Command::optimize: {
            const double r = config.l_c / config.l_h;
            double lo, hi;
            if (config.bracket_lo) {
                lo = *config.bracket_lo;
                hi = *config.bracket_hi;
            } else {
                std::tie(lo, hi) = default_bracket(r, config.t_h, config.t_c);
            }
            const OptimizationSetup setup{r, config.l_h, config.m_h,
                                          config.t_h, config.t_c, n_levels};
            return emit_optimization(optimize_mass_ratio(setup, lo, hi, config.tol),
                                     config.format);
        }
    }
    throw ConfigError("unknown subcommand");
}

int run(int argc, const char* const* argv) {
    try {
        const std::vector<std::string> args(argv + 1, argv + argc);
        const RunConfig config = parse_config(args);
        write_output(config.output, dispatch(config));
        return kExitOk;
    } catch (const HelpRequested& help) {
        std::fwrite(help.text.data(), 1, help.text.size(), stdout);
        return kExitOk;
    } catch (const ConfigError& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return kExitConfig;
    } catch (const std::domain_error& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return kExitConfig;
    } catch (const IoError& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return kExitIo;
    } catch (const NumericError& error) {
        std::fprintf(stderr, "numeric error: %s\n", error.what());
        return kExitNumeric;
    } catch (const std::exception& error) {
        std::fprintf(stderr, "unexpected error: %s\n", error.what());
        return 1;
    }
}

}  // namespace qotto::cli
