#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qotto/analysis.hpp"
#include "qotto/cycle.hpp"

namespace qotto::cli {

// Exit codes are a stable scripting contract:
//   0 success, 2 configuration error, 3 I/O error, 4 numeric failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitNumeric = 4;

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

enum class Command { levels, cycle, sweep, optimize };
enum class Format { csv, jsonl, human };

std::string_view to_string(Command command);
std::string_view to_string(Format format);

/// Everything a run needs, after defaults, config file and flags have been
/// merged (flags win over the config file, which wins over defaults).
struct RunConfig {
    Command command = Command::cycle;

    double m_h = 1.0;
    double m_c = 2.0;
    double l_h = 1.0;
    double l_c = 1.0;
    double t_h = 10.0;
    double t_c = 1.0;
    std::optional<int> n_levels;  // absent: picked from the tail bound

    // sweep settings
    std::vector<double> ratios;   // empty: default set incl. T_c/T_h
    double r_lo = 0.5;
    double r_hi = 4.0;
    int r_count = 200;
    double gamma = 3.0;

    // optimizer settings
    std::optional<double> bracket_lo;  // absent: engine-feasible interval
    std::optional<double> bracket_hi;
    double tol = 1e-6;

    std::string output;           // empty: stdout
    Format format = Format::human;
};

/// Raised by parse_config when --help was requested; carries the help text.
struct HelpRequested {
    std::string text;
};

/// Parses argv (without the program name) into a RunConfig. Reads the config
/// file named by --config, or by $QOTTO_CONFIG when the flag is absent.
/// Throws ConfigError on malformed input and HelpRequested for --help.
RunConfig parse_config(const std::vector<std::string>& args);

/// Applies `key = value` lines ('#' starts a comment) on top of `base`.
/// Unknown keys, malformed lines and nonpositive physical values raise
/// ConfigError naming the source, line number and key.
RunConfig apply_config_text(std::string_view text, RunConfig base,
                            const std::string& source_name);

/// Renders a config file that parses back to exactly the given settings.
std::string render_config(const RunConfig& config);

/// 12 significant digits, the precision every emitter uses.
std::string format_number(double value);

/// Number of retained levels for this run: the explicit setting when given,
/// otherwise the larger of the tail-bound choices for the two spectra the
/// subcommand will touch (for sweep and optimize, the densest spectrum in
/// the swept range).
int resolve_n_levels(const RunConfig& config);

std::string emit_levels(const OttoCycleSpec& spec, Format format);
std::string emit_cycle(const CycleResult& result, Format format);
std::string emit_sweep(const SweepGrid& grid, Format format);
std::string emit_optimization(const OptimizationResult& result, Format format);

/// Runs the configured subcommand and returns the rendered output.
std::string dispatch(const RunConfig& config);

/// Full front end: parse, dispatch, write to stdout or --output.
/// Returns the exit code; never throws.
int run(int argc, const char* const* argv);

}  // namespace qotto::cli
