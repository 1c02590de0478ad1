#pragma once

#include <bandedge/reservoir.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace bandedge::cli {

enum class Command { decay, spectrum, timescale, critical_n, validate };
enum class MethodChoice { automatic, closed_half, series, volterra, modes, rational };
enum class GridKind { linear, log };
enum class OutputFormat { csv, json };

struct RunConfig {
    ReservoirParams params;
    Command command = Command::decay;
    MethodChoice method = MethodChoice::automatic;
    double t_max = 10;
    int points = 1000;
    GridKind grid_kind = GridKind::linear;
    std::string output_path = "-";
    OutputFormat output_format = OutputFormat::csv;
    // oracle knobs; zero selects a default derived from the parameters
    double dt = 0;
    int mode_count = 1000;
    double omega_cap = 0;
    double omega_max = 0;  // spectrum range, default ω0 + 10a
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_numerical = 2;
inline constexpr int exit_validation = 3;

/// Parses argv (argv[0] is the program name). Throws UsageError.
RunConfig parse_config(const std::vector<std::string>& args);

/// Executes the command and writes its output. Throws UsageError or NumericalError.
/// Returns exit_validation when validate reports a failure.
int run(const RunConfig& config, std::ostream& log);

/// parse_config + run with the exit-code mapping; help output returns 0.
int main_entry(int argc, char** argv);

}  // namespace bandedge::cli
