#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "asvlim/model.hpp"
#include "asvlim/report.hpp"

namespace asvlim {

enum class Command { Domain, Rate, Smile, PriceAsymptote, McCheck, Selftest };
enum class OutputFormat { Csv, Json };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown by parse_config when --help is requested; carries the help text.
struct HelpRequested {
    std::string text;
};

struct RunConfig {
    ModelParams params{0.0, 0.08, 0.04, -2.0, -0.5, 0.04};
    Command command = Command::Rate;
    double x_min = -0.5;
    double x_max = 0.5;
    int n_points = 201;
    double t = 10.0;
    std::string output_path;  // empty = stdout
    OutputFormat format = OutputFormat::Csv;

    // Monte Carlo options (mc-check)
    std::uint64_t seed = 12345;
    std::size_t n_paths = 200000;
    double dt = 1.0 / 1024.0;
    std::vector<double> u_list{0.25, 0.5, 0.75};
    std::optional<double> x_tail;          // set: tail-rate mode instead of MGF
    std::vector<double> t_grid{5.0, 10.0, 20.0};
};

/// Parses a full argv (command first, then flags; --config FILE supplies the
/// same keys as JSON defaults). Throws UsageError on unknown flags, a missing
/// command, or inadmissible model parameters.
RunConfig parse_config(const std::vector<std::string>& args);

struct RunOutput {
    Table table;
    bool ok = true;  // selftest: all checks passed
};

RunOutput run_command(const RunConfig& cfg);

/// Serialises the table in the configured format to output_path or stdout.
/// Returns 0 on success, 1 on I/O failure (message on stderr).
int emit_report(const RunOutput& out, const RunConfig& cfg);

struct SelfCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Quick oracle/residual suite aggregated from the analytic modules.
std::vector<SelfCheck> run_selftest();

}  // namespace asvlim
