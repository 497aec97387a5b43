#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cbdc/equivalence.hpp"
#include "cbdc/irf.hpp"
#include "cbdc/params.hpp"
#include "cbdc/state.hpp"

namespace cbdc {

// Exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Exit code 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Command { calibrate, steady, irf, audit, sweep };

struct RunConfig {
    Command command = Command::steady;
    std::string params_path;   // empty = baseline defaults
    std::string out_dir = ".";
    bool emit_svg = false;
    bool help_requested = false;
    std::string help_text;

    // calibrate
    CalibrationTargets targets;
    bool solve_upsilon = false;

    // irf / sweep
    double impulse = 0.05;
    double persistence = 0.9;
    int horizon = 200;
    bool persistence_set = false;  // explicit flag beats the params file value

    // audit
    double delta = 0.1;
    double audit_epsilon = 0.0;

    // sweep
    std::vector<std::pair<std::string, double>> overrides;
};

// Parses argv (and an optional --config file; flags override file values,
// unknown keys are rejected). Throws UsageError on malformed input; a bare
// invocation or --help yields help_requested with the usage text.
RunConfig parse_config(int argc, const char* const* argv);

// --- report emitters; all throw IoError when the target cannot be written ---

void write_params_json(const std::string& path, const ModelParams& p);
ModelParams read_params_json(const std::string& path);  // UsageError on bad content

void write_steady_csv(const std::string& path, const SteadyState& ss, const ModelParams& p);
void write_irf_csv(const std::string& path, const IrfReport& rep);
void write_signs_json(const std::string& path, const IrfReport& rep);
void write_audit_json(const std::string& path, const AuditReport& rep);
void write_irf_svg_charts(const std::string& dir, const IrfReport& rep);

std::string format_full(double v);    // shortest round-trip decimal
std::string format_sig12(double v);   // 12 significant digits

}  // namespace cbdc
