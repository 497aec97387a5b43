#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cbdc/params.hpp"
#include "cbdc/transition.hpp"

namespace cbdc {

enum class IrfUnits { percent, basis_points, level };

struct IrfSeries {
    std::string name;
    IrfUnits units;
    double ss_value = 0;
    std::vector<double> dev;  // percent / bp / absolute deviation per quarter
    int sign_impact = 0;      // sign of dev[0], 0 within a 1e-12 dead band
    int peak_index = 0;       // argmax |dev|
    double peak_value = 0;    // dev at the peak
};

struct IrfReport {
    std::vector<IrfSeries> series;
    std::vector<double> theta;  // CBDC share path (levels)
    // Capital ownership decomposition, levels per quarter.
    std::vector<double> k_total, k_household, k_bank, k_government;

    const IrfSeries& at(const std::string& name) const;  // throws if absent
};

// Deviations from the steady state in the reporting conventions: percentages
// for quantities, basis points for rates and spreads, absolute levels for the
// CBDC stock and the government capital position.
IrfReport irf_report(const Trajectory& traj, const SteadyState& ss);

// ---------------------------------------------------------------------------
// Robustness sweep
// ---------------------------------------------------------------------------

struct SweepScenario {
    std::string key;   // ModelParams field name
    double value;
    std::string label() const;
};

struct SweepOutcome {
    SweepScenario scenario;
    bool converged = false;
    std::string error;
    ModelParams params;
    std::optional<IrfReport> report;
};

// Returns a copy of p with the named field replaced; unknown keys throw
// std::invalid_argument.
ModelParams with_override(const ModelParams& p, const std::string& key, double value);

// Re-derives the policy quantities tied to the calibration conditions from the
// current parameter set: mu from cost parity and R_l from the equivalent-rate
// formula at the implied steady spreads.
void rederive_policy_rates(ModelParams& p);

// The six baseline robustness scenarios.
std::vector<SweepScenario> default_sweep_scenarios();

// One independent steady-state + transition solve per scenario (run in
// parallel); per-scenario failures are captured, not propagated. mu and R_l
// are re-derived unless the override targets them directly.
std::vector<SweepOutcome> sweep(const ModelParams& base,
                                const std::vector<SweepScenario>& scenarios,
                                const ShockSpec& shock, const NewtonOptions& opts = {});

}  // namespace cbdc
