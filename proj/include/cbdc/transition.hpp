#pragma once

#include <vector>

#include "cbdc/newton.hpp"
#include "cbdc/params.hpp"
#include "cbdc/state.hpp"

namespace cbdc {

struct ShockSpec {
    double impulse = 0.05;     // initial CBDC share of steady-state output
    double persistence = 0.9;  // AR(1) coefficient
    int horizon = 200;         // quarters

    void validate() const;     // throws std::invalid_argument
};

// CBDC share path: theta[0] = impulse, theta[t] = persistence * theta[t-1].
std::vector<double> theta_path(const ShockSpec& shock);

struct Trajectory {
    std::vector<PeriodState> periods;   // t = 0..T-1
    std::vector<double> theta;          // CBDC share path
    std::vector<double> k_h;            // household capital chosen at t (held into t+1)
    std::vector<double> k_g;            // government capital, residual from market clearing
    std::vector<char> loan_positive;    // loan-demand branch per period
    int loan_branch_flips = 0;
    double tau = 0;                     // steady-state lump-sum tax
    std::vector<double> tau_path;       // tax levied each period (position feedback)
    SteadyState anchor;
    SolveDiagnostics diag;              // residual_norm = max over all equations and periods
};

// Stacked perfect-foresight solve: k_0 = steady capital, terminal condition at
// the steady state, CBDC imposed by the policy rule against steady output.
// Throws std::runtime_error naming the worst period and equation on failure.
Trajectory solve_transition(const SteadyState& ss, const ShockSpec& shock,
                            const ModelParams& p, const NewtonOptions& opts = {});

}  // namespace cbdc
