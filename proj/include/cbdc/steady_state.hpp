#pragma once

#include <optional>
#include <utility>

#include "cbdc/newton.hpp"
#include "cbdc/params.hpp"
#include "cbdc/state.hpp"

namespace cbdc {

// Steady-state spreads of the no-CBDC economy. chi_r/chi_l/chi_b follow from
// the administered rates at R_f = 1/beta; chi_n comes from the bank side
// (reserves-ratio equation, then the deposit-spread equation at n/z = 1).
struct SteadySpreadSet {
    double R_f;
    double zeta;
    double chi_n, chi_m, chi_r, chi_l, chi_b;
    double nu;
};
SteadySpreadSet steady_spread_set(const ModelParams& p);

// No-CBDC rest point: closed-form cascade plus a 2-equation Newton solve in
// (c, x). Throws std::runtime_error with diagnostics on non-convergence or if
// the verified residual stack exceeds 1e-9.
SteadyState solve_steady_state(const ModelParams& p, const NewtonOptions& opts = {},
                               std::optional<std::pair<double, double>> guess_cx = {});

// Household capital under a government-capital convention:
// k_h = k - (n + l - r - b) - k_g. Throws if the decomposition is infeasible.
double steady_household_capital(const SteadyState& ss, const ModelParams& p,
                                double k_g = 0.0);

}  // namespace cbdc
