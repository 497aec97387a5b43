#pragma once

#include <string>

namespace cbdc {

// One period of the equilibrium. A variable the model dates t+1 (chosen at t,
// carried into t+1) is stored in period t's state under a _next suffix.
struct PeriodState {
    double c = 0;          // consumption at t
    double x = 0;          // leisure at t, in (0,1); labor = 1 - x
    double k_next = 0;     // aggregate capital carried to t+1
    double n_next = 0;     // bank deposits
    double m_next = 0;     // CBDC
    double z_next = 0;     // effective real balances
    double zeta_next = 0;  // reserves-to-deposits ratio
    double r_next = 0;     // reserves (= zeta * n)
    double l_next = 0;     // central-bank loans
    double b_next = 0;     // government bonds
    double chi_n = 0;      // deposit spread
    double chi_m = 0;      // CBDC spread (= lambda * chi_n)
    double chi_r = 0;      // reserve spread
    double chi_l = 0;      // central-bank loan spread
    double chi_b = 0;      // bond spread
    double R_f_next = 0;   // gross risk-free rate t -> t+1
    double R_k = 0;        // gross return on capital at t
    double w = 0;          // real wage at t
    double theta_m = 0;    // CBDC share of steady-state output at t
    double y = 0;          // output at t

    double bank_capital() const { return n_next + l_next - r_next - b_next; }
};

struct SolveDiagnostics {
    bool converged = false;
    int iterations = 0;
    double residual_norm = 0;
    std::string message;
};

// Rest point of the no-CBDC economy (theta_m = 0, m_next = 0).
struct SteadyState {
    PeriodState s;
    double tau = 0;  // lump-sum tax balancing the government budget at k_g = 0
    double k_h = 0;  // household capital under the k_g = 0 convention
    double k_g = 0;  // government capital (convention)
    SolveDiagnostics diag;
};

}  // namespace cbdc
