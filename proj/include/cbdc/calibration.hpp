#pragma once

#include "cbdc/params.hpp"

namespace cbdc {

struct SteadySpreads {
    double chi_n;
    double chi_r;
    double chi_m;
    double R_f;
};

// Steady spreads implied by the presets: R_f = 1/beta, chi_m = 1 - R_m*beta,
// chi_n = chi_m/lambda, chi_r = 1 - R_r*beta. lambda = 0 leaves chi_n
// unidentified and is rejected.
SteadySpreads steady_spreads_from_presets(const CalibrationTargets& t);

// Utility weight of liquidity from the velocity target.
double calibrate_iota(const CalibrationTargets& t, double chi_n);

// Operating-cost curvature from the deposit-spread condition. Throws when the
// target set is infeasible (denominator <= 0), naming the violating margin.
double calibrate_varphi(const CalibrationTargets& t, double chi_n, double chi_r);

// Operating-cost weight from the reserves-ratio condition (phi2 = phi1).
double calibrate_phi1(const CalibrationTargets& t, double chi_r, double varphi);

// Resource cost of CBDC from the cost-parity condition: mu = lambda (nu + zeta rho).
double derive_mu(double lambda, double nu, double zeta, double rho_res);

struct LoanRateInputs {
    double R_n;
    double R_f;
    double R_r;
    double R_k;
    double R_b;
    double zeta;
    double nu;
    double xi;
};

// Central-bank loan rate that leaves the market values of taxes and of bank
// profit changes at zero under the collateral constraint.
double derive_loan_rate(const LoanRateInputs& in, double theta_b);

struct CalibrationResult {
    ModelParams params;
    SteadySpreads spreads;
    double nu;              // steady operating cost per unit of deposits
    bool upsilon_solved = false;
};

// Full analytic calibration from targets. When solve_upsilon is set, a
// one-dimensional bisection adjusts upsilon so steady labor hits labor_star;
// otherwise the preset upsilon is kept and the target is only verified.
CalibrationResult calibrate(const CalibrationTargets& t, bool solve_upsilon = false);

}  // namespace cbdc
