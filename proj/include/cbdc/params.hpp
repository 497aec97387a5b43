#pragma once

#include <string>

namespace cbdc {

// Structural parameters and administered gross real rates, quarterly.
// Defaults reproduce the baseline calibration.
struct ModelParams {
    double beta = 0.99;        // discount factor
    double lambda = 1.0;       // liquidity benefit of CBDC relative to deposits
    double sigma = 0.5;        // inverse intertemporal elasticity
    double upsilon = 0.85;     // leisure exponent
    double psi = 0.6;          // inverse intratemporal elasticity
    double iota = 0.009;       // utility weight of liquidity
    double phi1 = 4.632e-5;    // operating-cost weight, own reserves ratio
    double phi2 = 4.632e-5;    // operating-cost weight, other banks' ratio
    double varphi = 2.893;     // operating-cost curvature (> 1)
    double alpha = 1.0 / 3.0;  // capital share
    double delta = 0.025;      // capital depreciation
    double rho_res = 1e-4;     // unit resource cost of reserves
    double mu = 0.002;         // unit resource cost of CBDC
    double R_l = 0.993;        // central-bank loan rate
    double R_m = 1.0;          // CBDC rate (steady-state anchor)
    double R_r = 1.0;          // reserve rate
    double R_b = 1.0;          // government bond rate
    double theta_b = 0.995;    // collateral pledgeability (1 - haircut)
    double xi = 0.0;           // deposit subsidy rate
    double rho_theta = 0.9;    // AR(1) persistence of the CBDC share
    double epsilon = 0.0;      // inverse elasticity of substitution CBDC/deposits
                               // (0 = perfect substitutes; > 0 only in the CES audit)

    // Throws std::invalid_argument naming the violated restriction.
    void validate() const;
};

// Steady-state targets feeding the analytic calibration inversions.
struct CalibrationTargets {
    double zeta_star = 0.1945;      // reserves-to-deposits ratio
    double velocity = 1.147;        // consumption velocity c/z
    double labor_star = 1.0 / 3.0;  // steady-state labor (verified, or solved for upsilon)
    double bond_haircut = 0.005;    // 1 - theta_b

    // Directly assumed parameters.
    double beta = 0.99;
    double lambda = 1.0;
    double sigma = 0.5;
    double upsilon = 0.85;
    double psi = 0.6;
    double alpha = 1.0 / 3.0;
    double delta = 0.025;
    double rho_res = 1e-4;
    double R_m = 1.0;
    double R_r = 1.0;
    double R_b = 1.0;
    double xi = 0.0;
    double rho_theta = 0.9;

    void validate() const;
};

}  // namespace cbdc
