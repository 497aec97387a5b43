#include "cbdc/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cbdc {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("ModelParams: " + what);
}

}  // namespace

void ModelParams::validate() const {
    require(beta > 0 && beta < 1, "beta must lie in (0,1)");
    require(lambda >= 0, "lambda must be nonnegative");
    require(sigma > 0, "sigma must be positive");
    require(std::abs(sigma - 1.0) > 1e-12, "sigma = 1 is outside the model's functional forms");
    require(upsilon > 0, "upsilon must be positive");
    require(psi > 0, "psi must be positive");
    require(std::abs(psi - 1.0) > 1e-12, "psi = 1 is outside the model's functional forms");
    require(iota > 0 && iota < 1, "iota must lie in (0,1)");
    require(phi1 >= 0 && phi2 >= 0, "operating-cost weights must be nonnegative");
    require(varphi > 1, "varphi must exceed 1");
    require(alpha > 0 && alpha < 1, "alpha must lie in (0,1)");
    require(delta > 0 && delta < 1, "delta must lie in (0,1)");
    require(rho_res >= 0, "rho must be nonnegative");
    require(mu >= 0, "mu must be nonnegative");
    require(theta_b > 0 && theta_b <= 1, "theta_b must lie in (0,1]");
    require(xi >= 0, "xi must be nonnegative");
    require(rho_theta >= 0 && rho_theta < 1, "rho_theta must lie in [0,1)");
    require(epsilon >= 0, "epsilon must be nonnegative");
    // Spreads nonnegative at the steady-state risk-free rate 1/beta.
    require(beta * R_l < 1.0 + 1e-9, "beta*R_l must not exceed 1");
    require(beta * R_m < 1.0 + 1e-9, "beta*R_m must not exceed 1");
    require(beta * R_r < 1.0 + 1e-9, "beta*R_r must not exceed 1");
    require(beta * R_b < 1.0 + 1e-9, "beta*R_b must not exceed 1");
}

void CalibrationTargets::validate() const {
    if (!(zeta_star > 0 && zeta_star < 1))
        throw std::invalid_argument("CalibrationTargets: zeta_star must lie in (0,1)");
    if (!(velocity > 0))
        throw std::invalid_argument("CalibrationTargets: velocity must be positive");
    if (!(labor_star > 0 && labor_star < 1))
        throw std::invalid_argument("CalibrationTargets: labor_star must lie in (0,1)");
    if (!(bond_haircut >= 0 && bond_haircut < 1))
        throw std::invalid_argument("CalibrationTargets: bond_haircut must lie in [0,1)");
}

}  // namespace cbdc
