#include "cbdc/calibration.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cbdc/model.hpp"
#include "cbdc/steady_state.hpp"

namespace cbdc {

SteadySpreads steady_spreads_from_presets(const CalibrationTargets& t) {
    if (!(t.lambda > 0))
        throw std::domain_error(
            "steady_spreads_from_presets: lambda = 0 leaves the deposit spread unidentified");
    SteadySpreads s;
    s.R_f = 1.0 / t.beta;
    s.chi_m = 1.0 - t.R_m * t.beta;
    s.chi_n = s.chi_m / t.lambda;
    s.chi_r = 1.0 - t.R_r * t.beta;
    return s;
}

double calibrate_iota(const CalibrationTargets& t, double chi_n) {
    if (!(t.velocity > 0)) throw std::domain_error("calibrate_iota: velocity must be positive");
    if (!(chi_n > 0)) throw std::domain_error("calibrate_iota: chi_n must be positive");
    const double v = std::pow(1.0 / t.velocity, t.psi) * chi_n;
    return v / (1.0 + v);
}

double calibrate_varphi(const CalibrationTargets& t, double chi_n, double chi_r) {
    const double num = chi_n * (1.0 - t.psi) + chi_r * t.zeta_star;
    const double den = chi_n * (1.0 - t.psi) - chi_r * t.zeta_star;
    if (!(den > 0))
        throw std::domain_error("calibrate_varphi: infeasible targets, chi_n(1-psi) - chi_r*zeta = " +
                                std::to_string(den));
    const double varphi = num / den;
    if (!(varphi > 1.0))
        throw std::domain_error("calibrate_varphi: targets imply varphi = " +
                                std::to_string(varphi) + ", but varphi > 1 is required");
    return varphi;
}

double calibrate_phi1(const CalibrationTargets& t, double chi_r, double varphi) {
    if (!(varphi > 1)) throw std::domain_error("calibrate_phi1: varphi must exceed 1");
    if (!(chi_r > 0)) throw std::domain_error("calibrate_phi1: chi_r must be positive");
    return chi_r / (std::pow(t.zeta_star, -varphi) * (varphi - 1.0));
}

double derive_mu(double lambda, double nu, double zeta, double rho_res) {
    return lambda * (nu + zeta * rho_res);
}

double derive_loan_rate(const LoanRateInputs& in, double theta_b) {
    if (!(theta_b > 0))
        throw std::domain_error("derive_loan_rate: infeasible collateral regime, theta_b must be positive");
    const double num = in.R_n + (in.nu - in.xi) * in.R_f - in.zeta * in.R_r;
    const double den = (1.0 - in.zeta) * (1.0 + (in.R_k - in.R_b) / theta_b);
    return num / den;
}

namespace {

ModelParams params_from_targets(const CalibrationTargets& t, const SteadySpreads& sp,
                                double upsilon, double* nu_out) {
    ModelParams p;
    p.beta = t.beta;
    p.lambda = t.lambda;
    p.sigma = t.sigma;
    p.upsilon = upsilon;
    p.psi = t.psi;
    p.alpha = t.alpha;
    p.delta = t.delta;
    p.rho_res = t.rho_res;
    p.R_m = t.R_m;
    p.R_r = t.R_r;
    p.R_b = t.R_b;
    p.xi = t.xi;
    p.rho_theta = t.rho_theta;
    p.theta_b = 1.0 - t.bond_haircut;

    p.iota = calibrate_iota(t, sp.chi_n);
    p.varphi = calibrate_varphi(t, sp.chi_n, sp.chi_r);
    p.phi1 = calibrate_phi1(t, sp.chi_r, p.varphi);
    p.phi2 = p.phi1;

    const double nu = operating_cost(t.zeta_star, t.zeta_star, p).nu;
    p.mu = derive_mu(t.lambda, nu, t.zeta_star, t.rho_res);

    LoanRateInputs in;
    in.R_f = sp.R_f;
    in.R_k = sp.R_f;  // Euler at rest
    in.R_n = sp.R_f * (1.0 - sp.chi_n);
    in.R_r = t.R_r;
    in.R_b = t.R_b;
    in.zeta = t.zeta_star;
    in.nu = nu;
    in.xi = t.xi;
    p.R_l = derive_loan_rate(in, p.theta_b);

    if (nu_out) *nu_out = nu;
    p.validate();
    return p;
}

}  // namespace

CalibrationResult calibrate(const CalibrationTargets& t, bool solve_upsilon) {
    t.validate();
    CalibrationResult out;
    out.spreads = steady_spreads_from_presets(t);
    out.params = params_from_targets(t, out.spreads, t.upsilon, &out.nu);

    if (solve_upsilon) {
        // Steady labor is decreasing in upsilon; bisect on [0.05, 5].
        auto labor_at = [&](double ups) {
            ModelParams p = out.params;
            p.upsilon = ups;
            return 1.0 - solve_steady_state(p).s.x;
        };
        double lo = 0.05, hi = 5.0;
        if (labor_at(lo) < t.labor_star || labor_at(hi) > t.labor_star)
            throw std::domain_error("calibrate: labor target not bracketed by upsilon in [0.05, 5]");
        for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (labor_at(mid) > t.labor_star)
                lo = mid;
            else
                hi = mid;
        }
        out.params.upsilon = 0.5 * (lo + hi);
        out.upsilon_solved = true;
    }
    return out;
}

}  // namespace cbdc
