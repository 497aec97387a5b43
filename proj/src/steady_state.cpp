#include "cbdc/steady_state.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cbdc/model.hpp"

namespace cbdc {

SteadySpreadSet steady_spread_set(const ModelParams& p) {
    SteadySpreadSet s;
    s.R_f = 1.0 / p.beta;
    s.chi_r = spread(p.R_r, s.R_f);
    s.chi_l = spread(p.R_l, s.R_f);
    s.chi_b = spread(p.R_b, s.R_f);
    if (!(s.chi_r > 0))
        throw std::runtime_error("steady state: reserve spread must be positive (R_r < 1/beta)");
    s.zeta = std::pow(s.chi_r / (p.phi1 * (p.varphi - 1.0)), -1.0 / p.varphi);
    const double nu_num = (p.phi1 * p.varphi + p.phi2) * std::pow(s.zeta, 1.0 - p.varphi) - p.xi;
    s.chi_n = nu_num / (1.0 - p.psi);  // deposit-spread equation at n/z = 1 (no CBDC)
    if (!(s.chi_n > 0))
        throw std::runtime_error("steady state: implied deposit spread nonpositive");
    s.chi_m = p.lambda * s.chi_n;
    s.nu = operating_cost(s.zeta, s.zeta, p).nu;
    return s;
}

SteadyState solve_steady_state(const ModelParams& p, const NewtonOptions& opts_in,
                               std::optional<std::pair<double, double>> guess_cx) {
    p.validate();
    if (p.epsilon != 0.0)
        throw std::invalid_argument("solve_steady_state: requires epsilon = 0");

    const SteadySpreadSet sp = steady_spread_set(p);
    const double R_f = sp.R_f;

    // Capital-labor ratio from the rental condition at R_k = 1/beta.
    const double kl = std::pow(p.alpha / (1.0 / p.beta - 1.0 + p.delta), 1.0 / (1.0 - p.alpha));
    const double cost_per_n = sp.nu + sp.zeta * p.rho_res;
    const double z_over_c = std::pow(p.iota / ((1.0 - p.iota) * sp.chi_n), 1.0 / p.psi);

    // Two-equation core in (c, x): leisure choice and the resource constraint
    // at rest, with deposits from the demand schedule and m = 0.
    const OmegaTerms omega = omega_terms(sp.chi_n, p);
    const double w = (1.0 - p.alpha) * std::pow(kl, p.alpha);
    auto residual = [&](const Eigen::VectorXd& v) {
        Eigen::VectorXd f(2);
        const double c = v[0], x = v[1];
        if (!(c > 0) || !(x > 0) || !(x < 1)) {
            f.setConstant(std::numeric_limits<double>::quiet_NaN());
            return f;
        }
        const double ell = 1.0 - x;
        // Leisure condition with the common c^(-sigma) x^(upsilon-1) factor
        // divided out (it admits a spurious x = 0 root when upsilon > 1).
        f[0] = c * p.upsilon * omega.x / (1.0 - p.sigma) - w * x * omega.c;
        const double y = std::pow(kl, p.alpha) * ell;
        const double n = z_over_c * c;
        f[1] = y - p.delta * kl * ell - c - n * cost_per_n;
        return f;
    };

    NewtonOptions opts = opts_in;
    opts.tol = std::min(opts.tol, 1e-12);
    Eigen::VectorXd x0(2);
    if (guess_cx) {
        x0 << guess_cx->first, guess_cx->second;
    } else {
        x0 << 0.75 * std::pow(kl, p.alpha) / 3.0, 2.0 / 3.0;
    }
    const NewtonResult nr = newton_solve(residual, x0, opts);
    if (!nr.ok())
        throw std::runtime_error("solve_steady_state: Newton failed (" + nr.message +
                                 "), final residual " + std::to_string(nr.final_norm));

    const double c = nr.x[0], x = nr.x[1];
    const double k = kl * (1.0 - x);

    SteadyState ss;
    ss.s = assemble_state({c, x, k, sp.chi_n, R_f}, 0.0, 0.0, k, p);
    ss.diag.converged = true;
    ss.diag.iterations = nr.iterations;
    ss.diag.residual_norm = nr.final_norm;
    if (ss.s.l_next == 0.0)
        ss.diag.message = "loan demand at the corner branch";

    const PeriodState& s = ss.s;
    ss.k_g = 0.0;
    ss.k_h = s.k_next - s.bank_capital() - ss.k_g;
    ss.tau = s.l_next * (1.0 - p.R_l) - s.b_next * (1.0 - p.R_b) - s.r_next * (1.0 - p.R_r) +
             s.n_next * p.xi + s.r_next * p.rho_res;

    // Verify the full residual stack at the rest point.
    const PeriodResiduals pr = period_residuals(ss.s, ss.s, ss.s, p, ss.s.y);
    if (!(pr.max_abs() <= 1e-9))
        throw std::runtime_error("solve_steady_state: residual stack " +
                                 std::to_string(pr.max_abs()) + " exceeds 1e-9");
    return ss;
}

double steady_household_capital(const SteadyState& ss, const ModelParams&, double k_g) {
    const double k_h = ss.s.k_next - ss.s.bank_capital() - k_g;
    if (k_h < 0)
        throw std::domain_error("steady_household_capital: infeasible decomposition, k_h = " +
                                std::to_string(k_h));
    return k_h;
}

}  // namespace cbdc
