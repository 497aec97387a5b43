#include "cbdc/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cbdc {

const std::array<const char*, kNumEquations> kEquationNames = {
    "euler",          "leisure",        "resource",       "deposit_demand",
    "deposit_spread", "reserves_ratio", "cbdc_spread",    "bond_demand",
    "loan_demand",    "return_on_capital", "wage",        "cbdc_rule",
    "risk_free",
};

double PeriodResiduals::max_abs() const {
    double m = 0;
    for (double v : r) m = std::max(m, std::abs(v));
    return m;
}

double spread(double R_i, double R_f) {
    if (!(R_f > 0)) throw std::domain_error("spread: nonpositive risk-free rate");
    return 1.0 - R_i / R_f;
}

OperatingCost operating_cost(double zeta, double zeta_bar, const ModelParams& p) {
    if (!(zeta > 0) || !(zeta_bar > 0))
        throw std::domain_error("operating_cost: reserves ratio must be positive");
    OperatingCost oc;
    oc.nu = p.phi1 * std::pow(zeta, 1.0 - p.varphi) + p.phi2 * std::pow(zeta_bar, 1.0 - p.varphi);
    oc.nu_zeta = p.phi1 * (1.0 - p.varphi) * std::pow(zeta, -p.varphi);
    return oc;
}

OmegaTerms omega_terms(double chi_n, const ModelParams& p) {
    if (p.psi < 1.0 && !(chi_n > 0))
        throw std::domain_error("omega_terms: chi_n must be positive when psi < 1");
    const double q = std::pow(p.iota / (1.0 - p.iota), 1.0 / p.psi) *
                     std::pow(chi_n, 1.0 - 1.0 / p.psi);
    const double base = 1.0 + q;
    const double lead = std::pow(1.0 - p.iota, (1.0 - p.sigma) / (1.0 - p.psi));
    OmegaTerms o;
    o.c = lead * std::pow(base, (p.psi - p.sigma) / (1.0 - p.psi));
    o.x = lead * std::pow(base, (1.0 - p.sigma) / (1.0 - p.psi));
    return o;
}

Production production(double k, double ell, const ModelParams& p) {
    if (!(k > 0)) throw std::domain_error("production: capital must be positive");
    if (!(ell > 0) || ell > 1.0)
        throw std::domain_error("production: labor must lie in (0, 1]");
    Production f;
    const double ratio = k / ell;
    f.y = std::pow(k, p.alpha) * std::pow(ell, 1.0 - p.alpha);
    f.f_k = p.alpha * std::pow(ratio, p.alpha - 1.0);
    f.f_l = (1.0 - p.alpha) * std::pow(ratio, p.alpha);
    return f;
}

double marginal_utility_c(const PeriodState& s, const ModelParams& p) {
    if (!(s.c > 0) || !(s.x > 0))
        throw std::domain_error("marginal_utility_c: consumption and leisure must be positive");
    return std::pow(s.c, -p.sigma) * std::pow(s.x, p.upsilon) * omega_terms(s.chi_n, p).c;
}

double sdf(const PeriodState& cur, const PeriodState& next, const ModelParams& p) {
    return p.beta * marginal_utility_c(next, p) / marginal_utility_c(cur, p);
}

double collateral_multiplier(const PeriodState& s, const ModelParams& p) {
    return s.chi_b * p.R_l / p.theta_b;
}

PeriodResiduals period_residuals(const PeriodState& prev, const PeriodState& cur,
                                 const PeriodState& next, const ModelParams& p,
                                 double y_ss) {
    PeriodResiduals out;
    const double k_t = prev.k_next;
    const double ell = 1.0 - cur.x;
    const Production f = production(k_t, ell, p);
    const OmegaTerms omega = omega_terms(cur.chi_n, p);
    const OperatingCost oc = operating_cost(cur.zeta_next, cur.zeta_next, p);
    const double muc = std::pow(cur.c, -p.sigma) * std::pow(cur.x, p.upsilon) * omega.c;

    // Euler equation for capital.
    out.r[0] = muc - p.beta * marginal_utility_c(next, p) * next.R_k;
    // Leisure choice.
    out.r[1] = std::pow(cur.c, 1.0 - p.sigma) / (1.0 - p.sigma) * p.upsilon *
                   std::pow(cur.x, p.upsilon - 1.0) * omega.x -
               cur.w * muc;
    // Aggregate resource constraint.
    out.r[2] = (cur.k_next - (f.y + (1.0 - p.delta) * k_t - cur.c -
                              (cur.m_next * p.mu +
                               cur.n_next * (oc.nu + cur.zeta_next * p.rho_res)))) /
               y_ss;
    // Deposit demand.
    out.r[3] = (cur.n_next -
                (cur.c * std::pow(p.iota / ((1.0 - p.iota) * cur.chi_n), 1.0 / p.psi) -
                 p.lambda * cur.m_next)) /
               y_ss;
    // Deposit spread, multiplied out by its denominator.
    out.r[4] = cur.chi_n * (1.0 - p.psi * cur.n_next / cur.z_next) -
               ((p.phi1 * p.varphi + p.phi2) * std::pow(cur.zeta_next, 1.0 - p.varphi) - p.xi);
    // Optimal reserves-to-deposits ratio.
    out.r[5] = cur.zeta_next - std::pow(cur.chi_r / (p.phi1 * (p.varphi - 1.0)), -1.0 / p.varphi);
    // CBDC spread.
    out.r[6] = cur.chi_m - p.lambda * cur.chi_n;
    // Bond demand from the binding collateral constraint.
    out.r[7] = (cur.b_next - cur.l_next * p.R_l / p.theta_b) / y_ss;
    // Loan demand, nonnegative branch.
    const double slack = cur.chi_l - cur.chi_b * p.R_l / p.theta_b;
    if (slack >= 0) {
        const double l_demand = slack * (p.theta_b / (cur.chi_b * cur.R_f_next + p.theta_b)) *
                                cur.z_next / (p.psi * cur.chi_n);
        out.r[8] = (cur.l_next - l_demand) / y_ss;
        out.loan_branch = LoanBranch::positive;
    } else {
        out.r[8] = cur.l_next / y_ss;
        out.loan_branch = LoanBranch::corner;
    }
    // Factor prices.
    out.r[9] = cur.R_k - (1.0 - p.delta + f.f_k);
    out.r[10] = cur.w - f.f_l;
    // CBDC policy rule against steady-state output.
    out.r[11] = (cur.m_next - cur.theta_m * y_ss) / y_ss;
    // Risk-free rate under perfect foresight.
    out.r[12] = cur.R_f_next * sdf(cur, next, p) - 1.0;
    return out;
}

BankFocResiduals bank_foc_residuals(const PeriodState& s, const ModelParams& p) {
    if (!(s.z_next > 0)) throw std::domain_error("bank_foc_residuals: z must be positive");
    BankFocResiduals out;
    const OperatingCost oc = operating_cost(s.zeta_next, s.zeta_next, p);
    out.deposit = s.chi_n - (oc.nu - p.xi + s.chi_r * s.zeta_next) -
                  p.psi * s.chi_n * s.n_next / s.z_next;
    const double inv_eta_l = p.psi * s.chi_n * s.l_next * s.R_f_next / (s.z_next * p.R_l);
    out.loan = s.chi_l - s.chi_b * (p.R_l / p.theta_b) * (1.0 + inv_eta_l) -
               inv_eta_l * p.R_l / s.R_f_next;
    out.loan_corner = (s.chi_l - s.chi_b * p.R_l / p.theta_b) < 0;
    return out;
}

double bank_profit_first(const PeriodState& cur, const ModelParams& p) {
    const double nu = operating_cost(cur.zeta_next, cur.zeta_next, p).nu;
    return -cur.n_next * (nu - p.xi);
}

double bank_profit_second(const PeriodState& prev, const PeriodState& cur,
                          const ModelParams& p) {
    const double R_n_t = prev.R_f_next * (1.0 - prev.chi_n);
    return prev.bank_capital() * cur.R_k + prev.r_next * p.R_r + prev.b_next * p.R_b -
           prev.n_next * R_n_t - prev.l_next * p.R_l;
}

double firm_profit(const PeriodState& prev, const PeriodState& cur, const ModelParams& p) {
    const double k_t = prev.k_next;
    const double ell = 1.0 - cur.x;
    const Production f = production(k_t, ell, p);
    return f.y - k_t * (cur.R_k + p.delta - 1.0) - cur.w * ell;
}

BudgetFlows budget_flows(const PeriodState& prev, const PeriodState& cur, double kh_t,
                         double kh_next, double kg_t, double kg_next, double tau,
                         const ModelParams& p) {
    BudgetFlows out;
    const double ell = 1.0 - cur.x;
    const double R_n_t = prev.R_f_next * (1.0 - prev.chi_n);
    const double R_m_t = prev.R_f_next * (1.0 - prev.chi_m);
    const double profits = bank_profit_first(cur, p) + bank_profit_second(prev, cur, p) +
                           firm_profit(prev, cur, p);

    out.household = cur.w * ell + profits + kh_t * cur.R_k + prev.m_next * R_m_t +
                    prev.n_next * R_n_t -
                    (cur.c + kh_next + cur.m_next + cur.n_next + tau);

    out.government = kg_t * cur.R_k + prev.l_next * p.R_l - prev.b_next * p.R_b -
                     prev.m_next * R_m_t - prev.r_next * p.R_r + tau - cur.n_next * p.xi -
                     cur.m_next * p.mu - cur.r_next * p.rho_res -
                     (kg_next + cur.l_next - cur.b_next - cur.m_next - cur.r_next);

    const double k_t = prev.k_next;
    const Production f = production(k_t, ell, p);
    const double nu = operating_cost(cur.zeta_next, cur.zeta_next, p).nu;
    out.aggregate_resource = f.y + (1.0 - p.delta) * k_t - cur.c - cur.k_next -
                             (cur.m_next * p.mu +
                              cur.n_next * (nu + cur.zeta_next * p.rho_res));
    return out;
}

PeriodState assemble_state(const CoreVars& v, double m_next, double theta_m, double k_t,
                           const ModelParams& p) {
    if (!(v.c > 0)) throw std::domain_error("assemble_state: consumption must be positive");
    if (!(v.x > 0) || !(v.x < 1))
        throw std::domain_error("assemble_state: leisure must lie in (0, 1)");
    if (!(v.chi_n > 0)) throw std::domain_error("assemble_state: chi_n must be positive");
    if (!(v.R_f_next > 0)) throw std::domain_error("assemble_state: R_f must be positive");

    PeriodState s;
    s.c = v.c;
    s.x = v.x;
    s.k_next = v.k_next;
    s.chi_n = v.chi_n;
    s.R_f_next = v.R_f_next;
    s.m_next = m_next;
    s.theta_m = theta_m;

    const double ell = 1.0 - v.x;
    const Production f = production(k_t, ell, p);
    s.y = f.y;
    s.R_k = 1.0 - p.delta + f.f_k;
    s.w = f.f_l;

    s.z_next = v.c * std::pow(p.iota / ((1.0 - p.iota) * v.chi_n), 1.0 / p.psi);
    s.n_next = s.z_next - p.lambda * m_next;
    if (!(s.n_next > 0)) throw std::domain_error("assemble_state: deposit demand nonpositive");

    s.chi_m = p.lambda * v.chi_n;
    s.chi_r = spread(p.R_r, v.R_f_next);
    s.chi_l = spread(p.R_l, v.R_f_next);
    s.chi_b = spread(p.R_b, v.R_f_next);
    if (!(s.chi_r > 0))
        throw std::domain_error("assemble_state: reserve spread nonpositive");

    s.zeta_next = std::pow(s.chi_r / (p.phi1 * (p.varphi - 1.0)), -1.0 / p.varphi);
    s.r_next = s.zeta_next * s.n_next;

    const double slack = s.chi_l - s.chi_b * p.R_l / p.theta_b;
    if (slack >= 0) {
        s.l_next = slack * (p.theta_b / (s.chi_b * v.R_f_next + p.theta_b)) * s.z_next /
                   (p.psi * v.chi_n);
    } else {
        s.l_next = 0.0;
    }
    s.b_next = s.l_next * p.R_l / p.theta_b;
    return s;
}

PeriodState assemble_state_guarded(const CoreVars& v, double m_next, double theta_m,
                                   double k_t, const ModelParams& p) noexcept {
    try {
        return assemble_state(v, m_next, theta_m, k_t, p);
    } catch (...) {
        PeriodState bad;
        bad.c = std::numeric_limits<double>::quiet_NaN();
        return bad;
    }
}

}  // namespace cbdc
