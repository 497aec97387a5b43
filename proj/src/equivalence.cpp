#include "cbdc/equivalence.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cbdc/calibration.hpp"
#include "cbdc/model.hpp"

namespace cbdc {

EquivalenceBase normalized_base(const SteadyState& ss) {
    EquivalenceBase b;
    b.n = ss.s.n_next;
    b.m = ss.s.m_next;
    b.r = ss.s.r_next;
    b.zeta = ss.s.zeta_next;
    b.k_h = ss.k_h;
    b.k_g = ss.k_g;
    b.l = 0;
    b.b = 0;
    return b;
}

RateSet consistent_rates(const ModelParams& p, double chi_n, double R_l) {
    RateSet r;
    r.R_f = 1.0 / p.beta;
    r.R_k = r.R_f;
    r.R_n = r.R_f * (1.0 - chi_n);
    r.R_m = (1.0 - p.lambda) * r.R_f + p.lambda * r.R_n;
    r.R_r = p.R_r;
    r.R_b = p.R_b;
    r.R_l = R_l;
    return r;
}

namespace {

DeltaLedger make_ledger(const EquivalenceBase& base, double delta, double d_m,
                        const ModelParams& p, double R_l) {
    if (!(delta >= 0)) throw std::domain_error("delta_mapping: delta must be nonnegative");
    DeltaLedger led;
    led.delta = delta;
    led.zeta = base.zeta;
    led.nu = operating_cost(base.zeta, base.zeta, p).nu;
    led.d_n = -delta;
    led.d_m = d_m;
    led.d_r = -base.zeta * delta;
    led.d_l = (1.0 - base.zeta) * delta;
    led.d_b = (base.l + led.d_l) * R_l / p.theta_b - base.b;
    led.d_k_h = delta - d_m;
    led.d_k_g = led.d_b - led.d_k_h;

    led.margin_n = base.n - delta;
    led.margin_r = base.r - base.zeta * delta;
    led.margin_kg = base.k_g - led.d_k_h;
    led.margin_kh = base.k_h + led.d_k_h;
    if (led.margin_n < 0)
        throw std::domain_error("delta_mapping: delta exceeds deposits, margin " +
                                std::to_string(led.margin_n));
    if (led.margin_r < 0)
        throw std::domain_error("delta_mapping: zeta*delta exceeds reserves, margin " +
                                std::to_string(led.margin_r));
    if (led.margin_kg < 0)
        throw std::domain_error("delta_mapping: shift exceeds government capital, margin " +
                                std::to_string(led.margin_kg));
    if (led.margin_kh < 0)
        throw std::domain_error("delta_mapping: shift exceeds household capital, margin " +
                                std::to_string(led.margin_kh));
    return led;
}

}  // namespace

DeltaLedger delta_mapping(const EquivalenceBase& base, double delta, const ModelParams& p,
                          double R_l) {
    if (!(p.lambda > 0))
        throw std::domain_error("delta_mapping: lambda must be positive");
    return make_ledger(base, delta, delta / p.lambda, p, R_l);
}

DeltaLedger ces_delta_mapping(const EquivalenceBase& base, double delta,
                              const ModelParams& p, double R_l) {
    if (!(p.epsilon > 0))
        throw std::domain_error("ces_delta_mapping: requires epsilon > 0");
    if (std::abs(1.0 - p.epsilon) < 1e-9)
        throw std::domain_error("ces_delta_mapping: epsilon = 1 (log CES) is outside the "
                                "printed functional form");
    if (!(base.m > 0) || !(base.n > 0))
        throw std::domain_error("ces_delta_mapping: requires an interior base (m, n > 0)");
    const double e1 = 1.0 - p.epsilon;
    const double n_hat = base.n - delta;
    if (!(n_hat > 0))
        throw std::domain_error("ces_delta_mapping: delta exhausts deposits");
    const double bracket =
        (std::pow(base.n, e1) - std::pow(n_hat, e1)) / p.lambda + std::pow(base.m, e1);
    if (!(bracket > 0))
        throw std::domain_error("ces_delta_mapping: real balances not preservable for this delta");
    const double m_hat = std::pow(bracket, 1.0 / e1);
    DeltaLedger led = make_ledger(base, delta, m_hat - base.m, p, R_l);
    led.ces_factor = p.lambda * (led.d_m / delta) * std::pow(base.n / base.m, p.epsilon);
    return led;
}

Taxes taxes(const DeltaLedger& led, const RateSet& rates, const ModelParams& p) {
    Taxes t;
    t.T1 = led.delta * (led.nu - p.xi);
    const double d_kb = led.d_n + led.d_l - led.d_r - led.d_b;
    const double d_pi2 = d_kb * rates.R_k + led.d_r * rates.R_r + led.d_b * rates.R_b -
                         led.d_n * rates.R_n - led.d_l * rates.R_l;
    t.T2 = led.d_k_h * rates.R_k + led.d_n * rates.R_n + led.d_m * rates.R_m + d_pi2;
    return t;
}

MarketValues market_values(const DeltaLedger& led, const RateSet& rates,
                           const ModelParams& p) {
    MarketValues mv;
    const Taxes t = taxes(led, rates, p);
    mv.T_mv = t.T1 + t.T2 / rates.R_f;
    const double d_pi1 = -led.d_n * (led.nu - p.xi);
    const double d_kb = led.d_n + led.d_l - led.d_r - led.d_b;
    const double d_pi2 = d_kb * rates.R_k + led.d_r * rates.R_r + led.d_b * rates.R_b -
                         led.d_n * rates.R_n - led.d_l * rates.R_l;
    mv.P_mv = d_pi1 + d_pi2 / rates.R_f;
    return mv;
}

BudgetCheck government_budget_check(const DeltaLedger& led, const EquivalenceBase&,
                                    const RateSet& rates, const ModelParams& p) {
    BudgetCheck out;
    const Taxes t = taxes(led, rates, p);
    // Date t: difference of the budget constraints (uses minus resources).
    const double d_lhs_t = led.d_k_g + led.d_l - led.d_m - led.d_r - led.d_b;
    const double d_rhs_t =
        -led.d_n * p.xi - led.d_m * p.mu - led.d_r * p.rho_res + t.T1;
    out.residual_t = d_lhs_t - d_rhs_t;
    // Date t+1: positions dated t+2 are unchanged, only the t+1 returns differ.
    const double d_rhs_t1 = led.d_k_g * rates.R_k + led.d_l * rates.R_l -
                            led.d_m * rates.R_m - led.d_r * rates.R_r -
                            led.d_b * rates.R_b + t.T2;
    out.residual_t1 = -d_rhs_t1;
    return out;
}

double binding_condition(const PeriodState& s, const ModelParams& p) {
    if (!(s.l_next > 0))
        throw std::domain_error("binding_condition: loan corner, eta_l undefined at l = 0");
    if (!(s.z_next > 0)) throw std::domain_error("binding_condition: z must be positive");
    const double inv_eta_l = p.psi * s.chi_n * s.l_next * s.R_f_next / (s.z_next * p.R_l);
    return p.R_b - p.R_l * (1.0 + inv_eta_l);
}

BalanceComparison balance_sheet_snapshot(const BalanceSheet& before,
                                         const BalanceSheet& after) {
    auto check = [](const BalanceSheet& bs, const char* which) {
        const double scale = std::max(1.0, std::abs(bs.liabilities()));
        if (std::abs(bs.assets() - bs.liabilities()) > 1e-12 * scale)
            throw std::invalid_argument(std::string("balance_sheet_snapshot: ") + which +
                                        " sheet does not balance");
    };
    check(before, "before");
    check(after, "after");
    BalanceComparison c{before, after, 0, 0, 0, 0, 0, false};
    c.d_deposits = after.deposits - before.deposits;
    c.d_loans = after.loans - before.loans;
    c.d_reserves = after.reserves - before.reserves;
    c.d_bonds = after.bonds - before.bonds;
    c.d_capital = after.capital - before.capital;
    c.profits_insulated_business_model_shifted =
        c.d_deposits < 0 && c.d_loans > 0 && c.d_bonds > 0 && c.d_capital < 0;
    return c;
}

namespace {

AuditReport assemble_report(const DeltaLedger& led, const EquivalenceBase& base,
                            const RateSet& rates, const ModelParams& p) {
    AuditReport rep;
    rep.delta = led.delta;
    rep.epsilon = p.epsilon;
    rep.loan_rate_used = rates.R_l;
    const Taxes t = taxes(led, rates, p);
    rep.T1 = t.T1;
    rep.T2 = t.T2;
    const MarketValues mv = market_values(led, rates, p);
    rep.T_mv = mv.T_mv;
    rep.P_mv = mv.P_mv;
    const BudgetCheck bc = government_budget_check(led, base, rates, p);
    rep.gov_budget_residual_t = bc.residual_t;
    rep.gov_budget_residual_t1 = bc.residual_t1;
    rep.efficiency_gap = p.mu / p.lambda - (led.nu + led.zeta * p.rho_res);
    rep.ces_factor = led.ces_factor;
    rep.ledger = led;

    BalanceSheet before;
    before.deposits = base.n;
    before.loans = base.l;
    before.reserves = base.r;
    before.bonds = base.b;
    before.capital = base.n + base.l - base.r - base.b;
    BalanceSheet after = before;
    after.deposits += led.d_n;
    after.loans += led.d_l;
    after.reserves += led.d_r;
    after.bonds += led.d_b;
    after.capital = after.deposits + after.loans - after.reserves - after.bonds;
    rep.balance = balance_sheet_snapshot(before, after);
    return rep;
}

}  // namespace

AuditReport audit_steady(const SteadyState& ss, double delta, const ModelParams& p) {
    const EquivalenceBase base = normalized_base(ss);
    LoanRateInputs in;
    in.R_f = ss.s.R_f_next;
    in.R_k = ss.s.R_f_next;
    in.R_n = ss.s.R_f_next * (1.0 - ss.s.chi_n);
    in.R_r = p.R_r;
    in.R_b = p.R_b;
    in.zeta = base.zeta;
    in.nu = operating_cost(base.zeta, base.zeta, p).nu;
    in.xi = p.xi;
    const double R_l_eq = derive_loan_rate(in, p.theta_b);
    const RateSet rates = consistent_rates(p, ss.s.chi_n, R_l_eq);
    const DeltaLedger led = delta_mapping(base, delta, p, R_l_eq);
    AuditReport rep = assemble_report(led, base, rates, p);
    rep.binding_margin = ss.s.l_next > 0 ? binding_condition(ss.s, p)
                                         : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

AuditReport ces_audit(const EquivalenceBase& base, double delta, const ModelParams& p,
                      double chi_n) {
    if (!(p.epsilon > 0))
        throw std::domain_error("ces_audit: requires epsilon > 0; the perfect-substitutes "
                                "audit covers epsilon = 0");
    // Household trade-off at the base fixes the CBDC rate.
    const double R_f = 1.0 / p.beta;
    const double chi_m = p.lambda * std::pow(base.n / base.m, p.epsilon) * chi_n;
    const double nu = operating_cost(base.zeta, base.zeta, p).nu;

    // Rate that zeroes the market value of taxes (needs the CES factor first).
    DeltaLedger probe = ces_delta_mapping(base, delta, p, /*R_l=*/1.0);
    const double A = probe.ces_factor;
    const double R_n = R_f * (1.0 - chi_n);
    const double R_k = R_f;
    const double R_l =
        (A * R_n - base.zeta * p.R_r + (nu - p.xi + 1.0 - A) * R_f) /
        ((1.0 - base.zeta) * (1.0 + (R_k - p.R_b) / p.theta_b));

    const DeltaLedger led = ces_delta_mapping(base, delta, p, R_l);
    RateSet rates;
    rates.R_f = R_f;
    rates.R_k = R_k;
    rates.R_n = R_n;
    rates.R_m = R_f * (1.0 - chi_m);
    rates.R_r = p.R_r;
    rates.R_b = p.R_b;
    rates.R_l = R_l;
    AuditReport rep = assemble_report(led, base, rates, p);
    rep.binding_margin = std::numeric_limits<double>::quiet_NaN();
    return rep;
}

}  // namespace cbdc
