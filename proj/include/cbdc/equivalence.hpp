#pragma once

#include <string>

#include "cbdc/params.hpp"
#include "cbdc/state.hpp"

namespace cbdc {

// Pre-CBDC position an equivalence experiment starts from. The ledger algebra
// assumes loans and bonds start at zero; a solved
// steady state is renormalized accordingly.
struct EquivalenceBase {
    double n = 0;    // deposits
    double m = 0;    // CBDC
    double r = 0;    // reserves
    double zeta = 0; // reserves-to-deposits ratio
    double k_h = 0;  // household capital
    double k_g = 0;  // government capital
    double l = 0;    // central-bank loans (0 in the normalized base)
    double b = 0;    // government bonds (0 in the normalized base)
};

EquivalenceBase normalized_base(const SteadyState& ss);

// Deterministic one-period rate set used to price the audit flows.
struct RateSet {
    double R_f, R_k, R_n, R_m, R_r, R_b, R_l;
};

// Rates consistent with the household's optimality at spread chi_n:
// R_f = 1/beta, R_k = R_f, R_n = R_f(1-chi_n), R_m = (1-lambda)R_f + lambda R_n,
// with administered R_r/R_b and the supplied loan rate.
RateSet consistent_rates(const ModelParams& p, double chi_n, double R_l);

// Balance-sheet shift induced by a deposit reduction delta. Positive entries
// are increases. d_m uses Delta/lambda for perfect substitutes and the
// CES-preserving change when epsilon > 0; d_k_h = delta - d_m in both cases.
struct DeltaLedger {
    double delta = 0;
    double d_n = 0, d_m = 0, d_r = 0, d_l = 0, d_b = 0, d_k_h = 0, d_k_g = 0;
    double margin_n = 0;   // n - delta
    double margin_r = 0;   // r - zeta*delta
    double margin_kg = 0;  // k_g - d_k_h
    double margin_kh = 0;  // k_h + d_k_h
    double zeta = 0;       // (unchanged) reserves ratio at the base
    double nu = 0;         // operating cost at the base ratio
    double ces_factor = 1; // A; 1 under perfect substitution
};

// Perfect-substitutes mapping (epsilon = 0). The loan rate fixes d_b via the
// collateral identity. Throws on violated admissibility bounds, naming the bound.
DeltaLedger delta_mapping(const EquivalenceBase& base, double delta, const ModelParams& p,
                          double R_l);

// CES mapping (epsilon > 0); requires an interior base (m, n > 0).
DeltaLedger ces_delta_mapping(const EquivalenceBase& base, double delta,
                              const ModelParams& p, double R_l);

struct Taxes {
    double T1;  // date-t tax compensating the reduced bank losses
    double T2;  // date-t+1 tax compensating the portfolio-return and profit changes
};
Taxes taxes(const DeltaLedger& led, const RateSet& rates, const ModelParams& p);

struct MarketValues {
    double T_mv;  // market value of taxes, T1 + T2/R_f
    double P_mv;  // market value of the changes in bank profits
};
MarketValues market_values(const DeltaLedger& led, const RateSet& rates,
                           const ModelParams& p);

struct BudgetCheck {
    double residual_t;   // date-t government budget difference, = delta(mu/lambda - nu - zeta rho)
    double residual_t1;  // date-t+1 difference given the compensating tax
};
BudgetCheck government_budget_check(const DeltaLedger& led, const EquivalenceBase& base,
                                    const RateSet& rates, const ModelParams& p);

// Collateral-binding margin R_b - R_l(1 + 1/eta_l) with the schedule-replication
// elasticity; positive means the constraint binds. Throws at the l = 0 corner.
double binding_condition(const PeriodState& s, const ModelParams& p);

struct BalanceSheet {
    double deposits = 0, loans = 0;              // liabilities
    double reserves = 0, bonds = 0, capital = 0; // assets
    double assets() const { return reserves + bonds + capital; }
    double liabilities() const { return deposits + loans; }
};

struct BalanceComparison {
    BalanceSheet before, after;
    double d_deposits, d_loans, d_reserves, d_bonds, d_capital;
    bool profits_insulated_business_model_shifted;  // deposits down, loans/bonds up, capital down
};

// Pairs two balance sheets; each must balance internally to 1e-12 (relative).
BalanceComparison balance_sheet_snapshot(const BalanceSheet& before,
                                         const BalanceSheet& after);

struct AuditReport {
    double delta = 0;
    double epsilon = 0;
    double T1 = 0, T2 = 0;
    double T_mv = 0, P_mv = 0;
    double gov_budget_residual_t = 0, gov_budget_residual_t1 = 0;
    double loan_rate_used = 0;
    double efficiency_gap = 0;   // mu/lambda - (nu + zeta rho)
    double binding_margin = 0;   // NaN when the base sits at the loan corner
    double ces_factor = 1;
    DeltaLedger ledger;
    BalanceComparison balance;
};

// Full perfect-substitutes audit at the equivalent loan rate, from a solved steady
// state (perfect substitutes).
AuditReport audit_steady(const SteadyState& ss, double delta, const ModelParams& p);

// Imperfect-substitutes audit (epsilon > 0): the rate that zeroes the market value of
// taxes leaves a nonzero market value of bank-profit changes.
AuditReport ces_audit(const EquivalenceBase& base, double delta, const ModelParams& p,
                      double chi_n);

}  // namespace cbdc
