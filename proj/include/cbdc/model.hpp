#pragma once

#include <array>
#include <string>

#include "cbdc/params.hpp"
#include "cbdc/state.hpp"

namespace cbdc {

// ---------------------------------------------------------------------------
// Primitive blocks
// ---------------------------------------------------------------------------

// Liquidity premium chi_i = 1 - R_i / R_f. Throws on R_f <= 0.
double spread(double R_i, double R_f);

struct OperatingCost {
    double nu;       // cost per unit of deposits: phi1*zeta^(1-varphi) + phi2*zetabar^(1-varphi)
    double nu_zeta;  // own derivative: phi1*(1-varphi)*zeta^(-varphi), < 0
};
// Bank operating cost. Throws on zeta <= 0 or zeta_bar <= 0 (cost diverges at 0).
OperatingCost operating_cost(double zeta, double zeta_bar, const ModelParams& p);

struct OmegaTerms {
    double c;  // multiplies c^(-sigma) x^upsilon in the marginal utility of consumption
    double x;  // multiplies c^(1-sigma)/(1-sigma) * upsilon x^(upsilon-1) in U_x
};
// Liquidity wedges in the household's marginal utilities, functions of the
// deposit spread carried into next period. Throws if chi_n <= 0 while psi < 1.
OmegaTerms omega_terms(double chi_n, const ModelParams& p);

struct Production {
    double y;    // k^alpha ell^(1-alpha)
    double f_k;  // alpha (k/ell)^(alpha-1)
    double f_l;  // (1-alpha) (k/ell)^alpha
};
// Cobb-Douglas technology. Throws on nonpositive inputs or ell > 1.
Production production(double k, double ell, const ModelParams& p);

// c^(-sigma) x^upsilon Omega_c evaluated at the state's own chi_n.
double marginal_utility_c(const PeriodState& s, const ModelParams& p);

// One-period stochastic discount factor Lambda between cur and next; under
// perfect foresight cur.R_f_next = 1/Lambda. Throws on nonpositive c or x.
double sdf(const PeriodState& cur, const PeriodState& next, const ModelParams& p);

// Lagrange multiplier on the collateral constraint, recovered from the bond
// optimality condition: gamma = chi_b * R_l / theta_b. Diagnostic only.
double collateral_multiplier(const PeriodState& s, const ModelParams& p);

// ---------------------------------------------------------------------------
// Equilibrium residuals
// ---------------------------------------------------------------------------

inline constexpr int kNumEquations = 13;
extern const std::array<const char*, kNumEquations> kEquationNames;

enum class LoanBranch { positive, corner };

struct PeriodResiduals {
    std::array<double, kNumEquations> r{};
    LoanBranch loan_branch = LoanBranch::positive;

    double max_abs() const;
};

// Residuals of the period-t equilibrium conditions, all zero at equilibrium.
// Quantity equations are scaled by 1/y_ss, rate equations left in levels.
//   [0] euler          [1] leisure        [2] resource
//   [3] deposit_demand [4] deposit_spread [5] reserves_ratio
//   [6] cbdc_spread    [7] bond_demand    [8] loan_demand
//   [9] return_on_capital  [10] wage      [11] cbdc_rule  [12] risk_free
// prev supplies k_t (its k_next); next supplies c', x', chi_n', R_k'.
// Administered rates R_l, R_b, R_r are the parameter values.
PeriodResiduals period_residuals(const PeriodState& prev, const PeriodState& cur,
                                 const PeriodState& next, const ModelParams& p,
                                 double y_ss);

struct BankFocResiduals {
    double deposit;  // marginal net benefit of deposits minus inframarginal cost
    double loan;     // loan-liquidity benefit net of collateral cost minus inframarginal cost
    bool loan_corner = false;  // true when the loan residual is reported as slack
};

// The bank's first-order conditions with the schedule elasticities replaced by
// their closed forms (1/eta_n * R_n/R_f = psi chi_n n/z and likewise for l).
// Both vanish at any interior state satisfying the reduced-form conditions.
BankFocResiduals bank_foc_residuals(const PeriodState& s, const ModelParams& p);

// ---------------------------------------------------------------------------
// Budget flows (Walras accounting, capital ownership split)
// ---------------------------------------------------------------------------

// Bank cash flow at t from deposits issued at t: -n_{t+1} (nu - xi).
double bank_profit_first(const PeriodState& cur, const ModelParams& p);
// Bank cash flow at t on the positions chosen at t-1, valued at the rates set
// then; R_k is the date-t realization.
double bank_profit_second(const PeriodState& prev, const PeriodState& cur,
                          const ModelParams& p);
// Firm profit at t; identically zero under constant returns with FOC prices.
double firm_profit(const PeriodState& prev, const PeriodState& cur, const ModelParams& p);

struct BudgetFlows {
    double household;           // household budget: resources minus uses
    double government;          // government budget: resources minus uses
    double aggregate_resource;  // aggregate resource constraint residual
    // By Walras, household + government == aggregate_resource when the profit
    // and market-clearing identities hold.
    double goods_gap() const { return household + government; }
};

// Date-t budget residuals given the period t-1 and t states and the capital
// ownership split (kh/kg entering t, kh/kg chosen at t) and lump-sum tax.
BudgetFlows budget_flows(const PeriodState& prev, const PeriodState& cur, double kh_t,
                         double kh_next, double kg_t, double kg_next, double tau,
                         const ModelParams& p);

// ---------------------------------------------------------------------------
// State assembly
// ---------------------------------------------------------------------------

struct CoreVars {
    double c;
    double x;
    double k_next;
    double chi_n;
    double R_f_next;
};

// Builds a full PeriodState from the core unknowns, the policy-imposed CBDC
// stock, and last period's capital. Spread consistency, z = lambda m + n with
// z from the deposit-demand schedule, r = zeta n, the reserves-ratio equation,
// the loan/bond demands, and the factor-price equations hold by construction.
// Throws std::domain_error outside the admissible region.
PeriodState assemble_state(const CoreVars& v, double m_next, double theta_m, double k_t,
                           const ModelParams& p);

// Same, but returns a state with NaN fields instead of throwing (solver path).
PeriodState assemble_state_guarded(const CoreVars& v, double m_next, double theta_m,
                                   double k_t, const ModelParams& p) noexcept;

}  // namespace cbdc
