#include "cbdc/transition.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cbdc/model.hpp"

namespace cbdc {

void ShockSpec::validate() const {
    if (!(impulse >= 0)) throw std::invalid_argument("ShockSpec: impulse must be nonnegative");
    if (!(persistence >= 0 && persistence < 1))
        throw std::invalid_argument("ShockSpec: persistence must lie in [0,1)");
    if (horizon < 20) throw std::invalid_argument("ShockSpec: horizon must be at least 20");
}

std::vector<double> theta_path(const ShockSpec& shock) {
    shock.validate();
    std::vector<double> theta(static_cast<size_t>(shock.horizon));
    double v = shock.impulse;
    for (auto& t : theta) {
        t = v;
        v *= shock.persistence;
    }
    return theta;
}

namespace {

constexpr int kVarsPerPeriod = 5;  // c, x, k_next, chi_n, R_f_next

// Response of the lump-sum tax to the government's capital position. Any
// value above R_f - 1 anchors the ownership split; the model-pinned series
// are invariant to it.
constexpr double kFiscalFeedback = 0.2;

struct StackedProblem {
    const ModelParams& p;
    const SteadyState& ss;
    std::vector<double> m_path;  // m_{t+1} = theta_t * y_ss
    std::vector<double> theta;
    double y_ss;

    CoreVars core_at(const Eigen::VectorXd& x, int t) const {
        const int o = kVarsPerPeriod * t;
        return CoreVars{x[o], x[o + 1], x[o + 2], x[o + 3], x[o + 4]};
    }

    // Five residuals per period: leisure, deposit spread, resource, Euler,
    // risk-free. The other equilibrium conditions hold by construction of
    // assemble_state. Quantity equations are scaled by steady output.
    Eigen::VectorXd residuals(const Eigen::VectorXd& x) const {
        const int T = static_cast<int>(m_path.size());
        Eigen::VectorXd f(kVarsPerPeriod * T);
        std::vector<PeriodState> st(static_cast<size_t>(T));
        bool bad = false;
        for (int t = 0; t < T && !bad; ++t) {
            const double k_t = t == 0 ? ss.s.k_next : x[kVarsPerPeriod * (t - 1) + 2];
            st[t] = assemble_state_guarded(core_at(x, t), m_path[t], theta[t], k_t, p);
            if (!std::isfinite(st[t].c)) bad = true;
        }
        if (bad) {
            f.setConstant(std::numeric_limits<double>::quiet_NaN());
            return f;
        }
        for (int t = 0; t < T; ++t) {
            const PeriodState& cur = st[t];
            const PeriodState& next = t + 1 < T ? st[t + 1] : ss.s;
            const double k_t = t == 0 ? ss.s.k_next : st[t - 1].k_next;
            const int o = kVarsPerPeriod * t;
            const OmegaTerms om = omega_terms(cur.chi_n, p);
            const double muc = std::pow(cur.c, -p.sigma) * std::pow(cur.x, p.upsilon) * om.c;
            const double muc_next = std::pow(next.c, -p.sigma) * std::pow(next.x, p.upsilon) *
                                    omega_terms(next.chi_n, p).c;
            const double nu = operating_cost(cur.zeta_next, cur.zeta_next, p).nu;

            f[o] = cur.c * p.upsilon * om.x / (1.0 - p.sigma) - cur.w * cur.x * om.c;
            f[o + 1] = cur.chi_n * (1.0 - p.psi * cur.n_next / cur.z_next) -
                       ((p.phi1 * p.varphi + p.phi2) *
                            std::pow(cur.zeta_next, 1.0 - p.varphi) -
                        p.xi);
            f[o + 2] = (cur.k_next -
                        (cur.y + (1.0 - p.delta) * k_t - cur.c -
                         (cur.m_next * p.mu +
                          cur.n_next * (nu + cur.zeta_next * p.rho_res)))) /
                       y_ss;
            f[o + 3] = muc - p.beta * muc_next * next.R_k;
            f[o + 4] = cur.R_f_next * p.beta * muc_next / muc - 1.0;
        }
        return f;
    }
};

}  // namespace

Trajectory solve_transition(const SteadyState& ss, const ShockSpec& shock,
                            const ModelParams& p, const NewtonOptions& opts_in) {
    shock.validate();
    p.validate();
    const int T = shock.horizon;
    const double y_ss = ss.s.y;

    StackedProblem prob{p, ss, {}, theta_path(shock), y_ss};
    prob.m_path.resize(static_cast<size_t>(T));
    for (int t = 0; t < T; ++t) prob.m_path[t] = prob.theta[t] * y_ss;

    Eigen::VectorXd x0(kVarsPerPeriod * T);
    for (int t = 0; t < T; ++t) {
        const int o = kVarsPerPeriod * t;
        x0[o] = ss.s.c;
        x0[o + 1] = ss.s.x;
        x0[o + 2] = ss.s.k_next;
        x0[o + 3] = ss.s.chi_n;
        x0[o + 4] = ss.s.R_f_next;
    }

    NewtonOptions opts = opts_in;
    auto fn = [&prob](const Eigen::VectorXd& x) { return prob.residuals(x); };
    const NewtonResult nr = newton_solve(fn, x0, opts);
    if (!nr.ok())
        throw std::runtime_error("solve_transition: " + std::string(to_string(nr.status)) +
                                 " (" + nr.message + "), residual " +
                                 std::to_string(nr.final_norm));

    Trajectory traj;
    traj.anchor = ss;
    traj.theta = prob.theta;
    traj.tau = ss.tau;
    traj.periods.resize(static_cast<size_t>(T));
    for (int t = 0; t < T; ++t) {
        const double k_t = t == 0 ? ss.s.k_next : traj.periods[t - 1].k_next;
        traj.periods[t] =
            assemble_state(prob.core_at(nr.x, t), prob.m_path[t], prob.theta[t], k_t, p);
    }

    // Validate against the full equation stack and locate the worst entry.
    double worst = 0;
    int worst_t = 0, worst_eq = 0;
    for (int t = 0; t < T; ++t) {
        const PeriodState& prev = t == 0 ? ss.s : traj.periods[t - 1];
        const PeriodState& next = t + 1 < T ? traj.periods[t + 1] : ss.s;
        const PeriodResiduals pr = period_residuals(prev, traj.periods[t], next, p, y_ss);
        for (int e = 0; e < kNumEquations; ++e) {
            if (std::abs(pr.r[e]) > worst) {
                worst = std::abs(pr.r[e]);
                worst_t = t;
                worst_eq = e;
            }
        }
        traj.loan_positive.push_back(pr.loan_branch == LoanBranch::positive ? 1 : 0);
        if (t > 0 && traj.loan_positive[t] != traj.loan_positive[t - 1])
            ++traj.loan_branch_flips;
    }
    traj.diag.converged = worst <= 1e-8;
    traj.diag.iterations = nr.iterations;
    traj.diag.residual_norm = worst;
    traj.diag.message = "worst equation '" + std::string(kEquationNames[worst_eq]) +
                        "' at t=" + std::to_string(worst_t) + ", |residual| " +
                        std::to_string(worst);
    if (!traj.diag.converged)
        throw std::runtime_error("solve_transition: equation stack above 1e-8; " +
                                 traj.diag.message);

    // Ownership split: household capital from the budget identity, government
    // capital residually from capital-market clearing. Lump-sum taxes are
    // Ricardian here (no model-pinned series depends on them), but a constant
    // tax leaves the split with an explosive root at rate R_f; the tax instead
    // responds to the government's capital position, which anchors the split
    // without touching anything else.
    traj.k_h.resize(static_cast<size_t>(T));
    traj.k_g.resize(static_cast<size_t>(T));
    traj.tau_path.resize(static_cast<size_t>(T));
    for (int t = 0; t < T; ++t) {
        const PeriodState& prev = t == 0 ? ss.s : traj.periods[t - 1];
        const PeriodState& cur = traj.periods[t];
        const double kh_t = t == 0 ? ss.k_h : traj.k_h[t - 1];
        const double kg_t = t == 0 ? ss.k_g : traj.k_g[t - 1];
        const double tau_t = ss.tau - kFiscalFeedback * (kg_t - ss.k_g);
        const double R_n_t = prev.R_f_next * (1.0 - prev.chi_n);
        const double R_m_t = prev.R_f_next * (1.0 - prev.chi_m);
        const double profits = bank_profit_first(cur, p) + bank_profit_second(prev, cur, p) +
                               firm_profit(prev, cur, p);
        const double income = cur.w * (1.0 - cur.x) + profits + kh_t * cur.R_k +
                              prev.m_next * R_m_t + prev.n_next * R_n_t;
        traj.tau_path[t] = tau_t;
        traj.k_h[t] = income - cur.c - cur.m_next - cur.n_next - tau_t;
        traj.k_g[t] = cur.k_next - cur.bank_capital() - traj.k_h[t];
    }
    return traj;
}

}  // namespace cbdc
