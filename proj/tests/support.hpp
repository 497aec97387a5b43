#pragma once

#include <random>

#include "cbdc/calibration.hpp"
#include "cbdc/equivalence.hpp"
#include "cbdc/model.hpp"
#include "cbdc/steady_state.hpp"

namespace cbdc::testing {

// Printed baseline parameter table.
inline ModelParams table1_params() { return ModelParams{}; }

// Full-precision parameters from the analytic calibration (cached).
inline const ModelParams& calibrated_params() {
    static const ModelParams p = calibrate(CalibrationTargets{}).params;
    return p;
}

inline const SteadyState& baseline_steady() {
    static const SteadyState ss = solve_steady_state(calibrated_params());
    return ss;
}

// A parameter draw with valid domain restrictions and spreads positive at the
// steady-state risk-free rate; rng is seeded by the caller per draw index.
inline ModelParams random_params(std::mt19937_64& rng) {
    auto uni = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    ModelParams p;
    p.beta = uni(0.95, 0.995);
    p.lambda = uni(0.5, 2.0);
    p.sigma = uni(0.3, 0.9);
    p.upsilon = uni(0.5, 1.5);
    p.psi = uni(0.3, 0.9);
    p.iota = uni(0.003, 0.05);
    p.phi1 = uni(1e-5, 5e-4);
    p.phi2 = p.phi1;
    p.varphi = uni(1.5, 4.0);
    p.alpha = uni(0.25, 0.4);
    p.delta = uni(0.015, 0.035);
    p.rho_res = 1e-4;
    p.theta_b = uni(0.9, 1.0);
    p.xi = uni(0.0, 5e-5);
    const double R_f = 1.0 / p.beta;
    p.R_r = R_f * (1.0 - uni(0.004, 0.02));
    p.R_b = R_f * (1.0 - uni(0.002, 0.01));
    p.R_l = R_f * (1.0 - uni(0.01, 0.03));
    p.R_m = R_f * (1.0 - p.lambda * 0.01);
    p.mu = derive_mu(p.lambda, operating_cost(0.2, 0.2, p).nu, 0.2, p.rho_res);
    p.rho_theta = 0.9;
    return p;
}

// An internally consistent period state from random core variables. The
// risk-free draw sits strictly above the administered rates so every spread
// the state carries is positive.
inline PeriodState random_state(std::mt19937_64& rng, const ModelParams& p,
                                double k_t_fixed = 0.0) {
    auto uni = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    const double lo = std::max({p.R_r, p.R_b, 1.0}) + 2e-3;
    const double hi = std::max(1.0 / p.beta, lo + 4e-3);
    for (int attempt = 0; attempt < 200; ++attempt) {
        CoreVars v;
        v.c = uni(0.4, 1.2);
        v.x = uni(0.45, 0.8);
        v.k_next = uni(6.0, 14.0);
        v.chi_n = uni(0.005, 0.025);
        v.R_f_next = uni(lo, hi);
        const double m = uni(0.0, 0.05);
        const double k_t = k_t_fixed > 0 ? k_t_fixed : uni(6.0, 14.0);
        const PeriodState s = assemble_state_guarded(v, m, m, k_t, p);
        if (std::isfinite(s.c) && s.n_next > 0) return s;
    }
    throw std::runtime_error("random_state: no admissible draw found");
}

// Two consecutive states where cur's factor prices are consistent with
// prev's end-of-period capital.
inline std::pair<PeriodState, PeriodState> random_chained_pair(std::mt19937_64& rng,
                                                               const ModelParams& p) {
    const PeriodState prev = random_state(rng, p);
    const PeriodState cur = random_state(rng, p, prev.k_next);
    return {prev, cur};
}

// An admissible random audit environment with the cost-parity condition
// enforced and a consistent rate set at the equivalent loan rate.
struct AuditDraw {
    ModelParams p;
    EquivalenceBase base;
    RateSet rates;
    double delta;
    double chi_n;
};

inline AuditDraw random_audit_draw(unsigned seed) {
    std::mt19937_64 rng(seed);
    auto uni = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    AuditDraw d;
    ModelParams& p = d.p;
    p = ModelParams{};
    p.beta = uni(0.95, 0.995);
    p.lambda = uni(0.5, 2.0);
    p.psi = uni(0.3, 0.9);
    p.varphi = uni(1.5, 4.0);
    p.phi1 = p.phi2 = uni(1e-5, 5e-4);
    p.theta_b = uni(0.9, 1.0);
    p.xi = uni(0.0, 2e-4);
    const double R_f = 1.0 / p.beta;
    p.R_r = R_f * (1.0 - uni(0.004, 0.02));
    p.R_b = R_f * (1.0 - uni(0.002, 0.01));
    d.chi_n = uni(0.004, 0.02);
    p.R_m = R_f * (1.0 - p.lambda * d.chi_n);

    EquivalenceBase& b = d.base;
    b.zeta = uni(0.05, 0.45);
    b.n = uni(0.3, 1.2);
    b.r = b.zeta * b.n;
    b.m = 0.0;
    b.k_h = uni(2.0, 8.0);
    b.k_g = uni(1.0, 4.0);

    const double nu = operating_cost(b.zeta, b.zeta, p).nu;
    p.mu = derive_mu(p.lambda, nu, b.zeta, p.rho_res);  // cost parity enforced

    LoanRateInputs in;
    in.R_f = R_f;
    in.R_k = R_f;
    in.R_n = R_f * (1.0 - d.chi_n);
    in.R_r = p.R_r;
    in.R_b = p.R_b;
    in.zeta = b.zeta;
    in.nu = nu;
    in.xi = p.xi;
    p.R_l = derive_loan_rate(in, p.theta_b);
    d.rates = consistent_rates(p, d.chi_n, p.R_l);

    double cap = b.n;
    const double tilt = 1.0 - 1.0 / p.lambda;
    if (tilt > 1e-12) cap = std::min(cap, b.k_g / tilt);
    if (tilt < -1e-12) cap = std::min(cap, b.k_h / (-tilt));
    d.delta = 0.5 * cap;
    return d;
}

}  // namespace cbdc::testing
