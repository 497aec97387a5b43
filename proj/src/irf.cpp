#include "cbdc/irf.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "cbdc/calibration.hpp"
#include "cbdc/model.hpp"
#include "cbdc/steady_state.hpp"

namespace cbdc {

namespace {

int sign_of(double v) {
    if (v > 1e-12) return 1;
    if (v < -1e-12) return -1;
    return 0;
}

void finalize(IrfSeries& s) {
    s.sign_impact = s.dev.empty() ? 0 : sign_of(s.dev.front());
    s.peak_index = 0;
    s.peak_value = s.dev.empty() ? 0 : s.dev.front();
    for (size_t t = 0; t < s.dev.size(); ++t) {
        if (std::abs(s.dev[t]) > std::abs(s.peak_value)) {
            s.peak_value = s.dev[t];
            s.peak_index = static_cast<int>(t);
        }
    }
}

}  // namespace

const IrfSeries& IrfReport::at(const std::string& name) const {
    for (const auto& s : series)
        if (s.name == name) return s;
    throw std::out_of_range("IrfReport: no series named " + name);
}

IrfReport irf_report(const Trajectory& traj, const SteadyState& ss) {
    const size_t T = traj.periods.size();
    IrfReport rep;
    rep.theta = traj.theta;

    auto percent = [&](const std::string& name, auto&& get, double ss_value) {
        IrfSeries s;
        s.name = name;
        s.units = IrfUnits::percent;
        s.ss_value = ss_value;
        s.dev.resize(T);
        for (size_t t = 0; t < T; ++t) s.dev[t] = 100.0 * (get(t) - ss_value) / ss_value;
        finalize(s);
        rep.series.push_back(std::move(s));
    };
    auto basis_points = [&](const std::string& name, auto&& get, double ss_value) {
        IrfSeries s;
        s.name = name;
        s.units = IrfUnits::basis_points;
        s.ss_value = ss_value;
        s.dev.resize(T);
        for (size_t t = 0; t < T; ++t) s.dev[t] = 1e4 * (get(t) - ss_value);
        finalize(s);
        rep.series.push_back(std::move(s));
    };
    auto level = [&](const std::string& name, auto&& get, double ss_value) {
        IrfSeries s;
        s.name = name;
        s.units = IrfUnits::level;
        s.ss_value = ss_value;
        s.dev.resize(T);
        for (size_t t = 0; t < T; ++t) s.dev[t] = get(t) - ss_value;
        finalize(s);
        rep.series.push_back(std::move(s));
    };

    const auto& P = traj.periods;
    const PeriodState& S = ss.s;
    percent("c", [&](size_t t) { return P[t].c; }, S.c);
    percent("hours", [&](size_t t) { return 1.0 - P[t].x; }, 1.0 - S.x);
    percent("n", [&](size_t t) { return P[t].n_next; }, S.n_next);
    percent("z", [&](size_t t) { return P[t].z_next; }, S.z_next);
    percent("k", [&](size_t t) { return P[t].k_next; }, S.k_next);
    percent("l", [&](size_t t) { return P[t].l_next; }, S.l_next);
    percent("b", [&](size_t t) { return P[t].b_next; }, S.b_next);
    percent("r", [&](size_t t) { return P[t].r_next; }, S.r_next);
    percent("zeta", [&](size_t t) { return P[t].zeta_next; }, S.zeta_next);
    percent("w", [&](size_t t) { return P[t].w; }, S.w);
    percent("y", [&](size_t t) { return P[t].y; }, S.y);
    percent("k_h", [&](size_t t) { return traj.k_h[t]; }, ss.k_h);
    percent("k_b", [&](size_t t) { return P[t].bank_capital(); }, S.bank_capital());

    basis_points("chi_n", [&](size_t t) { return P[t].chi_n; }, S.chi_n);
    basis_points("chi_m", [&](size_t t) { return P[t].chi_m; }, S.chi_m);
    basis_points("chi_r", [&](size_t t) { return P[t].chi_r; }, S.chi_r);
    basis_points("chi_l", [&](size_t t) { return P[t].chi_l; }, S.chi_l);
    basis_points("chi_b", [&](size_t t) { return P[t].chi_b; }, S.chi_b);
    basis_points("R_f", [&](size_t t) { return P[t].R_f_next; }, S.R_f_next);
    basis_points("R_k", [&](size_t t) { return P[t].R_k; }, S.R_k);
    basis_points("R_n", [&](size_t t) { return P[t].R_f_next * (1.0 - P[t].chi_n); },
                 S.R_f_next * (1.0 - S.chi_n));

    // CBDC and government capital have a zero steady state: absolute levels.
    level("m", [&](size_t t) { return P[t].m_next; }, 0.0);
    level("k_g", [&](size_t t) { return traj.k_g[t]; }, ss.k_g);
    level("theta_m", [&](size_t t) { return P[t].theta_m; }, 0.0);

    rep.k_total.resize(T);
    rep.k_household.resize(T);
    rep.k_bank.resize(T);
    rep.k_government.resize(T);
    for (size_t t = 0; t < T; ++t) {
        rep.k_total[t] = P[t].k_next;
        rep.k_household[t] = traj.k_h[t];
        rep.k_bank[t] = P[t].bank_capital();
        rep.k_government[t] = traj.k_g[t];
    }
    return rep;
}

std::string SweepScenario::label() const {
    std::string v = std::to_string(value);
    v.erase(v.find_last_not_of('0') + 1);
    if (!v.empty() && v.back() == '.') v.pop_back();
    return key + "=" + v;
}

ModelParams with_override(const ModelParams& p, const std::string& key, double value) {
    ModelParams q = p;
    if (key == "beta") q.beta = value;
    else if (key == "lambda") q.lambda = value;
    else if (key == "sigma") q.sigma = value;
    else if (key == "upsilon") q.upsilon = value;
    else if (key == "psi") q.psi = value;
    else if (key == "iota") q.iota = value;
    else if (key == "phi1") q.phi1 = value;
    else if (key == "phi2") q.phi2 = value;
    else if (key == "varphi") q.varphi = value;
    else if (key == "alpha") q.alpha = value;
    else if (key == "delta") q.delta = value;
    else if (key == "rho") q.rho_res = value;
    else if (key == "mu") q.mu = value;
    else if (key == "R_l") q.R_l = value;
    else if (key == "R_m") q.R_m = value;
    else if (key == "R_r") q.R_r = value;
    else if (key == "R_b") q.R_b = value;
    else if (key == "theta_b") q.theta_b = value;
    else if (key == "xi") q.xi = value;
    else if (key == "rho_theta") q.rho_theta = value;
    else if (key == "epsilon") q.epsilon = value;
    else throw std::invalid_argument("unknown parameter key '" + key + "'");
    return q;
}

void rederive_policy_rates(ModelParams& p) {
    const SteadySpreadSet sp = steady_spread_set(p);
    p.mu = derive_mu(p.lambda, sp.nu, sp.zeta, p.rho_res);
    LoanRateInputs in;
    in.R_f = sp.R_f;
    in.R_k = sp.R_f;
    in.R_n = sp.R_f * (1.0 - sp.chi_n);
    in.R_r = p.R_r;
    in.R_b = p.R_b;
    in.zeta = sp.zeta;
    in.nu = sp.nu;
    in.xi = p.xi;
    p.R_l = derive_loan_rate(in, p.theta_b);
}

std::vector<SweepScenario> default_sweep_scenarios() {
    return {{"lambda", 0.5},  {"lambda", 1.5},   {"psi", 0.8},
            {"psi", 0.5},     {"theta_b", 0.999}, {"theta_b", 0.985}};
}

std::vector<SweepOutcome> sweep(const ModelParams& base,
                                const std::vector<SweepScenario>& scenarios,
                                const ShockSpec& shock, const NewtonOptions& opts) {
    auto run_one = [&](const SweepScenario& sc) {
        SweepOutcome out;
        out.scenario = sc;
        try {
            ModelParams p = with_override(base, sc.key, sc.value);
            if (sc.key != "mu" && sc.key != "R_l") rederive_policy_rates(p);
            p.validate();
            out.params = p;
            const SteadyState ss = solve_steady_state(p);
            const Trajectory traj = solve_transition(ss, shock, p, opts);
            out.report = irf_report(traj, ss);
            out.converged = true;
        } catch (const std::exception& e) {
            out.converged = false;
            out.error = e.what();
        }
        return out;
    };

    std::vector<std::future<SweepOutcome>> futures;
    futures.reserve(scenarios.size());
    for (const auto& sc : scenarios)
        futures.push_back(std::async(std::launch::async, run_one, sc));
    std::vector<SweepOutcome> out;
    out.reserve(scenarios.size());
    for (auto& f : futures) out.push_back(f.get());
    return out;
}

}  // namespace cbdc
