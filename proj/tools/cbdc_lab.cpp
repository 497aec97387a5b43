#include <cstdio>
#include <exception>
#include <string>

#include "cbdc/calibration.hpp"
#include "cbdc/equivalence.hpp"
#include "cbdc/io.hpp"
#include "cbdc/irf.hpp"
#include "cbdc/model.hpp"
#include "cbdc/steady_state.hpp"
#include "cbdc/transition.hpp"

namespace {

using namespace cbdc;

ModelParams load_params(const RunConfig& cfg) {
    ModelParams p = cfg.params_path.empty() ? ModelParams{} : read_params_json(cfg.params_path);
    p.validate();
    return p;
}

ShockSpec shock_from(const RunConfig& cfg, const ModelParams& p) {
    ShockSpec s;
    s.impulse = cfg.impulse;
    s.persistence = cfg.persistence_set ? cfg.persistence : p.rho_theta;
    s.horizon = cfg.horizon;
    s.validate();
    return s;
}

int run(const RunConfig& cfg) {
    const std::string out = cfg.out_dir;
    switch (cfg.command) {
        case Command::calibrate: {
            const CalibrationResult res = calibrate(cfg.targets, cfg.solve_upsilon);
            write_params_json(out + "/params.json", res.params);
            std::printf("calibrated parameters -> %s/params.json\n", out.c_str());
            std::printf("  iota    = %s\n", format_full(res.params.iota).c_str());
            std::printf("  varphi  = %s\n", format_full(res.params.varphi).c_str());
            std::printf("  phi1    = %s\n", format_full(res.params.phi1).c_str());
            std::printf("  mu      = %s\n", format_full(res.params.mu).c_str());
            std::printf("  R_l     = %s\n", format_full(res.params.R_l).c_str());
            if (res.upsilon_solved)
                std::printf("  upsilon = %s (solved for the labor target)\n",
                            format_full(res.params.upsilon).c_str());
            return 0;
        }
        case Command::steady: {
            const ModelParams p = load_params(cfg);
            const SteadyState ss = solve_steady_state(p);
            write_steady_csv(out + "/steady.csv", ss, p);
            std::printf("steady state -> %s/steady.csv (residual norm %.3e, %d iterations)\n",
                        out.c_str(), ss.diag.residual_norm, ss.diag.iterations);
            std::printf("  labor = %s, c/z = %s, zeta = %s\n",
                        format_sig12(1.0 - ss.s.x).c_str(),
                        format_sig12(ss.s.c / ss.s.z_next).c_str(),
                        format_sig12(ss.s.zeta_next).c_str());
            return 0;
        }
        case Command::irf: {
            const ModelParams p = load_params(cfg);
            const SteadyState ss = solve_steady_state(p);
            const Trajectory traj = solve_transition(ss, shock_from(cfg, p), p);
            const IrfReport rep = irf_report(traj, ss);
            write_irf_csv(out + "/irf.csv", rep);
            write_signs_json(out + "/signs.json", rep);
            if (cfg.emit_svg) write_irf_svg_charts(out, rep);
            std::printf("transition solved in %d iterations, stack residual %.3e\n",
                        traj.diag.iterations, traj.diag.residual_norm);
            std::printf("responses -> %s/irf.csv, impact signs -> %s/signs.json\n", out.c_str(),
                        out.c_str());
            return 0;
        }
        case Command::audit: {
            ModelParams p = load_params(cfg);
            AuditReport rep;
            if (cfg.audit_epsilon > 0) {
                p.epsilon = cfg.audit_epsilon;
                ModelParams p0 = p;
                p0.epsilon = 0;  // the base position comes from the substitutes economy
                const SteadyState ss = solve_steady_state(p0);
                EquivalenceBase base = normalized_base(ss);
                base.m = base.n;  // CES audit needs an interior base
                rep = ces_audit(base, cfg.delta, p, ss.s.chi_n);
            } else {
                const SteadyState ss = solve_steady_state(p);
                rep = audit_steady(ss, cfg.delta, p);
            }
            write_audit_json(out + "/audit.json", rep);
            std::printf("audit -> %s/audit.json\n", out.c_str());
            std::printf("  loan rate used        = %s\n", format_full(rep.loan_rate_used).c_str());
            std::printf("  market value, taxes   = %.6e\n", rep.T_mv);
            std::printf("  market value, profits = %.6e\n", rep.P_mv);
            return 0;
        }
        case Command::sweep: {
            const ModelParams p = load_params(cfg);
            std::vector<SweepScenario> scenarios;
            if (cfg.overrides.empty()) {
                scenarios = default_sweep_scenarios();
            } else {
                for (const auto& [k, v] : cfg.overrides) scenarios.push_back({k, v});
            }
            for (const auto& sc : scenarios) {
                // Surface unknown keys as usage errors before any solving.
                (void)with_override(p, sc.key, sc.value);
            }
            const ShockSpec shock = shock_from(cfg, p);
            const auto outcomes = sweep(p, scenarios, shock);
            bool all_ok = true;
            for (const auto& o : outcomes) {
                const std::string dir = out + "/" + o.scenario.label();
                if (o.converged) {
                    write_irf_csv(dir + "/irf.csv", *o.report);
                    write_signs_json(dir + "/signs.json", *o.report);
                    write_params_json(dir + "/params.json", o.params);
                    std::printf("scenario %-16s converged -> %s/\n", o.scenario.label().c_str(),
                                dir.c_str());
                } else {
                    all_ok = false;
                    std::printf("scenario %-16s FAILED: %s\n", o.scenario.label().c_str(),
                                o.error.c_str());
                }
            }
            return all_ok ? 0 : 1;
        }
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        const cbdc::RunConfig cfg = cbdc::parse_config(argc, argv);
        if (cfg.help_requested) {
            std::printf("%s", cfg.help_text.c_str());
            return 0;
        }
        return run(cfg);
    } catch (const cbdc::UsageError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const cbdc::IoError& e) {
        std::fprintf(stderr, "I/O error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return 1;
    }
}
