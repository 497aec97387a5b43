#include "cbdc/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "cbdc/model.hpp"

namespace cbdc {

using nlohmann::json;

std::string format_full(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string format_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(parent, ec);
        if (ec) throw IoError("cannot create directory " + parent.string() + ": " + ec.message());
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    return out;
}

const std::map<std::string, double ModelParams::*> kParamFields = {
    {"beta", &ModelParams::beta},       {"lambda", &ModelParams::lambda},
    {"sigma", &ModelParams::sigma},     {"upsilon", &ModelParams::upsilon},
    {"psi", &ModelParams::psi},         {"iota", &ModelParams::iota},
    {"phi1", &ModelParams::phi1},       {"phi2", &ModelParams::phi2},
    {"varphi", &ModelParams::varphi},   {"alpha", &ModelParams::alpha},
    {"delta", &ModelParams::delta},     {"rho", &ModelParams::rho_res},
    {"mu", &ModelParams::mu},           {"R_l", &ModelParams::R_l},
    {"R_m", &ModelParams::R_m},         {"R_r", &ModelParams::R_r},
    {"R_b", &ModelParams::R_b},         {"theta_b", &ModelParams::theta_b},
    {"xi", &ModelParams::xi},           {"rho_theta", &ModelParams::rho_theta},
    {"epsilon", &ModelParams::epsilon},
};

}  // namespace

void write_params_json(const std::string& path, const ModelParams& p) {
    json j;
    for (const auto& [name, member] : kParamFields) j[name] = p.*member;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
    if (!out.good()) throw IoError("short write to " + path);
}

ModelParams read_params_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open parameter file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError("malformed parameter file " + path + ": " + e.what());
    }
    if (!j.is_object()) throw UsageError("parameter file " + path + " must hold a JSON object");
    ModelParams p;
    for (const auto& [key, value] : j.items()) {
        const auto it = kParamFields.find(key);
        if (it == kParamFields.end())
            throw UsageError("unknown key '" + key + "' in parameter file " + path);
        if (!value.is_number())
            throw UsageError("key '" + key + "' in " + path + " must be a number");
        p.*(it->second) = value.get<double>();
    }
    for (const auto& [name, member] : kParamFields)
        if (!j.contains(name))
            throw UsageError("parameter file " + path + " is missing key '" + name + "'");
    return p;
}

void write_steady_csv(const std::string& path, const SteadyState& ss, const ModelParams& p) {
    const PeriodState& s = ss.s;
    auto out = open_out(path);
    out << "name,value\n";
    auto row = [&](const char* name, double v) { out << name << "," << format_sig12(v) << "\n"; };
    row("c", s.c);
    row("x", s.x);
    row("hours", 1.0 - s.x);
    row("k", s.k_next);
    row("n", s.n_next);
    row("m", s.m_next);
    row("z", s.z_next);
    row("zeta", s.zeta_next);
    row("r", s.r_next);
    row("l", s.l_next);
    row("b", s.b_next);
    row("k_h", ss.k_h);
    row("k_g", ss.k_g);
    row("k_b", s.bank_capital());
    row("chi_n", s.chi_n);
    row("chi_m", s.chi_m);
    row("chi_r", s.chi_r);
    row("chi_l", s.chi_l);
    row("chi_b", s.chi_b);
    row("R_f", s.R_f_next);
    row("R_k", s.R_k);
    row("R_n", s.R_f_next * (1.0 - s.chi_n));
    row("R_m_implied", s.R_f_next * (1.0 - s.chi_m));
    row("w", s.w);
    row("y", s.y);
    row("theta_m", s.theta_m);
    row("tau", ss.tau);
    row("nu", operating_cost(s.zeta_next, s.zeta_next, p).nu);
    row("gamma", collateral_multiplier(s, p));
    row("residual_norm", ss.diag.residual_norm);
    if (!out.good()) throw IoError("short write to " + path);
}

void write_irf_csv(const std::string& path, const IrfReport& rep) {
    auto out = open_out(path);
    out << "t";
    for (const auto& s : rep.series) out << "," << s.name;
    out << "\n";
    const size_t T = rep.series.empty() ? 0 : rep.series.front().dev.size();
    for (size_t t = 0; t < T; ++t) {
        out << t;
        for (const auto& s : rep.series) out << "," << format_sig12(s.dev[t]);
        out << "\n";
    }
    if (!out.good()) throw IoError("short write to " + path);
}

void write_signs_json(const std::string& path, const IrfReport& rep) {
    json j;
    for (const auto& s : rep.series) j[s.name] = s.sign_impact;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
    if (!out.good()) throw IoError("short write to " + path);
}

void write_audit_json(const std::string& path, const AuditReport& rep) {
    json j;
    j["delta"] = rep.delta;
    j["epsilon"] = rep.epsilon;
    j["T1"] = rep.T1;
    j["T2"] = rep.T2;
    j["T_mv"] = rep.T_mv;
    j["P_mv"] = rep.P_mv;
    j["gov_budget_residual_t"] = rep.gov_budget_residual_t;
    j["gov_budget_residual_t1"] = rep.gov_budget_residual_t1;
    j["loan_rate_used"] = rep.loan_rate_used;
    j["efficiency_gap"] = rep.efficiency_gap;
    if (std::isfinite(rep.binding_margin)) j["binding_margin"] = rep.binding_margin;
    if (rep.epsilon > 0) j["ces_factor"] = rep.ces_factor;
    j["ledger"] = {{"d_n", rep.ledger.d_n},     {"d_m", rep.ledger.d_m},
                   {"d_r", rep.ledger.d_r},     {"d_l", rep.ledger.d_l},
                   {"d_b", rep.ledger.d_b},     {"d_k_h", rep.ledger.d_k_h},
                   {"d_k_g", rep.ledger.d_k_g}, {"zeta", rep.ledger.zeta},
                   {"nu", rep.ledger.nu}};
    auto sheet = [](const BalanceSheet& b) {
        return json{{"deposits", b.deposits}, {"loans", b.loans},   {"reserves", b.reserves},
                    {"bonds", b.bonds},       {"capital", b.capital}};
    };
    j["balance_before"] = sheet(rep.balance.before);
    j["balance_after"] = sheet(rep.balance.after);
    j["business_model_shifted"] = rep.balance.profits_insulated_business_model_shifted;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
    if (!out.good()) throw IoError("short write to " + path);
}

void write_irf_svg_charts(const std::string& dir, const IrfReport& rep) {
    for (const auto& s : rep.series) {
        const size_t T = s.dev.size();
        if (T < 2) continue;
        double lo = 0, hi = 0;
        for (double v : s.dev) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo < 1e-12) hi = lo + 1e-12;
        const double W = 640, H = 320, ml = 60, mr = 10, mt = 28, mb = 24;
        auto px = [&](size_t t) { return ml + (W - ml - mr) * double(t) / double(T - 1); };
        auto py = [&](double v) { return mt + (H - mt - mb) * (hi - v) / (hi - lo); };
        auto out = open_out(dir + "/irf_" + s.name + ".svg");
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
            << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
        out << "<text x=\"" << W / 2 << "\" y=\"18\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"13\">" << s.name;
        switch (s.units) {
            case IrfUnits::percent: out << " (% dev)"; break;
            case IrfUnits::basis_points: out << " (bp dev)"; break;
            case IrfUnits::level: out << " (level)"; break;
        }
        out << "</text>\n";
        if (lo < 0 && hi > 0)
            out << "<line x1=\"" << ml << "\" y1=\"" << py(0) << "\" x2=\"" << W - mr
                << "\" y2=\"" << py(0) << "\" stroke=\"#bbb\" stroke-width=\"1\"/>\n";
        out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
        for (size_t t = 0; t < T; ++t) out << px(t) << "," << py(s.dev[t]) << " ";
        out << "\"/>\n";
        out << "<text x=\"4\" y=\"" << py(hi) + 4 << "\" font-family=\"sans-serif\" "
            << "font-size=\"11\">" << format_sig12(hi) << "</text>\n";
        out << "<text x=\"4\" y=\"" << py(lo) << "\" font-family=\"sans-serif\" "
            << "font-size=\"11\">" << format_sig12(lo) << "</text>\n";
        out << "</svg>\n";
        if (!out.good()) throw IoError("short write to SVG chart for " + s.name);
    }
}

RunConfig parse_config(int argc, const char* const* argv) {
    RunConfig cfg;
    CLI::App app{"cbdc-lab: steady states, perfect-foresight responses, and payment-system "
                 "equivalence audits for a banking economy with a central bank digital currency"};
    app.require_subcommand(0, 1);
    app.fallthrough(true);
    app.set_config("--config", "", "read options from a config file");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.set_help_all_flag("--help-all", "expanded help for every command");

    std::vector<std::string> override_specs;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--params", cfg.params_path, "parameter file (params.json)");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->allow_config_extras(CLI::config_extras_mode::error);
    };

    CLI::App* cal = app.add_subcommand("calibrate", "derive parameters from steady targets");
    cal->add_option("--velocity", cfg.targets.velocity, "consumption velocity target c/z");
    cal->add_option("--zeta-star", cfg.targets.zeta_star, "reserves-to-deposits target");
    cal->add_option("--labor-star", cfg.targets.labor_star, "steady labor target");
    cal->add_option("--bond-haircut", cfg.targets.bond_haircut, "haircut on bonds, 1 - theta_b");
    cal->add_flag("--solve-upsilon", cfg.solve_upsilon,
                  "bisect the leisure exponent to hit the labor target exactly");
    add_common(cal);

    CLI::App* st = app.add_subcommand("steady", "solve the no-CBDC steady state");
    add_common(st);

    CLI::App* irf = app.add_subcommand("irf", "impulse responses to a CBDC-share shock");
    irf->add_option("--impulse", cfg.impulse, "initial CBDC share of steady output");
    auto* pers =
        irf->add_option("--persistence", cfg.persistence, "AR(1) persistence of the share");
    irf->add_option("--horizon", cfg.horizon, "transition horizon in quarters");
    irf->add_flag("--svg", cfg.emit_svg, "also emit one SVG line chart per series");
    add_common(irf);

    CLI::App* audit = app.add_subcommand("audit", "payment-system equivalence audit");
    audit->add_option("--delta", cfg.delta, "deposit reduction to audit");
    audit->add_option("--epsilon", cfg.audit_epsilon,
                      "inverse substitution elasticity (> 0 runs the CES audit)");
    add_common(audit);

    CLI::App* sweep = app.add_subcommand("sweep", "robustness sweep over parameter overrides");
    sweep->add_option("--override", override_specs,
                      "scenario as key=value; repeat for several scenarios");
    sweep->add_option("--impulse", cfg.impulse, "initial CBDC share of steady output");
    auto* pers2 =
        sweep->add_option("--persistence", cfg.persistence, "AR(1) persistence of the share");
    sweep->add_option("--horizon", cfg.horizon, "transition horizon in quarters");
    add_common(sweep);

    if (argc <= 1) throw UsageError(app.help());

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        cfg.help_requested = true;
        cfg.help_text = app.help();
        return cfg;
    } catch (const CLI::CallForAllHelp&) {
        cfg.help_requested = true;
        cfg.help_text = app.help("", CLI::AppFormatMode::All);
        return cfg;
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()));
    }

    if (cal->parsed()) cfg.command = Command::calibrate;
    else if (st->parsed()) cfg.command = Command::steady;
    else if (irf->parsed()) cfg.command = Command::irf;
    else if (audit->parsed()) cfg.command = Command::audit;
    else if (sweep->parsed()) cfg.command = Command::sweep;
    else throw UsageError(app.help());

    cfg.persistence_set = pers->count() > 0 || pers2->count() > 0;

    for (const auto& spec : override_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos)
            throw UsageError("override '" + spec + "' must have the form key=value");
        const std::string key = spec.substr(0, eq);
        const std::string val = spec.substr(eq + 1);
        try {
            size_t used = 0;
            const double v = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
            cfg.overrides.emplace_back(key, v);
        } catch (const std::exception&) {
            throw UsageError("override value '" + val + "' is not a number");
        }
    }
    return cfg;
}

}  // namespace cbdc
