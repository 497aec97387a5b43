#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cbdc/calibration.hpp"
#include "cbdc/io.hpp"
#include "cbdc/steady_state.hpp"
#include "cbdc/transition.hpp"

using namespace cbdc;
namespace fs = std::filesystem;

namespace {

struct Cli {
    fs::path dir;

    Cli() {
        dir = fs::temp_directory_path() /
              ("cbdc_cli_" + std::to_string(::getpid()) + "_" +
               std::to_string(rand()));
        fs::create_directories(dir);
    }
    ~Cli() { std::error_code ec; fs::remove_all(dir, ec); }

    int run(const std::string& args, const std::string& tag = "run") const {
        const std::string cmd = std::string(CBDC_LAB_BIN) + " " + args + " >" +
                                (dir / (tag + ".out")).string() + " 2>" +
                                (dir / (tag + ".err")).string();
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    }

    std::string slurp(const fs::path& p) const {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
};

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

}  // namespace

TEST_CASE("no arguments prints usage and exits 2") {
    Cli cli;
    CHECK(cli.run("") == 2);
    CHECK(cli.slurp(cli.dir / "run.err").find("Usage") != std::string::npos);
}

TEST_CASE("help exits 0") {
    Cli cli;
    CHECK(cli.run("--help") == 0);
}

TEST_CASE("unknown flags and malformed overrides exit 2") {
    Cli cli;
    CHECK(cli.run("steady --frobnicate 3") == 2);
    CHECK(cli.run("sweep --override lambda") == 2);
    CHECK(cli.run("sweep --override lambda=abc") == 2);
    CHECK(cli.run("sweep --override nope=1 --horizon 40") == 2);
}

TEST_CASE("unwritable output directory exits 3") {
    Cli cli;
    CHECK(cli.run("calibrate --out /dev/null/sub") == 3);
}

TEST_CASE("calibrate emits a parameter file that round-trips") {
    Cli cli;
    REQUIRE(cli.run("calibrate --out " + cli.dir.string()) == 0);
    const fs::path pj = cli.dir / "params.json";
    REQUIRE(fs::exists(pj));
    const ModelParams read_back = read_params_json(pj.string());
    const ModelParams direct = calibrate(CalibrationTargets{}).params;
    CHECK(read_back.iota == direct.iota);
    CHECK(read_back.varphi == direct.varphi);
    CHECK(read_back.phi1 == direct.phi1);
    CHECK(read_back.mu == direct.mu);
    CHECK(read_back.R_l == direct.R_l);
    CHECK(read_back.beta == direct.beta);

    // identical runs produce byte-identical files
    fs::create_directories(cli.dir / "again");
    REQUIRE(cli.run("calibrate --out " + (cli.dir / "again").string(), "again") == 0);
    CHECK(cli.slurp(pj) == cli.slurp(cli.dir / "again" / "params.json"));
}

TEST_CASE("malformed parameter files exit 2") {
    Cli cli;
    {
        std::ofstream bad(cli.dir / "bad.json");
        bad << "{\"beta\": 0.99, \"unknown_field\": 1.0}\n";
    }
    CHECK(cli.run("steady --params " + (cli.dir / "bad.json").string()) == 2);
    {
        std::ofstream bad(cli.dir / "bad2.json");
        bad << "not json at all\n";
    }
    CHECK(cli.run("steady --params " + (cli.dir / "bad2.json").string()) == 2);
    CHECK(cli.run("steady --params " + (cli.dir / "missing.json").string()) == 3);
}

TEST_CASE("steady run emits the targeted reserves ratio") {
    Cli cli;
    REQUIRE(cli.run("calibrate --out " + cli.dir.string()) == 0);
    REQUIRE(cli.run("steady --params " + (cli.dir / "params.json").string() + " --out " +
                    cli.dir.string()) == 0);
    const std::string csv = cli.slurp(cli.dir / "steady.csv");
    CHECK(csv.find("zeta,0.1945") != std::string::npos);
    CHECK(csv.find("name,value") != std::string::npos);
}

TEST_CASE("irf run: policy column, determinism, signs file") {
    Cli cli;
    REQUIRE(cli.run("calibrate --out " + cli.dir.string()) == 0);
    const std::string params = (cli.dir / "params.json").string();
    REQUIRE(cli.run("irf --params " + params + " --horizon 40 --out " + cli.dir.string()) ==
            0);
    const auto rows = read_csv(cli.dir / "irf.csv");
    REQUIRE(rows.size() == 41);  // header + 40 quarters
    // locate the m and theta_m columns
    int m_col = -1, th_col = -1;
    for (size_t j = 0; j < rows[0].size(); ++j) {
        if (rows[0][j] == "m") m_col = static_cast<int>(j);
        if (rows[0][j] == "theta_m") th_col = static_cast<int>(j);
    }
    REQUIRE(m_col >= 0);
    REQUIRE(th_col >= 0);
    const SteadyState ss = solve_steady_state(read_params_json(params));
    ShockSpec shock;
    shock.horizon = 40;
    const auto theta = theta_path(shock);
    for (size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][m_col] == format_sig12(theta[i - 1] * ss.s.y));
        CHECK(rows[i][th_col] == format_sig12(theta[i - 1]));
    }

    fs::create_directories(cli.dir / "b");
    REQUIRE(cli.run("irf --params " + params + " --horizon 40 --out " +
                    (cli.dir / "b").string(), "b") == 0);
    CHECK(cli.slurp(cli.dir / "irf.csv") == cli.slurp(cli.dir / "b" / "irf.csv"));
    CHECK(cli.slurp(cli.dir / "signs.json") == cli.slurp(cli.dir / "b" / "signs.json"));

    const std::string signs = cli.slurp(cli.dir / "signs.json");
    CHECK(signs.find("\"n\": 1") != std::string::npos);
    CHECK(signs.find("\"chi_n\": -1") != std::string::npos);
}

TEST_CASE("svg flag emits one chart per series") {
    Cli cli;
    REQUIRE(cli.run("irf --horizon 40 --impulse 0.01 --svg --out " + cli.dir.string()) == 0);
    CHECK(fs::exists(cli.dir / "irf_c.svg"));
    CHECK(fs::exists(cli.dir / "irf_chi_n.svg"));
    const std::string svg = cli.slurp(cli.dir / "irf_c.svg");
    CHECK(svg.find("<polyline") != std::string::npos);
}

TEST_CASE("audit run emits near-zero market values at the equivalent rate") {
    Cli cli;
    REQUIRE(cli.run("calibrate --out " + cli.dir.string()) == 0);
    REQUIRE(cli.run("audit --params " + (cli.dir / "params.json").string() +
                    " --delta 0.1 --out " + cli.dir.string()) == 0);
    const std::string audit = cli.slurp(cli.dir / "audit.json");
    CHECK(audit.find("\"T_mv\"") != std::string::npos);
    CHECK(audit.find("\"P_mv\"") != std::string::npos);
    // values are printed in shortest-round-trip form; anything at 1e-12*delta
    // or below carries an e-14/e-15-class exponent or is exactly 0
    std::istringstream ss(audit);
    std::string line;
    bool t_ok = false, p_ok = false;
    while (std::getline(ss, line)) {
        auto tiny = [&](const std::string& key) {
            if (line.find(key) == std::string::npos) return false;
            const auto colon = line.find(':');
            const double v = std::stod(line.substr(colon + 1));
            return std::abs(v) <= 1e-13;
        };
        if (tiny("\"T_mv\"")) t_ok = true;
        if (tiny("\"P_mv\"")) p_ok = true;
    }
    CHECK(t_ok);
    CHECK(p_ok);
}

TEST_CASE("ces audit via the epsilon flag") {
    Cli cli;
    REQUIRE(cli.run("audit --delta 0.05 --epsilon 0.5 --out " + cli.dir.string()) == 0);
    const std::string audit = cli.slurp(cli.dir / "audit.json");
    CHECK(audit.find("\"ces_factor\"") != std::string::npos);
    CHECK(audit.find("\"epsilon\": 0.5") != std::string::npos);
}

TEST_CASE("config file supplies values and flags override them") {
    Cli cli;
    {
        std::ofstream cfg(cli.dir / "run.toml");
        cfg << "[irf]\nimpulse=0.01\nhorizon=40\n";
    }
    REQUIRE(cli.run("irf --config " + (cli.dir / "run.toml").string() + " --out " +
                    cli.dir.string()) == 0);
    const auto rows = read_csv(cli.dir / "irf.csv");
    REQUIRE(rows.size() == 41);
    int th_col = -1;
    for (size_t j = 0; j < rows[0].size(); ++j)
        if (rows[0][j] == "theta_m") th_col = static_cast<int>(j);
    CHECK(std::stod(rows[1][th_col]) == doctest::Approx(0.01).epsilon(1e-12));

    // the flag beats the file
    REQUIRE(cli.run("irf --config " + (cli.dir / "run.toml").string() +
                    " --impulse 0.02 --out " + cli.dir.string(), "flag") == 0);
    const auto rows2 = read_csv(cli.dir / "irf.csv");
    CHECK(std::stod(rows2[1][th_col]) == doctest::Approx(0.02).epsilon(1e-12));

    // unknown keys in the file are rejected
    {
        std::ofstream cfg(cli.dir / "bad.toml");
        cfg << "[irf]\nimpulze=0.01\n";
    }
    CHECK(cli.run("irf --config " + (cli.dir / "bad.toml").string(), "bad") == 2);
}

TEST_CASE("a scenario that cannot solve exits 1") {
    Cli cli;
    CHECK(cli.run("sweep --override beta=0.2 --horizon 40 --out " + cli.dir.string()) == 1);
}

TEST_CASE("sweep with explicit overrides writes one directory per scenario") {
    Cli cli;
    REQUIRE(cli.run("sweep --override lambda=0.5 --override lambda=1.5 --horizon 40 "
                    "--impulse 0.01 --out " +
                    cli.dir.string()) == 0);
    CHECK(fs::exists(cli.dir / "lambda=0.5" / "irf.csv"));
    CHECK(fs::exists(cli.dir / "lambda=0.5" / "signs.json"));
    CHECK(fs::exists(cli.dir / "lambda=1.5" / "irf.csv"));
    CHECK(fs::exists(cli.dir / "lambda=1.5" / "params.json"));
}
