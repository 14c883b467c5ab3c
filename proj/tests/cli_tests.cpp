#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// End-to-end checks of the conf4 binary: exit codes, emitted files, and
// byte-level reproducibility.

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = CONF4_CLI_PATH;
const std::string kConfigs = CONF4_CONFIG_DIR;

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    REQUIRE(is.good());
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("conf4_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("solve: default path converges with exit 0") {
    const fs::path dir = fresh_dir("solve_default");
    CHECK(run("solve --config " + kConfigs + "/solve_default.cfg --out " + dir.string()) == 0);
    REQUIRE(fs::exists(dir / "trace.csv"));
    REQUIRE(fs::exists(dir / "report.json"));
    REQUIRE(fs::exists(dir / "manifest.json"));

    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report["status"] == "converged");
    CHECK(std::abs(report["final"]["u_max"].get<double>() - (-0.27465307216702745)) < 1e-8);
    CHECK(report["ricci_verdict"]["lower_ok"] == true);
    CHECK(report["ricci_verdict"]["upper_ok"] == true);
    CHECK(report["ricci_verdict"]["lower_margin"].get<double>() > 0.0);
    CHECK(report["monitors"]["upper_ok"] == true);

    const json manifest = json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["command"] == "solve");
    CHECK(manifest["emitted_files"].size() == 3);
}

TEST_CASE("solve: t_target = 1 fails with exit 2 and still emits the trace") {
    const fs::path dir = fresh_dir("solve_t1");
    CHECK(run("solve --config " + kConfigs + "/solve_t1.cfg --out " + dir.string()) == 2);
    REQUIRE(fs::exists(dir / "trace.csv"));
    const std::string trace = slurp(dir / "trace.csv");
    // Last accepted cone margin is tiny: the (1 - t) decay documented.
    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report["status"] == "path_failure");
    CHECK(report["final"]["t"].get<double>() > 0.99);
    CHECK(report["final"]["cone_margin"].get<double>() < 0.01);
    CHECK(trace.find("newton_iters") != std::string::npos);
}

TEST_CASE("solve: missing config file is a configuration error (exit 1)") {
    const fs::path dir = fresh_dir("solve_badcfg");
    CHECK(run("solve --config /nonexistent.cfg --out " + dir.string()) == 1);

    // A background other than s1xs3 is rejected the same way.
    const fs::path cfg = dir / "round.cfg";
    fs::create_directories(dir);
    std::ofstream(cfg) << "[background]\nkind = round_s4\nradius = 1.0\n";
    CHECK(run("solve --config " + cfg.string() + " --out " + dir.string()) == 1);
}

TEST_CASE("solve: byte-identical outputs across reruns and directories") {
    const fs::path a = fresh_dir("det_a");
    const fs::path b = fresh_dir("det_b");
    const std::string cfg = " --config " + kConfigs + "/solve_default.cfg --out ";
    REQUIRE(run("solve" + cfg + a.string()) == 0);
    REQUIRE(run("solve" + cfg + b.string()) == 0);
    CHECK(slurp(a / "trace.csv") == slurp(b / "trace.csv"));
    CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
}

TEST_CASE("invariants: ledger table") {
    const fs::path dir = fresh_dir("invariants");
    CHECK(run("invariants --out " + dir.string()) == 0);
    const std::string table = slurp(dir / "table.csv");
    CHECK(table.find("name,chi,weyl_l2,f2,q_total,yamabe,paneitz_hypothesis,cgb_residual,status") !=
          std::string::npos);
    CHECK(table.find("S4,2,0,") != std::string::npos);
    CHECK(table.find("hypothesis fails: R < 0") != std::string::npos);
    // S1xS3 row: F2 = 0, q_total = 0, verdict true from the supplied Y > 0.
    CHECK(table.find("S1xS3,0,0,0,0,") != std::string::npos);
    // S4 row: F2 = 16 pi^2, verdict true.
    std::istringstream is(table);
    std::string line;
    bool found = false;
    while (std::getline(is, line)) {
        if (line.rfind("S4,", 0) == 0) {
            CHECK(line.find("157.91367041742973") != std::string::npos);  // 16 pi^2
            CHECK(line.find("true") != std::string::npos);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("spectrum: hyperbolic product with a negative mode") {
    const fs::path dir = fresh_dir("spectrum_hyp");
    CHECK(run("spectrum --config " + kConfigs + "/spectrum_hyperbolic.cfg --out " + dir.string()) ==
          0);
    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report["count_negative"].get<int>() > 0);
    // Grid minimum at lambda + mu = 0.2: 0.04 - (2/3)(0.2) = -7/75.
    CHECK(std::abs(report["min_eigenvalue"].get<double>() - (-7.0 / 75.0)) < 1e-12);
    // The continuum parabola bottoms out at -1/9 at lambda + mu = 1/3.
    CHECK(std::abs(report["continuum_vertex_value"].get<double>() - (-1.0 / 9.0)) < 1e-15);
    CHECK(std::abs(report["continuum_vertex_sum"].get<double>() - (1.0 / 3.0)) < 1e-15);

    const std::string csv = slurp(dir / "spectrum.csv");
    CHECK(csv.find("lambda,mu,paneitz_eigenvalue") != std::string::npos);

    const json cert = json::parse(slurp(dir / "certificate.json"));
    CHECK(cert["positive_semidefinite"] == false);
    CHECK(std::abs(cert["witness"]["form_value"].get<double>() - (-7.0 / 75.0)) < 1e-12);
}

TEST_CASE("spectrum: S2xS2 nonnegative") {
    const fs::path dir = fresh_dir("spectrum_s2s2");
    CHECK(run("spectrum --config " + kConfigs + "/spectrum_s2xs2.cfg --out " + dir.string()) == 0);
    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report["count_negative"].get<int>() == 0);
    CHECK(report["min_eigenvalue"].get<double>() == 0.0);
    const json cert = json::parse(slurp(dir / "certificate.json"));
    CHECK(cert["positive_semidefinite"] == true);
    CHECK(cert["kernel_is_constants"] == true);
}

TEST_CASE("spectrum: reduced operator modes") {
    const fs::path dir = fresh_dir("spectrum_red");
    CHECK(run("spectrum --config " + kConfigs + "/spectrum_reduced.cfg --out " + dir.string()) == 0);
    const std::string csv = slurp(dir / "spectrum.csv");
    // k = 1 mode on L = 2 pi: lambda = 1, eigenvalue 5.
    CHECK(csv.find("1,0,5\n") != std::string::npos);
}

TEST_CASE("spectrum: malformed input exits 1") {
    const fs::path dir = fresh_dir("spectrum_bad");
    CHECK(run("spectrum --config " + kConfigs + "/spectrum_empty.cfg --out " + dir.string()) == 1);
    CHECK(run("spectrum --out " + dir.string()) == 1);  // --config required
}

TEST_CASE("examples: surgery table reproduces the admissible lists") {
    const fs::path dir = fresh_dir("examples");
    CHECK(run("examples --out " + dir.string()) == 0);
    const std::string table = slurp(dir / "table.csv");

    auto row_admissible = [&table](const std::string& prefix) {
        const size_t pos = table.find(prefix);
        REQUIRE(pos != std::string::npos);
        const size_t eol = table.find('\n', pos);
        const std::string row = table.substr(pos, eol - pos);
        return row.substr(row.rfind(',') + 1) == "true";
    };
    CHECK(row_admissible("S2xS2#k(S1xS3),S2xS2,5,0"));
    CHECK_FALSE(row_admissible("S2xS2#k(S1xS3),S2xS2,6,0"));
    CHECK(row_admissible("CP2#k(S1xS3),CP2,5,0"));
    CHECK_FALSE(row_admissible("CP2#k(S1xS3),CP2,6,0"));
    CHECK(row_admissible("CP2#l(RP4),CP2,0,8"));
    CHECK_FALSE(row_admissible("CP2#l(RP4),CP2,0,9"));
    CHECK(row_admissible("k(S1xS3)#l(RP4),lcf,2,5"));
    CHECK_FALSE(row_admissible("k(S1xS3)#l(RP4),lcf,5,0"));
    CHECK(row_admissible("CP2#lCP2bar#(S1xS3),CP2_7CP2bar,1,0"));
    CHECK_FALSE(row_admissible("CP2#lCP2bar#(S1xS3),CP2_8CP2bar,1,0"));
}

TEST_CASE("selftest: exit 0 and reproducible JSON") {
    const fs::path a = fresh_dir("selftest_a");
    const fs::path b = fresh_dir("selftest_b");
    CHECK(run("selftest --seed 42 --out " + a.string()) == 0);
    CHECK(run("selftest --seed 42 --out " + b.string()) == 0);
    const json report = json::parse(slurp(a / "selftest.json"));
    CHECK(report["all_passed"] == true);
    CHECK(report["seed"] == 42);
    CHECK(slurp(a / "selftest.json") == slurp(b / "selftest.json"));
}
