#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "conf4/config.hpp"
#include "conf4/errors.hpp"
#include "conf4/format.hpp"
#include "conf4/report.hpp"
#include "conf4/selftest.hpp"

namespace fs = std::filesystem;
using namespace conf4;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    uint64_t seed = 42;
    int grid = 0;          // 0 = take from config / defaults
    double delta = 0.0;    // 0 = unset (valid deltas are negative)
    double t_target = -99.0;
    bool t_target_set = false;
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw config_error("cannot write '" + path.string() + "'");
    os << content;
}

void emit_manifest(const CommonOpts& opts, const std::string& command,
                   std::vector<std::string> files) {
    RunManifest m;
    m.command = command;
    m.config_path = opts.config_path;
    m.output_dir = fs::absolute(opts.out_dir).string();
    m.seed = opts.seed;
    files.push_back("manifest.json");
    m.emitted_files = std::move(files);
    write_file(fs::path(opts.out_dir) / "manifest.json", manifest_to_json(m));
}

int cmd_solve(const CommonOpts& opts) {
    S1xS3 bg;
    SolveConfig cfg;
    if (!opts.config_path.empty()) {
        const ConfigFile file = ConfigFile::parse_file(opts.config_path);
        if (file.has_section("background")) {
            const Background loaded = load_background(file);
            const S1xS3* p = std::get_if<S1xS3>(&loaded);
            if (p == nullptr) throw config_error("solve: background must be s1xs3");
            bg = *p;
        }
        cfg = load_solve_config(file);
    }
    if (opts.grid > 0) cfg.grid_n = opts.grid;
    if (opts.delta < 0.0) cfg.delta = opts.delta;
    if (opts.t_target_set) cfg.t_target = opts.t_target;
    cfg.validate();

    fs::create_directories(opts.out_dir);
    const auto t0 = std::chrono::steady_clock::now();
    const PathResult result = continue_path(bg, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    std::cerr << "solve: " << result.trace.size() << " accepted steps in "
              << std::chrono::duration<double>(t1 - t0).count() << " s\n";

    std::optional<RicciVerdict> verdict;
    if (result.status == PathStatus::Converged)
        verdict = ricci_verdict(result.final_state, result.final_state.t,
                                std::max(cfg.newton_tol * 10.0, 1e-9), cfg.scheme);

    write_file(fs::path(opts.out_dir) / "trace.csv", trace_to_csv(result.trace));
    write_file(fs::path(opts.out_dir) / "report.json",
               solve_report_to_json(bg, cfg, result, verdict));
    emit_manifest(opts, "solve", {"trace.csv", "report.json"});

    if (result.status != PathStatus::Converged) {
        std::cerr << "solve: path failure: " << result.message << "\n";
        return 2;
    }
    if (!verdict || !verdict->lower_ok || !verdict->upper_ok) {
        std::cerr << "solve: converged but the Ricci pinching verdict failed\n";
        return 2;
    }
    return 0;
}

int cmd_invariants(const CommonOpts& opts) {
    fs::create_directories(opts.out_dir);
    write_file(fs::path(opts.out_dir) / "table.csv", invariants_to_csv(builtin_records()));
    emit_manifest(opts, "invariants", {"table.csv"});
    return 0;
}

int cmd_spectrum(const CommonOpts& opts) {
    if (opts.config_path.empty()) throw config_error("spectrum: --config is required");
    const ConfigFile file = ConfigFile::parse_file(opts.config_path);
    const SpectrumRequest req = load_spectrum_request(file);

    std::vector<SpectrumPoint> points;
    std::optional<PositivityCertificate> cert;
    if (req.product) {
        points = product_paneitz_spectrum_points(*req.product);
        // Areas only normalize the volume; any Gauss-Bonnet-consistent
        // choice carries the same pointwise curvature.
        auto area_for = [](double kappa) {
            return kappa == 0.0 ? 1.0 : 4.0 * 3.14159265358979323846 / std::abs(kappa);
        };
        const ProductSurfaces ps{req.product->kappa1, req.product->kappa2,
                                 area_for(req.product->kappa1), area_for(req.product->kappa2)};
        cert = positivity_certificate(ps, &*req.product);
    } else {
        const ReducedSpectrumRequest& r = *req.reduced;
        const int n = (opts.grid > 0) ? opts.grid : r.grid_n;
        for (int k = 0; k <= n / 2; ++k) {
            const double lam = std::pow(2.0 * 3.14159265358979323846 * k / r.circumference, 2);
            points.push_back(SpectrumPoint{lam, 0.0, lam * lam + 4.0 * lam});
        }
    }
    const SpectrumSummary summary = summarize_spectrum(points, req.product);

    fs::create_directories(opts.out_dir);
    write_file(fs::path(opts.out_dir) / "spectrum.csv", spectrum_to_csv(points));
    write_file(fs::path(opts.out_dir) / "report.json", spectrum_report_to_json(summary));
    std::vector<std::string> files{"spectrum.csv", "report.json"};
    if (cert) {
        write_file(fs::path(opts.out_dir) / "certificate.json", certificate_to_json(*cert));
        files.push_back("certificate.json");
    }
    emit_manifest(opts, "spectrum", std::move(files));
    std::cerr << "spectrum: " << points.size() << " modes, " << summary.count_negative
              << " negative, min " << format17(summary.min_eigenvalue) << "\n";
    return 0;
}

int cmd_examples(const CommonOpts& opts) {
    fs::create_directories(opts.out_dir);
    write_file(fs::path(opts.out_dir) / "table.csv", surgery_table_to_csv());
    emit_manifest(opts, "examples", {"table.csv"});
    return 0;
}

int cmd_selftest(const CommonOpts& opts) {
    const std::vector<SuiteResult> results = run_selftest(opts.seed);
    fs::create_directories(opts.out_dir);
    write_file(fs::path(opts.out_dir) / "selftest.json", selftest_to_json(opts.seed, results));
    emit_manifest(opts, "selftest", {"selftest.json"});

    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " (worst "
                  << format17(r.worst) << ", tol " << format17(r.tolerance) << ")\n";
        if (!r.passed) {
            std::cout << "       " << r.detail << "\n";
            all = false;
        }
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conformal deformation toolkit for 4-manifolds"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opts.config_path, "configuration file");
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_option("--seed", opts.seed, "seed for randomized suites");
        sub->add_option("--grid", opts.grid, "override grid size N");
        sub->add_option("--delta", opts.delta, "override path start delta (< 0)");
        sub->add_option("--t-target", opts.t_target, "override path target t")
            ->each([&](const std::string&) { opts.t_target_set = true; });
    };

    CLI::App* solve = app.add_subcommand("solve", "run the continuity-method solve");
    CLI::App* invariants = app.add_subcommand("invariants", "emit the invariant ledger table");
    CLI::App* spectrum = app.add_subcommand("spectrum", "emit a Paneitz spectrum");
    CLI::App* examples = app.add_subcommand("examples", "emit the surgery examples table");
    CLI::App* selftest = app.add_subcommand("selftest", "run the randomized invariant suites");
    for (CLI::App* sub : {solve, invariants, spectrum, examples, selftest}) add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(opts);
        if (invariants->parsed()) return cmd_invariants(opts);
        if (spectrum->parsed()) return cmd_spectrum(opts);
        if (examples->parsed()) return cmd_examples(opts);
        if (selftest->parsed()) return cmd_selftest(opts);
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
