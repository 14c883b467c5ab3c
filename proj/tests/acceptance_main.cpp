// Acceptance suite: twelve numbered criteria, each printed as one
// [PASS]/[FAIL] line. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "conf4/errors.hpp"
#include "conf4/format.hpp"
#include "conf4/ledger.hpp"
#include "conf4/paneitz.hpp"
#include "conf4/random.hpp"
#include "conf4/solver.hpp"
#include "oracles.hpp"

using namespace conf4;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;
const double kPi2 = kPi * kPi;
const S1xS3 kBg{kTwoPi, 1.0};

struct Checker {
    bool ok = true;
    std::ostringstream note;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!note.str().empty()) note << "; ";
            note << what;
        }
    }
    void stat(const std::string& label, double value) {
        if (!note.str().empty()) note << "; ";
        note << label << " = " << format17(value);
    }
};

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}); }

// 1. Chern-Gauss-Bonnet identity from closed-form curvature.
void criterion_cgb(Checker& c) {
    const Background bgs[] = {Background{RoundS4{1.0}}, Background{S1xS3{kTwoPi, 1.0}},
                              Background{ProductSurfaces{1, 1, 4 * kPi, 4 * kPi}},
                              Background{ProductSurfaces{-1, -1, 4 * kPi, 4 * kPi}}};
    double worst = 0.0;
    for (const auto& bg : bgs) {
        const CurvaturePackage pkg = curvature_of(bg);
        const double res =
            std::abs(8.0 * kPi2 * pkg.euler - (pkg.weyl_l2 + f2_invariant(pkg).value())) /
            (8.0 * kPi2);
        worst = std::max(worst, res);
    }
    c.stat("worst residual", worst);
    c.require(worst < 1e-9, "CGB residual exceeds 1e-9");
}

// 2. Round-S4 invariants.
void criterion_s4_invariants(Checker& c) {
    const CurvaturePackage pkg = curvature_of(RoundS4{1.0});
    const double f2 = f2_invariant(pkg).value();
    const double q_total = homogeneous_q(pkg) * pkg.volume;
    c.stat("F2", f2);
    c.stat("int Q", q_total);
    c.require(rel(f2, 16.0 * kPi2) < 1e-10, "F2 != 16 pi^2");
    c.require(rel(q_total, 8.0 * kPi2) < 1e-10, "int Q != 8 pi^2");
    c.require(rel(q_total, 0.5 * f2) < 1e-10, "int Q != F2/2");
}

// 3. Shift identity on 1000 random endomorphisms and the closed forms.
void criterion_shift_identity(Checker& c) {
    Rng rng(2026);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const SymEndo4 a = rng.symmetric(1.5);
        const double t = rng.uniform(-2.0, 1.5);
        worst = std::max(worst, rel(sigma2(t_shift(a, t)), sigma2_shift_identity(a, t)));
    }
    const SymEndo4 s4 = SymEndo4::identity() * 0.5;
    const SymEndo4 prod = SymEndo4::diagonal(-0.5, 0.5, 0.5, 0.5);
    for (double t : {-1.0, 0.0, 0.5, 1.0}) {
        worst = std::max(worst, rel(sigma2(t_shift(s4, t)), 1.5 * (2 * t - 3) * (2 * t - 3)));
        worst = std::max(worst, std::abs(sigma2(t_shift(prod, t)) - 1.5 * (2 - t) * (1 - t)));
    }
    c.stat("worst relative error", worst);
    c.require(worst < 1e-10, "shift identity worse than 1e-10");
}

// 4. Continuity solve on S^1 x S^3 (delta = -1, t0 = 0, N = 128).
void criterion_solve(Checker& c) {
    SolveConfig cfg;
    cfg.grid_n = 128;
    cfg.newton_tol = 1e-11;
    const auto start = std::chrono::steady_clock::now();
    const PathResult res = continue_path(kBg, cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.stat("runtime_s", seconds);
    c.require(res.status == PathStatus::Converged, "path did not converge");
    if (res.status != PathStatus::Converged) return;

    c.stat("residual_sup", res.final_state.diagnostics.residual_sup);
    c.require(res.final_state.diagnostics.residual_sup < 1e-10, "residual sup >= 1e-10");

    const double target = 0.25 * std::log(1.0 / 3.0);
    double err = 0.0;
    for (double v : res.final_state.u.samples()) err = std::max(err, std::abs(v - target));
    c.stat("|u - ln(1/3)/4|_inf", err);
    c.require(err < 1e-8, "final u misses the closed form by >= 1e-8");

    const RicciVerdict v = ricci_verdict(res.final_state, 0.0);
    c.stat("lower_margin", v.lower_margin);
    c.stat("upper_margin", v.upper_margin);
    c.require(v.lower_ok && v.lower_margin > 0.0, "lower Ricci inequality not strict");
    c.require(v.upper_ok && v.upper_margin > 0.0, "upper Ricci inequality not strict");
    c.require(seconds < 5.0, "runtime >= 5 s");
}

// 5. Newton re-converges from a perturbed start, staying in the cone.
void criterion_perturbation(Checker& c) {
    SolveConfig cfg;
    cfg.grid_n = 128;
    cfg.newton_tol = 1e-11;
    const double target = 0.25 * std::log(1.0 / 3.0);
    std::vector<double> s(static_cast<size_t>(cfg.grid_n));
    for (int j = 0; j < cfg.grid_n; ++j)
        s[static_cast<size_t>(j)] = target + 0.05 * std::sin(kTwoPi * j / cfg.grid_n);

    PathState st = initial_state(kBg, cfg);
    st.t = 0.0;
    st.u = ReducedField(s, kTwoPi);
    NewtonLog log;
    const PathState out = newton_solve(st, 0.0, cfg, &log);

    double err = 0.0;
    for (double v : out.u.samples()) err = std::max(err, std::abs(v - target));
    c.stat("|u - const|_inf", err);
    c.stat("min cone margin over iterates", log.min_cone_margin);
    c.require(err < 1e-8, "did not re-converge to the constant within 1e-8");
    c.require(log.min_cone_margin > 0.0, "an iterate left Gamma_2^+");
}

// 6. Linearization fidelity.
void criterion_linearization(Checker& c) {
    Rng rng(515);
    const int n = 64;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const double t = rng.uniform(-2.0, 0.8);
        // In-cone state around the constant solution with a small ripple.
        const double base = 0.25 * std::log(1.5 * (2.0 - t) * (1.0 - t) / 9.0);
        ReducedField u = ReducedField::constant(n, kTwoPi, base);
        for (int k = 1; k <= 4; ++k) {
            const double a = 0.01 * rng.gaussian(), b = 0.01 * rng.gaussian();
            for (int j = 0; j < n; ++j) {
                const double x = kTwoPi * k * j / n;
                u.samples()[static_cast<size_t>(j)] += a * std::cos(x) + b * std::sin(x);
            }
        }
        PathState st{t, u, std::vector<double>(static_cast<size_t>(n), 9.0), 1.0, {}};
        const ReducedEndoField endo = conformal_schouten_reduced(kBg, u, t);
        if (cone_margin_field(endo) <= 0.01) {
            --trial;
            continue;
        }
        const Eigen::MatrixXd ja = linearization(st, t).matrix();
        Eigen::MatrixXd jfd(n, n);
        const double h = 1e-6;
        for (int j = 0; j < n; ++j) {
            ReducedField up = u, dn = u;
            up.samples()[static_cast<size_t>(j)] += h;
            dn.samples()[static_cast<size_t>(j)] -= h;
            const std::vector<double> s2p = sigma2_field(conformal_schouten_reduced(kBg, up, t));
            const std::vector<double> s2n = sigma2_field(conformal_schouten_reduced(kBg, dn, t));
            for (int i = 0; i < n; ++i) {
                const double gp = s2p[static_cast<size_t>(i)] - 9.0 * std::exp(4.0 * up[i]);
                const double gn = s2n[static_cast<size_t>(i)] - 9.0 * std::exp(4.0 * dn[i]);
                jfd(i, j) = (gp - gn) / (2.0 * h);
            }
        }
        worst = std::max(worst, (ja - jfd).cwiseAbs().maxCoeff() / jfd.cwiseAbs().maxCoeff());
    }
    c.stat("worst relative max-norm error", worst);
    c.require(worst < 1e-6, "Jacobian mismatch >= 1e-6");

    // Zeroth-order coefficient is exactly -4 f^2 e^{4u} on homogeneous data.
    SolveConfig cfg;
    cfg.grid_n = 64;
    const PathState st = initial_state(kBg, cfg);
    const ReducedLinearOperator lin = linearization(st, cfg.delta);
    const std::vector<double> out = lin.apply(std::vector<double>(64, 1.0));
    bool exact = true;
    for (double v : out) exact = exact && (v == -36.0);
    c.require(exact, "constant-state zeroth-order term is not exactly -4 f^2 e^{4u}");
}

// 7. Cone/Newton/Garding property suite, 1000 trials each.
void criterion_cone_properties(Checker& c) {
    Rng rng(714);
    int failures = 0;
    for (int i = 0; i < 1000; ++i) {
        const SymEndo4 a = rng.gamma2_plus();
        const SymEndo4 b = rng.gamma2_plus();
        const double s = rng.uniform();
        if (!cone_check(a * (1.0 - s) + b * s).in_gamma2_plus) ++failures;
        if (!(min_eigenvalue(newton_transform(a)) > 0.0)) ++failures;
        for (double t : {-2.0, -1.0, 0.0, 0.5, 1.0})
            if (!(min_eigenvalue(l_operator(a, t)) > 0.0)) ++failures;
        if (!(concavity_gap(a, b, s) >= -1e-10)) ++failures;

        const SymEndo4 any = rng.symmetric(1.3);
        const SymEndo4 hat = hat_reflection(any);
        if (rel(sigma1(hat), sigma1(any)) > 1e-12) ++failures;
        if (rel(sigma2(hat), sigma2(any)) > 1e-12) ++failures;

        const double s1 = sigma1(a);
        if (!(min_eigenvalue(-a + SymEndo4::identity() * s1) > 0.0)) ++failures;
        if (!(min_eigenvalue(a + SymEndo4::identity() * (0.5 * s1)) > 0.0)) ++failures;
    }
    c.stat("failures", failures);
    c.require(failures == 0, "property suite recorded failures");
}

// 8. Paneitz product spectrum: the negative-eigenvalue example and S2xS2.
void criterion_product_spectrum(Checker& c) {
    ProductSpectrumInput hyp{-1.0, -1.0, {0.0, 0.1}, {0.0}};
    const std::vector<double> spec = product_paneitz_spectrum(hyp);
    c.stat("min eigenvalue", spec.front());
    c.require(std::abs(spec.front() - (-17.0 / 300.0)) < 1e-12,
              "hyperbolic minimum is not -17/300");
    // Map check at sample points: value == (l+m)^2 - 2/3 (l+m).
    Rng rng(88);
    bool map_ok = true;
    for (int i = 0; i < 100; ++i) {
        const double l = rng.uniform(0.0, 3.0), m = rng.uniform(0.0, 3.0);
        ProductSpectrumInput one{-1.0, -1.0, {0.0, l}, {0.0, m}};
        const std::vector<double> s = product_paneitz_spectrum(one);
        const double expect = (l + m) * (l + m) - (2.0 / 3.0) * (l + m);
        bool found = false;
        for (double v : s) found = found || std::abs(v - expect) < 1e-12;
        map_ok = map_ok && found;
    }
    c.require(map_ok, "eigenvalue map is not (l+m)^2 - 2/3 (l+m)");

    ProductSpectrumInput s2s2{1.0, 1.0, {0, 2, 6, 12, 20, 30, 42}, {0, 2, 6, 12, 20, 30, 42}};
    const std::vector<double> spec2 = product_paneitz_spectrum(s2s2);
    int zeros = 0;
    bool nonneg = true;
    for (double v : spec2) {
        nonneg = nonneg && v >= 0.0;
        if (v == 0.0) ++zeros;
    }
    c.require(nonneg, "S2xS2 spectrum has a negative value");
    c.require(zeros == 1, "S2xS2 kernel is not exactly the constants");
}

// 9. Bochner decomposition on 50 random band-limited fields.
void criterion_bochner(Checker& c) {
    Rng rng(909);
    const int n = 128;
    double worst_res = 0.0;
    double worst_sign = 1e300;
    for (int i = 0; i < 50; ++i) {
        std::vector<double> s(static_cast<size_t>(n), 0.0);
        for (int k = 1; k <= n / 4; ++k) {
            const double a = rng.gaussian() / k, b = rng.gaussian() / k;
            for (int j = 0; j < n; ++j) {
                const double x = kTwoPi * k * j / n;
                s[static_cast<size_t>(j)] += a * std::cos(x) + b * std::sin(x);
            }
        }
        const ReducedField phi(s, kTwoPi);
        double norm2 = 0.0;
        for (double v : phi.samples()) norm2 += v * v;
        norm2 *= (kTwoPi / n) * 2.0 * kPi2;
        const QuadraticFormReport rep = quadratic_form(kBg, phi);
        worst_res = std::max(worst_res, rep.decomposition_residual / norm2);
        worst_sign = std::min(worst_sign, (rep.form_value - rep.hessian_term) / norm2);
    }
    c.stat("worst residual / |phi|^2", worst_res);
    c.stat("min (form - hessian) / |phi|^2", worst_sign);
    c.require(worst_res < 1e-8, "Bochner split residual >= 1e-8 |phi|^2");
    c.require(worst_sign >= -1e-8, "form < hessian - 1e-8 |phi|^2 despite Ric <= R g");
}

// 10. Q transformation law converges at the scheme's order.
void criterion_q_transform(Checker& c) {
    auto residual_at = [](int n) {
        std::vector<double> s(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) s[static_cast<size_t>(j)] = 0.1 * std::sin(kTwoPi * j / n);
        return q_transform_residual(kBg, ReducedField(s, kTwoPi),
                                    DerivScheme::FiniteDifference4);
    };
    const double r64 = residual_at(64), r128 = residual_at(128), r256 = residual_at(256);
    c.stat("r64", r64);
    c.stat("r128", r128);
    c.stat("r256", r256);
    c.require(r64 / r128 >= 8.0 && r128 / r256 >= 8.0, "decay slower than the scheme's order");
    c.require(r256 < 1e-6, "residual at N = 256 is not below 1e-6");
}

// 11. The surgery tables, exactly as listed.
void criterion_surgery_tables(Checker& c) {
    const TopologyRecord& s2s2 = builtin_record("S2xS2");
    const TopologyRecord& cp2 = builtin_record("CP2");
    bool ok = true;
    for (int k = 1; k <= 8; ++k) ok = ok && (surgery_check(s2s2, k, 0).admissible == (k <= 5));
    for (int k = 1; k <= 8; ++k) ok = ok && (surgery_check(cp2, k, 0).admissible == (k <= 5));
    for (int l = 1; l <= 10; ++l) ok = ok && (surgery_check(cp2, 0, l).admissible == (l <= 8));
    for (int k = 0; k <= 6; ++k)
        for (int l = 0; l <= 12; ++l) {
            if (k == 0 && l == 0) continue;
            ok = ok && (lcf_sum_check(k, l) == (2 * k + l <= 9));
        }
    for (int l = 3; l <= 8; ++l) {
        const TopologyRecord& dp = builtin_record("CP2_" + std::to_string(l) + "CP2bar");
        ok = ok && (surgery_check(dp, 1, 0).admissible == (l >= 3 && l <= 7));
    }
    // Boundary rejections: strict thresholds.
    ok = ok && !surgery_check(cp2, 6, 0).admissible;  // Y^2 = 48 * 6 pi^2 exactly
    TopologyRecord exact{"exact", 0, 0.0, 8.0 * std::sqrt(3.0) * kPi, 0.0, ""};
    ok = ok && !surgery_check(exact, 0, 1).admissible;  // Y = threshold exactly
    c.require(ok, "a family verdict differs from the published list");
}

// 12. The t -> 1 obstruction: cone margin decays like (1 - t).
void criterion_path_obstruction(Checker& c) {
    SolveConfig cfg;
    cfg.grid_n = 64;
    cfg.t_target = 1.0;
    cfg.t_step_min = 1e-3;
    const PathResult res = continue_path(kBg, cfg);
    c.require(res.status == PathStatus::PathFailure, "path unexpectedly reached t = 1");
    c.stat("last accepted t", res.final_state.t);
    c.require(res.final_state.t > 0.99, "march stalled far from t = 1");

    // The margin is min(sigma1, sigma2)(A^t_g); past t = 0 that is
    // sigma2 = 3/2 (2-t)(1-t), the quantity vanishing linearly in 1 - t.
    double worst = 0.0;
    for (const auto& e : res.trace) {
        if (e.t >= 1.0) continue;
        const double predicted = std::min(3.0 - 2.0 * e.t, 1.5 * (2.0 - e.t) * (1.0 - e.t));
        worst = std::max(worst, std::abs(e.cone_margin - predicted) / predicted);
    }
    c.stat("worst |margin/predicted - 1|", worst);
    c.require(worst < 1e-6, "cone margin does not track min(3-2t, 3/2 (2-t)(1-t))");
    c.stat("final margin", res.final_state.cone_margin);
    c.require(res.final_state.cone_margin < 0.02, "margin did not decay toward 0");
}

}  // namespace

int main() {
    struct Item {
        int id;
        const char* label;
        std::function<void(Checker&)> run;
    };
    const std::vector<Item> items = {
        {1, "Chern-Gauss-Bonnet identity (closed-form curvature)", criterion_cgb},
        {2, "round-S4 invariants F2 = 16 pi^2, int Q = 8 pi^2", criterion_s4_invariants},
        {3, "sigma2 shift identity on 1000 random endomorphisms", criterion_shift_identity},
        {4, "continuity solve delta=-1 -> t=0, N=128", criterion_solve},
        {5, "perturbed Newton start re-converges in the cone", criterion_perturbation},
        {6, "linearization vs finite-difference Jacobian", criterion_linearization},
        {7, "cone/Newton/Garding randomized properties", criterion_cone_properties},
        {8, "Paneitz product spectra (negative mode, S2xS2 kernel)", criterion_product_spectrum},
        {9, "Bochner decomposition on S1xS3", criterion_bochner},
        {10, "Q transformation law converges at scheme order", criterion_q_transform},
        {11, "surgery example tables", criterion_surgery_tables},
        {12, "path obstruction at t -> 1", criterion_path_obstruction},
    };

    int failed = 0;
    for (const auto& item : items) {
        Checker c;
        try {
            item.run(c);
        } catch (const std::exception& e) {
            c.ok = false;
            c.note << "exception: " << e.what();
        }
        std::printf("[%s] criterion %2d: %s (%s)\n", c.ok ? "PASS" : "FAIL", item.id, item.label,
                    c.note.str().c_str());
        if (!c.ok) ++failed;
    }
    if (failed == 0)
        std::printf("acceptance: all %zu criteria passed\n", items.size());
    else
        std::printf("acceptance: %d criteria FAILED\n", failed);
    return failed;
}
