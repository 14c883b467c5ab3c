#include "conf4/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "conf4/errors.hpp"
#include "conf4/format.hpp"
#include "conf4/kernels.hpp"
#include "conf4/ledger.hpp"
#include "conf4/paneitz.hpp"
#include "conf4/random.hpp"
#include "conf4/solver.hpp"

namespace conf4 {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

double rel_dev(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

ReducedField band_limited(Rng& rng, int n, double period, int max_mode, double amplitude) {
    std::vector<double> s(static_cast<size_t>(n), 0.0);
    for (int k = 1; k <= max_mode; ++k) {
        const double a = amplitude * rng.gaussian() / k;
        const double b = amplitude * rng.gaussian() / k;
        for (int j = 0; j < n; ++j) {
            const double x = kTwoPi * k * j / n;
            s[static_cast<size_t>(j)] += a * std::cos(x) + b * std::sin(x);
        }
    }
    return ReducedField(std::move(s), period);
}

double l2_norm2(const S1xS3& bg, const ReducedField& phi) {
    const double h = phi.period() / phi.grid_n();
    const double r = bg.sphere_radius;
    double s = 0.0;
    for (int k = 0; k < phi.grid_n(); ++k) s += phi[k] * phi[k];
    return s * h * 2.0 * kPi * kPi * r * r * r;
}

double inner(const S1xS3& bg, const std::vector<double>& a, const ReducedField& b) {
    const double h = b.period() / b.grid_n();
    const double r = bg.sphere_radius;
    double s = 0.0;
    for (int k = 0; k < b.grid_n(); ++k) s += a[static_cast<size_t>(k)] * b[k];
    return s * h * 2.0 * kPi * kPi * r * r * r;
}

using SuiteFn = std::function<SuiteResult(Rng&)>;

SuiteResult suite_cone_convexity(Rng& rng) {
    const int trials = 1000;
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < trials; ++i) {
        const SymEndo4 a = rng.gamma2_plus();
        const SymEndo4 b = rng.gamma2_plus();
        const double s = rng.uniform();
        const ConeVerdict v = cone_check(a * (1.0 - s) + b * s);
        worst = std::min(worst, v.margin);
    }
    return {"cone_convexity", worst > 0.0, trials, worst, 0.0,
            "min cone margin of random convex combinations"};
}

SuiteResult suite_newton_l_positivity(Rng& rng) {
    const int trials = 1000;
    const double ts[] = {-2.0, -1.0, 0.0, 0.5, 1.0};
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < trials; ++i) {
        const SymEndo4 a = rng.gamma2_plus();
        worst = std::min(worst, min_eigenvalue(newton_transform(a)));
        for (double t : ts) worst = std::min(worst, min_eigenvalue(l_operator(a, t)));
    }
    return {"newton_l_positivity", worst > 0.0, trials, worst, 0.0,
            "min eigenvalue of T1 and L^t (t in {-2,-1,0,1/2,1}) on Gamma_2^+"};
}

SuiteResult suite_garding_concavity(Rng& rng) {
    const int trials = 1000;
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < trials; ++i)
        worst = std::min(worst, concavity_gap(rng.gamma2_plus(), rng.gamma2_plus(), rng.uniform()));
    return {"garding_concavity", worst >= -1e-10, trials, worst, -1e-10,
            "min concavity gap over random Gamma_2^+ pairs"};
}

SuiteResult suite_hat_identities(Rng& rng) {
    const int trials = 1000;
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        const SymEndo4 a = (i % 2 == 0) ? rng.gamma2_plus() : rng.symmetric(1.5);
        const SymEndo4 ah = hat_reflection(a);
        worst = std::max(worst, rel_dev(sigma1(ah), sigma1(a)));
        worst = std::max(worst, rel_dev(sigma2(ah), sigma2(a)));
        const SymEndo4 back = hat_reflection(ah) - a;
        worst = std::max(worst, std::sqrt(back.trace_sq()));
    }
    return {"hat_identities", worst <= 1e-12, trials, worst, 1e-12,
            "sigma1/sigma2 preservation and involution of the hat reflection"};
}

SuiteResult suite_pinching_tensors(Rng& rng) {
    const int trials = 1000;
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < trials; ++i) {
        const SymEndo4 a = rng.gamma2_plus();
        const double s1 = sigma1(a);
        worst = std::min(worst, min_eigenvalue(-a + SymEndo4::identity() * s1));
        worst = std::min(worst, min_eigenvalue(a + SymEndo4::identity() * (0.5 * s1)));
    }
    return {"pinching_tensors", worst > 0.0, trials, worst, 0.0,
            "positivity of -A + sigma1 I and A + sigma1/2 I on Gamma_2^+"};
}

SuiteResult suite_frame_invariance(Rng& rng) {
    const int trials = 1000;
    double worst = 0.0;
    bool verdicts_ok = true;
    for (int i = 0; i < trials; ++i) {
        const SymEndo4 a = (i % 2 == 0) ? rng.gamma2_plus() : rng.symmetric(1.3);
        const SymEndo4 b = a.conjugated(rng.orthogonal4());
        worst = std::max(worst, rel_dev(sigma1(a), sigma1(b)));
        worst = std::max(worst, rel_dev(sigma2(a), sigma2(b)));
        if (cone_check(a).in_gamma2_plus != cone_check(b).in_gamma2_plus) verdicts_ok = false;
    }
    return {"frame_invariance", worst <= 1e-10 && verdicts_ok, trials, worst, 1e-10,
            "sigma1/sigma2/cone verdict under random orthogonal conjugation"};
}

SuiteResult suite_shift_identity(Rng& rng) {
    const int trials = 1000;
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        const SymEndo4 a = rng.symmetric(1.2);
        const double t = rng.uniform(-2.0, 1.5);
        worst = std::max(worst, rel_dev(sigma2(t_shift(a, t)), sigma2_shift_identity(a, t)));
    }
    return {"shift_identity", worst <= 1e-10, trials, worst, 1e-10,
            "sigma2(A^t) = sigma2(A^1) + 3/2 (1-t)(2-t) sigma1(A^1)^2"};
}

const std::vector<Background>& frame_backgrounds() {
    static const std::vector<Background> bgs = {
        RoundS4{1.0},
        RoundS4{1.7},
        S1xS3{kTwoPi, 1.0},
        S1xS3{3.0, 2.0},
        ProductSurfaces{1.0, 1.0, 4.0 * kPi, 4.0 * kPi},
        ProductSurfaces{-1.0, -1.0, 4.0 * kPi, 4.0 * kPi},
        ProductSurfaces{1.0, -1.0, 4.0 * kPi, 4.0 * kPi},
    };
    return bgs;
}

SuiteResult suite_cgb_backgrounds(Rng&) {
    double worst = 0.0;
    for (const auto& bg : frame_backgrounds())
        worst = std::max(worst, cgb_residual(curvature_of(bg)));
    return {"cgb_backgrounds", worst < 1e-9, static_cast<int>(frame_backgrounds().size()), worst,
            1e-9, "Chern-Gauss-Bonnet residual from closed-form curvature"};
}

SuiteResult suite_intq_half_f2(Rng&) {
    double worst = 0.0;
    for (const auto& bg : frame_backgrounds()) {
        const CurvaturePackage pkg = curvature_of(bg);
        const double q_total = homogeneous_q(pkg) * pkg.volume;
        worst = std::max(worst, rel_dev(q_total, 0.5 * f2_invariant(pkg).value()));
    }
    return {"intq_half_f2", worst < 1e-9, static_cast<int>(frame_backgrounds().size()), worst, 1e-9,
            "int Q = F_2 / 2 on all frame-level backgrounds"};
}

SuiteResult suite_constant_rescale(Rng& rng) {
    double worst = 0.0;
    int trials = 0;
    for (const auto& bg : frame_backgrounds()) {
        const CurvaturePackage pkg = curvature_of(bg);
        const double base = sigma2(pkg.schouten1) * pkg.volume;
        for (int i = 0; i < 10; ++i) {
            const double c = rng.uniform(-1.0, 1.0);
            const double scaled = (std::exp(4.0 * c) * sigma2(pkg.schouten1)) *
                                  (std::exp(-4.0 * c) * pkg.volume);
            worst = std::max(worst, rel_dev(base, scaled));
            ++trials;
        }
    }
    return {"constant_rescale_invariance", worst < 1e-9, trials, worst, 1e-9,
            "int sigma2(A^1) dvol under constant conformal shifts"};
}

SuiteResult suite_deriv_trig(Rng&) {
    double worst = 0.0;
    double const_worst = 0.0;
    // Spectral: exact below Nyquist.
    {
        const int n = 64;
        const double period = kTwoPi;
        PeriodicDerivatives d(n, period, DerivScheme::Spectral);
        for (int k = 1; k <= 20; ++k) {
            std::vector<double> u(n), d1e(n), d2e(n);
            for (int j = 0; j < n; ++j) {
                const double x = kTwoPi * k * j / n;
                u[static_cast<size_t>(j)] = std::cos(x) + 0.5 * std::sin(x);
                d1e[static_cast<size_t>(j)] = k * (-std::sin(x) + 0.5 * std::cos(x));
                d2e[static_cast<size_t>(j)] = -k * k * (std::cos(x) + 0.5 * std::sin(x));
            }
            const std::vector<double> d1 = d.d1(u);
            const std::vector<double> d2 = d.d2(u);
            for (int j = 0; j < n; ++j) {
                worst = std::max(worst, std::abs(d1[static_cast<size_t>(j)] - d1e[static_cast<size_t>(j)]) / std::max(1.0, static_cast<double>(k)));
                worst = std::max(worst, std::abs(d2[static_cast<size_t>(j)] - d2e[static_cast<size_t>(j)]) / std::max(1.0, static_cast<double>(k * k)));
            }
        }
    }
    // FD4 at high resolution.
    {
        const int n = 4096;
        PeriodicDerivatives d(n, kTwoPi, DerivScheme::FiniteDifference4);
        for (int k = 1; k <= 2; ++k) {
            std::vector<double> u(n);
            for (int j = 0; j < n; ++j) u[static_cast<size_t>(j)] = std::sin(kTwoPi * k * j / n);
            const std::vector<double> d2 = d.d2(u);
            for (int j = 0; j < n; ++j) {
                const double exact = -k * k * u[static_cast<size_t>(j)];
                worst = std::max(worst, std::abs(d2[static_cast<size_t>(j)] - exact) / (k * k));
            }
        }
    }
    // Constants must be annihilated exactly.
    for (DerivScheme scheme : {DerivScheme::Spectral, DerivScheme::FiniteDifference4}) {
        PeriodicDerivatives d(64, 3.7, scheme);
        std::vector<double> c(64, 2.718281828459045);
        for (double v : d.d1(c)) const_worst = std::max(const_worst, std::abs(v));
        for (double v : d.d2(c)) const_worst = std::max(const_worst, std::abs(v));
    }
    const bool passed = worst <= 1e-8 && const_worst < 1e-12;
    return {"deriv_trig_exactness", passed, 22, std::max(worst, const_worst), 1e-8,
            "trig-polynomial derivatives and exact annihilation of constants"};
}

SuiteResult suite_reduced_oracle(Rng&) {
    double worst = 0.0;
    const S1xS3 bg{kTwoPi, 1.0};
    const int n = 128;
    for (double t : {-1.0, 0.0, 1.0, 0.37}) {
        std::vector<double> s(n);
        for (int j = 0; j < n; ++j) {
            const double x = kTwoPi * j / n;
            s[static_cast<size_t>(j)] = 0.05 * std::sin(x) + 0.02 * std::cos(2.0 * x);
        }
        const ReducedField u(s, kTwoPi);
        const ReducedEndoField f = conformal_schouten_reduced(bg, u, t);
        for (int j = 0; j < n; ++j) {
            const double x = kTwoPi * j / n;
            const double up = 0.05 * std::cos(x) - 0.04 * std::sin(2.0 * x);
            const double upp = -0.05 * std::sin(x) - 0.08 * std::cos(2.0 * x);
            const double lt = -0.5 * t + 0.5 * (3.0 - t) * upp + 0.5 * t * up * up;
            const double ls = 0.5 * (2.0 - t) + 0.5 * (1.0 - t) * upp - 0.5 * (2.0 - t) * up * up;
            worst = std::max(worst, std::abs(f.lambda_theta[static_cast<size_t>(j)] - lt));
            worst = std::max(worst, std::abs(f.lambda_sphere[static_cast<size_t>(j)] - ls));
        }
    }
    return {"reduced_oracle", worst <= 1e-8, 4, worst, 1e-8,
            "conformal A^t eigenvalues against symbolic differentiation"};
}

PathState random_cone_state(Rng& rng, int n, double t) {
    const S1xS3 bg{kTwoPi, 1.0};
    const double delta = -1.0;
    SolveConfig cfg;
    cfg.delta = delta;
    cfg.grid_n = n;
    cfg.t_target = std::max(t, -0.5);
    for (;;) {
        const double s2bg = 1.5 * (2.0 - t) * (1.0 - t);
        const double base = 0.25 * std::log(s2bg / 9.0);
        ReducedField u = band_limited(rng, n, kTwoPi, 4, 0.02);
        for (auto& v : u.samples()) v += base;
        const ReducedEndoField endo = conformal_schouten_reduced(bg, u, t);
        if (cone_margin_field(endo) > 0.05) {
            std::vector<double> f2(static_cast<size_t>(n), 9.0);
            PathState st{t, std::move(u), std::move(f2), cone_margin_field(endo),
                         DiagnosticsRecord{}};
            return st;
        }
    }
}

SuiteResult suite_jacobian_consistency(Rng& rng) {
    const int states = 20;
    const int n = 64;
    double worst = 0.0;
    for (int s = 0; s < states; ++s) {
        const double t = rng.uniform(-2.0, 0.8);
        PathState st = random_cone_state(rng, n, t);
        const Eigen::MatrixXd ja = linearization(st, t).matrix();

        Eigen::MatrixXd jfd(n, n);
        const double h = 1e-6;
        ReducedField up = st.u, dn = st.u;
        for (int j = 0; j < n; ++j) {
            up.samples()[static_cast<size_t>(j)] += h;
            dn.samples()[static_cast<size_t>(j)] -= h;
            const S1xS3 bg{kTwoPi, 1.0};
            const ReducedEndoField ep = conformal_schouten_reduced(bg, up, t);
            const ReducedEndoField en = conformal_schouten_reduced(bg, dn, t);
            const std::vector<double> s2p = sigma2_field(ep);
            const std::vector<double> s2n = sigma2_field(en);
            for (int i = 0; i < n; ++i) {
                const double gp = s2p[static_cast<size_t>(i)] -
                                  9.0 * std::exp(4.0 * up[i]);
                const double gn = s2n[static_cast<size_t>(i)] -
                                  9.0 * std::exp(4.0 * dn[i]);
                jfd(i, j) = (gp - gn) / (2.0 * h);
            }
            up.samples()[static_cast<size_t>(j)] = st.u[j];
            dn.samples()[static_cast<size_t>(j)] = st.u[j];
        }
        const double scale = jfd.cwiseAbs().maxCoeff();
        worst = std::max(worst, (ja - jfd).cwiseAbs().maxCoeff() / scale);
    }
    return {"jacobian_consistency", worst < 1e-6, states, worst, 1e-6,
            "analytic linearization vs central finite differences"};
}

SuiteResult suite_hessian_concavity(Rng& rng) {
    const int trials = 200;
    double worst = std::numeric_limits<double>::infinity();
    int done = 0;
    while (done < trials) {
        const double t = rng.uniform(-2.0, 0.9);
        const double up = rng.uniform(-0.7, 0.7);
        const double h1 = rng.uniform(-1.0, 1.0);
        const double h2 = rng.uniform(-1.0, 1.0);
        auto endo = [&](double hess) {
            const double lt = -0.5 * t + 0.5 * (3.0 - t) * hess + 0.5 * t * up * up;
            const double ls = 0.5 * (2.0 - t) + 0.5 * (1.0 - t) * hess - 0.5 * (2.0 - t) * up * up;
            return SymEndo4::diagonal(lt, ls, ls, ls);
        };
        const SymEndo4 a = endo(h1);
        const SymEndo4 b = endo(h2);
        if (!cone_check(a).in_gamma2_plus || !cone_check(b).in_gamma2_plus) continue;
        worst = std::min(worst, concavity_gap(a, b, 0.5));
        ++done;
    }
    return {"hessian_concavity", worst >= -1e-12, trials, worst, -1e-12,
            "sigma_2^{1/2} concave in the Hessian slot at fixed first-order data"};
}

SuiteResult suite_path_monitors(Rng&) {
    const S1xS3 bg{kTwoPi, 1.0};
    SolveConfig cfg;
    cfg.grid_n = 64;
    cfg.monitor_yamabe = 8.0 * std::sqrt(6.0) * kPi;
    const PathResult res = continue_path(bg, cfg);
    bool ok = res.status == PathStatus::Converged && res.monitors.upper_ok &&
              res.monitors.harnack_ok && res.monitors.lower_bound_deficit <= 3.0;
    // Homogeneous data: u_max never exceeds the best constant solution
    // seen so far along the path.
    double ubound = -std::numeric_limits<double>::infinity();
    for (const auto& e : res.trace) {
        const double closed = 0.25 * std::log(1.5 * (2.0 - e.t) * (1.0 - e.t) / 9.0);
        ubound = std::max(ubound, closed);
        if (e.u_max > ubound + 1e-6) ok = false;
    }
    std::ostringstream detail;
    detail << "upper slack " << format17(res.monitors.upper_bound_slack) << ", harnack slack "
           << format17(res.monitors.harnack_slack) << ", lower deficit "
           << format17(res.monitors.lower_bound_deficit);
    return {"path_monitors", ok, static_cast<int>(res.trace.size()),
            res.monitors.lower_bound_deficit, 3.0, detail.str()};
}

SuiteResult suite_gradient_stability(Rng&) {
    const S1xS3 bg{kTwoPi, 1.0};
    std::vector<double> grad_finals;
    double grad_path_max = 0.0;
    bool converged = true;
    for (int n : {64, 128, 256}) {
        SolveConfig cfg;
        cfg.grid_n = n;
        std::vector<double> f(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j)
            f[static_cast<size_t>(j)] = 3.0 * (1.0 + 0.1 * std::cos(kTwoPi * j / n));
        PathResult res =
            continue_path_with(bg, cfg, std::move(f), ReducedField::constant(n, kTwoPi, 0.0));
        if (res.status != PathStatus::Converged) converged = false;
        grad_finals.push_back(res.final_state.diagnostics.grad_max);
        for (const auto& e : res.trace) grad_path_max = std::max(grad_path_max, e.grad_max);
    }
    double spread = 0.0;
    for (double g : grad_finals)
        spread = std::max(spread, std::abs(g - grad_finals.back()) / grad_finals.back());
    const bool ok = converged && spread <= 0.10 && grad_path_max < 0.5;
    std::ostringstream detail;
    detail << "final grad_max at N=64/128/256: " << format17(grad_finals[0]) << ", "
           << format17(grad_finals[1]) << ", " << format17(grad_finals[2]);
    return {"gradient_monitor_stability", ok, 3, spread, 0.10, detail.str()};
}

SuiteResult suite_self_adjointness(Rng& rng) {
    const S1xS3 bg{kTwoPi, 1.0};
    const int n = 128;
    const int trials = 50;
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        const ReducedField phi = band_limited(rng, n, kTwoPi, n / 4, 0.5);
        const ReducedField psi = band_limited(rng, n, kTwoPi, n / 4, 0.5);
        const double a = inner(bg, paneitz_apply_reduced(bg, phi), psi);
        const double b = inner(bg, paneitz_apply_reduced(bg, psi), phi);
        worst = std::max(worst, std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}));
    }
    return {"paneitz_self_adjointness", worst <= 1e-9, trials, worst, 1e-9,
            "<P phi, psi> = <phi, P psi> on random band-limited fields"};
}

SuiteResult suite_bochner_split(Rng& rng) {
    const S1xS3 bg{kTwoPi, 1.0};
    const int n = 128;
    const int trials = 50;
    double worst = 0.0;
    double worst_sign = std::numeric_limits<double>::infinity();
    for (int i = 0; i < trials; ++i) {
        const ReducedField phi = band_limited(rng, n, kTwoPi, n / 4, 0.5);
        const double scale = l2_norm2(bg, phi);
        const QuadraticFormReport rep = quadratic_form(bg, phi);
        worst = std::max(worst, rep.decomposition_residual / scale);
        worst_sign = std::min(worst_sign, (rep.form_value - rep.hessian_term) / scale);
    }
    const bool ok = worst <= 1e-8 && worst_sign >= -1e-8;
    return {"bochner_split", ok, trials, worst, 1e-8,
            "form = hessian + curvature split; form >= hessian since Ric <= R g"};
}

SuiteResult suite_conformal_form_invariance(Rng& rng) {
    const int n = 128;
    double worst = 0.0;
    for (double c : {-0.8, 0.3, 1.1}) {
        const ReducedField phi = band_limited(rng, n, kTwoPi, n / 4, 0.6);
        const S1xS3 unit{kTwoPi, 1.0};
        const double scale = std::exp(-c);
        const S1xS3 shrunk{kTwoPi * scale, scale};
        const ReducedField phi2(phi.samples(), kTwoPi * scale);
        const double a = quadratic_form(unit, phi).form_value;
        const double b = quadratic_form(shrunk, phi2).form_value;
        worst = std::max(worst, rel_dev(a, b));
    }
    return {"conformal_form_invariance", worst <= 1e-12, 3, worst, 1e-12,
            "<P phi, phi> equal on constant conformal rescalings"};
}

SuiteResult suite_spectrum_vs_certificate(Rng&) {
    bool ok = true;
    std::ostringstream detail;

    ProductSpectrumInput s2s2{1.0, 1.0, {0, 2, 6, 12, 20, 30, 42}, {0, 2, 6, 12, 20, 30, 42}};
    const std::vector<double> spec1 = product_paneitz_spectrum(s2s2);
    int zeros = 0;
    for (double v : spec1) {
        if (v < 0.0) ok = false;
        if (v == 0.0) ++zeros;
    }
    if (zeros != 1) ok = false;
    const PositivityCertificate cert1 =
        positivity_certificate(ProductSurfaces{1.0, 1.0, 4.0 * kPi, 4.0 * kPi}, &s2s2);
    if (!cert1.positive_semidefinite || !cert1.kernel_is_constants) ok = false;
    if (std::abs(s2s2.b1() - 2.0 / 3.0) > 1e-15) ok = false;

    ProductSpectrumInput hyp{-1.0, -1.0, {0, 0.1, 1.0, 2.0}, {0, 0.1, 1.0, 2.0}};
    const std::vector<double> spec2 = product_paneitz_spectrum(hyp);
    if (!(spec2.front() < 0.0)) ok = false;
    const PositivityCertificate cert2 =
        positivity_certificate(ProductSurfaces{-1.0, -1.0, 4.0 * kPi, 4.0 * kPi}, &hyp);
    if (cert2.positive_semidefinite || !cert2.witness.has_value()) ok = false;
    if (cert2.witness && cert2.witness->form_value != spec2.front()) ok = false;
    if (std::abs(hyp.b1() + 2.0 / 3.0) > 1e-15) ok = false;

    detail << "S2xS2 min " << format17(spec1.front()) << "; hyperbolic min "
           << format17(spec2.front());
    return {"spectrum_vs_certificate", ok, 2, spec2.front(), 0.0, detail.str()};
}

SuiteResult suite_reduced_symbol(Rng&) {
    const S1xS3 bg{kTwoPi, 1.0};
    const int n = 64;
    double worst = 0.0;
    for (int k : {1, 2, 3, 5, 10}) {
        std::vector<double> s(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) s[static_cast<size_t>(j)] = std::cos(kTwoPi * k * j / n);
        const ReducedField phi(s, kTwoPi);
        const double symbol = static_cast<double>(k) * k * k * k + 4.0 * k * k;
        const double expected = symbol * l2_norm2(bg, phi);
        worst = std::max(worst, rel_dev(quadratic_form(bg, phi).form_value, expected));
    }
    return {"reduced_symbol_consistency", worst <= 1e-9, 5, worst, 1e-9,
            "quadratic form on pure modes matches k^4 + 4k^2"};
}

SuiteResult suite_ledger_consistency(Rng&) {
    double worst = 0.0;
    bool ok = true;
    for (const auto& rec : builtin_records()) {
        worst = std::max(worst, cgb_residual(rec));
        if (rec.yamabe > 0.0) {
            const bool paneitz = check_assumption_paneitz(rec);
            const bool main0 = check_assumption_main(rec, 0.0).second;
            if (paneitz != main0) ok = false;
        }
    }
    const double f2_s4 = f2_invariant(curvature_of(RoundS4{1.0})).value();
    if (rel_dev(f2_s4, 2.0 * builtin_record("S4").q_total) > 1e-10) ok = false;
    const double f2_prod = f2_invariant(curvature_of(ProductSurfaces{1, 1, 4 * kPi, 4 * kPi})).value();
    if (rel_dev(f2_prod, 2.0 * builtin_record("S2xS2").q_total) > 1e-10) ok = false;
    return {"ledger_consistency", ok && worst < 1e-9, static_cast<int>(builtin_records().size()),
            worst, 1e-9, "built-in records: CGB identity and cross-normalization"};
}

SuiteResult suite_qchange_convergence(Rng&) {
    const S1xS3 bg{kTwoPi, 1.0};
    auto residual_at = [&](int n, DerivScheme scheme) {
        std::vector<double> s(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) s[static_cast<size_t>(j)] = 0.1 * std::sin(kTwoPi * j / n);
        return q_transform_residual(bg, ReducedField(s, kTwoPi), scheme);
    };
    const double r64 = residual_at(64, DerivScheme::FiniteDifference4);
    const double r128 = residual_at(128, DerivScheme::FiniteDifference4);
    const double r256 = residual_at(256, DerivScheme::FiniteDifference4);
    const double spectral = residual_at(64, DerivScheme::Spectral);
    const bool ok = r64 / r128 >= 8.0 && r128 / r256 >= 8.0 && r256 < 1e-6 && spectral < 1e-8;
    std::ostringstream detail;
    detail << "fd4 residuals " << format17(r64) << " / " << format17(r128) << " / "
           << format17(r256) << "; spectral " << format17(spectral);
    return {"qchange_convergence", ok, 4, r256, 1e-6, detail.str()};
}

SuiteResult suite_kernels_match(Rng& rng) {
    const size_t n = 4096;
    double worst = 0.0;

    std::vector<double> d2u(n), d1u(n);
    for (size_t i = 0; i < n; ++i) {
        d2u[i] = rng.gaussian();
        d1u[i] = rng.gaussian();
    }
    std::vector<double> lt_r(n), ls_r(n), lt_o(n), ls_o(n);
    kernels::reference::schouten_eigenvalues(0.3, d2u, d1u, lt_r, ls_r);
    kernels::omp::schouten_eigenvalues(0.3, d2u, d1u, lt_o, ls_o);
    for (size_t i = 0; i < n; ++i)
        worst = std::max({worst, std::abs(lt_r[i] - lt_o[i]), std::abs(ls_r[i] - ls_o[i])});

    std::vector<double> s1r(n), s2r(n), s1o(n), s2o(n);
    kernels::reference::sigma12_from_eigenvalues(lt_r, ls_r, s1r, s2r);
    kernels::omp::sigma12_from_eigenvalues(lt_r, ls_r, s1o, s2o);
    for (size_t i = 0; i < n; ++i)
        worst = std::max({worst, std::abs(s1r[i] - s1o[i]), std::abs(s2r[i] - s2o[i])});

    std::vector<SymEndo4> mats;
    Rng local(rng.raw());
    for (int i = 0; i < 500; ++i) mats.push_back(local.symmetric(1.0));
    std::vector<double> bs1r(mats.size()), bs2r(mats.size()), bs1o(mats.size()), bs2o(mats.size());
    kernels::reference::sigma12_batch(mats, bs1r, bs2r);
    kernels::omp::sigma12_batch(mats, bs1o, bs2o);
    for (size_t i = 0; i < mats.size(); ++i)
        worst = std::max({worst, std::abs(bs1r[i] - bs1o[i]), std::abs(bs2r[i] - bs2o[i])});

    std::vector<double> e1{0.0, 0.3, 1.1, 2.2}, e2{0.0, 0.5, 0.9};
    std::vector<double> outr(e1.size() * e2.size()), outo(e1.size() * e2.size());
    kernels::reference::product_spectrum_map(0.4, -0.7, e1, e2, outr);
    kernels::omp::product_spectrum_map(0.4, -0.7, e1, e2, outo);
    for (size_t i = 0; i < outr.size(); ++i) worst = std::max(worst, std::abs(outr[i] - outo[i]));

    return {"kernels_match", worst == 0.0, static_cast<int>(n), worst, 0.0,
            "OpenMP kernels agree bitwise with the serial reference"};
}

}  // namespace

std::vector<SuiteResult> run_selftest(uint64_t seed) {
    const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"cone_convexity", suite_cone_convexity},
        {"newton_l_positivity", suite_newton_l_positivity},
        {"garding_concavity", suite_garding_concavity},
        {"hat_identities", suite_hat_identities},
        {"pinching_tensors", suite_pinching_tensors},
        {"frame_invariance", suite_frame_invariance},
        {"shift_identity", suite_shift_identity},
        {"cgb_backgrounds", suite_cgb_backgrounds},
        {"intq_half_f2", suite_intq_half_f2},
        {"constant_rescale_invariance", suite_constant_rescale},
        {"deriv_trig_exactness", suite_deriv_trig},
        {"reduced_oracle", suite_reduced_oracle},
        {"jacobian_consistency", suite_jacobian_consistency},
        {"hessian_concavity", suite_hessian_concavity},
        {"path_monitors", suite_path_monitors},
        {"gradient_monitor_stability", suite_gradient_stability},
        {"paneitz_self_adjointness", suite_self_adjointness},
        {"bochner_split", suite_bochner_split},
        {"conformal_form_invariance", suite_conformal_form_invariance},
        {"spectrum_vs_certificate", suite_spectrum_vs_certificate},
        {"reduced_symbol_consistency", suite_reduced_symbol},
        {"ledger_consistency", suite_ledger_consistency},
        {"qchange_convergence", suite_qchange_convergence},
        {"kernels_match", suite_kernels_match},
    };

    std::vector<SuiteResult> results;
    uint64_t idx = 0;
    for (const auto& [name, fn] : suites) {
        Rng rng(seed * 1000003ULL + idx * 97ULL + 1ULL);
        try {
            results.push_back(fn(rng));
        } catch (const std::exception& e) {
            results.push_back(SuiteResult{name, false, 0, 0.0, 0.0,
                                          std::string("exception: ") + e.what()});
        }
        ++idx;
    }
    return results;
}

std::string selftest_to_json(uint64_t seed, const std::vector<SuiteResult>& results) {
    std::ostringstream os;
    bool all = true;
    for (const auto& r : results) all = all && r.passed;
    os << "{\n  \"seed\": " << seed << ",\n  \"all_passed\": " << (all ? "true" : "false")
       << ",\n  \"suites\": [\n";
    for (size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        os << "    {\"name\": " << json_escape(r.name)
           << ", \"passed\": " << (r.passed ? "true" : "false") << ", \"trials\": " << r.trials
           << ", \"worst\": " << format17(r.worst) << ", \"tolerance\": " << format17(r.tolerance)
           << ", \"detail\": " << json_escape(r.detail) << "}" << (i + 1 < results.size() ? ",\n" : "\n");
    }
    os << "  ]\n}\n";
    return os.str();
}

}  // namespace conf4
