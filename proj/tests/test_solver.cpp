#include <doctest.h>

#include <cmath>

#include "conf4/errors.hpp"
#include "conf4/random.hpp"
#include "conf4/solver.hpp"

using namespace conf4;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;
const S1xS3 kBg{kTwoPi, 1.0};

// Constant solution at parameter t for f^2 = f2: u = 1/4 log(sigma2(A^t_g)/f^2).
double constant_solution(double t, double f2) {
    return 0.25 * std::log(1.5 * (2.0 - t) * (1.0 - t) / f2);
}
}

TEST_CASE("choose_f") {
    const std::vector<double> f1 = choose_f(kBg, -1.0, 32);
    CHECK(f1.size() == 32);
    for (double v : f1) CHECK(v == doctest::Approx(3.0).epsilon(1e-15));

    const std::vector<double> f2 = choose_f(kBg, -2.0, 16);
    for (double v : f2) CHECK(v * v == doctest::Approx(18.0).epsilon(1e-14));

    // f^2 -> 3 as delta -> 0^-.
    const std::vector<double> f3 = choose_f(kBg, -1e-9, 16);
    CHECK(f3[0] * f3[0] == doctest::Approx(3.0).epsilon(1e-8));

    CHECK_THROWS_AS(choose_f(kBg, 0.0, 16), config_error);
    CHECK_THROWS_AS(choose_f(kBg, 0.5, 16), config_error);
}

TEST_CASE("initial_state solves the delta equation exactly") {
    SolveConfig cfg;
    cfg.grid_n = 64;
    const PathState st = initial_state(kBg, cfg);
    CHECK(st.t == -1.0);
    CHECK(st.diagnostics.residual_sup == 0.0);
    // margin = min(sigma1, sigma2)(A^{-1}_g) = min(5, 9).
    CHECK(st.cone_margin == doctest::Approx(5.0));
    for (double v : st.f_squared) CHECK(v == doctest::Approx(9.0));
}

TEST_CASE("residual closed forms") {
    SolveConfig cfg;
    cfg.grid_n = 64;
    PathState st = initial_state(kBg, cfg);

    // u == 0 at t = delta: zero everywhere.
    for (double v : residual(st, -1.0)) CHECK(v == 0.0);

    // u == 0 at t = 0: sqrt(3) - 3 everywhere.
    for (double v : residual(st, 0.0))
        CHECK(v == doctest::Approx(std::sqrt(3.0) - 3.0).epsilon(1e-15));

    // u == 1/4 ln(1/3) at t = 0: zero again.
    st.u = ReducedField::constant(64, kTwoPi, 0.25 * std::log(1.0 / 3.0));
    for (double v : residual(st, 0.0)) CHECK(std::abs(v) < 1e-14);

    // t = 1 puts the background on the cone boundary: sigma2 = 0.
    st.u = ReducedField::constant(64, kTwoPi, 0.0);
    CHECK_THROWS_AS(residual(st, 1.0), cone_violation);
    try {
        residual(st, 1.0);
    } catch (const cone_violation& e) {
        CHECK(e.grid_index == 0);  // homogeneous: first offender is index 0
    }
}

TEST_CASE("linearization zeroth-order term is exact on homogeneous states") {
    SolveConfig cfg;
    cfg.grid_n = 64;
    PathState st = initial_state(kBg, cfg);
    const ReducedLinearOperator lin = linearization(st, -1.0);

    const std::vector<double> ones(64, 1.0);
    const std::vector<double> out = lin.apply(ones);
    const double expected = -4.0 * 9.0 * 1.0;  // -4 f^2 e^{4u}, u = 0
    for (double v : out) CHECK(v == expected);  // difference-form stencils: exact

    for (double v : lin.zeroth_order_coeff()) CHECK(v == expected);
    CHECK(expected < 0.0);
}

TEST_CASE("linearization parity on even data") {
    SolveConfig cfg;
    cfg.grid_n = 64;
    const int n = cfg.grid_n;
    // Even u(theta) = u(-theta): the operator commutes with the mirror map.
    std::vector<double> s(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) s[static_cast<size_t>(j)] = 0.02 * std::cos(kTwoPi * j / n);
    PathState st = initial_state(kBg, cfg);
    st.u = ReducedField(s, kTwoPi);
    const ReducedLinearOperator lin = linearization(st, -1.0);

    std::vector<double> phi(static_cast<size_t>(n));
    Rng rng(41);
    for (auto& v : phi) v = rng.gaussian();
    std::vector<double> phi_m(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) phi_m[static_cast<size_t>(j)] = phi[static_cast<size_t>((n - j) % n)];

    const std::vector<double> a = lin.apply(phi);
    const std::vector<double> b = lin.apply(phi_m);
    for (int j = 0; j < n; ++j)
        CHECK(a[static_cast<size_t>((n - j) % n)] == doctest::Approx(b[static_cast<size_t>(j)]).epsilon(1e-10));
}

TEST_CASE("linearization invertible at cone solutions") {
    SolveConfig cfg;
    cfg.grid_n = 64;
    PathState st = initial_state(kBg, cfg);
    for (double t : {-1.0, -0.5, 0.0}) {
        NewtonLog log;
        st = newton_solve(st, t, cfg, &log);
        const Eigen::MatrixXd m = linearization(st, t).matrix();
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        const double smin = svd.singularValues().minCoeff();
        const double smax = svd.singularValues().maxCoeff();
        CHECK(smin > 0.0);
        CHECK(smin / smax > 1e-10);
        // The zeroth-order term keeps constants away from the kernel:
        // |L 1| = 4 f^2 e^{4u} >= 4 f^2 e^{4 u_min} > 0.
        CHECK(smin > 1.0);
    }
}

TEST_CASE("newton_solve: already exact start") {
    SolveConfig cfg;
    cfg.grid_n = 64;
    PathState st = initial_state(kBg, cfg);
    NewtonLog log;
    const PathState out = newton_solve(st, -1.0, cfg, &log);
    CHECK(log.iterations == 0);
    CHECK(out.diagnostics.residual_sup == 0.0);
}

TEST_CASE("newton_solve: quadratic convergence to the shifted constant") {
    SolveConfig cfg;
    cfg.grid_n = 64;
    cfg.newton_tol = 1e-13;
    PathState st = initial_state(kBg, cfg);
    NewtonLog log;
    const double t = -0.9;
    const PathState out = newton_solve(st, t, cfg, &log);

    const double target = constant_solution(t, 9.0);
    for (double v : out.u.samples()) CHECK(std::abs(v - target) < 1e-10);

    // Quadratic tail: once the residual is small, it at least squares
    // (up to a modest constant) every following step.
    REQUIRE(log.residual_history.size() >= 3);
    for (size_t i = 1; i + 1 < log.residual_history.size(); ++i) {
        const double r = log.residual_history[i];
        const double rn = log.residual_history[i + 1];
        // Only where r^2 sits above the evaluation noise floor.
        if (r < 1e-2 && r > 1e-7 && rn > 1e-14) CHECK(rn < 20.0 * r * r);
    }
    CHECK(log.min_cone_margin > 0.0);
}

TEST_CASE("newton_solve: perturbed start returns to the constant") {
    SolveConfig cfg;
    cfg.grid_n = 128;
    cfg.newton_tol = 1e-12;
    PathState st = initial_state(kBg, cfg);
    std::vector<double> s(static_cast<size_t>(cfg.grid_n));
    for (int j = 0; j < cfg.grid_n; ++j)
        s[static_cast<size_t>(j)] = 0.01 * std::sin(kTwoPi * j / cfg.grid_n);
    st.u = ReducedField(s, kTwoPi);

    NewtonLog log;
    const PathState out = newton_solve(st, -1.0, cfg, &log);
    for (double v : out.u.samples()) CHECK(std::abs(v - 0.0) < 1e-8);
    CHECK(log.min_cone_margin > 0.0);
    // Residual of the converged state re-checked against the exact form.
    const std::vector<double> res = residual(out, -1.0);
    for (double v : res) CHECK(std::abs(v) < cfg.newton_tol);
}

TEST_CASE("newton_solve: large near-boundary perturbation") {
    // Amplitude 0.45 at t = 0 leaves a cone margin of only ~0.23 (0.5 hits
    // the boundary); the damped iteration must still contract.
    SolveConfig cfg;
    cfg.grid_n = 128;
    cfg.newton_max_iter = 60;
    const double target = constant_solution(0.0, 9.0);
    PathState st = initial_state(kBg, cfg);
    std::vector<double> s(static_cast<size_t>(cfg.grid_n));
    for (int j = 0; j < cfg.grid_n; ++j)
        s[static_cast<size_t>(j)] = target + 0.45 * std::sin(kTwoPi * j / cfg.grid_n);
    st.u = ReducedField(s, kTwoPi);

    NewtonLog log;
    const PathState out = newton_solve(st, 0.0, cfg, &log);
    for (double v : out.u.samples()) CHECK(std::abs(v - target) < 1e-10);
    CHECK(log.min_cone_margin > 0.0);
}

TEST_CASE("continue_path close to the cone boundary (t_target = 0.95)") {
    SolveConfig cfg;
    cfg.grid_n = 64;
    cfg.t_target = 0.95;
    const PathResult res = continue_path(kBg, cfg);
    REQUIRE(res.status == PathStatus::Converged);
    // margin = sigma2(A^t_g) = 3/2 (2 - 0.95)(1 - 0.95).
    CHECK(res.final_state.cone_margin == doctest::Approx(1.5 * 1.05 * 0.05).epsilon(1e-9));
}

TEST_CASE("newton_solve error paths") {
    SolveConfig cfg;
    cfg.grid_n = 64;
    cfg.newton_max_iter = 1;
    PathState st = initial_state(kBg, cfg);
    // One iteration cannot absorb a 0.9 jump in t.
    CHECK_THROWS_AS(newton_solve(st, -0.1, cfg), nonconvergence);
    try {
        newton_solve(st, -0.1, cfg);
    } catch (const nonconvergence& e) {
        CHECK(e.last_residual > 0.0);
        CHECK(e.iterations == 1);
    }

    SolveConfig strict = cfg;
    strict.cone_margin_min = 10.0;  // above the actual margin of 5
    CHECK_THROWS_AS(newton_solve(st, -1.0, strict), cone_violation);
}

TEST_CASE("continue_path reaches the closed-form target") {
    SolveConfig cfg;
    cfg.grid_n = 128;
    const PathResult res = continue_path(kBg, cfg);
    REQUIRE(res.status == PathStatus::Converged);
    CHECK(res.final_state.t == 0.0);
    const double target = 0.25 * std::log(1.0 / 3.0);
    for (double v : res.final_state.u.samples()) CHECK(std::abs(v - target) < 1e-8);
    CHECK(res.final_state.diagnostics.residual_sup < cfg.newton_tol);
    CHECK(res.final_state.cone_margin > 0.0);

    // Trace u_max stays below the best constant solution seen so far.
    double bound = -1e30;
    for (const auto& e : res.trace) {
        bound = std::max(bound, constant_solution(e.t, 9.0));
        CHECK(e.u_max <= bound + 1e-6);
    }
    CHECK(res.monitors.upper_ok);
    CHECK(res.monitors.harnack_ok);
}

TEST_CASE("continue_path with delta = -2") {
    SolveConfig cfg;
    cfg.grid_n = 64;
    cfg.delta = -2.0;
    const PathResult res = continue_path(kBg, cfg);
    REQUIRE(res.status == PathStatus::Converged);
    const double target = constant_solution(0.0, 18.0);
    for (double v : res.final_state.u.samples()) CHECK(std::abs(v - target) < 1e-8);
}

TEST_CASE("continue_path documents the t -> 1 obstruction") {
    SolveConfig cfg;
    cfg.grid_n = 64;
    cfg.t_target = 1.0;
    cfg.t_step_min = 1e-3;
    const PathResult res = continue_path(kBg, cfg);
    CHECK(res.status == PathStatus::PathFailure);
    CHECK(res.final_state.t > 0.99);
    CHECK_FALSE(res.trace.empty());

    // Cone margin tracks min(sigma1, sigma2)(A^t_g) along the whole path
    // (solutions are constants, so this is exact to solver tolerance); for
    // t > 0 the binding value is sigma2 = 3/2 (2-t)(1-t) -> 0.
    for (const auto& e : res.trace) {
        if (e.t >= 1.0) continue;
        const double predicted = std::min(3.0 - 2.0 * e.t, 1.5 * (2.0 - e.t) * (1.0 - e.t));
        CHECK(std::abs(e.cone_margin - predicted) < 1e-6 * predicted + 1e-12);
    }
    // Margin has decayed proportionally to (1 - t) by the end.
    const auto& last = res.trace.back();
    CHECK(last.cone_margin < 0.01);
}

TEST_CASE("ricci_verdict at the homogeneous t0 = 0 solution") {
    SolveConfig cfg;
    cfg.grid_n = 64;
    const PathResult res = continue_path(kBg, cfg);
    REQUIRE(res.status == PathStatus::Converged);
    const RicciVerdict v = ricci_verdict(res.final_state, 0.0);
    CHECK(v.lower_ok);
    CHECK(v.upper_ok);
    // gtilde = c g with c = e^{-2u} = sqrt(3): 2 Ric eigenvalues {0, 4/c}
    // against bounds (-6/c, 12/c), so margins 6/c and 8/c.
    const double c = std::sqrt(3.0);
    CHECK(v.lower_margin == doctest::Approx(6.0 / c).epsilon(1e-9));
    CHECK(v.upper_margin == doctest::Approx(8.0 / c).epsilon(1e-9));
    // Equivalent tensor route agrees in sign.
    CHECK(v.newton_min_eig > 0.0);
    CHECK(v.pinch_min_eig > 0.0);
    CHECK((v.newton_min_eig > 0.0) == v.upper_ok);
    CHECK((v.pinch_min_eig > 0.0) == v.lower_ok);
}

TEST_CASE("ricci_verdict refuses stale or off-parameter states") {
    SolveConfig cfg;
    cfg.grid_n = 64;
    const PathResult res = continue_path(kBg, cfg);
    REQUIRE(res.status == PathStatus::Converged);

    CHECK_THROWS_AS(ricci_verdict(res.final_state, -0.5), stale_state);

    PathState tampered = res.final_state;
    tampered.diagnostics.residual_sup = 1.0;
    CHECK_THROWS_AS(ricci_verdict(tampered, 0.0), stale_state);

    PathState outside = res.final_state;
    outside.cone_margin = -1.0;
    CHECK_THROWS_AS(ricci_verdict(outside, 0.0), cone_violation);
}

TEST_CASE("config validation") {
    SolveConfig cfg;
    cfg.delta = 0.5;
    CHECK_THROWS_AS(cfg.validate(), config_error);
    cfg = SolveConfig{};
    cfg.t_target = 1.5;
    CHECK_THROWS_AS(cfg.validate(), config_error);
    cfg = SolveConfig{};
    cfg.newton_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), config_error);
    cfg = SolveConfig{};
    cfg.grid_n = 15;
    CHECK_THROWS_AS(cfg.validate(), config_error);
    CHECK_NOTHROW(SolveConfig{}.validate());
}

TEST_CASE("fd4 scheme solves the same path") {
    SolveConfig cfg;
    cfg.grid_n = 64;
    cfg.scheme = DerivScheme::FiniteDifference4;
    const PathResult res = continue_path(kBg, cfg);
    REQUIRE(res.status == PathStatus::Converged);
    const double target = 0.25 * std::log(1.0 / 3.0);
    for (double v : res.final_state.u.samples()) CHECK(std::abs(v - target) < 1e-8);
}
