#include "conf4/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conf4/errors.hpp"
#include "conf4/kernels.hpp"

namespace conf4 {

namespace {

constexpr double kNewtonIneqFactor = 1.6329931618554520654648560498;  // 4/sqrt(6)

struct PointwiseEval {
    bool in_cone = false;
    int first_violation = -1;
    double bad_s1 = 0.0, bad_s2 = 0.0;
    double margin = std::numeric_limits<double>::infinity();
    std::vector<double> s1, s2;
    std::vector<double> res;  // sigma_2^{1/2} - f e^{2u}
    double res_sup = 0.0;
};

S1xS3 background_of(const ReducedField& u) { return S1xS3{u.period(), 1.0}; }

PointwiseEval evaluate(const ReducedField& u, double t, const std::vector<double>& f_squared,
                       DerivScheme scheme) {
    const S1xS3 bg = background_of(u);
    const ReducedEndoField endo = conformal_schouten_reduced(bg, u, t, scheme);
    const size_t n = endo.lambda_theta.size();

    PointwiseEval ev;
    ev.s1.resize(n);
    ev.s2.resize(n);
    kernels::sigma12_from_eigenvalues(endo.lambda_theta, endo.lambda_sphere, ev.s1, ev.s2);

    ev.in_cone = true;
    for (size_t k = 0; k < n; ++k) {
        ev.margin = std::min({ev.margin, ev.s1[k], ev.s2[k]});
        if (ev.in_cone && (ev.s1[k] <= 0.0 || ev.s2[k] <= 0.0)) {
            ev.in_cone = false;
            ev.first_violation = static_cast<int>(k);
            ev.bad_s1 = ev.s1[k];
            ev.bad_s2 = ev.s2[k];
        }
    }
    if (!ev.in_cone) return ev;

    ev.res.resize(n);
    for (size_t k = 0; k < n; ++k) {
        const double fe = std::sqrt(f_squared[k]) * std::exp(2.0 * u[static_cast<int>(k)]);
        ev.res[k] = std::sqrt(ev.s2[k]) - fe;
        ev.res_sup = std::max(ev.res_sup, std::abs(ev.res[k]));
    }
    return ev;
}

DiagnosticsRecord diagnostics_of(const ReducedField& u, double res_sup, DerivScheme scheme) {
    DiagnosticsRecord d;
    d.u_max = u.max();
    d.u_min = u.min();
    d.harnack_gap = d.u_max - d.u_min;
    PeriodicDerivatives deriv(u.grid_n(), u.period(), scheme);
    const std::vector<double> du = deriv.d1(u.samples());
    d.grad_max = 0.0;
    for (double v : du) d.grad_max = std::max(d.grad_max, std::abs(v));
    d.residual_sup = res_sup;
    return d;
}

[[noreturn]] void throw_cone(const PointwiseEval& ev, const std::string& where) {
    throw cone_violation(where + ": state left Gamma_2^+ at grid index " +
                             std::to_string(ev.first_violation),
                         ev.first_violation, ev.bad_s1, ev.bad_s2);
}

}  // namespace

void SolveConfig::validate() const {
    if (!(delta < 0.0)) throw config_error("delta must be negative (path start)");
    if (!(delta < t_target && t_target <= 1.0))
        throw config_error("need delta < t_target <= 1");
    if (!(newton_tol > 0.0)) throw config_error("newton_tol must be positive");
    if (!(t_step_init > 0.0 && t_step_min > 0.0 && t_step_min <= t_step_init))
        throw config_error("need 0 < t_step_min <= t_step_init");
    if (grid_n < 16 || grid_n % 2 != 0) throw config_error("grid_n must be even and at least 16");
    if (newton_max_iter < 1) throw config_error("newton_max_iter must be at least 1");
    if (cone_margin_min < 0.0) throw config_error("cone_margin_min must be nonnegative");
}

std::vector<double> choose_f(const S1xS3& bg, double delta, int grid_n) {
    if (!(delta < 0.0))
        throw config_error("choose_f: delta must be negative so A^delta_g is positive definite");
    if (std::abs(bg.sphere_radius - 1.0) > 1e-12)
        throw config_error("choose_f: sphere radius must be 1");
    const double s2 = 1.5 * (2.0 - delta) * (1.0 - delta);  // sigma_2(A^delta_g)
    return std::vector<double>(static_cast<size_t>(grid_n), std::sqrt(s2));
}

PathState initial_state_with(const S1xS3& bg, const SolveConfig& cfg, std::vector<double> f,
                             ReducedField u0) {
    cfg.validate();
    if (std::abs(bg.sphere_radius - 1.0) > 1e-12)
        throw config_error("initial_state_with: sphere radius must be 1");
    if (std::abs(u0.period() - bg.circumference) > 1e-12 * std::max(1.0, bg.circumference))
        throw config_error("initial_state_with: field period does not match the background");
    if (static_cast<int>(f.size()) != u0.grid_n())
        throw config_error("initial_state_with: f and u0 sizes differ");
    std::vector<double> f2(f.size());
    for (size_t k = 0; k < f.size(); ++k) {
        if (!(f[k] > 0.0)) throw config_error("initial_state_with: f must be positive");
        f2[k] = f[k] * f[k];
    }
    PointwiseEval ev = evaluate(u0, cfg.delta, f2, cfg.scheme);
    if (!ev.in_cone) throw_cone(ev, "initial_state_with");
    PathState state{cfg.delta, std::move(u0), std::move(f2), ev.margin,
                    DiagnosticsRecord{}};
    state.diagnostics = diagnostics_of(state.u, ev.res_sup, cfg.scheme);
    return state;
}

PathState initial_state(const S1xS3& bg, const SolveConfig& cfg) {
    std::vector<double> f = choose_f(bg, cfg.delta, cfg.grid_n);
    return initial_state_with(bg, cfg, std::move(f),
                              ReducedField::constant(cfg.grid_n, bg.circumference, 0.0));
}

std::vector<double> residual(const PathState& state, double t, DerivScheme scheme) {
    PointwiseEval ev = evaluate(state.u, t, state.f_squared, scheme);
    if (!ev.in_cone) throw_cone(ev, "residual");
    return std::move(ev.res);
}

ReducedLinearOperator::ReducedLinearOperator(std::vector<double> c2, std::vector<double> c1,
                                             std::vector<double> c0,
                                             const PeriodicDerivatives& deriv)
    : c2_(std::move(c2)), c1_(std::move(c1)), c0_(std::move(c0)), deriv_(deriv) {}

std::vector<double> ReducedLinearOperator::apply(std::span<const double> phi) const {
    const std::vector<double> d1 = deriv_.d1(phi);
    const std::vector<double> d2 = deriv_.d2(phi);
    std::vector<double> out(phi.size());
    for (size_t k = 0; k < phi.size(); ++k)
        out[k] = c2_[k] * d2[k] + c1_[k] * d1[k] + c0_[k] * phi[k];
    return out;
}

Eigen::MatrixXd ReducedLinearOperator::matrix() const {
    const int n = deriv_.grid_n();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        double diag1 = 0.0, diag2 = 0.0;
        for (int off = 1; off < n; ++off) {
            const int j = (k + off) % n;
            const double a1 = deriv_.d1_coeff(off);
            const double a2 = deriv_.d2_coeff(off);
            diag1 += a1;
            diag2 += a2;
            m(k, j) = c2_[static_cast<size_t>(k)] * a2 + c1_[static_cast<size_t>(k)] * a1;
        }
        m(k, k) = -c2_[static_cast<size_t>(k)] * diag2 - c1_[static_cast<size_t>(k)] * diag1 +
                  c0_[static_cast<size_t>(k)];
    }
    return m;
}

ReducedLinearOperator linearization(const PathState& state, double t, DerivScheme scheme) {
    const ReducedField& u = state.u;
    const S1xS3 bg = background_of(u);
    const ReducedEndoField endo = conformal_schouten_reduced(bg, u, t, scheme);
    const size_t n = endo.lambda_theta.size();

    {
        PointwiseEval ev = evaluate(u, t, state.f_squared, scheme);
        if (!ev.in_cone) throw_cone(ev, "linearization");
    }

    PeriodicDerivatives deriv(u.grid_n(), u.period(), scheme);
    const std::vector<double> du = deriv.d1(u.samples());

    // d sigma_2 = 3 ls dlt + (3 lt + 6 ls) dls with
    //   dlt = (3-t)/2 phi'' + t u' phi'
    //   dls = (1-t)/2 phi'' - (2-t) u' phi'
    std::vector<double> c2(n), c1(n), c0(n);
    for (size_t k = 0; k < n; ++k) {
        const double lt = endo.lambda_theta[k];
        const double ls = endo.lambda_sphere[k];
        const double w_theta = 3.0 * ls;             // T1 coefficient on the theta slot
        const double w_sphere = 3.0 * lt + 6.0 * ls; // T1 mass on the sphere slots
        c2[k] = 0.5 * (3.0 - t) * w_theta + 0.5 * (1.0 - t) * w_sphere;
        c1[k] = (t * w_theta - (2.0 - t) * w_sphere) * du[k];
        c0[k] = -4.0 * state.f_squared[k] * std::exp(4.0 * u[static_cast<int>(k)]);
    }
    return ReducedLinearOperator(std::move(c2), std::move(c1), std::move(c0), deriv);
}

PathState newton_solve(const PathState& state, double t, const SolveConfig& cfg, NewtonLog* log) {
    if (!(state.cone_margin > cfg.cone_margin_min))
        throw cone_violation("newton_solve: starting state too close to the cone boundary", -1,
                             state.cone_margin, state.cone_margin);

    ReducedField u = state.u;
    PointwiseEval ev = evaluate(u, t, state.f_squared, cfg.scheme);
    if (!ev.in_cone) throw_cone(ev, "newton_solve");

    if (log) {
        log->residual_history.clear();
        log->residual_history.push_back(ev.res_sup);
        log->min_cone_margin = ev.margin;
        log->iterations = 0;
    }

    const int n = u.grid_n();
    int iter = 0;
    while (ev.res_sup >= cfg.newton_tol) {
        if (iter >= cfg.newton_max_iter)
            throw nonconvergence("newton_solve: iteration cap exceeded", ev.res_sup, iter);
        ++iter;

        // Newton direction on the squared form sigma_2 - f^2 e^{4u}.
        PathState probe{t, u, state.f_squared, ev.margin, DiagnosticsRecord{}};
        const ReducedLinearOperator lin = linearization(probe, t, cfg.scheme);
        Eigen::VectorXd g(n);
        for (int k = 0; k < n; ++k)
            g(k) = ev.s2[static_cast<size_t>(k)] -
                   state.f_squared[static_cast<size_t>(k)] * std::exp(4.0 * u[k]);
        const Eigen::VectorXd step = lin.matrix().partialPivLu().solve(-g);

        bool accepted = false;
        bool cone_blocked = true;
        double alpha = 1.0;
        PointwiseEval trial_ev;
        ReducedField trial = u;
        for (int halving = 0; halving <= 10; ++halving) {
            for (int k = 0; k < n; ++k)
                trial.samples()[static_cast<size_t>(k)] = u[k] + alpha * step(k);
            trial_ev = evaluate(trial, t, state.f_squared, cfg.scheme);
            if (trial_ev.in_cone) {
                cone_blocked = false;
                if (trial_ev.res_sup < ev.res_sup) {
                    accepted = true;
                    break;
                }
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            if (cone_blocked)
                throw cone_violation("newton_solve: cone exit unrecoverable by 10 halvings",
                                     trial_ev.first_violation, trial_ev.bad_s1, trial_ev.bad_s2);
            throw nonconvergence("newton_solve: line search stalled", ev.res_sup, iter);
        }
        u = trial;
        ev = std::move(trial_ev);
        if (log) {
            log->residual_history.push_back(ev.res_sup);
            log->min_cone_margin = std::min(log->min_cone_margin, ev.margin);
            log->iterations = iter;
        }
    }

    PathState out{t, std::move(u), state.f_squared, ev.margin, DiagnosticsRecord{}};
    out.diagnostics = diagnostics_of(out.u, ev.res_sup, cfg.scheme);
    return out;
}

namespace {

void update_monitors(MonitorReport& mon, const PathState& state, const SolveConfig& cfg,
                     const S1xS3& bg, bool first) {
    // Upper bound from the Newton inequality 4/sqrt(6) sigma2^{1/2} <= sigma1,
    // evaluated at the grid max of u where the gradient vanishes and the
    // Laplacian is nonpositive.
    const double s1_bg = 3.0 - 2.0 * state.t;  // sigma1(A^t_g) on the unit background
    int kmax = 0;
    const auto& s = state.u.samples();
    for (int k = 1; k < state.u.grid_n(); ++k)
        if (s[static_cast<size_t>(k)] > s[static_cast<size_t>(kmax)]) kmax = k;
    const double lhs = kNewtonIneqFactor *
                       std::sqrt(state.f_squared[static_cast<size_t>(kmax)]) *
                       std::exp(2.0 * state.u[kmax]);
    const double upper_slack = s1_bg + 1e-6 - lhs;

    const double harnack_slack = state.diagnostics.grad_max * state.u.period() * 0.5 + 1e-9 -
                                 state.diagnostics.harnack_gap;

    double deficit = -std::numeric_limits<double>::infinity();
    if (cfg.monitor_yamabe > 0.0) {
        const CurvaturePackage pkg = curvature_of(Background{bg});
        const double f2_inv = 4.0 * sigma2(pkg.schouten1) * pkg.volume;
        const double lambda_t = f2_inv + (1.0 / 6.0) * (1.0 - state.t) * (2.0 - state.t) *
                                             cfg.monitor_yamabe * cfg.monitor_yamabe;
        if (lambda_t > 0.0) deficit = 0.25 * std::log(lambda_t) - state.diagnostics.u_max;
    }

    if (first) {
        mon.upper_bound_slack = upper_slack;
        mon.harnack_slack = harnack_slack;
        mon.lower_bound_deficit = deficit;
    } else {
        mon.upper_bound_slack = std::min(mon.upper_bound_slack, upper_slack);
        mon.harnack_slack = std::min(mon.harnack_slack, harnack_slack);
        mon.lower_bound_deficit = std::max(mon.lower_bound_deficit, deficit);
    }
    mon.upper_ok = mon.upper_bound_slack >= 0.0;
    mon.harnack_ok = mon.harnack_slack >= 0.0;
}

TraceEntry trace_entry(const PathState& state, int iters) {
    return TraceEntry{state.t,
                      state.diagnostics.u_min,
                      state.diagnostics.u_max,
                      state.diagnostics.grad_max,
                      state.diagnostics.residual_sup,
                      state.cone_margin,
                      iters};
}

}  // namespace

PathResult continue_path_with(const S1xS3& bg, const SolveConfig& cfg, std::vector<double> f,
                              ReducedField u0) {
    cfg.validate();
    PathState state = initial_state_with(bg, cfg, std::move(f), std::move(u0));

    PathResult result{PathStatus::Converged, "", state, {}, MonitorReport{}};

    // Settle the start: u0 is only required to be an in-cone guess.
    NewtonLog log;
    state = newton_solve(state, cfg.delta, cfg, &log);
    result.trace.push_back(trace_entry(state, log.iterations));
    update_monitors(result.monitors, state, cfg, bg, true);

    double dt = cfg.t_step_init;
    int successes = 0;
    const double snap = 1e-12 * std::max(1.0, std::abs(cfg.t_target));
    while (state.t < cfg.t_target - 1e-15) {
        double t_next = std::min(state.t + dt, cfg.t_target);
        if (cfg.t_target - t_next <= snap) t_next = cfg.t_target;
        bool ok = false;
        try {
            PathState next = newton_solve(state, t_next, cfg, &log);
            state = std::move(next);
            ok = true;
        } catch (const error&) {
            ok = false;
        }
        if (ok) {
            result.trace.push_back(trace_entry(state, log.iterations));
            update_monitors(result.monitors, state, cfg, bg, false);
            if (++successes >= 3) {
                dt = std::min(2.0 * dt, cfg.t_step_init);
                successes = 0;
            }
        } else {
            successes = 0;
            if (dt <= cfg.t_step_min * (1.0 + 1e-12)) {
                result.status = PathStatus::PathFailure;
                result.message = "t-step floor reached at t = " + std::to_string(state.t) +
                                 " while targeting t = " + std::to_string(cfg.t_target);
                result.final_state = std::move(state);
                return result;
            }
            dt = std::max(0.5 * dt, cfg.t_step_min);
        }
    }
    result.final_state = std::move(state);
    return result;
}

PathResult continue_path(const S1xS3& bg, const SolveConfig& cfg) {
    cfg.validate();
    std::vector<double> f = choose_f(bg, cfg.delta, cfg.grid_n);
    return continue_path_with(bg, cfg, std::move(f),
                              ReducedField::constant(cfg.grid_n, bg.circumference, 0.0));
}

RicciVerdict ricci_verdict(const PathState& state, double t0, double stale_tol, DerivScheme scheme) {
    if (std::abs(state.t - t0) > 1e-12)
        throw stale_state("ricci_verdict: state parameter differs from t0");
    if (!(state.diagnostics.residual_sup <= stale_tol))
        throw stale_state("ricci_verdict: state residual exceeds tolerance");
    if (!(state.cone_margin > 0.0))
        throw cone_violation("ricci_verdict: state is outside Gamma_2^+", -1, state.cone_margin,
                             state.cone_margin);

    const S1xS3 bg = background_of(state.u);
    const ReducedEndoField a1 = conformal_schouten_reduced(bg, state.u, 1.0, scheme);
    const ReducedEndoField at = conformal_schouten_reduced(bg, state.u, t0, scheme);

    RicciVerdict v{};
    v.lower_margin = std::numeric_limits<double>::infinity();
    v.upper_margin = std::numeric_limits<double>::infinity();
    v.newton_min_eig = std::numeric_limits<double>::infinity();
    v.pinch_min_eig = std::numeric_limits<double>::infinity();

    for (int k = 0; k < state.u.grid_n(); ++k) {
        const size_t i = static_cast<size_t>(k);
        const double scale = std::exp(2.0 * state.u[k]);  // raises indices with gtilde

        // Ricci endomorphism of gtilde from the Schouten inversion.
        const double a_theta = scale * a1.lambda_theta[i];
        const double a_sph = scale * a1.lambda_sphere[i];
        const double s1a = a_theta + 3.0 * a_sph;
        const double r_scalar = 6.0 * s1a;
        const double ric_theta = 2.0 * a_theta + s1a;
        const double ric_sph = 2.0 * a_sph + s1a;

        for (const double ric : {ric_theta, ric_sph}) {
            v.lower_margin = std::min(v.lower_margin, 2.0 * ric - (t0 - 1.0) * r_scalar);
            v.upper_margin = std::min(v.upper_margin, (2.0 - t0) * r_scalar - 2.0 * ric);
        }

        // Equivalent tensor tests on A^{t0}: T1 > 0 and A^{t0} + sigma1/2 I > 0.
        const double lt = at.lambda_theta[i];
        const double ls = at.lambda_sphere[i];
        const double s1t = lt + 3.0 * ls;
        v.newton_min_eig = std::min({v.newton_min_eig, s1t - lt, s1t - ls});
        v.pinch_min_eig = std::min({v.pinch_min_eig, lt + 0.5 * s1t, ls + 0.5 * s1t});
    }
    v.lower_ok = v.lower_margin > 0.0;
    v.upper_ok = v.upper_margin > 0.0;
    return v;
}

}  // namespace conf4
