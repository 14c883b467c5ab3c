#ifndef CONF4_SOLVER_HPP
#define CONF4_SOLVER_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conf4/reduced.hpp"

namespace conf4 {

// Continuity method for sigma_2^{1/2}(g^{-1} A^t_u) = f e^{2u} on
// S^1 x S^3, marching t from delta < 0 (where u == 0 solves the equation
// by the choice of f) toward t_target <= 1.

struct SolveConfig {
    double delta = -1.0;
    double t_target = 0.0;
    int grid_n = 128;
    double t_step_init = 0.1;
    double t_step_min = 1e-4;
    double newton_tol = 1e-11;       // sup-norm of sigma_2^{1/2} - f e^{2u}
    int newton_max_iter = 25;
    double cone_margin_min = 1e-10;
    DerivScheme scheme = DerivScheme::Spectral;
    // Yamabe constant used by the lower-bound monitor; 0 disables it.
    double monitor_yamabe = 0.0;

    void validate() const;
};

struct DiagnosticsRecord {
    double u_max = 0.0;
    double u_min = 0.0;
    double grad_max = 0.0;
    double harnack_gap = 0.0;  // u_max - u_min
    double residual_sup = 0.0;
};

struct PathState {
    double t;
    ReducedField u;
    std::vector<double> f_squared;
    double cone_margin;
    DiagnosticsRecord diagnostics;
};

struct TraceEntry {
    double t;
    double u_min;
    double u_max;
    double grad_max;
    double residual_sup;
    double cone_margin;
    int newton_iters;
};

/// Worst slacks of the a priori bounds observed along a path. Slacks are
/// "bound minus observed"; negative means the monitor tripped.
struct MonitorReport {
    double upper_bound_slack = 0.0;    // sigma1(A^t_g) + tol - (4/sqrt 6) f e^{2u} at the max of u
    double harnack_slack = 0.0;        // grad_max * period/2 + tol - harnack_gap
    double lower_bound_deficit = 0.0;  // max over path of 1/4 log(lambda_t) - max u  (if yamabe set)
    bool upper_ok = true;
    bool harnack_ok = true;
};

enum class PathStatus { Converged, PathFailure };

struct PathResult {
    PathStatus status;
    std::string message;
    PathState final_state;
    std::vector<TraceEntry> trace;
    MonitorReport monitors;
};

/// Per-iteration record of one Newton solve, for convergence tests.
struct NewtonLog {
    std::vector<double> residual_history;  // sup norms, including the final one
    double min_cone_margin = 0.0;          // over all accepted iterates
    int iterations = 0;
};

/// Constant right-hand side f = sigma_2^{1/2}(A^delta_g) on the grid;
/// requires delta < 0 so that A^delta_g is positive definite.
std::vector<double> choose_f(const S1xS3& bg, double delta, int grid_n);

/// Starting state of the path: t = delta, u == 0 (an exact solution).
PathState initial_state(const S1xS3& bg, const SolveConfig& cfg);

/// Starting state with an explicit right-hand side and initial guess
/// (u0 need not solve the t = delta equation exactly).
PathState initial_state_with(const S1xS3& bg, const SolveConfig& cfg, std::vector<double> f,
                             ReducedField u0);

/// sigma_2^{1/2}(g^{-1} A^t_u) - f e^{2u} at each grid point. Throws
/// cone_violation naming the first grid index outside Gamma_2^+.
std::vector<double> residual(const PathState& state, double t,
                             DerivScheme scheme = DerivScheme::Spectral);

/// Linearization of the squared-form map u -> sigma_2(g^{-1}A^t_u) - f^2 e^{4u}:
///   phi -> c2 phi'' + c1 phi' - 4 f^2 e^{4u} phi
/// with c2 = L^t(A^t_u)_{theta theta} and c1 the first-order coefficient
/// produced by differentiating the sigma_2 form. apply() uses the
/// difference-form derivative stencils (annihilates constants exactly);
/// matrix() assembles the dense operator for direct solves.
class ReducedLinearOperator {
  public:
    ReducedLinearOperator(std::vector<double> c2, std::vector<double> c1, std::vector<double> c0,
                          const PeriodicDerivatives& deriv);

    std::vector<double> apply(std::span<const double> phi) const;
    Eigen::MatrixXd matrix() const;

    const std::vector<double>& second_order_coeff() const { return c2_; }
    const std::vector<double>& first_order_coeff() const { return c1_; }
    const std::vector<double>& zeroth_order_coeff() const { return c0_; }

  private:
    std::vector<double> c2_, c1_, c0_;
    PeriodicDerivatives deriv_;
};

ReducedLinearOperator linearization(const PathState& state, double t,
                                    DerivScheme scheme = DerivScheme::Spectral);

/// Damped Newton iteration at fixed t. Backtracking halves the step (at
/// most 10 times) until the sup-norm residual decreases and the iterate
/// stays inside Gamma_2^+. Throws nonconvergence or cone_violation.
PathState newton_solve(const PathState& state, double t, const SolveConfig& cfg,
                       NewtonLog* log = nullptr);

/// Marches t from delta to t_target with adaptive steps: halve on Newton
/// failure, double after three straight successes, clamp to
/// [t_step_min, t_step_init]. Returns the trace either way; status
/// PathFailure when the step floor is hit (the expected outcome for
/// t_target = 1 on S^1 x S^3, where the cone boundary closes in).
PathResult continue_path(const S1xS3& bg, const SolveConfig& cfg);

/// Same march from an explicit right-hand side and starting guess.
PathResult continue_path_with(const S1xS3& bg, const SolveConfig& cfg, std::vector<double> f,
                              ReducedField u0);

struct RicciVerdict {
    bool lower_ok;            // (t0 - 1) Rtilde gtilde < 2 Ric_tilde
    bool upper_ok;            // 2 Ric_tilde < (2 - t0) Rtilde gtilde
    double lower_margin;      // min over grid/eigenvalues of the gap
    double upper_margin;
    double newton_min_eig;    // min eigenvalue of T1(A^{t0}_u): equivalent upper test
    double pinch_min_eig;     // min eigenvalue of A^{t0}_u + sigma1/2 I: equivalent lower test
};

/// Pointwise Ricci pinching of gtilde = e^{-2u} g at parameter t0.
/// Requires a converged state (residual_sup below stale_tol).
RicciVerdict ricci_verdict(const PathState& state, double t0, double stale_tol = 1e-6,
                           DerivScheme scheme = DerivScheme::Spectral);

}  // namespace conf4

#endif
