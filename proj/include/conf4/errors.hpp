#ifndef CONF4_ERRORS_HPP
#define CONF4_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace conf4 {

/// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A pointwise state left the Gamma_2^+ cone. grid_index is the first
/// offending grid point (-1 when the input is a single endomorphism).
struct cone_violation : error {
    cone_violation(const std::string& what, int index, double s1, double s2)
        : error(what), grid_index(index), sigma1(s1), sigma2(s2) {}
    int grid_index;
    double sigma1;
    double sigma2;
};

/// Newton iteration exhausted its budget.
struct nonconvergence : error {
    nonconvergence(const std::string& what, double residual, int iters)
        : error(what), last_residual(residual), iterations(iters) {}
    double last_residual;
    int iterations;
};

/// Bad configuration: file contents, mismatched grids, invalid parameters.
struct config_error : error {
    explicit config_error(const std::string& what) : error(what) {}
};

/// Operation asked of a background that does not carry the needed data.
struct unsupported_background : error {
    explicit unsupported_background(const std::string& what) : error(what) {}
};

/// A result was requested from a state that is not converged.
struct stale_state : error {
    explicit stale_state(const std::string& what) : error(what) {}
};

}  // namespace conf4

#endif
