#ifndef CONF4_REDUCED_HPP
#define CONF4_REDUCED_HPP

#include <span>
#include <vector>

#include "conf4/geometry.hpp"

namespace conf4 {

enum class DerivScheme {
    Spectral,           // trigonometric differentiation, exact below Nyquist
    FiniteDifference4,  // 4th-order central differences
};

/// Periodic differentiation on the uniform grid theta_k = k L / N.
///
/// Both schemes are applied in difference form, sum_m c_m (u_{k+m} - u_k),
/// so constants are annihilated exactly in floating point. The spectral
/// scheme uses the closed-form circulant rows of the trigonometric
/// differentiation matrices for even N.
class PeriodicDerivatives {
  public:
    PeriodicDerivatives(int n, double period, DerivScheme scheme);

    int grid_n() const { return n_; }
    double period() const { return period_; }
    DerivScheme scheme() const { return scheme_; }

    std::vector<double> d1(std::span<const double> u) const;
    std::vector<double> d2(std::span<const double> u) const;
    /// Fourth derivative as d2 applied twice (consistent with d2's symbol).
    std::vector<double> d4(std::span<const double> u) const;

    /// Circulant coefficient of the first/second derivative row at offset
    /// m in 1..N-1 (entry multiplying u_{k+m} relative to row k). The
    /// diagonal is minus the sum of these.
    double d1_coeff(int m) const { return c1_[static_cast<size_t>(m)]; }
    double d2_coeff(int m) const { return c2_[static_cast<size_t>(m)]; }

  private:
    void apply(std::span<const double> u, const std::vector<double>& c, std::vector<double>& out) const;

    int n_;
    double period_;
    DerivScheme scheme_;
    std::vector<double> c1_;  // offsets 0..N-1, c[0] unused (diagonal implicit)
    std::vector<double> c2_;
};

/// Real scalar field on the uniform periodic grid theta_k = k L / N.
class ReducedField {
  public:
    ReducedField(std::vector<double> samples, double period);
    static ReducedField constant(int n, double period, double value);

    int grid_n() const { return static_cast<int>(samples_.size()); }
    double period() const { return period_; }
    double theta(int k) const { return period_ * k / grid_n(); }
    const std::vector<double>& samples() const { return samples_; }
    std::vector<double>& samples() { return samples_; }
    double operator[](int k) const { return samples_[static_cast<size_t>(k)]; }

    double max() const;
    double min() const;

  private:
    std::vector<double> samples_;
    double period_;
};

/// Pointwise eigenvalues of g^{-1} A^t_u on S^1 x S^3 (unit sphere radius):
/// one eigenvalue along the circle direction, one of multiplicity three
/// along the sphere.
struct ReducedEndoField {
    std::vector<double> lambda_theta;
    std::vector<double> lambda_sphere;
};

/// Eigenvalues of g^{-1} A^t_u for gtilde = e^{-2u} g from the conformal
/// transformation law restricted to u = u(theta):
///   lambda_theta  = -t/2 + (3-t)/2 u'' + t/2 (u')^2
///   lambda_sphere = (2-t)/2 + (1-t)/2 u'' - (2-t)/2 (u')^2
/// Requires bg.sphere_radius == 1 and u.period == bg.circumference.
ReducedEndoField conformal_schouten_reduced(const S1xS3& bg, const ReducedField& u, double t,
                                            DerivScheme scheme = DerivScheme::Spectral);

/// sigma1 = lambda_theta + 3 lambda_sphere at each grid point.
std::vector<double> sigma1_field(const ReducedEndoField& f);
/// sigma2 = 3 lambda_theta lambda_sphere + 3 lambda_sphere^2 at each point.
std::vector<double> sigma2_field(const ReducedEndoField& f);
/// min over the grid of min(sigma1, sigma2).
double cone_margin_field(const ReducedEndoField& f);

/// Q-curvature of gtilde = e^{-2u} g at the grid points.
std::vector<double> q_curvature_reduced(const S1xS3& bg, const ReducedField& u,
                                        DerivScheme scheme = DerivScheme::Spectral);

/// Sup-norm defect of the transformation law -P u + 2 Q = 2 Qtilde e^{-4u}
/// over the grid; decays at the derivative scheme's order.
double q_transform_residual(const S1xS3& bg, const ReducedField& u,
                            DerivScheme scheme = DerivScheme::Spectral);

}  // namespace conf4

#endif
