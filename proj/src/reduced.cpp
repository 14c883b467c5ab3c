#include "conf4/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conf4/errors.hpp"
#include "conf4/kernels.hpp"

namespace conf4 {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void require_unit_reduced(const S1xS3& bg, const ReducedField& u) {
    if (std::abs(bg.sphere_radius - 1.0) > 1e-12)
        throw config_error("reduced operations require sphere_radius == 1 (pre-scale the metric)");
    if (std::abs(u.period() - bg.circumference) > 1e-12 * std::max(1.0, bg.circumference))
        throw config_error("field period does not match the background circumference");
}

}  // namespace

PeriodicDerivatives::PeriodicDerivatives(int n, double period, DerivScheme scheme)
    : n_(n), period_(period), scheme_(scheme), c1_(static_cast<size_t>(n), 0.0), c2_(static_cast<size_t>(n), 0.0) {
    if (n < 16 || n % 2 != 0) throw config_error("grid size must be even and at least 16");
    if (period <= 0.0) throw config_error("period must be positive");

    const double scale = 2.0 * kPi / period;  // d/dtheta = scale * d/dx on [0, 2pi)
    if (scheme == DerivScheme::Spectral) {
        const double h = 2.0 * kPi / n;
        for (int m = 1; m < n; ++m) {
            const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
            const double sh = std::sin(0.5 * m * h);
            c1_[static_cast<size_t>(m)] = -0.5 * sgn * (std::cos(0.5 * m * h) / sh) * scale;
            c2_[static_cast<size_t>(m)] = -sgn / (2.0 * sh * sh) * scale * scale;
        }
    } else {
        const double h = period / n;
        auto at = [&](std::vector<double>& c, int off, double v) {
            c[static_cast<size_t>((off % n + n) % n)] = v;
        };
        at(c1_, 1, 8.0 / (12.0 * h));
        at(c1_, -1, -8.0 / (12.0 * h));
        at(c1_, 2, -1.0 / (12.0 * h));
        at(c1_, -2, 1.0 / (12.0 * h));
        at(c2_, 1, 16.0 / (12.0 * h * h));
        at(c2_, -1, 16.0 / (12.0 * h * h));
        at(c2_, 2, -1.0 / (12.0 * h * h));
        at(c2_, -2, -1.0 / (12.0 * h * h));
    }
}

void PeriodicDerivatives::apply(std::span<const double> u, const std::vector<double>& c,
                                std::vector<double>& out) const {
    const int n = n_;
    for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        const double uk = u[static_cast<size_t>(k)];
        for (int m = 1; m < n; ++m) {
            const double cm = c[static_cast<size_t>(m)];
            if (cm == 0.0) continue;
            int j = k + m;
            if (j >= n) j -= n;
            acc += cm * (u[static_cast<size_t>(j)] - uk);
        }
        out[static_cast<size_t>(k)] = acc;
    }
}

std::vector<double> PeriodicDerivatives::d1(std::span<const double> u) const {
    if (static_cast<int>(u.size()) != n_) throw config_error("d1: field size mismatch");
    std::vector<double> out(static_cast<size_t>(n_));
    apply(u, c1_, out);
    return out;
}

std::vector<double> PeriodicDerivatives::d2(std::span<const double> u) const {
    if (static_cast<int>(u.size()) != n_) throw config_error("d2: field size mismatch");
    std::vector<double> out(static_cast<size_t>(n_));
    apply(u, c2_, out);
    return out;
}

std::vector<double> PeriodicDerivatives::d4(std::span<const double> u) const {
    return d2(d2(u));
}

ReducedField::ReducedField(std::vector<double> samples, double period)
    : samples_(std::move(samples)), period_(period) {
    const int n = static_cast<int>(samples_.size());
    if (n < 16 || n % 2 != 0) throw config_error("ReducedField: N must be even and at least 16");
    if (period <= 0.0) throw config_error("ReducedField: period must be positive");
}

ReducedField ReducedField::constant(int n, double period, double value) {
    return ReducedField(std::vector<double>(static_cast<size_t>(n), value), period);
}

double ReducedField::max() const { return *std::max_element(samples_.begin(), samples_.end()); }
double ReducedField::min() const { return *std::min_element(samples_.begin(), samples_.end()); }

ReducedEndoField conformal_schouten_reduced(const S1xS3& bg, const ReducedField& u, double t,
                                            DerivScheme scheme) {
    require_unit_reduced(bg, u);
    const int n = u.grid_n();
    PeriodicDerivatives deriv(n, u.period(), scheme);
    const std::vector<double> d1u = deriv.d1(u.samples());
    const std::vector<double> d2u = deriv.d2(u.samples());
    ReducedEndoField f;
    f.lambda_theta.resize(static_cast<size_t>(n));
    f.lambda_sphere.resize(static_cast<size_t>(n));
    kernels::schouten_eigenvalues(t, d2u, d1u, f.lambda_theta, f.lambda_sphere);
    return f;
}

std::vector<double> sigma1_field(const ReducedEndoField& f) {
    std::vector<double> s1(f.lambda_theta.size()), s2(f.lambda_theta.size());
    kernels::sigma12_from_eigenvalues(f.lambda_theta, f.lambda_sphere, s1, s2);
    return s1;
}

std::vector<double> sigma2_field(const ReducedEndoField& f) {
    std::vector<double> s1(f.lambda_theta.size()), s2(f.lambda_theta.size());
    kernels::sigma12_from_eigenvalues(f.lambda_theta, f.lambda_sphere, s1, s2);
    return s2;
}

double cone_margin_field(const ReducedEndoField& f) {
    std::vector<double> s1(f.lambda_theta.size()), s2(f.lambda_theta.size());
    kernels::sigma12_from_eigenvalues(f.lambda_theta, f.lambda_sphere, s1, s2);
    double margin = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < s1.size(); ++k) margin = std::min({margin, s1[k], s2[k]});
    return margin;
}

std::vector<double> q_curvature_reduced(const S1xS3& bg, const ReducedField& u, DerivScheme scheme) {
    require_unit_reduced(bg, u);
    const int n = u.grid_n();
    const size_t un = static_cast<size_t>(n);
    PeriodicDerivatives deriv(n, u.period(), scheme);

    const ReducedEndoField a1 = conformal_schouten_reduced(bg, u, 1.0, scheme);
    std::vector<double> s1(un), s2(un);
    kernels::sigma12_from_eigenvalues(a1.lambda_theta, a1.lambda_sphere, s1, s2);

    std::vector<double> e2u(un), r_tilde(un);
    for (size_t k = 0; k < un; ++k) {
        e2u[k] = std::exp(2.0 * u[static_cast<int>(k)]);
        r_tilde[k] = 6.0 * e2u[k] * s1[k];  // scalar curvature of gtilde
    }
    const std::vector<double> r1 = deriv.d1(r_tilde);
    const std::vector<double> r2 = deriv.d2(r_tilde);
    const std::vector<double> du = deriv.d1(u.samples());

    std::vector<double> q(un);
    for (size_t k = 0; k < un; ++k) {
        const double lap_r = e2u[k] * (r2[k] - 2.0 * du[k] * r1[k]);  // Laplacian of gtilde
        q[k] = -lap_r / 12.0 + 2.0 * e2u[k] * e2u[k] * s2[k];
    }
    return q;
}

double q_transform_residual(const S1xS3& bg, const ReducedField& u, DerivScheme scheme) {
    require_unit_reduced(bg, u);
    const size_t un = static_cast<size_t>(u.grid_n());
    PeriodicDerivatives deriv(u.grid_n(), u.period(), scheme);

    // P u = u'''' - 4 u'' on the unit background; Q_g vanishes there.
    const std::vector<double> d2u = deriv.d2(u.samples());
    const std::vector<double> d4u = deriv.d2(d2u);
    const std::vector<double> q = q_curvature_reduced(bg, u, scheme);

    double sup = 0.0;
    for (size_t k = 0; k < un; ++k) {
        const double pu = d4u[k] - 4.0 * d2u[k];
        const double res = -pu - 2.0 * q[k] * std::exp(-4.0 * u[static_cast<int>(k)]);
        sup = std::max(sup, std::abs(res));
    }
    return sup;
}

}  // namespace conf4
