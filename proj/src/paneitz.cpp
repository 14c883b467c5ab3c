#include "conf4/paneitz.hpp"

#include <algorithm>
#include <cmath>

#include "conf4/errors.hpp"
#include "conf4/kernels.hpp"

namespace conf4 {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

void require_reduced(const S1xS3& bg, const ReducedField& phi) {
    if (std::abs(phi.period() - bg.circumference) > 1e-12 * std::max(1.0, bg.circumference))
        throw config_error("field period does not match the background circumference");
}

double sphere_slice_volume(const S1xS3& bg) {
    const double r = bg.sphere_radius;
    return 2.0 * kPi * kPi * r * r * r;
}

}  // namespace

std::vector<double> paneitz_apply_reduced(const S1xS3& bg, const ReducedField& phi,
                                          DerivScheme scheme) {
    require_reduced(bg, phi);
    const double r2 = bg.sphere_radius * bg.sphere_radius;
    PeriodicDerivatives deriv(phi.grid_n(), phi.period(), scheme);
    const std::vector<double> d2 = deriv.d2(phi.samples());
    const std::vector<double> d4 = deriv.d2(d2);
    std::vector<double> out(d2.size());
    for (size_t k = 0; k < out.size(); ++k) out[k] = d4[k] - (4.0 / r2) * d2[k];
    return out;
}

QuadraticFormReport quadratic_form(const S1xS3& bg, const ReducedField& phi, DerivScheme scheme) {
    require_reduced(bg, phi);
    const double r2 = bg.sphere_radius * bg.sphere_radius;
    const double h = phi.period() / phi.grid_n();
    const double slice = sphere_slice_volume(bg);

    PeriodicDerivatives deriv(phi.grid_n(), phi.period(), scheme);
    const std::vector<double> d1 = deriv.d1(phi.samples());
    const std::vector<double> d2 = deriv.d2(phi.samples());
    const std::vector<double> p = paneitz_apply_reduced(bg, phi, scheme);

    double form = 0.0, hess = 0.0, curv = 0.0;
    for (size_t k = 0; k < d1.size(); ++k) {
        form += p[k] * phi[static_cast<int>(k)];
        // |tracefree Hessian|^2 = (3/4)(phi'')^2; (R g - Ric) acts on the
        // theta gradient with weight R = 6/r^2.
        hess += (4.0 / 3.0) * 0.75 * d2[k] * d2[k];
        curv += (2.0 / 3.0) * (6.0 / r2) * d1[k] * d1[k];
    }
    QuadraticFormReport rep;
    rep.form_value = form * h * slice;
    rep.hessian_term = hess * h * slice;
    rep.curvature_term = curv * h * slice;
    rep.decomposition_residual = std::abs(rep.form_value - rep.hessian_term - rep.curvature_term);
    return rep;
}

QuadraticFormReport quadratic_form_product(const ProductSurfaces& bg, double lambda, double mu) {
    if (lambda < 0.0 || mu < 0.0) throw config_error("Laplace eigenvalues must be nonnegative");
    const double scalar = 2.0 * (bg.kappa1 + bg.kappa2);
    const double sum = lambda + mu;
    const double ric_grad = bg.kappa1 * lambda + bg.kappa2 * mu;  // int Ric(grad, grad)
    QuadraticFormReport rep;
    rep.form_value = sum * sum + (2.0 / 3.0) * scalar * sum - 2.0 * ric_grad;
    // int |Hessian|^2 = (lambda+mu)^2 - int Ric(grad, grad) by Bochner.
    rep.hessian_term = (4.0 / 3.0) * (0.75 * sum * sum - ric_grad);
    rep.curvature_term = (2.0 / 3.0) * (scalar * sum - ric_grad);
    rep.decomposition_residual = std::abs(rep.form_value - rep.hessian_term - rep.curvature_term);
    return rep;
}

void ProductSpectrumInput::validate() const {
    for (const auto* eigs : {&eigs1, &eigs2}) {
        if (eigs->empty()) throw config_error("spectrum input: eigenvalue list is empty");
        if (eigs->front() != 0.0)
            throw config_error("spectrum input: eigenvalue lists must start with 0 (constants)");
        if (!std::is_sorted(eigs->begin(), eigs->end()))
            throw config_error("spectrum input: eigenvalue lists must be ascending");
        for (double v : *eigs)
            if (v < 0.0) throw config_error("spectrum input: eigenvalues must be nonnegative");
    }
}

double ProductSpectrumInput::b1() const { return (2.0 / 3.0) * 2.0 * (kappa1 + kappa2) - 2.0 * kappa1; }
double ProductSpectrumInput::b2() const { return (2.0 / 3.0) * 2.0 * (kappa1 + kappa2) - 2.0 * kappa2; }

std::vector<double> product_paneitz_spectrum(const ProductSpectrumInput& inp) {
    inp.validate();
    std::vector<double> out(inp.eigs1.size() * inp.eigs2.size());
    kernels::product_spectrum_map(inp.b1(), inp.b2(), inp.eigs1, inp.eigs2, out);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<SpectrumPoint> product_paneitz_spectrum_points(const ProductSpectrumInput& inp) {
    inp.validate();
    std::vector<double> values(inp.eigs1.size() * inp.eigs2.size());
    kernels::product_spectrum_map(inp.b1(), inp.b2(), inp.eigs1, inp.eigs2, values);
    std::vector<SpectrumPoint> pts;
    pts.reserve(values.size());
    for (size_t i = 0; i < inp.eigs1.size(); ++i)
        for (size_t j = 0; j < inp.eigs2.size(); ++j)
            pts.push_back(SpectrumPoint{inp.eigs1[i], inp.eigs2[j], values[i * inp.eigs2.size() + j]});
    std::sort(pts.begin(), pts.end(), [](const SpectrumPoint& a, const SpectrumPoint& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        return a.mu < b.mu;
    });
    return pts;
}

PositivityCertificate positivity_certificate(const Background& bg,
                                             const ProductSpectrumInput* spectra) {
    const CurvaturePackage pkg = curvature_of(bg);
    const SymEndo4 gap = SymEndo4::identity() * pkg.scalar - pkg.ric;  // R g - Ric
    if (min_eigenvalue(gap) >= 0.0)
        return PositivityCertificate{true, true, std::nullopt, "Ric <= R g pointwise"};

    if (spectra != nullptr) {
        const std::vector<SpectrumPoint> pts = product_paneitz_spectrum_points(*spectra);
        if (!pts.empty() && pts.front().value < 0.0) {
            return PositivityCertificate{
                false, false,
                SpectrumWitness{pts.front().lambda, pts.front().mu, pts.front().value},
                "negative product eigenmode"};
        }
        return PositivityCertificate{false, false, std::nullopt,
                                     "pointwise test failed; supplied spectra show no negative "
                                     "mode (inconclusive)"};
    }
    return PositivityCertificate{false, false, std::nullopt,
                                 "pointwise test failed; no spectra supplied to search"};
}

bool generalized_certificate(const Background& bg, double lambda) {
    if (lambda < 1.0 || lambda > 3.0)
        throw config_error("generalized_certificate: lambda must lie in [1, 3]");
    const CurvaturePackage pkg = curvature_of(bg);
    const SymEndo4 gap = SymEndo4::identity() * pkg.scalar - pkg.ric * lambda;
    return min_eigenvalue(gap) >= 0.0;
}

double evaluate_F(const S1xS3& bg, const ReducedField& phi, DerivScheme scheme) {
    require_reduced(bg, phi);
    const CurvaturePackage pkg = curvature_of(Background{bg});
    const double q = homogeneous_q(pkg);  // identically 0 on S^1 x S^3
    const double h = phi.period() / phi.grid_n();
    const double slice = sphere_slice_volume(bg);

    const QuadraticFormReport rep = quadratic_form(bg, phi, scheme);
    double int_phi = 0.0, int_exp = 0.0;
    for (int k = 0; k < phi.grid_n(); ++k) {
        int_phi += phi[k];
        int_exp += std::exp(-4.0 * phi[k]);
    }
    int_phi *= h * slice;
    int_exp *= h * slice;
    if (!(int_exp > 0.0) || !std::isfinite(int_exp))
        throw error("evaluate_F: quadrature of e^{-4 phi} failed");
    return rep.form_value - 4.0 * q * int_phi - q * pkg.volume * std::log(int_exp);
}

double evaluate_F_constant(const Background& bg, double c) {
    const CurvaturePackage pkg = curvature_of(bg);
    const double q = homogeneous_q(pkg);
    const double q_total = q * pkg.volume;
    const double int_exp = std::exp(-4.0 * c) * pkg.volume;
    return 0.0 - 4.0 * q * c * pkg.volume - q_total * std::log(int_exp);
}

}  // namespace conf4
