#ifndef CONF4_PANEITZ_HPP
#define CONF4_PANEITZ_HPP

#include <optional>
#include <string>
#include <vector>

#include "conf4/reduced.hpp"

namespace conf4 {

// Paneitz operator P = Delta^2 + delta((2/3) R g - 2 Ric) d and its
// quadratic form, on symmetry-reduced S^1 x S^3 fields and on products of
// constant-curvature surfaces through their Laplace spectra.
//
// Sign conventions, fixed once for the whole artifact: Delta is the trace
// of the Hessian, and delta is the L^2 adjoint of d, so delta d = -Delta
// on functions. Reported Laplace eigenvalue lists use lambda >= 0 with
// Delta psi = -lambda psi.

/// P phi on the reduced grid: phi'''' - (4/r^2) phi''. On the unit
/// background the coefficient is 4, from B = (2/3) R g - 2 Ric having
/// theta-theta entry 4 and sphere entries 0.
std::vector<double> paneitz_apply_reduced(const S1xS3& bg, const ReducedField& phi,
                                          DerivScheme scheme = DerivScheme::Spectral);

struct QuadraticFormReport {
    double form_value;              // <P phi, phi>
    double hessian_term;            // (4/3) int |tracefree Hessian|^2
    double curvature_term;          // (2/3) int (R g - Ric)(grad phi, grad phi)
    double decomposition_residual;  // |form - hessian - curvature|
};

/// Quadratic form of P on a reduced field, with the Bochner-rearranged
/// split computed independently by quadrature of first/second derivatives.
/// Supports any (circumference, sphere_radius); the split uses
/// |tracefree Hessian|^2 = (3/4) (phi'')^2.
QuadraticFormReport quadratic_form(const S1xS3& bg, const ReducedField& phi,
                                   DerivScheme scheme = DerivScheme::Spectral);

/// Quadratic form on a separable product eigenfunction with factor Laplace
/// eigenvalues (lambda, mu), normalized to unit L^2 norm.
QuadraticFormReport quadratic_form_product(const ProductSurfaces& bg, double lambda, double mu);

struct ProductSpectrumInput {
    double kappa1;
    double kappa2;
    std::vector<double> eigs1;  // ascending, containing 0
    std::vector<double> eigs2;

    void validate() const;
    /// b_i = (2/3) R - 2 kappa_i with R = 2 kappa1 + 2 kappa2.
    double b1() const;
    double b2() const;
};

struct SpectrumPoint {
    double lambda;
    double mu;
    double value;
};

/// Paneitz eigenvalues {(lambda+mu)^2 + b1 lambda + b2 mu}, sorted.
std::vector<double> product_paneitz_spectrum(const ProductSpectrumInput& inp);

/// Same values with their (lambda, mu) provenance, sorted by value.
std::vector<SpectrumPoint> product_paneitz_spectrum_points(const ProductSpectrumInput& inp);

struct SpectrumWitness {
    double lambda;
    double mu;
    double form_value;
};

struct PositivityCertificate {
    bool positive_semidefinite;
    bool kernel_is_constants;
    std::optional<SpectrumWitness> witness;  // negative mode when found
    std::string note;
};

/// Certifies P >= 0 with kernel the constants when Ric <= R g pointwise
/// (eigenvalue test on the closed-form curvature). When the test fails,
/// searches the supplied product spectrum for a negative witness.
PositivityCertificate positivity_certificate(const Background& bg,
                                             const ProductSpectrumInput* spectra = nullptr);

/// Generalized pointwise test R g - lambda Ric >= 0 for lambda in [1, 3].
bool generalized_certificate(const Background& bg, double lambda);

/// F[phi] = <P phi, phi> - 4 int Q phi dvol - (int Q dvol) log int e^{-4 phi} dvol
/// on reduced fields over S^1 x S^3 (where Q_g = 0 on the unit background).
double evaluate_F(const S1xS3& bg, const ReducedField& phi,
                  DerivScheme scheme = DerivScheme::Spectral);

/// F at a constant phi = c on a frame-level background, in closed form.
double evaluate_F_constant(const Background& bg, double c);

}  // namespace conf4

#endif
