#ifndef CONF4_GEOMETRY_HPP
#define CONF4_GEOMETRY_HPP

#include <string>
#include <utility>
#include <variant>

#include "conf4/sym4.hpp"

namespace conf4 {

// Model backgrounds with closed-form curvature. ConstantsOnly records carry
// just the (chi, |W|^2 total, Yamabe, total Q) quadruple used by the ledger.

struct RoundS4 {
    double radius = 1.0;
};

struct S1xS3 {
    double circumference = 6.283185307179586476925286766559;  // 2*pi
    double sphere_radius = 1.0;
};

struct ProductSurfaces {
    double kappa1 = 1.0;
    double kappa2 = 1.0;
    double area1 = 12.566370614359172953850573533118;  // 4*pi
    double area2 = 12.566370614359172953850573533118;
};

struct ConstantsOnly {
    std::string name;
    int chi = 0;
    double weyl_l2 = 0.0;
    double yamabe = 0.0;
    double q_total = 0.0;
};

using Background = std::variant<RoundS4, S1xS3, ProductSurfaces, ConstantsOnly>;

/// Throws config_error on nonpositive scales, Gauss-Bonnet-inconsistent
/// product areas, or a ConstantsOnly record violating 8 pi^2 chi = W + 2Q.
void validate(const Background& bg);

struct CurvaturePackage {
    SymEndo4 ric;       // g^{-1} Ric in an adapted orthonormal frame
    double scalar;      // sigma1(ric)
    SymEndo4 schouten1; // (ric - scalar/6 * I)/2
    double volume;
    double weyl_l2;     // integral of |W|^2
    int euler;
};

/// Closed-form curvature of a frame-level background. ConstantsOnly inputs
/// are rejected with unsupported_background.
CurvaturePackage curvature_of(const Background& bg);

/// A^t endomorphism of the background: (ric - t*scalar/6 * I)/2.
SymEndo4 schouten_t(const CurvaturePackage& pkg, double t);

/// Inverts A1 = (Ric - R/6 g)/2: returns (Ric, R) with R = 6 sigma1(a1),
/// Ric = 2 a1 + sigma1(a1) I.
std::pair<SymEndo4, double> ricci_from_schouten(const SymEndo4& a1);

/// Q-curvature of a homogeneous background (R constant, so the Laplacian
/// term drops): Q = 2 sigma2(A1).
double homogeneous_q(const CurvaturePackage& pkg);

/// |W|^2 of a product of constant-curvature surfaces, by assembling the
/// full curvature tensor in a product frame and subtracting the Ricci part
/// of the standard four-dimensional decomposition.
double weyl_norm2_product(double kappa1, double kappa2);

}  // namespace conf4

#endif
