#include "conf4/geometry.hpp"

#include <cmath>
#include <cstdlib>

#include "conf4/errors.hpp"

namespace conf4 {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double kulkarni_nomizu(const SymEndo4& h, const SymEndo4& k, int i, int j, int l, int m) {
    return h(i, l) * k(j, m) + h(j, m) * k(i, l) - h(i, m) * k(j, l) - h(j, l) * k(i, m);
}

// Euler characteristic of a constant-curvature surface from Gauss-Bonnet.
// Must land on an integer when kappa != 0.
int surface_euler(double kappa, double area) {
    if (kappa == 0.0) return 0;
    const double chi = kappa * area / (2.0 * kPi);
    const double rounded = std::round(chi);
    if (std::abs(chi - rounded) > 1e-9 * std::max(1.0, std::abs(chi)))
        throw config_error("ProductSurfaces: area is not Gauss-Bonnet consistent with kappa");
    return static_cast<int>(rounded);
}

}  // namespace

void validate(const Background& bg) {
    if (const auto* s4 = std::get_if<RoundS4>(&bg)) {
        if (s4->radius <= 0.0) throw config_error("RoundS4: radius must be positive");
    } else if (const auto* p = std::get_if<S1xS3>(&bg)) {
        if (p->circumference <= 0.0 || p->sphere_radius <= 0.0)
            throw config_error("S1xS3: circumference and sphere_radius must be positive");
    } else if (const auto* pr = std::get_if<ProductSurfaces>(&bg)) {
        if (pr->area1 <= 0.0 || pr->area2 <= 0.0)
            throw config_error("ProductSurfaces: areas must be positive");
        surface_euler(pr->kappa1, pr->area1);
        surface_euler(pr->kappa2, pr->area2);
    } else if (const auto* c = std::get_if<ConstantsOnly>(&bg)) {
        if (c->weyl_l2 < 0.0) throw config_error("ConstantsOnly: weyl_l2 must be nonnegative");
        const double lhs = 8.0 * kPi * kPi * c->chi;
        const double rhs = c->weyl_l2 + 2.0 * c->q_total;
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 8.0 * kPi * kPi});
        if (std::abs(lhs - rhs) > 1e-9 * scale)
            throw config_error("ConstantsOnly record '" + c->name +
                               "' violates 8*pi^2*chi = weyl_l2 + 2*q_total");
    }
}

CurvaturePackage curvature_of(const Background& bg) {
    validate(bg);
    CurvaturePackage pkg;
    if (const auto* s4 = std::get_if<RoundS4>(&bg)) {
        const double r2 = s4->radius * s4->radius;
        pkg.ric = SymEndo4::identity() * (3.0 / r2);
        pkg.scalar = 12.0 / r2;
        pkg.volume = (8.0 / 3.0) * kPi * kPi * r2 * r2;
        pkg.weyl_l2 = 0.0;
        pkg.euler = 2;
    } else if (const auto* p = std::get_if<S1xS3>(&bg)) {
        const double r2 = p->sphere_radius * p->sphere_radius;
        pkg.ric = SymEndo4::diagonal(0.0, 2.0 / r2, 2.0 / r2, 2.0 / r2);
        pkg.scalar = 6.0 / r2;
        pkg.volume = p->circumference * 2.0 * kPi * kPi * r2 * p->sphere_radius;
        pkg.weyl_l2 = 0.0;
        pkg.euler = 0;
    } else if (const auto* pr = std::get_if<ProductSurfaces>(&bg)) {
        pkg.ric = SymEndo4::diagonal(pr->kappa1, pr->kappa1, pr->kappa2, pr->kappa2);
        pkg.scalar = 2.0 * pr->kappa1 + 2.0 * pr->kappa2;
        pkg.volume = pr->area1 * pr->area2;
        pkg.weyl_l2 = weyl_norm2_product(pr->kappa1, pr->kappa2) * pkg.volume;
        pkg.euler = surface_euler(pr->kappa1, pr->area1) * surface_euler(pr->kappa2, pr->area2);
    } else {
        throw unsupported_background("curvature_of: ConstantsOnly backgrounds carry no frame-level curvature");
    }
    pkg.schouten1 = (pkg.ric - SymEndo4::identity() * (pkg.scalar / 6.0)) * 0.5;
    return pkg;
}

SymEndo4 schouten_t(const CurvaturePackage& pkg, double t) {
    return (pkg.ric - SymEndo4::identity() * (t * pkg.scalar / 6.0)) * 0.5;
}

std::pair<SymEndo4, double> ricci_from_schouten(const SymEndo4& a1) {
    const double s1 = sigma1(a1);
    return {a1 * 2.0 + SymEndo4::identity() * s1, 6.0 * s1};
}

double homogeneous_q(const CurvaturePackage& pkg) { return 2.0 * sigma2(pkg.schouten1); }

double weyl_norm2_product(double kappa1, double kappa2) {
    // Orthonormal product frame e1,e2 on the first factor, e3,e4 on the
    // second: the only curvature components are R_1212 = kappa1 and
    // R_3434 = kappa2 (plus symmetries).
    double riem[4][4][4][4] = {};
    auto set_block = [&](int i, int j, double kappa) {
        riem[i][j][i][j] = kappa;
        riem[j][i][j][i] = kappa;
        riem[i][j][j][i] = -kappa;
        riem[j][i][i][j] = -kappa;
    };
    set_block(0, 1, kappa1);
    set_block(2, 3, kappa2);

    const SymEndo4 g = SymEndo4::identity();
    const SymEndo4 ric = SymEndo4::diagonal(kappa1, kappa1, kappa2, kappa2);
    const double scalar = 2.0 * (kappa1 + kappa2);
    const SymEndo4 e = ric - g * (scalar / 4.0);  // trace-free Ricci

    double w2 = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int l = 0; l < 4; ++l)
                for (int m = 0; m < 4; ++m) {
                    const double w = riem[i][j][l][m] -
                                     0.5 * kulkarni_nomizu(e, g, i, j, l, m) -
                                     (scalar / 24.0) * kulkarni_nomizu(g, g, i, j, l, m);
                    w2 += w * w;
                }
    // |W|^2 in the normalization entering 8 pi^2 chi = int |W|^2 + F_2,
    // i.e. the norm of W acting on 2-forms: a quarter of the full
    // four-index contraction.
    return 0.25 * w2;
}

}  // namespace conf4
