#include "conf4/sym4.hpp"

#include <algorithm>
#include <cmath>

#include "conf4/errors.hpp"

namespace conf4 {

SymEndo4 SymEndo4::identity() { return diagonal(1.0, 1.0, 1.0, 1.0); }

SymEndo4 SymEndo4::diagonal(double a, double b, double c, double d) {
    SymEndo4 m;
    m.e_[0] = a;
    m.e_[5] = b;
    m.e_[10] = c;
    m.e_[15] = d;
    return m;
}

SymEndo4 SymEndo4::diagonal(const std::array<double, 4>& d) {
    return diagonal(d[0], d[1], d[2], d[3]);
}

SymEndo4 SymEndo4::from_rows(const std::array<std::array<double, 4>, 4>& rows) {
    SymEndo4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) m.set(i, j, 0.5 * (rows[static_cast<size_t>(i)][static_cast<size_t>(j)] +
                                                       rows[static_cast<size_t>(j)][static_cast<size_t>(i)]));
    return m;
}

SymEndo4 SymEndo4::operator+(const SymEndo4& o) const {
    SymEndo4 r;
    for (size_t k = 0; k < 16; ++k) r.e_[k] = e_[k] + o.e_[k];
    return r;
}

SymEndo4 SymEndo4::operator-(const SymEndo4& o) const {
    SymEndo4 r;
    for (size_t k = 0; k < 16; ++k) r.e_[k] = e_[k] - o.e_[k];
    return r;
}

SymEndo4 SymEndo4::operator*(double s) const {
    SymEndo4 r;
    for (size_t k = 0; k < 16; ++k) r.e_[k] = e_[k] * s;
    return r;
}

SymEndo4 SymEndo4::operator-() const { return (*this) * -1.0; }

double SymEndo4::trace() const { return e_[0] + e_[5] + e_[10] + e_[15]; }

double SymEndo4::trace_sq() const {
    double s = 0.0;
    for (size_t k = 0; k < 16; ++k) s += e_[k] * e_[k];
    return s;
}

SymEndo4 SymEndo4::conjugated(const std::array<std::array<double, 4>, 4>& q) const {
    // B = Q A Q^T
    std::array<std::array<double, 4>, 4> qa{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += q[static_cast<size_t>(i)][static_cast<size_t>(k)] * (*this)(k, j);
            qa[static_cast<size_t>(i)][static_cast<size_t>(j)] = s;
        }
    std::array<std::array<double, 4>, 4> b{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0.0;
            for (int k = 0; k < 4; ++k) s += qa[static_cast<size_t>(i)][static_cast<size_t>(k)] * q[static_cast<size_t>(j)][static_cast<size_t>(k)];
            b[static_cast<size_t>(i)][static_cast<size_t>(j)] = s;
        }
    return from_rows(b);
}

double sigma1(const SymEndo4& a) { return a.trace(); }

double sigma2(const SymEndo4& a) {
    const double s1 = a.trace();
    return 0.5 * (s1 * s1 - a.trace_sq());
}

ConeVerdict cone_check(const SymEndo4& a) {
    const double s1 = sigma1(a);
    const double s2 = sigma2(a);
    return ConeVerdict{s1, s2, s1 > 0.0 && s2 > 0.0, std::min(s1, s2)};
}

SymEndo4 newton_transform(const SymEndo4& a) {
    return SymEndo4::identity() * sigma1(a) - a;
}

SymEndo4 l_operator(const SymEndo4& a, double t) {
    const SymEndo4 t1 = newton_transform(a);
    return t1 + SymEndo4::identity() * (0.5 * (1.0 - t) * sigma1(t1));
}

SymEndo4 hat_reflection(const SymEndo4& a) {
    return SymEndo4::identity() * (0.5 * sigma1(a)) - a;
}

double concavity_gap(const SymEndo4& a, const SymEndo4& b, double s) {
    if (s < 0.0 || s > 1.0) throw error("concavity_gap: s must lie in [0,1]");
    const ConeVerdict va = cone_check(a);
    const ConeVerdict vb = cone_check(b);
    if (!va.in_gamma2_plus)
        throw cone_violation("concavity_gap: first argument outside Gamma_2^+", -1, va.sigma1, va.sigma2);
    if (!vb.in_gamma2_plus)
        throw cone_violation("concavity_gap: second argument outside Gamma_2^+", -1, vb.sigma1, vb.sigma2);
    const SymEndo4 mid = a * (1.0 - s) + b * s;
    return std::sqrt(sigma2(mid)) - (1.0 - s) * std::sqrt(va.sigma2) - s * std::sqrt(vb.sigma2);
}

SymEndo4 t_shift(const SymEndo4& a1, double t) {
    return a1 + SymEndo4::identity() * (0.5 * (1.0 - t) * sigma1(a1));
}

double sigma2_shift_identity(const SymEndo4& a1, double t) {
    const double s1 = sigma1(a1);
    return sigma2(a1) + 1.5 * (1.0 - t) * (2.0 - t) * s1 * s1;
}

std::array<double, 4> eigenvalues(const SymEndo4& a) {
    // Cyclic Jacobi on a local copy. Converged when the off-diagonal
    // Frobenius mass drops below 1e-12 relative to the matrix scale.
    std::array<std::array<double, 4>, 4> m{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = a(i, j);

    const double scale = std::sqrt(a.trace_sq());
    const double thresh = 1e-12 * std::max(scale, 1e-300);

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 4; ++q) off += m[static_cast<size_t>(p)][static_cast<size_t>(q)] * m[static_cast<size_t>(p)][static_cast<size_t>(q)];
        if (std::sqrt(2.0 * off) <= thresh) break;

        for (int p = 0; p < 3; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const double apq = m[static_cast<size_t>(p)][static_cast<size_t>(q)];
                if (apq == 0.0) continue;
                const double app = m[static_cast<size_t>(p)][static_cast<size_t>(p)];
                const double aqq = m[static_cast<size_t>(q)][static_cast<size_t>(q)];
                const double theta = 0.5 * (aqq - app) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 4; ++k) {
                    const double mkp = m[static_cast<size_t>(k)][static_cast<size_t>(p)];
                    const double mkq = m[static_cast<size_t>(k)][static_cast<size_t>(q)];
                    m[static_cast<size_t>(k)][static_cast<size_t>(p)] = c * mkp - s * mkq;
                    m[static_cast<size_t>(k)][static_cast<size_t>(q)] = s * mkp + c * mkq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double mpk = m[static_cast<size_t>(p)][static_cast<size_t>(k)];
                    const double mqk = m[static_cast<size_t>(q)][static_cast<size_t>(k)];
                    m[static_cast<size_t>(p)][static_cast<size_t>(k)] = c * mpk - s * mqk;
                    m[static_cast<size_t>(q)][static_cast<size_t>(k)] = s * mpk + c * mqk;
                }
            }
        }
    }
    std::array<double, 4> ev{m[0][0], m[1][1], m[2][2], m[3][3]};
    std::sort(ev.begin(), ev.end());
    return ev;
}

double min_eigenvalue(const SymEndo4& a) { return eigenvalues(a)[0]; }

}  // namespace conf4
