#ifndef CONF4_SYM4_HPP
#define CONF4_SYM4_HPP

#include <array>
#include <cstddef>

namespace conf4 {

/// Symmetric endomorphism of a 4-dimensional inner-product space, stored in
/// an orthonormal frame. Value type; all operations on it are pure.
class SymEndo4 {
  public:
    SymEndo4() : e_{} {}

    static SymEndo4 identity();
    static SymEndo4 diagonal(double a, double b, double c, double d);
    static SymEndo4 diagonal(const std::array<double, 4>& d);
    /// Builds from a full 4x4 array, symmetrizing (a_ij + a_ji)/2.
    static SymEndo4 from_rows(const std::array<std::array<double, 4>, 4>& rows);

    double operator()(int i, int j) const { return e_[static_cast<size_t>(4 * i + j)]; }
    void set(int i, int j, double v) {
        e_[static_cast<size_t>(4 * i + j)] = v;
        e_[static_cast<size_t>(4 * j + i)] = v;
    }

    SymEndo4 operator+(const SymEndo4& o) const;
    SymEndo4 operator-(const SymEndo4& o) const;
    SymEndo4 operator*(double s) const;
    SymEndo4 operator-() const;

    double trace() const;
    /// tr(A^2) = sum_ij a_ij^2 for symmetric A.
    double trace_sq() const;
    /// Q * A * Q^T for orthogonal Q (rows of q), re-symmetrized.
    SymEndo4 conjugated(const std::array<std::array<double, 4>, 4>& q) const;

  private:
    std::array<double, 16> e_;
};

inline SymEndo4 operator*(double s, const SymEndo4& a) { return a * s; }

struct ConeVerdict {
    double sigma1;
    double sigma2;
    bool in_gamma2_plus;
    double margin;  // min(sigma1, sigma2)
};

double sigma1(const SymEndo4& a);

/// Second elementary symmetric function of the eigenvalues, computed from
/// traces as (sigma1^2 - tr A^2)/2. Eigenvalues are never touched here.
double sigma2(const SymEndo4& a);

/// Strict cone test: in Gamma_2^+ iff sigma1 > 0 and sigma2 > 0. Callers
/// needing a tolerance consume the margin field.
ConeVerdict cone_check(const SymEndo4& a);

/// First Newton transformation T1(A) = sigma1(A) I - A.
SymEndo4 newton_transform(const SymEndo4& a);

/// L^t(A) = T1(A) + (1-t)/2 * sigma1(T1(A)) * I. Positive definite for
/// A in Gamma_2^+ and t <= 1.
SymEndo4 l_operator(const SymEndo4& a, double t);

/// Reflection keeping the pure-trace part and negating the trace-free part:
/// A-hat = sigma1(A)/2 * I - A. Preserves sigma1 and sigma2; involution.
SymEndo4 hat_reflection(const SymEndo4& a);

/// sigma2((1-s)A + sB)^(1/2) - (1-s) sigma2(A)^(1/2) - s sigma2(B)^(1/2).
/// Nonnegative for A, B in Gamma_2^+ and s in [0,1]; rejects inputs outside
/// the cone or s outside [0,1].
double concavity_gap(const SymEndo4& a, const SymEndo4& b, double s);

/// A^t from the Schouten endomorphism: A1 + (1-t)/2 * sigma1(A1) * I.
SymEndo4 t_shift(const SymEndo4& a1, double t);

/// Predicted sigma2(t_shift(A1, t)) without forming the shift:
/// sigma2(A1) + 3/2 (1-t)(2-t) sigma1(A1)^2.
double sigma2_shift_identity(const SymEndo4& a1, double t);

/// The four (real) eigenvalues in nondecreasing order, by cyclic Jacobi
/// rotations with a 1e-12 relative off-diagonal threshold.
std::array<double, 4> eigenvalues(const SymEndo4& a);

/// Smallest eigenvalue; convenience for definiteness checks.
double min_eigenvalue(const SymEndo4& a);

}  // namespace conf4

#endif
