#include "conf4/kernels.hpp"

namespace conf4 {
namespace kernels {
namespace reference {

void schouten_eigenvalues(double t, std::span<const double> d2u, std::span<const double> d1u,
                          std::span<double> lam_theta, std::span<double> lam_sphere) {
    const size_t n = d2u.size();
    for (size_t k = 0; k < n; ++k) {
        const double upp = d2u[k];
        const double up2 = d1u[k] * d1u[k];
        lam_theta[k] = -0.5 * t + 0.5 * (3.0 - t) * upp + 0.5 * t * up2;
        lam_sphere[k] = 0.5 * (2.0 - t) + 0.5 * (1.0 - t) * upp - 0.5 * (2.0 - t) * up2;
    }
}

void sigma12_from_eigenvalues(std::span<const double> lam_theta, std::span<const double> lam_sphere,
                              std::span<double> s1, std::span<double> s2) {
    const size_t n = lam_theta.size();
    for (size_t k = 0; k < n; ++k) {
        const double lt = lam_theta[k];
        const double ls = lam_sphere[k];
        s1[k] = lt + 3.0 * ls;
        s2[k] = 3.0 * lt * ls + 3.0 * ls * ls;
    }
}

void sigma12_batch(std::span<const SymEndo4> a, std::span<double> s1, std::span<double> s2) {
    const size_t n = a.size();
    for (size_t k = 0; k < n; ++k) {
        s1[k] = sigma1(a[k]);
        s2[k] = sigma2(a[k]);
    }
}

void product_spectrum_map(double b1, double b2, std::span<const double> eigs1,
                          std::span<const double> eigs2, std::span<double> out) {
    const size_t n1 = eigs1.size();
    const size_t n2 = eigs2.size();
    for (size_t i = 0; i < n1; ++i) {
        for (size_t j = 0; j < n2; ++j) {
            const double sum = eigs1[i] + eigs2[j];
            out[i * n2 + j] = sum * sum + b1 * eigs1[i] + b2 * eigs2[j];
        }
    }
}

}  // namespace reference
}  // namespace kernels
}  // namespace conf4
