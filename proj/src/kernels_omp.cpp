#include <cstdint>

#include "conf4/kernels.hpp"

// Same per-element expressions as the reference kernels; loops are split
// across threads by element, so results are identical bit for bit.

namespace conf4 {
namespace kernels {
namespace omp {

void schouten_eigenvalues(double t, std::span<const double> d2u, std::span<const double> d1u,
                          std::span<double> lam_theta, std::span<double> lam_sphere) {
    const int64_t n = static_cast<int64_t>(d2u.size());
#pragma omp parallel for schedule(static)
    for (int64_t k = 0; k < n; ++k) {
        const double upp = d2u[static_cast<size_t>(k)];
        const double up2 = d1u[static_cast<size_t>(k)] * d1u[static_cast<size_t>(k)];
        lam_theta[static_cast<size_t>(k)] = -0.5 * t + 0.5 * (3.0 - t) * upp + 0.5 * t * up2;
        lam_sphere[static_cast<size_t>(k)] = 0.5 * (2.0 - t) + 0.5 * (1.0 - t) * upp - 0.5 * (2.0 - t) * up2;
    }
}

void sigma12_from_eigenvalues(std::span<const double> lam_theta, std::span<const double> lam_sphere,
                              std::span<double> s1, std::span<double> s2) {
    const int64_t n = static_cast<int64_t>(lam_theta.size());
#pragma omp parallel for schedule(static)
    for (int64_t k = 0; k < n; ++k) {
        const double lt = lam_theta[static_cast<size_t>(k)];
        const double ls = lam_sphere[static_cast<size_t>(k)];
        s1[static_cast<size_t>(k)] = lt + 3.0 * ls;
        s2[static_cast<size_t>(k)] = 3.0 * lt * ls + 3.0 * ls * ls;
    }
}

void sigma12_batch(std::span<const SymEndo4> a, std::span<double> s1, std::span<double> s2) {
    const int64_t n = static_cast<int64_t>(a.size());
#pragma omp parallel for schedule(static)
    for (int64_t k = 0; k < n; ++k) {
        s1[static_cast<size_t>(k)] = sigma1(a[static_cast<size_t>(k)]);
        s2[static_cast<size_t>(k)] = sigma2(a[static_cast<size_t>(k)]);
    }
}

void product_spectrum_map(double b1, double b2, std::span<const double> eigs1,
                          std::span<const double> eigs2, std::span<double> out) {
    const int64_t n1 = static_cast<int64_t>(eigs1.size());
    const int64_t n2 = static_cast<int64_t>(eigs2.size());
#pragma omp parallel for schedule(static)
    for (int64_t i = 0; i < n1; ++i) {
        for (int64_t j = 0; j < n2; ++j) {
            const double sum = eigs1[static_cast<size_t>(i)] + eigs2[static_cast<size_t>(j)];
            out[static_cast<size_t>(i * n2 + j)] = sum * sum + b1 * eigs1[static_cast<size_t>(i)] + b2 * eigs2[static_cast<size_t>(j)];
        }
    }
}

}  // namespace omp
}  // namespace kernels
}  // namespace conf4
