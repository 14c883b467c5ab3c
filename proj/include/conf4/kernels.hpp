#ifndef CONF4_KERNELS_HPP
#define CONF4_KERNELS_HPP

#include <span>

#include "conf4/sym4.hpp"

namespace conf4 {
namespace kernels {

// Data-parallel inner loops. The `omp` namespace holds the OpenMP
// implementations (compiled serially when OpenMP is absent); `reference`
// holds the plain serial loops kept for testing. Each element is computed
// independently with the same floating-point expression, so the two
// implementations agree bit for bit.

namespace reference {

void schouten_eigenvalues(double t, std::span<const double> d2u, std::span<const double> d1u,
                          std::span<double> lam_theta, std::span<double> lam_sphere);

void sigma12_from_eigenvalues(std::span<const double> lam_theta, std::span<const double> lam_sphere,
                              std::span<double> s1, std::span<double> s2);

void sigma12_batch(std::span<const SymEndo4> a, std::span<double> s1, std::span<double> s2);

/// Paneitz eigenvalue map on separable product eigenfunctions:
/// out[i*m2 + j] = (l1[i]+l2[j])^2 + b1 l1[i] + b2 l2[j].
void product_spectrum_map(double b1, double b2, std::span<const double> eigs1,
                          std::span<const double> eigs2, std::span<double> out);

}  // namespace reference

namespace omp {

void schouten_eigenvalues(double t, std::span<const double> d2u, std::span<const double> d1u,
                          std::span<double> lam_theta, std::span<double> lam_sphere);

void sigma12_from_eigenvalues(std::span<const double> lam_theta, std::span<const double> lam_sphere,
                              std::span<double> s1, std::span<double> s2);

void sigma12_batch(std::span<const SymEndo4> a, std::span<double> s1, std::span<double> s2);

void product_spectrum_map(double b1, double b2, std::span<const double> eigs1,
                          std::span<const double> eigs2, std::span<double> out);

}  // namespace omp

// Default dispatch.
using omp::product_spectrum_map;
using omp::schouten_eigenvalues;
using omp::sigma12_batch;
using omp::sigma12_from_eigenvalues;

}  // namespace kernels
}  // namespace conf4

#endif
