#ifndef CONF4_RANDOM_HPP
#define CONF4_RANDOM_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "conf4/sym4.hpp"

namespace conf4 {

/// Deterministic draws layered over mt19937_64. Distributions are built
/// from raw 53-bit uniforms so results do not depend on the standard
/// library's distribution implementations.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    double uniform() { return std::ldexp(static_cast<double>(gen_() >> 11), -53); }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.28318530717958647692528676655900577 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Haar-ish orthogonal 4x4 by Gram-Schmidt of a Gaussian matrix.
    std::array<std::array<double, 4>, 4> orthogonal4() {
        std::array<std::array<double, 4>, 4> q{};
        for (auto& row : q)
            for (auto& v : row) v = gaussian();
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < i; ++j) {
                double dot = 0.0;
                for (int k = 0; k < 4; ++k) dot += q[static_cast<size_t>(i)][static_cast<size_t>(k)] * q[static_cast<size_t>(j)][static_cast<size_t>(k)];
                for (int k = 0; k < 4; ++k) q[static_cast<size_t>(i)][static_cast<size_t>(k)] -= dot * q[static_cast<size_t>(j)][static_cast<size_t>(k)];
            }
            double norm = 0.0;
            for (int k = 0; k < 4; ++k) norm += q[static_cast<size_t>(i)][static_cast<size_t>(k)] * q[static_cast<size_t>(i)][static_cast<size_t>(k)];
            norm = std::sqrt(norm);
            if (norm < 1e-8) return orthogonal4();  // essentially never
            for (int k = 0; k < 4; ++k) q[static_cast<size_t>(i)][static_cast<size_t>(k)] /= norm;
        }
        return q;
    }

    /// General symmetric endomorphism with Gaussian entries of the given scale.
    SymEndo4 symmetric(double scale = 1.0) {
        SymEndo4 a;
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) a.set(i, j, scale * gaussian());
        return a;
    }

    /// Random element of Gamma_2^+: rejection-sampled eigenvalue quadruple
    /// conjugated by a random orthogonal frame.
    SymEndo4 gamma2_plus() {
        for (;;) {
            std::array<double, 4> ev{};
            for (auto& v : ev) v = uniform(-1.0, 2.0);
            const SymEndo4 d = SymEndo4::diagonal(ev);
            if (sigma1(d) > 0.05 && sigma2(d) > 0.05) return d.conjugated(orthogonal4());
        }
    }

    uint64_t raw() { return gen_(); }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace conf4

#endif
