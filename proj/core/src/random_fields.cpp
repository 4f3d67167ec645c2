#include "pqg/random_fields.hpp"

#include <cmath>
#include <random>

#include "pqg/norms.hpp"
#include "pqg/operators.hpp"

namespace pqg {

namespace {

double uniform01(std::mt19937_64& rng) {
    return (rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
    // Box-Muller on raw uniforms: std::normal_distribution is not
    // bit-stable across standard libraries.
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

} // namespace

ScalarField band_limited_noise(const GridSpec& grid, int kmax,
                               std::uint64_t seed, double h1_norm) {
    if (kmax < 1) throw ConfigInvalid("band_limited_noise: kmax must be >= 1");
    std::mt19937_64 rng(seed);
    ScalarField f(grid);

    // one representative per conjugate pair: lexicographically positive m
    for (int m1 = -kmax; m1 <= kmax; ++m1) {
        for (int m2 = -kmax; m2 <= kmax; ++m2) {
            for (int m3 = -kmax; m3 <= kmax; ++m3) {
                if (m1 == 0 && m2 == 0 && m3 == 0) continue;
                if (m1 < 0) continue;
                if (m1 == 0 && m2 < 0) continue;
                if (m1 == 0 && m2 == 0 && m3 < 0) continue;
                const double amp = gaussian(rng);
                const double phase = two_pi * uniform01(rng);
                const double k1 = two_pi * m1 / grid.L1;
                const double k2 = two_pi * m2 / grid.L2;
                const double k3 = two_pi * m3 / grid.L3;
                std::size_t idx = 0;
                auto v = f.values();
                for (int i1 = 0; i1 < grid.n1; ++i1) {
                    const double a1 = k1 * grid.x1(i1);
                    for (int i2 = 0; i2 < grid.n2; ++i2) {
                        const double a12 = a1 + k2 * grid.x2(i2);
                        for (int i3 = 0; i3 < grid.n3; ++i3, ++idx)
                            v[idx] += amp * std::cos(a12 + k3 * grid.x3(i3) + phase);
                    }
                }
            }
        }
    }
    f = project_mean_zero(f);
    const double nh = norm_H1(f);
    if (nh > 0.0) f *= h1_norm / nh;
    f.set_mean_zero(true);
    return f;
}

} // namespace pqg
