/// Shared helpers for the unit suites.

#pragma once

#include <cmath>
#include <cstdlib>

#include "pqg/energy.hpp"
#include "pqg/norms.hpp"
#include "pqg/random_fields.hpp"

namespace pqg::test {

inline GridSpec small_cube(int n = 16) { return GridSpec::cubic(n); }

/// Random data on a grid: band-limited M and mean-zero PV, fixed seeds.
inline InversionData random_data(const GridSpec& g, std::uint64_t seed = 42,
                                 double amplitude = 1.0) {
    ScalarField M = band_limited_noise(g, 3, seed, amplitude);
    ScalarField PV = band_limited_noise(g, 3, seed + 1000, amplitude);
    return InversionData(std::move(M), std::move(PV));
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

} // namespace pqg::test
