/// @file random_fields.hpp
/// @brief Seeded random fields for audits and probes.

#pragma once

#include <cstdint>

#include "pqg/field.hpp"

namespace pqg {

/// Band-limited noise: a sum of Fourier modes with |m_a| <= kmax, Gaussian
/// amplitudes and uniform phases drawn from a seeded mt19937_64 (Box-Muller,
/// no library distributions, so the field is bit-reproducible everywhere).
/// Mean-zero by construction; scaled to the requested H1 seminorm.
ScalarField band_limited_noise(const GridSpec& grid, int kmax,
                               std::uint64_t seed, double h1_norm = 1.0);

} // namespace pqg
