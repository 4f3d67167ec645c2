/// @file norms.hpp
/// @brief Inner products and the L2 / H1 / H^-1 norms.
///
/// inner_L2 is the volume-weighted grid sum h1*h2*h3 * sum(f*g). The Sobolev
/// norms are evaluated in Fourier space with the full |k|^2 symbol:
///   norm_H1(f)^2    = sum_k |k|^2 |fhat_k|^2   (Parseval-normalized)
///   norm_Hneg1(f)^2 = sum_{k!=0} |fhat_k|^2 / |k|^2
/// This makes them an exact dual pair on mean-zero fields, and norm_H1 agrees
/// with ||grad f||_L2 for band-limited fields.

#pragma once

#include "pqg/field.hpp"

namespace pqg {

double inner_L2(const ScalarField& f, const ScalarField& g);
double norm_L2(const ScalarField& f);
double norm_L2(const VectorField& f);

/// Homogeneous H1 seminorm (constants have norm zero).
double norm_H1(const ScalarField& f);

/// Dual norm of the mean-zero H1 space; throws NotMeanZero when the input
/// carries a nonzero average.
double norm_Hneg1(const ScalarField& f);

} // namespace pqg
