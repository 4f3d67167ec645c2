/// @file operators.hpp
/// @brief Discrete differential operators on periodic fields.
///
/// Two discretizations sit behind one interface:
///  - DiffMode::FD: second-order centered differences (local stencils),
///  - DiffMode::Spectral: exact Fourier derivatives for band-limited fields.
/// Both are skew-adjoint for first derivatives, so <diff f, g> = -<f, diff g>
/// holds to round-off in either mode. The spectral Laplacian uses the full
/// -|k|^2 symbol; the FD Laplacian is the composition of centered first
/// differences (so laplacian == laplacian_h + diff3(diff3(.)) exactly).

#pragma once

#include "pqg/field.hpp"

namespace pqg {

enum class DiffMode { FD, Spectral };

/// Subtracts the grid average; result carries the mean_zero flag.
ScalarField project_mean_zero(const ScalarField& f);

/// First derivative along an axis (1, 2 or 3).
ScalarField diff(const ScalarField& f, int axis, DiffMode mode = DiffMode::FD);

VectorField grad(const ScalarField& f, DiffMode mode = DiffMode::FD);
/// Horizontal gradient (third component identically zero).
VectorField grad_h(const ScalarField& f, DiffMode mode = DiffMode::FD);

ScalarField laplacian(const ScalarField& f, DiffMode mode = DiffMode::FD);
/// Horizontal Laplacian d11 + d22 (no x3 term).
ScalarField laplacian_h(const ScalarField& f, DiffMode mode = DiffMode::FD);

/// Grid-shift difference f(x + shift_cells*h*e_axis) - f(x), periodic wrap.
ScalarField finite_difference(const ScalarField& f, int axis, int shift_cells);

/// Spectral solve of -Lap u = f on mean-zero data (Fourier symbol division,
/// zero mode excluded). Throws NotMeanZero when f has a nonzero average.
ScalarField inverse_laplacian(const ScalarField& f);

} // namespace pqg
