/// @file energy.hpp
/// @brief The variational energy of the inversion, its derivative, the
/// mollified family, phase reconstruction and the related comparison forms.
///
/// For data (M, PV) and a mean-zero pressure p the energy is
///   E(p) = int 1/2 |grad p|^2 - 1/4 min0(M - d3 p)^2 + <PV, p>
/// and its L2-representable derivative ("residual") is
///   DE(p) = -Lap p - 1/2 d3( min0(M - d3 p) ) + PV.
///
/// Discretization: the quadratic part is always evaluated spectrally (full
/// |k|^2 symbol); the DiffMode argument selects the discrete d3 inside and
/// outside the minimum term (centered FD by default, spectral optionally).
/// With |sin(k h)/h| <= |k| this keeps the discrete energy 1/2-strongly
/// convex with a 3/2-Lipschitz derivative in the spectral H1 metric, so the
/// solver certificates hold exactly for the discrete objective.

#pragma once

#include <functional>
#include <vector>

#include "pqg/constants.hpp"
#include "pqg/field.hpp"
#include "pqg/mollifier.hpp"
#include "pqg/operators.hpp"

namespace pqg {

inline double min0(double x) { return x < 0.0 ? x : 0.0; }

ScalarField min0_field(const ScalarField& s);

/// The given data of one inversion problem. PV must be mean-zero (it stands
/// for an H^-1 functional through the L2 pairing); M and PV share one grid.
struct InversionData {
    ScalarField M;
    ScalarField PV;
    PhysicalConstants constants;

    InversionData(ScalarField M_, ScalarField PV_, PhysicalConstants c = {});
    const GridSpec& grid() const { return M.grid(); }
};

double energy(const ScalarField& p, const InversionData& data,
              DiffMode mode = DiffMode::FD);
ScalarField grad_energy(const ScalarField& p, const InversionData& data,
                        DiffMode mode = DiffMode::FD);

/// Mollified energy E_eps (density f_eps = (1/2 min0^2) * phi_eps) and its
/// derivative with min_eps in place of min0. Require a centered mollifier;
/// both reduce to the sharp versions at eps = 0.
double energy_eps(const ScalarField& p, const InversionData& data,
                  const MollifierSpec& m, DiffMode mode = DiffMode::FD);
ScalarField grad_energy_eps(const ScalarField& p, const InversionData& data,
                            const MollifierSpec& m, DiffMode mode = DiffMode::FD);

/// Phase decomposition recovered from a pressure field:
///   theta_e = d3 p + 1/2 min0(M - d3 p),   q = (1/2 H_u + H_s)(M - d3 p),
/// H_u = 1(M - d3 p < 0) with ties assigned to the saturated side.
struct PhaseField {
    ScalarField H_u, H_s;
    ScalarField q, theta_e;
    ScalarField m_minus_dp; // M - d3 p, the variable whose sign sets the phase
    std::vector<std::size_t> interface_cells;
    double unsaturated_fraction = 0.0;
    double saturated_fraction = 0.0;
};

PhaseField phases(const ScalarField& p, const InversionData& data,
                  DiffMode mode = DiffMode::FD);

/// The dynamics-conserved energy, restated in terms of (p, M) for unit
/// constants, and the residual of its Euler-Lagrange operator. Its derivative
/// differs from DE by the nonlinear forcing PV - 1/2 d3(M H_u); the identity
///   grad_energy = grad_conserved + PV - 1/2 d3(M H_u)
/// holds exactly in the discrete setting.
double conserved_energy(const ScalarField& p, const InversionData& data,
                        DiffMode mode = DiffMode::FD);
ScalarField grad_conserved(const ScalarField& p, const InversionData& data,
                           DiffMode mode = DiffMode::FD);

/// Residual of the general-constants strong form, oriented like grad_energy
/// (equal to it, to round-off, when all constants are 1):
///   PV - (1/f) Lap_h p - (f/N_s^2) d33 p
///      - f (1/N_s^2 - 1/N_u^2) d3( min0(kappa M - d3 p) ).
ScalarField residual_general(const ScalarField& p, const InversionData& data,
                             DiffMode mode = DiffMode::FD);

/// Energy whose derivative is residual_general; reduces to energy() at unit
/// constants. Strongly convex with constant >= min(1/f, f/N_u^2).
double energy_general(const ScalarField& p, const InversionData& data,
                      DiffMode mode = DiffMode::FD);

/// Smooth Heaviside model H_u(M, s) for the agnostic-smoothing probe,
/// s = d3 p. dH_ds is the partial derivative in s.
struct HuModel {
    std::function<double(double, double)> H;
    std::function<double(double, double)> dH_ds;
};

/// Logistic step sigma((M - s)/delta).
HuModel logistic_step(double delta);

struct AgnosticProbe {
    ScalarField coefficient; // pointwise coefficient of d33 after smoothing
    double min_coefficient = 0.0;
};

/// Pointwise principal coefficient 1 - H_u/2 + (M - d3 p)/2 * dH_u/ds of the
/// agnostically smoothed strong form. The probe exists to show this can dip
/// below the 1/2 ellipticity floor of the sharp problem.
AgnosticProbe agnostic_coefficient(const ScalarField& p, const InversionData& data,
                                   const HuModel& model,
                                   DiffMode mode = DiffMode::FD);

/// max(1, ||M||_L2 + ||PV||_{H^-1}); the scale used for solver tolerances.
double problem_scale(const InversionData& data);

} // namespace pqg
