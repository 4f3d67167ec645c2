/// @file exact1d.hpp
/// @brief Closed-form x3-dependent solutions of the inversion.
///
/// The recipe: for smooth 2*pi-periodic profiles PV(x3) and M(x3), with
/// phi_m(x) = x + 1/2 min0(m - x) (invertible, phi_m^{-1}(y) = y - min0(m-y)),
/// take an antiderivative A of PV, set Theta = phi_M^{-1}(A), c = mean(Theta),
/// and p = int (Theta - c). Then p solves the strong form with data PV and
/// the shifted moisture M - c. Horizontal derivatives vanish, so the 1D
/// profile extruded along x1, x2 is a genuine 3D solution.
///
/// The "baseball cap" (M = sin x3 - 1/pi, PV = 0) is the sharpness example:
/// its solution is C^{1,1} but not C^2.

#pragma once

#include <functional>
#include <vector>

#include "pqg/energy.hpp"

namespace pqg {

/// Samples at x_j = -pi + j * (2*pi/n), one full period.
class Profile1D {
public:
    Profile1D() = default;
    explicit Profile1D(std::vector<double> samples);
    static Profile1D from_function(int n, const std::function<double(double)>& f);

    int n() const { return static_cast<int>(v_.size()); }
    double h() const { return two_pi / n(); }
    double x(int j) const { return -std::numbers::pi + j * h(); }
    double operator[](int j) const { return v_[j]; }
    double& operator[](int j) { return v_[j]; }
    const std::vector<double>& samples() const { return v_; }

    double mean() const;
    double max_abs() const;

    /// Periodic antiderivative with gauge A(-pi) = 0. Spectral integration
    /// for smooth data, cumulative trapezoid otherwise; both need (and
    /// enforce) a mean-zero input.
    Profile1D antiderivative_spectral() const;
    Profile1D antiderivative_trapezoid() const;

private:
    std::vector<double> v_;
};

/// phi_m(x) = x + 1/2 min0(m - x); strictly increasing with slope in [1/2, 1].
double phi(double m, double x);
/// Its inverse phi_m^{-1}(y) = y - min0(m - y).
double phi_inv(double m, double y);

struct Exact1DSolution {
    Profile1D p;      // pressure profile, mean-zero
    Profile1D theta;  // p' = Theta - c (exact samples, not re-differentiated)
    Profile1D M_data; // the moisture the solution actually solves with
    Profile1D PV;
    double c = 0.0;   // the shift constant

    /// Extrudes the data profiles to a 3D grid (L3 must be 2*pi, n3 must
    /// equal the profile length and be even so node positions match exactly).
    InversionData extrude_data(const GridSpec& grid,
                               PhysicalConstants constants = {}) const;
    /// Extrudes the pressure profile (mean-zero projected).
    ScalarField extrude_p(const GridSpec& grid) const;
};

/// Lemma-style construction from (PV, M) profiles on a common grid; the
/// returned solution carries data (PV, M - c). Throws NonzeroMeanPV when PV
/// has a nonvanishing average (no periodic antiderivative exists).
Exact1DSolution build_exact(const Profile1D& PV, const Profile1D& M);

/// The sharpness family: M must change sign exactly at x = 0 with
/// sign M(x) = sign x and M'(0) != 0 (checked at the samples); the solution
/// gradient is Lipschitz but not differentiable at zero. Data: PV = 0, M + c.
Exact1DSolution sharpness_family(const Profile1D& M);

/// Closed-form baseball cap on the given grid: data M = sin x3 - 1/pi,
/// PV = 0, and exact pressure with p' = -min0(sin x3) - 1/pi. Requires
/// L3 = 2*pi (BadPeriod otherwise).
std::pair<InversionData, ScalarField> baseball_cap(const GridSpec& grid);

/// The analytic baseball-cap profiles (handy for tests and plot data).
double baseball_cap_p(double x3);       // before mean-zero normalization
double baseball_cap_dp(double x3);      // -min0(sin x3) - 1/pi
double baseball_cap_M(double x3);       // sin x3 - 1/pi

} // namespace pqg
