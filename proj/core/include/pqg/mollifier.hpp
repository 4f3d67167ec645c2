/// @file mollifier.hpp
/// @brief Mollifier profiles and the smoothed minimum.
///
/// A MollifierSpec holds a normalized profile phi >= 0 supported in (-1,1)
/// together with a width eps. Everything derived from phi (the cumulative
/// integrals, the reference profile F = F_1 and the quadratic profile behind
/// f_eps) is tabulated once at construction on a dense uniform grid with
/// composite Gauss-Legendre quadrature, then evaluated by cubic Hermite
/// interpolation; table values are accurate to ~1e-14 for smooth profiles.
///
/// For centered profiles the smoothed minimum has the closed piecewise form
///   min_eps(x) = x          for x <= -eps,
///              = eps*F(x/eps) for |x| < eps,
///              = 0          for x >= eps,
/// is C^1, monotone, 1-Lipschitz, and satisfies
/// |min_eps - min0| <= C_phi * eps with C_phi the first absolute moment.

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pqg/errors.hpp"

namespace pqg {

enum class MollifierProfile { Bump, TriangularSmoothed, Tabulated };

class MollifierSpec {
public:
    /// phi(y) ~ exp(-1/(1-y^2)), normalized.
    static MollifierSpec bump(double eps);
    /// Self-convolution of the triangle hat, rescaled to support (-1,1)
    /// (a C^2 piecewise-cubic profile).
    static MollifierSpec triangular_smoothed(double eps);
    /// User-supplied samples of phi on [-1,1]; validated (nonnegative,
    /// normalized to 1e-6, supported in [-1,1]) and renormalized exactly.
    static MollifierSpec tabulated(const std::vector<double>& y,
                                   const std::vector<double>& phi,
                                   double eps);

    MollifierProfile profile() const { return profile_; }
    double eps() const { return eps_; }
    /// Same profile at a different width. eps == 0 is the sharp limit:
    /// min_eps degenerates to min0 and f_eps to 1/2 min0^2.
    MollifierSpec with_eps(double eps) const;

    /// First absolute moment C_phi = int |y| phi(y) dy.
    double first_moment_abs() const { return c_phi_; }
    double second_moment() const { return m2_; }
    bool centered() const { return centered_; }
    void require_centered(const char* where) const;

    /// Unscaled profile phi on [-1,1] (0 outside).
    double phi(double y) const;
    /// Scaled family phi_eps = (1/eps) phi(./eps).
    double phi_eps(double x) const;

    /// Smoothed minimum and its derivative; require a centered profile.
    double min_eps(double x) const;
    double dmin_eps(double x) const;
    /// Mollification of f0(s) = 1/2 min0(s)^2 (the energy density profile).
    double f_eps(double s) const;

    /// Reference profile F = F_1 on [-1,1] with min_eps = eps F(./eps).
    double F(double t) const;
    double dF(double t) const;

    const std::vector<double>& table_y() const { return y_; }
    const std::vector<double>& table_phi() const { return phi_; }

private:
    MollifierSpec() = default;
    void build_tables(const std::function<double(double)>& raw, int n_nodes);
    void finalize();

    MollifierProfile profile_ = MollifierProfile::Tabulated;
    double eps_ = 0.0;
    double c_phi_ = 0.0, m2_ = 0.0, moment1_ = 0.0;
    bool centered_ = false;

    // dense uniform tables on [-1,1]
    std::vector<double> y_, phi_;
    std::vector<double> cum_phi_;   // int_{-1}^{y} phi
    std::vector<double> cum_yphi_;  // int_{-1}^{y} t phi(t) dt
    std::vector<double> cum_y2phi_; // int_{-1}^{y} t^2 phi(t) dt
    std::vector<double> Ftab_, Gtab_; // F and the f_eps profile G
};

/// Free-function form of the smoothed minimum (min_eps operation).
double min_eps(double x, const MollifierSpec& m);

/// Outcome of validating a tabulated C^2 function F against the reversibility
/// conditions F(-1) = -1, F'(-1) = 1, F(1) = F'(1) = 0, F'' <= 0.
struct FCheckReport {
    bool ok = false;
    std::vector<std::string> failures;
    double F_at_m1 = 0, dF_at_m1 = 0, F_at_p1 = 0, dF_at_p1 = 0;
    double max_Fpp = 0;       // largest (signed) second derivative
    double max_Fpp_jump = 0;  // largest jump between adjacent F'' samples
};

FCheckReport check_F_properties(const std::vector<double>& y,
                                const std::vector<double>& F,
                                double tol = 1e-6);

/// Reconstructs the mollifier phi = -F'' from a tabulated F; throws
/// PropertyViolated (listing every failed condition) when the validation
/// fails or the table is not C^2 at its resolution.
MollifierSpec mollifier_from_F(const std::vector<double>& y,
                               const std::vector<double>& F,
                               double eps,
                               double tol = 1e-6);

} // namespace pqg
