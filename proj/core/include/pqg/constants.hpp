/// @file constants.hpp
/// @brief Physical constants of the moist quasi-geostrophic balance relations.

#pragma once

#include <cmath>

#include "pqg/errors.hpp"

namespace pqg {

/// Coriolis parameter and the buoyancy/stratification coefficients. All five
/// are positive; the derived buoyancy frequencies then satisfy
/// N_u^2 - N_s^2 = B_q C_q > 0 automatically. Everything defaults to 1.
struct PhysicalConstants {
    double f = 1.0;
    double B_theta_e = 1.0;
    double B_q = 1.0;
    double C_theta_e = 1.0;
    double C_q = 1.0;

    void validate() const {
        if (!(f > 0) || !(B_theta_e > 0) || !(B_q > 0) || !(C_theta_e > 0) ||
            !(C_q > 0))
            throw ConfigInvalid("PhysicalConstants: all constants must be positive");
    }

    double N_u2() const { return B_theta_e * C_theta_e + B_q * C_q; } // unsaturated
    double N_s2() const { return B_theta_e * C_theta_e; }             // saturated
    /// Coefficient of M inside the minimum of the general strong form.
    double kappa() const { return B_theta_e * C_theta_e / C_q; }

    bool is_unit(double tol = 1e-14) const {
        return std::abs(f - 1) <= tol && std::abs(B_theta_e - 1) <= tol &&
               std::abs(B_q - 1) <= tol && std::abs(C_theta_e - 1) <= tol &&
               std::abs(C_q - 1) <= tol;
    }
};

} // namespace pqg
