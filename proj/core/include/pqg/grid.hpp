/// @file grid.hpp
/// @brief Uniform periodic 3D grid description.
///
/// Conventions fixed here and used everywhere else (including the field file
/// format): nodes sit at x_a = j * h_a for j = 0 .. n_a-1 (no staggering),
/// h_a = L_a / n_a, and values are stored row-major with x3 fastest:
/// index(i1,i2,i3) = (i1*n2 + i2)*n3 + i3.

#pragma once

#include <cstddef>
#include <cmath>
#include <numbers>

#include "pqg/errors.hpp"

namespace pqg {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct GridSpec {
    int n1 = 0, n2 = 0, n3 = 0;            // points per axis, each >= 4
    double L1 = two_pi, L2 = two_pi, L3 = two_pi; // periods

    GridSpec() = default;
    GridSpec(int n1_, int n2_, int n3_,
             double L1_ = two_pi, double L2_ = two_pi, double L3_ = two_pi)
        : n1(n1_), n2(n2_), n3(n3_), L1(L1_), L2(L2_), L3(L3_) {
        validate();
    }

    static GridSpec cubic(int n, double L = two_pi) { return {n, n, n, L, L, L}; }

    void validate() const {
        if (n1 < 4 || n2 < 4 || n3 < 4)
            throw ConfigInvalid("GridSpec: need at least 4 points per axis");
        if (!(L1 > 0.0) || !(L2 > 0.0) || !(L3 > 0.0))
            throw ConfigInvalid("GridSpec: periods must be positive");
    }

    double h1() const { return L1 / n1; }
    double h2() const { return L2 / n2; }
    double h3() const { return L3 / n3; }
    double h(int axis) const { return axis == 1 ? h1() : axis == 2 ? h2() : h3(); }
    int n(int axis) const { return axis == 1 ? n1 : axis == 2 ? n2 : n3; }
    double period(int axis) const { return axis == 1 ? L1 : axis == 2 ? L2 : L3; }

    std::size_t size() const {
        return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2) *
               static_cast<std::size_t>(n3);
    }
    double volume() const { return L1 * L2 * L3; }
    double cell_volume() const { return h1() * h2() * h3(); }

    double x1(int i) const { return i * h1(); }
    double x2(int i) const { return i * h2(); }
    double x3(int i) const { return i * h3(); }

    std::size_t index(int i1, int i2, int i3) const {
        return (static_cast<std::size_t>(i1) * n2 + i2) * n3 + i3;
    }

    friend bool operator==(const GridSpec& a, const GridSpec& b) {
        return a.n1 == b.n1 && a.n2 == b.n2 && a.n3 == b.n3 &&
               a.L1 == b.L1 && a.L2 == b.L2 && a.L3 == b.L3;
    }
    friend bool operator!=(const GridSpec& a, const GridSpec& b) { return !(a == b); }
};

/// Wraps a coordinate into [-P/2, P/2); used when sampling profiles that are
/// defined on the symmetric interval.
inline double wrap_symmetric(double x, double period) {
    double y = std::fmod(x + 0.5 * period, period);
    if (y < 0) y += period;
    return y - 0.5 * period;
}

} // namespace pqg
