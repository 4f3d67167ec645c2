/// @file field.hpp
/// @brief Scalar and vector fields sampled on a periodic uniform grid.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "pqg/grid.hpp"

namespace pqg {

/// Real-valued samples on a GridSpec, row-major with x3 fastest.
///
/// The mean_zero flag is advisory bookkeeping: operations that produce
/// analytically mean-free output (derivatives, projections) set it, and
/// consumers that require mean-zero data verify the actual average.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const GridSpec& grid, double fill = 0.0)
        : grid_(grid), v_(grid.size(), fill) {}

    template <class F>
    static ScalarField from_function(const GridSpec& grid, F&& f) {
        ScalarField out(grid);
        std::size_t idx = 0;
        for (int i1 = 0; i1 < grid.n1; ++i1)
            for (int i2 = 0; i2 < grid.n2; ++i2)
                for (int i3 = 0; i3 < grid.n3; ++i3)
                    out.v_[idx++] = f(grid.x1(i1), grid.x2(i2), grid.x3(i3));
        return out;
    }

    const GridSpec& grid() const { return grid_; }
    std::size_t size() const { return v_.size(); }

    double operator[](std::size_t i) const { return v_[i]; }
    double& operator[](std::size_t i) { return v_[i]; }
    double operator()(int i1, int i2, int i3) const { return v_[grid_.index(i1, i2, i3)]; }
    double& operator()(int i1, int i2, int i3) { return v_[grid_.index(i1, i2, i3)]; }

    std::span<const double> values() const { return v_; }
    std::span<double> values() { return v_; }

    bool mean_zero() const { return mean_zero_; }
    void set_mean_zero(bool b) { mean_zero_ = b; }

    double mean() const {
        // Kahan-compensated; mean-zero preconditions are checked against
        // 1e-12-relative tolerances, so naive summation noise would bite.
        double s = 0.0, c = 0.0;
        for (double x : v_) {
            const double t = x - c;
            const double u = s + t;
            c = (u - s) - t;
            s = u;
        }
        return s / static_cast<double>(v_.size());
    }
    double max_abs() const {
        double m = 0.0;
        for (double x : v_) m = std::max(m, std::abs(x));
        return m;
    }
    bool finite() const {
        return std::all_of(v_.begin(), v_.end(),
                           [](double x) { return std::isfinite(x); });
    }

    ScalarField& operator+=(const ScalarField& o) { return zip(o, [](double a, double b) { return a + b; }); }
    ScalarField& operator-=(const ScalarField& o) { return zip(o, [](double a, double b) { return a - b; }); }
    ScalarField& operator*=(double c) {
        for (double& x : v_) x *= c;
        return *this;
    }

    friend ScalarField operator+(ScalarField a, const ScalarField& b) { a += b; return a; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { a -= b; return a; }
    friend ScalarField operator*(double c, ScalarField a) { a *= c; return a; }

private:
    template <class Op>
    ScalarField& zip(const ScalarField& o, Op op) {
        if (grid_ != o.grid_) throw GridMismatch("ScalarField: grids differ");
        for (std::size_t i = 0; i < v_.size(); ++i) v_[i] = op(v_[i], o.v_[i]);
        mean_zero_ = mean_zero_ && o.mean_zero_;
        return *this;
    }

    GridSpec grid_;
    std::vector<double> v_;
    bool mean_zero_ = false;
};

/// Three scalar components sharing one grid.
struct VectorField {
    ScalarField c1, c2, c3;

    explicit VectorField(const GridSpec& grid)
        : c1(grid), c2(grid), c3(grid) {}
    VectorField(ScalarField a, ScalarField b, ScalarField c)
        : c1(std::move(a)), c2(std::move(b)), c3(std::move(c)) {
        if (c1.grid() != c2.grid() || c1.grid() != c3.grid())
            throw GridMismatch("VectorField: components on different grids");
    }

    const GridSpec& grid() const { return c1.grid(); }
    const ScalarField& component(int axis) const {
        return axis == 1 ? c1 : axis == 2 ? c2 : c3;
    }
};

inline void require_same_grid(const ScalarField& a, const ScalarField& b,
                              const char* where) {
    if (a.grid() != b.grid())
        throw GridMismatch(std::string(where) + ": fields on different grids");
}

} // namespace pqg
