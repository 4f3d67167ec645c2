#include "pqg/operators.hpp"

#include <cmath>
#include <complex>

#include "pqg/fft.hpp"

namespace pqg {

namespace {

constexpr double mean_zero_rel_tol = 1e-12;

// Centered difference along one axis, periodic indices.
ScalarField centered_diff(const ScalarField& f, int axis) {
    const GridSpec& g = f.grid();
    ScalarField out(g);
    const double inv2h = 1.0 / (2.0 * g.h(axis));
    const int n1 = g.n1, n2 = g.n2, n3 = g.n3;
    for (int i1 = 0; i1 < n1; ++i1) {
        const int i1p = (i1 + 1) % n1, i1m = (i1 + n1 - 1) % n1;
        for (int i2 = 0; i2 < n2; ++i2) {
            const int i2p = (i2 + 1) % n2, i2m = (i2 + n2 - 1) % n2;
            for (int i3 = 0; i3 < n3; ++i3) {
                const int i3p = (i3 + 1) % n3, i3m = (i3 + n3 - 1) % n3;
                double fp, fm;
                switch (axis) {
                    case 1: fp = f(i1p, i2, i3); fm = f(i1m, i2, i3); break;
                    case 2: fp = f(i1, i2p, i3); fm = f(i1, i2m, i3); break;
                    default: fp = f(i1, i2, i3p); fm = f(i1, i2, i3m); break;
                }
                out(i1, i2, i3) = (fp - fm) * inv2h;
            }
        }
    }
    out.set_mean_zero(true); // periodic sum telescopes exactly
    return out;
}

} // namespace

ScalarField project_mean_zero(const ScalarField& f) {
    ScalarField out = f;
    const double m = f.mean();
    for (double& x : out.values()) x -= m;
    out.set_mean_zero(true);
    return out;
}

ScalarField diff(const ScalarField& f, int axis, DiffMode mode) {
    if (axis < 1 || axis > 3) throw ConfigInvalid("diff: axis must be 1, 2 or 3");
    if (mode == DiffMode::FD) return centered_diff(f, axis);
    // Spectral first derivative: zero the Nyquist mode so the output is real
    // and the operator skew-adjoint.
    auto& ws = spectral_workspace(f.grid());
    const GridSpec& g = f.grid();
    ScalarField out = ws.apply_symbol(f, [axis, &g](double k1, double k2, double k3) {
        double k = axis == 1 ? k1 : axis == 2 ? k2 : k3;
        const int n = g.n(axis);
        const double knyq = two_pi * (n / 2) / g.period(axis);
        if (n % 2 == 0 && std::abs(std::abs(k) - knyq) < 1e-14 * knyq) k = 0.0;
        return std::complex<double>(0.0, k);
    });
    out.set_mean_zero(true);
    return out;
}

VectorField grad(const ScalarField& f, DiffMode mode) {
    return {diff(f, 1, mode), diff(f, 2, mode), diff(f, 3, mode)};
}

VectorField grad_h(const ScalarField& f, DiffMode mode) {
    return {diff(f, 1, mode), diff(f, 2, mode), ScalarField(f.grid(), 0.0)};
}

ScalarField laplacian(const ScalarField& f, DiffMode mode) {
    if (mode == DiffMode::FD) {
        ScalarField out = centered_diff(centered_diff(f, 1), 1);
        out += centered_diff(centered_diff(f, 2), 2);
        out += centered_diff(centered_diff(f, 3), 3);
        out.set_mean_zero(true);
        return out;
    }
    auto& ws = spectral_workspace(f.grid());
    ScalarField out = ws.apply_symbol(f, [](double k1, double k2, double k3) {
        return std::complex<double>(-(k1 * k1 + k2 * k2 + k3 * k3), 0.0);
    });
    out.set_mean_zero(true);
    return out;
}

ScalarField laplacian_h(const ScalarField& f, DiffMode mode) {
    if (mode == DiffMode::FD) {
        ScalarField out = centered_diff(centered_diff(f, 1), 1);
        out += centered_diff(centered_diff(f, 2), 2);
        out.set_mean_zero(true);
        return out;
    }
    auto& ws = spectral_workspace(f.grid());
    ScalarField out = ws.apply_symbol(f, [](double k1, double k2, double /*k3*/) {
        return std::complex<double>(-(k1 * k1 + k2 * k2), 0.0);
    });
    out.set_mean_zero(true);
    return out;
}

ScalarField finite_difference(const ScalarField& f, int axis, int shift_cells) {
    if (axis < 1 || axis > 3) throw ConfigInvalid("finite_difference: bad axis");
    const GridSpec& g = f.grid();
    const int n = g.n(axis);
    const int s = ((shift_cells % n) + n) % n;
    ScalarField out(g);
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            for (int i3 = 0; i3 < g.n3; ++i3) {
                int j1 = i1, j2 = i2, j3 = i3;
                if (axis == 1) j1 = (i1 + s) % n;
                else if (axis == 2) j2 = (i2 + s) % n;
                else j3 = (i3 + s) % n;
                out(i1, i2, i3) = f(j1, j2, j3) - f(i1, i2, i3);
            }
    out.set_mean_zero(true);
    return out;
}

ScalarField inverse_laplacian(const ScalarField& f) {
    const double scale = std::max(1.0, f.max_abs());
    if (std::abs(f.mean()) > mean_zero_rel_tol * scale)
        throw NotMeanZero("inverse_laplacian: input has nonzero average");
    auto& ws = spectral_workspace(f.grid());
    ScalarField out = ws.apply_symbol(f, [](double k1, double k2, double k3) {
        const double k2sum = k1 * k1 + k2 * k2 + k3 * k3;
        if (k2sum == 0.0) return std::complex<double>(0.0, 0.0);
        return std::complex<double>(1.0 / k2sum, 0.0);
    });
    out.set_mean_zero(true);
    return out;
}

} // namespace pqg
