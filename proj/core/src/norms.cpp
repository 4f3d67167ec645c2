#include "pqg/norms.hpp"

#include <cmath>

#include "pqg/fft.hpp"

namespace pqg {

double inner_L2(const ScalarField& f, const ScalarField& g) {
    require_same_grid(f, g, "inner_L2");
    double s = 0.0, c = 0.0;
    auto fv = f.values();
    auto gv = g.values();
    for (std::size_t i = 0; i < fv.size(); ++i) {
        const double t = fv[i] * gv[i] - c;
        const double u = s + t;
        c = (u - s) - t;
        s = u;
    }
    return s * f.grid().cell_volume();
}

double norm_L2(const ScalarField& f) { return std::sqrt(inner_L2(f, f)); }

double norm_L2(const VectorField& f) {
    const double s = inner_L2(f.c1, f.c1) + inner_L2(f.c2, f.c2) + inner_L2(f.c3, f.c3);
    return std::sqrt(s);
}

double norm_H1(const ScalarField& f) {
    auto& ws = spectral_workspace(f.grid());
    const double s = ws.weighted_power_sum(f, [](double k1, double k2, double k3) {
        return k1 * k1 + k2 * k2 + k3 * k3;
    });
    return std::sqrt(std::max(0.0, s));
}

double norm_Hneg1(const ScalarField& f) {
    const double scale = std::max(1.0, f.max_abs());
    if (std::abs(f.mean()) > 1e-12 * scale)
        throw NotMeanZero("norm_Hneg1: field has nonzero average");
    auto& ws = spectral_workspace(f.grid());
    const double s = ws.weighted_power_sum(f, [](double k1, double k2, double k3) {
        const double k2sum = k1 * k1 + k2 * k2 + k3 * k3;
        return k2sum == 0.0 ? 0.0 : 1.0 / k2sum;
    });
    return std::sqrt(std::max(0.0, s));
}

} // namespace pqg
