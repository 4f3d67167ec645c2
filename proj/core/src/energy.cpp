#include "pqg/energy.hpp"

#include <cmath>
#include <limits>

#include "pqg/fft.hpp"
#include "pqg/norms.hpp"

namespace pqg {

namespace {

void require_mean_zero(const ScalarField& p, const char* where) {
    const double scale = std::max(1.0, p.max_abs());
    if (std::abs(p.mean()) > 1e-12 * scale)
        throw NotMeanZero(std::string(where) + ": p must be mean-zero");
}

// Volume-weighted sum of a pointwise density from spans of equal length.
template <class F>
double density_sum(const GridSpec& g, F&& term, std::size_t n) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = term(i) - c;
        const double u = s + t;
        c = (u - s) - t;
        s = u;
    }
    return s * g.cell_volume();
}

// -Lap p with the full spectral symbol; shared by all residual assemblies so
// unit-constants comparisons are bitwise consistent.
ScalarField neg_laplacian_spectral(const ScalarField& p) {
    auto& ws = spectral_workspace(p.grid());
    ScalarField out = ws.apply_symbol(p, [](double k1, double k2, double k3) {
        return std::complex<double>(k1 * k1 + k2 * k2 + k3 * k3, 0.0);
    });
    out.set_mean_zero(true);
    return out;
}

// Anisotropic quadratic operator a*(k1^2+k2^2) + b*k3^2 applied spectrally.
ScalarField quad_operator_spectral(const ScalarField& p, double a, double b) {
    auto& ws = spectral_workspace(p.grid());
    ScalarField out = ws.apply_symbol(p, [a, b](double k1, double k2, double k3) {
        return std::complex<double>(a * (k1 * k1 + k2 * k2) + b * k3 * k3, 0.0);
    });
    out.set_mean_zero(true);
    return out;
}

double quad_form_spectral(const ScalarField& p, double a, double b) {
    auto& ws = spectral_workspace(p.grid());
    return ws.weighted_power_sum(p, [a, b](double k1, double k2, double k3) {
        return a * (k1 * k1 + k2 * k2) + b * k3 * k3;
    });
}

} // namespace

ScalarField min0_field(const ScalarField& s) {
    ScalarField out = s;
    for (double& v : out.values()) v = min0(v);
    return out;
}

InversionData::InversionData(ScalarField M_, ScalarField PV_, PhysicalConstants c)
    : M(std::move(M_)), PV(std::move(PV_)), constants(c) {
    require_same_grid(M, PV, "InversionData");
    constants.validate();
    if (!M.finite() || !PV.finite())
        throw Error("InversionData: fields must be finite");
    const double scale = std::max(1.0, PV.max_abs());
    if (std::abs(PV.mean()) > 1e-12 * scale)
        throw NotMeanZero("InversionData: PV must be mean-zero");
    PV.set_mean_zero(true);
}

double energy(const ScalarField& p, const InversionData& data, DiffMode mode) {
    require_same_grid(p, data.M, "energy");
    require_mean_zero(p, "energy");
    const double quad = 0.5 * quad_form_spectral(p, 1.0, 1.0);
    const ScalarField dp = diff(p, 3, mode);
    auto m = data.M.values();
    auto d = dp.values();
    const double nonsmooth = density_sum(
        p.grid(),
        [&](std::size_t i) {
            const double w = min0(m[i] - d[i]);
            return -0.25 * w * w;
        },
        p.size());
    return quad + nonsmooth + inner_L2(data.PV, p);
}

ScalarField grad_energy(const ScalarField& p, const InversionData& data,
                        DiffMode mode) {
    require_same_grid(p, data.M, "grad_energy");
    require_mean_zero(p, "grad_energy");
    ScalarField w = diff(p, 3, mode);
    auto m = data.M.values();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = min0(m[i] - w[i]);
    ScalarField r = neg_laplacian_spectral(p);
    r -= 0.5 * diff(w, 3, mode);
    r += data.PV;
    return project_mean_zero(r);
}

double energy_eps(const ScalarField& p, const InversionData& data,
                  const MollifierSpec& mol, DiffMode mode) {
    require_same_grid(p, data.M, "energy_eps");
    require_mean_zero(p, "energy_eps");
    mol.require_centered("energy_eps");
    const double quad = 0.5 * quad_form_spectral(p, 1.0, 1.0);
    const ScalarField dp = diff(p, 3, mode);
    auto m = data.M.values();
    auto d = dp.values();
    const double nonsmooth = density_sum(
        p.grid(),
        [&](std::size_t i) { return -0.5 * mol.f_eps(m[i] - d[i]); }, p.size());
    return quad + nonsmooth + inner_L2(data.PV, p);
}

ScalarField grad_energy_eps(const ScalarField& p, const InversionData& data,
                            const MollifierSpec& mol, DiffMode mode) {
    require_same_grid(p, data.M, "grad_energy_eps");
    require_mean_zero(p, "grad_energy_eps");
    mol.require_centered("grad_energy_eps");
    ScalarField w = diff(p, 3, mode);
    auto m = data.M.values();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = mol.min_eps(m[i] - w[i]);
    ScalarField r = neg_laplacian_spectral(p);
    r -= 0.5 * diff(w, 3, mode);
    r += data.PV;
    return project_mean_zero(r);
}

PhaseField phases(const ScalarField& p, const InversionData& data, DiffMode mode) {
    require_same_grid(p, data.M, "phases");
    const GridSpec& g = p.grid();
    const ScalarField dp = diff(p, 3, mode);
    ScalarField s = data.M - dp;
    PhaseField ph{ScalarField(g), ScalarField(g), ScalarField(g), ScalarField(g),
                  s,
                  {},
                  0.0,
                  0.0};
    std::size_t n_unsat = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const bool unsat = s[i] < 0.0; // ties go to the saturated side
        ph.H_u[i] = unsat ? 1.0 : 0.0;
        ph.H_s[i] = unsat ? 0.0 : 1.0;
        ph.q[i] = (unsat ? 0.5 : 1.0) * s[i];
        ph.theta_e[i] = dp[i] + 0.5 * min0(s[i]);
        n_unsat += unsat ? 1 : 0;
    }
    ph.unsaturated_fraction = static_cast<double>(n_unsat) / s.size();
    ph.saturated_fraction = 1.0 - ph.unsaturated_fraction;

    // Cells whose closed face-neighborhood sees a sign change of M - d3 p.
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            for (int i3 = 0; i3 < g.n3; ++i3) {
                const bool here = s(i1, i2, i3) < 0.0;
                const bool flip =
                    (s((i1 + 1) % g.n1, i2, i3) < 0.0) != here ||
                    (s((i1 + g.n1 - 1) % g.n1, i2, i3) < 0.0) != here ||
                    (s(i1, (i2 + 1) % g.n2, i3) < 0.0) != here ||
                    (s(i1, (i2 + g.n2 - 1) % g.n2, i3) < 0.0) != here ||
                    (s(i1, i2, (i3 + 1) % g.n3) < 0.0) != here ||
                    (s(i1, i2, (i3 + g.n3 - 1) % g.n3) < 0.0) != here;
                if (flip) ph.interface_cells.push_back(g.index(i1, i2, i3));
            }
    return ph;
}

double conserved_energy(const ScalarField& p, const InversionData& data,
                        DiffMode mode) {
    require_same_grid(p, data.M, "conserved_energy");
    if (!data.constants.is_unit())
        throw ConstantsNotUnit("conserved_energy: stated for unit constants");
    require_mean_zero(p, "conserved_energy");
    const double quad = 0.5 * quad_form_spectral(p, 1.0, 1.0);
    const ScalarField dp = diff(p, 3, mode);
    auto m = data.M.values();
    auto d = dp.values();
    const double mixed = density_sum(
        p.grid(),
        [&](std::size_t i) { return 0.25 * (m[i] + d[i]) * min0(m[i] - d[i]); },
        p.size());
    return quad + mixed;
}

ScalarField grad_conserved(const ScalarField& p, const InversionData& data,
                           DiffMode mode) {
    require_same_grid(p, data.M, "grad_conserved");
    if (!data.constants.is_unit())
        throw ConstantsNotUnit("grad_conserved: stated for unit constants");
    require_mean_zero(p, "grad_conserved");
    ScalarField w = diff(p, 3, mode);
    auto m = data.M.values();
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = (m[i] - w[i] < 0.0) ? w[i] : 0.0; // (d3 p) H_u
    ScalarField r = neg_laplacian_spectral(p);
    r += 0.5 * diff(w, 3, mode);
    return project_mean_zero(r);
}

ScalarField residual_general(const ScalarField& p, const InversionData& data,
                             DiffMode mode) {
    require_same_grid(p, data.M, "residual_general");
    require_mean_zero(p, "residual_general");
    const PhysicalConstants& pc = data.constants;
    const double sigma = 1.0 / pc.N_s2() - 1.0 / pc.N_u2();
    const double kap = pc.kappa();

    ScalarField w = diff(p, 3, mode);
    auto m = data.M.values();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = min0(kap * m[i] - w[i]);

    ScalarField r = quad_operator_spectral(p, 1.0 / pc.f, pc.f / pc.N_s2());
    r -= (pc.f * sigma) * diff(w, 3, mode);
    r += data.PV;
    return project_mean_zero(r);
}

double energy_general(const ScalarField& p, const InversionData& data,
                      DiffMode mode) {
    require_same_grid(p, data.M, "energy_general");
    require_mean_zero(p, "energy_general");
    const PhysicalConstants& pc = data.constants;
    const double sigma = 1.0 / pc.N_s2() - 1.0 / pc.N_u2();
    const double kap = pc.kappa();
    const double quad = 0.5 * quad_form_spectral(p, 1.0 / pc.f, pc.f / pc.N_s2());
    const ScalarField dp = diff(p, 3, mode);
    auto m = data.M.values();
    auto d = dp.values();
    const double nonsmooth = density_sum(
        p.grid(),
        [&](std::size_t i) {
            const double w = min0(kap * m[i] - d[i]);
            return -0.5 * pc.f * sigma * w * w;
        },
        p.size());
    return quad + nonsmooth + inner_L2(data.PV, p);
}

HuModel logistic_step(double delta) {
    if (!(delta > 0)) throw ConfigInvalid("logistic_step: delta must be positive");
    auto sigma = [](double t) { return 1.0 / (1.0 + std::exp(-t)); };
    return HuModel{
        [=](double M, double s) { return sigma((M - s) / delta); },
        [=](double M, double s) {
            const double v = sigma((M - s) / delta);
            return -v * (1.0 - v) / delta;
        }};
}

AgnosticProbe agnostic_coefficient(const ScalarField& p, const InversionData& data,
                                   const HuModel& model, DiffMode mode) {
    require_same_grid(p, data.M, "agnostic_coefficient");
    const ScalarField dp = diff(p, 3, mode);
    AgnosticProbe probe{ScalarField(p.grid()), 0.0};
    auto m = data.M.values();
    auto d = dp.values();
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double c = 1.0 - 0.5 * model.H(m[i], d[i]) +
                         0.5 * (m[i] - d[i]) * model.dH_ds(m[i], d[i]);
        probe.coefficient[i] = c;
        lo = std::min(lo, c);
    }
    probe.min_coefficient = lo;
    return probe;
}

double problem_scale(const InversionData& data) {
    return std::max(1.0, norm_L2(data.M) + norm_Hneg1(data.PV));
}

} // namespace pqg
