#include "pqg/solver.hpp"

#include <cmath>
#include <ostream>

#include "pqg/norms.hpp"

namespace pqg {

namespace {

struct Objective {
    const InversionData& data;
    const MollifierSpec* mol; // nullptr = sharp
    DiffMode mode;

    double value(const ScalarField& p) const {
        return mol ? energy_eps(p, data, *mol, mode) : energy(p, data, mode);
    }
    ScalarField residual(const ScalarField& p) const {
        return mol ? grad_energy_eps(p, data, *mol, mode)
                   : grad_energy(p, data, mode);
    }
};

void trace_line(std::ostream* os, int iter, double energy, double gap, double eps) {
    if (!os) return;
    (*os) << "{\"iter\":" << iter << ",\"energy\":" << energy
          << ",\"gap_bound\":" << gap << ",\"epsilon\":" << eps << "}\n";
}

std::pair<ScalarField, SolveReport> minimize(const ScalarField& p0,
                                             const Objective& obj,
                                             const SolveConfig& cfg,
                                             double eps_width) {
    cfg.validate();
    require_same_grid(p0, obj.data.M, "solve");
    if (!p0.finite()) throw Error("solve: initial field must be finite");

    SolveReport rep;
    rep.scale = problem_scale(obj.data);
    rep.epsilon = eps_width;
    const double tol = cfg.tol_gap * rep.scale;

    ScalarField p = project_mean_zero(p0);
    double E = obj.value(p);

    ScalarField prev_p(p.grid());
    ScalarField prev_g(p.grid());
    ScalarField prev_dr(p.grid());
    bool have_prev = false;

    rep.status = SolveStatus::MaxIterExceeded;
    for (int it = 0; it <= cfg.max_iter; ++it) {
        ScalarField r = obj.residual(p);
        const double res_dual = norm_Hneg1(r);
        const double gap = 2.0 * res_dual;

        rep.energy_history.push_back(E);
        rep.gap_history.push_back(gap);
        rep.final_gap_bound = gap;
        rep.final_energy = E;
        rep.iterations = it;
        trace_line(cfg.trace, it, E, gap, eps_width);
        if (cfg.on_iterate) cfg.on_iterate(it, p);

        if (gap <= tol) {
            rep.status = SolveStatus::Converged;
            break;
        }
        if (it == cfg.max_iter) break;

        ScalarField g = inverse_laplacian(r); // ||g||_H1 = ||r||_{H^-1}

        double alpha = cfg.step;
        if (cfg.method == SolveMethod::PreconditionedGradientBB && have_prev) {
            // BB1 in the H1 metric: <s, y>_H1 / <y, y>_H1 with s = p - p_prev,
            // y = g - g_prev. Since -Lap g = r, <u, y>_H1 = <u, r - r_prev>_L2.
            ScalarField dr = r - prev_dr;
            ScalarField s = p - prev_p;
            ScalarField y = g - prev_g;
            const double sy = inner_L2(dr, s);
            const double yy = inner_L2(dr, y);
            if (std::isfinite(sy) && std::isfinite(yy) && sy > 0 && yy > 0) {
                alpha = std::min(10.0, std::max(0.05, sy / yy));
            }
        }

        prev_p = p;
        prev_g = g;
        prev_dr = r;
        have_prev = true;

        ScalarField cand = project_mean_zero(p - alpha * g);
        double E_cand = obj.value(cand);
        if (cfg.method == SolveMethod::PreconditionedGradientBB &&
            E_cand > E + 1e-14 * std::abs(E)) {
            // monotone safeguard: the fixed step is a guaranteed descent step
            cand = project_mean_zero(p - cfg.step * g);
            E_cand = obj.value(cand);
        }
        p = std::move(cand);
        E = E_cand;
    }

    PhaseField ph = phases(p, obj.data, cfg.mode);
    rep.unsaturated_fraction = ph.unsaturated_fraction;
    rep.saturated_fraction = ph.saturated_fraction;
    return {std::move(p), std::move(rep)};
}

} // namespace

GapBounds certified_gap(const ScalarField& p, const InversionData& data,
                        DiffMode mode) {
    const double nh = norm_Hneg1(grad_energy(p, data, mode));
    return {nh * nh, 2.0 * nh};
}

std::pair<ScalarField, SolveReport> solve(const ScalarField& p0,
                                          const InversionData& data,
                                          const SolveConfig& cfg) {
    Objective obj{data, nullptr, cfg.mode};
    return minimize(p0, obj, cfg, 0.0);
}

std::pair<ScalarField, SolveReport> solve_eps(const ScalarField& p0,
                                              const InversionData& data,
                                              const MollifierSpec& m,
                                              const SolveConfig& cfg) {
    if (m.eps() == 0.0) return solve(p0, data, cfg);
    m.require_centered("solve_eps");
    Objective obj{data, &m, cfg.mode};
    return minimize(p0, obj, cfg, m.eps());
}

std::pair<ScalarField, SolveReport> continuation_solve(const ScalarField& p0,
                                                       const InversionData& data,
                                                       const MollifierSpec& m,
                                                       const SolveConfig& cfg) {
    if (cfg.continuation.empty())
        throw ConfigInvalid("continuation_solve: empty eps schedule");
    std::vector<double> schedule = cfg.continuation;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (schedule[i] < 0.0)
            throw ConfigInvalid("continuation_solve: eps must be nonnegative");
        if (i > 0 && schedule[i] >= schedule[i - 1])
            throw ConfigInvalid("continuation_solve: schedule must decrease");
    }
    if (schedule.back() > 0.0) schedule.push_back(0.0); // always end sharp

    ScalarField p = p0;
    SolveReport total;
    int iters = 0;
    for (double eps : schedule) {
        auto [q, rep] = solve_eps(p, data, m.with_eps(eps), cfg);
        p = std::move(q);
        iters += rep.iterations;
        total.epsilon_trace.emplace_back(eps, rep.iterations);
        total.status = rep.status;
        total.energy_history = std::move(rep.energy_history);
        total.gap_history = std::move(rep.gap_history);
        total.final_gap_bound = rep.final_gap_bound;
        total.final_energy = rep.final_energy;
        total.unsaturated_fraction = rep.unsaturated_fraction;
        total.saturated_fraction = rep.saturated_fraction;
        total.scale = rep.scale;
        total.epsilon = eps;
    }
    total.iterations = iters;
    return {std::move(p), std::move(total)};
}

} // namespace pqg
