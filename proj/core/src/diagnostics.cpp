#include "pqg/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "pqg/norms.hpp"
#include "pqg/random_fields.hpp"

namespace pqg {

namespace {

struct LsqFit {
    double slope = 0.0, intercept = 0.0, r2 = 1.0;
};

LsqFit lsq(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LsqFit f;
    const double denom = n * sxx - sx * sx;
    f.slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double fit = f.intercept + f.slope * x[i];
        ss_res += (y[i] - fit) * (y[i] - fit);
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    f.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

RateFit fit_log_log(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw ConfigInvalid("fit_log_log: xs and ys must have equal length");
    if (xs.size() < 2)
        throw ConfigInvalid("fit_log_log: need at least 2 points");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0)) throw ConfigInvalid("fit_log_log: xs must be positive");
        if (i > 0 && !(xs[i] < xs[i - 1]))
            throw ConfigInvalid("fit_log_log: xs must be strictly decreasing");
    }
    RateFit out;
    out.xs = xs;
    out.ys = ys;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (ys[i] > 0.0) {
            lx.push_back(std::log(xs[i]));
            ly.push_back(std::log(ys[i]));
        }
    }
    if (lx.size() < 2) {
        out.degenerate = true;
        return out;
    }
    const LsqFit f = lsq(lx, ly);
    out.slope = f.slope;
    out.intercept = f.intercept;
    out.r2 = f.r2;
    if (!std::isfinite(out.slope)) out.degenerate = true;
    return out;
}

InterfaceSummary interface_extract(const PhaseField& ph) {
    InterfaceSummary out;
    out.cells = ph.interface_cells;
    out.unsaturated_fraction = ph.unsaturated_fraction;
    out.saturated_fraction = ph.saturated_fraction;

    const ScalarField& s = ph.m_minus_dp;
    const GridSpec& g = s.grid();
    std::vector<double> raw;
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            for (int i3 = 0; i3 < g.n3; ++i3) {
                const double s0 = s(i1, i2, i3);
                const double s1 = s(i1, i2, (i3 + 1) % g.n3);
                if ((s0 < 0.0) == (s1 < 0.0)) continue;
                const double t = s0 / (s0 - s1);
                double x = g.x3(i3) + t * g.h3();
                if (x >= g.L3) x -= g.L3;
                raw.push_back(x);
            }
    std::sort(raw.begin(), raw.end());
    // merge crossings within half a cell (columns of extruded data all see
    // the same zero)
    const double tol = 0.5 * g.h3();
    std::size_t i = 0;
    while (i < raw.size()) {
        std::size_t j = i + 1;
        double sum = raw[i];
        while (j < raw.size() && raw[j] - raw[j - 1] <= tol) sum += raw[j++];
        out.x3_crossings.push_back(sum / static_cast<double>(j - i));
        i = j;
    }
    return out;
}

std::vector<double> default_holder_radii(const GridSpec& grid) {
    const double hmax = std::max({grid.h1(), grid.h2(), grid.h3()});
    const double lmin = std::min({grid.L1, grid.L2, grid.L3});
    const double r0 = 4.0 * hmax, r1 = lmin / 6.0;
    if (!(r0 < r1))
        throw RadiiOutOfRange("default_holder_radii: grid too coarse for ball fits");
    std::vector<double> radii(10);
    for (int i = 0; i < 10; ++i)
        radii[i] = r0 * std::pow(r1 / r0, i / 9.0);
    return radii;
}

HolderReport holder_estimate(const ScalarField& u, std::vector<double> radii,
                             const CenterSpec& centers) {
    const GridSpec& g = u.grid();
    if (radii.size() < 2)
        throw ConfigInvalid("holder_estimate: need at least 2 radii");
    std::sort(radii.begin(), radii.end());
    const double half_period = 0.5 * std::min({g.L1, g.L2, g.L3});
    for (double r : radii)
        if (!(r > 0.0) || r > half_period)
            throw RadiiOutOfRange("holder_estimate: radii must lie in (0, L/2]");

    // |grad u|^2 with the local FD gradient (kinks stay local)
    VectorField gu = grad(u, DiffMode::FD);
    ScalarField g2(g);
    for (std::size_t i = 0; i < g2.size(); ++i)
        g2[i] = gu.c1[i] * gu.c1[i] + gu.c2[i] * gu.c2[i] + gu.c3[i] * gu.c3[i];
    double total = 0.0;
    for (std::size_t i = 0; i < g2.size(); ++i) total += g2[i];
    total *= g.cell_volume();
    const double degenerate_floor = 1e-14 * std::max(1.0, total);

    // per-radius offset stencils (geodesic balls on the torus)
    struct Offset { int d1, d2, d3; };
    std::vector<std::vector<Offset>> stencils(radii.size());
    for (std::size_t ri = 0; ri < radii.size(); ++ri) {
        const double r = radii[ri];
        const int m1 = static_cast<int>(std::ceil(r / g.h1()));
        const int m2 = static_cast<int>(std::ceil(r / g.h2()));
        const int m3 = static_cast<int>(std::ceil(r / g.h3()));
        for (int d1 = -m1; d1 <= m1; ++d1)
            for (int d2 = -m2; d2 <= m2; ++d2)
                for (int d3 = -m3; d3 <= m3; ++d3) {
                    const double dist2 = d1 * g.h1() * d1 * g.h1() +
                                         d2 * g.h2() * d2 * g.h2() +
                                         d3 * g.h3() * d3 * g.h3();
                    if (dist2 <= r * r) stencils[ri].push_back({d1, d2, d3});
                }
    }

    std::vector<std::array<int, 3>> cs = centers.explicit_centers;
    if (cs.empty()) {
        std::mt19937_64 rng(centers.seed);
        for (int i = 0; i < centers.count; ++i)
            cs.push_back({static_cast<int>(rng() % g.n1),
                          static_cast<int>(rng() % g.n2),
                          static_cast<int>(rng() % g.n3)});
    }

    HolderReport rep;
    rep.radii = radii;
    std::vector<double> lr(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) lr[i] = std::log(radii[i]);

    for (const auto& c : cs) {
        std::vector<double> ys(radii.size(), 0.0);
        bool degenerate = false;
        for (std::size_t ri = 0; ri < radii.size(); ++ri) {
            double acc = 0.0;
            for (const Offset& o : stencils[ri]) {
                const int i1 = (c[0] + o.d1 % g.n1 + g.n1) % g.n1;
                const int i2 = (c[1] + o.d2 % g.n2 + g.n2) % g.n2;
                const int i3 = (c[2] + o.d3 % g.n3 + g.n3) % g.n3;
                acc += g2(i1, i2, i3);
            }
            ys[ri] = acc * g.cell_volume();
            if (ys[ri] < degenerate_floor) degenerate = true;
        }
        if (degenerate) {
            ++rep.degenerate_centers;
            continue;
        }
        std::vector<double> ly(ys.size());
        for (std::size_t i = 0; i < ys.size(); ++i) ly[i] = std::log(ys[i]);
        const double slope = lsq(lr, ly).slope;
        // d = 3: int_{B_r}|grad u|^2 ~ r^{d-2+2 alpha} = r^{1+2 alpha}
        const double alpha = std::clamp(0.5 * (slope - 1.0), 0.0, 1.0);
        rep.alpha_estimates.push_back(alpha);
        rep.centers_used.push_back(c);
    }
    rep.alpha_global = median(rep.alpha_estimates);
    return rep;
}

RateFit epsilon_sweep(const InversionData& data, const MollifierSpec& profile,
                      const std::vector<double>& eps_list, const SolveConfig& cfg) {
    if (eps_list.size() < 2)
        throw ConfigInvalid("epsilon_sweep: need at least 2 eps values to fit");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0))
            throw ConfigInvalid("epsilon_sweep: eps values must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw ConfigInvalid("epsilon_sweep: eps values must strictly decrease");
    }
    profile.require_centered("epsilon_sweep");

    const ScalarField p_init(data.grid(), 0.0);
    auto [p0, rep0] = solve(p_init, data, cfg);

    const double c_phi = profile.first_moment_abs();
    const double env_coef = std::sqrt(2.0) * c_phi * std::sqrt(data.grid().volume());

    RateFit out;
    out.xs = eps_list;
    double max_gap_sum = 0.0;
    for (double eps : eps_list) {
        auto [pe, repe] = solve_eps(p0, data, profile.with_eps(eps), cfg);
        const double dist = norm_H1(pe - p0);
        const double gap_sum = repe.final_gap_bound + rep0.final_gap_bound;
        max_gap_sum = std::max(max_gap_sum, gap_sum);
        out.ys.push_back(dist);
        out.envelope.push_back(env_coef * eps + gap_sum);
        if (dist > out.envelope.back()) out.bound_satisfied = false;
    }

    double max_y = 0.0;
    for (double y : out.ys) max_y = std::max(max_y, y);
    if (max_y <= 100.0 * max_gap_sum) {
        out.degenerate = true; // distances at solver-noise level
        return out;
    }
    RateFit fitted = fit_log_log(out.xs, out.ys);
    out.slope = fitted.slope;
    out.intercept = fitted.intercept;
    out.r2 = fitted.r2;
    out.degenerate = fitted.degenerate;
    return out;
}

RateFit refinement_study(const ExactCaseGenerator& gen,
                         const std::vector<int>& n3_list, int n1, int n2,
                         const SolveConfig& cfg) {
    if (n3_list.size() < 2)
        throw ConfigInvalid("refinement_study: need at least 2 resolutions");
    for (std::size_t i = 1; i < n3_list.size(); ++i)
        if (n3_list[i] <= n3_list[i - 1])
            throw ConfigInvalid("refinement_study: resolutions must increase");

    RateFit out;
    for (int n3 : n3_list) {
        GridSpec grid(n1, n2, n3);
        auto [data, p_exact] = gen(grid);
        auto [p, rep] = solve(ScalarField(grid, 0.0), data, cfg);
        const double denom = norm_H1(p_exact);
        out.xs.push_back(grid.h3());
        out.ys.push_back(norm_H1(p - p_exact) / (denom > 0 ? denom : 1.0));
    }
    return fit_log_log(out.xs, out.ys);
}

namespace {

struct WorstTracker {
    double margin = std::numeric_limits<double>::infinity();
    std::uint64_t seed = 0;
    void update(double m, std::uint64_t s) {
        if (m < margin) {
            margin = m;
            seed = s;
        }
    }
};

} // namespace

AuditReport inequality_audit(const InversionData& data, int trials,
                             std::uint64_t seed) {
    if (trials < 1) throw ConfigInvalid("inequality_audit: trials must be >= 1");
    const GridSpec& g = data.grid();
    const double scale = problem_scale(data);
    const int kmax = std::max(1, std::min({4, g.n1 / 2 - 1, g.n2 / 2 - 1, g.n3 / 2 - 1}));

    const double mM2 = norm_L2(data.M) * norm_L2(data.M);
    const double mPV = norm_Hneg1(data.PV);
    const MollifierSpec moll = MollifierSpec::bump(0.1);
    const double env_lemma66 =
        moll.first_moment_abs() * std::sqrt(g.volume()) * moll.eps() / 2.0;

    WorstTracker monotone, lipschitz, coercive, midpoint, first_order, nonneg,
        eps_close, density_cvx;

    for (int t = 0; t < trials; ++t) {
        const std::uint64_t s1 = seed + 2 * static_cast<std::uint64_t>(t) + 1;
        const std::uint64_t s2 = seed + 2 * static_cast<std::uint64_t>(t) + 2;
        ScalarField p1 = band_limited_noise(g, kmax, s1, scale);
        ScalarField p2 = band_limited_noise(g, kmax, s2, scale);

        const ScalarField r1 = grad_energy(p1, data);
        const ScalarField r2 = grad_energy(p2, data);
        const ScalarField d = p1 - p2;
        const double dh1 = norm_H1(d);

        monotone.update(inner_L2(r1 - r2, d) - 0.5 * dh1 * dh1, s1);
        lipschitz.update(1.5 * dh1 - norm_Hneg1(project_mean_zero(r1 - r2)), s1);

        const double E1 = energy(p1, data);
        const double E2 = energy(p2, data);
        const double h1p1 = norm_H1(p1);
        coercive.update(E1 - (h1p1 * h1p1 / 16.0 - 0.75 * mM2 - 4.0 * mPV * mPV), s1);

        const ScalarField mid = project_mean_zero(0.5 * (p1 + p2));
        midpoint.update(0.5 * E1 + 0.5 * E2 - energy(mid, data) - dh1 * dh1 / 16.0, s1);
        first_order.update(E2 - E1 - inner_L2(r1, p2 - p1) - 0.25 * dh1 * dh1, s1);
        nonneg.update(E1 - inner_L2(data.PV, p1) + 0.5 * mM2, s1);

        const ScalarField r1e = grad_energy_eps(p1, data, moll);
        eps_close.update(env_lemma66 - norm_Hneg1(project_mean_zero(r1 - r1e)), s1);

        // 1/2-strong convexity of the pointwise density: midpoint convexity
        // of e(u) - 1/4 |u|^2 along sampled segments in R^3.
        std::mt19937_64 rng(s2);
        auto unif = [&rng](double lo, double hi) {
            return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
        };
        double worst = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 64; ++k) {
            const double r = unif(-2, 2);
            auto g_shift = [&](double u1, double u2, double u3) {
                const double w = min0(r - u3);
                return 0.25 * (u1 * u1 + u2 * u2 + u3 * u3) - 0.25 * w * w;
            };
            double u[3], v[3];
            for (double& x : u) x = unif(-3, 3);
            for (double& x : v) x = unif(-3, 3);
            worst = std::min(
                worst, 0.5 * g_shift(u[0], u[1], u[2]) + 0.5 * g_shift(v[0], v[1], v[2]) -
                           g_shift(0.5 * (u[0] + v[0]), 0.5 * (u[1] + v[1]),
                                   0.5 * (u[2] + v[2])));
        }
        density_cvx.update(worst, s2);
    }

    const double tol = -1e-10 * scale * scale;
    AuditReport rep;
    rep.trials = trials;
    rep.seed = seed;
    rep.scale = scale;
    auto push = [&](const std::string& name, const WorstTracker& w) {
        InequalityResult r{name, w.margin, w.seed, w.margin >= tol};
        rep.all_pass = rep.all_pass && r.pass;
        rep.results.push_back(std::move(r));
    };
    push("strong monotonicity (mu = 1/2)", monotone);
    push("Lipschitz derivative (L = 3/2)", lipschitz);
    push("coercivity (1/16, 3/4, 4)", coercive);
    push("midpoint strong convexity", midpoint);
    push("first-order strong convexity", first_order);
    push("non-negativity shift", nonneg);
    push("mollified derivative eps-closeness", eps_close);
    push("density convexity (1D segments)", density_cvx);
    return rep;
}

} // namespace pqg
