/// @file pqginv_main.cpp
/// @brief Command-line front end for the inversion library.
///
/// Subcommands: solve, exact1d, sweep-eps, sweep-mesh, audit, plotdata,
/// phases. Exit codes: 0 success/converged, 2 iteration budget exhausted,
/// 3 invalid configuration or data.
///
/// Determinism contract: identical configuration and seed produce
/// byte-identical JSON/CSV outputs. Timestamps go to a sidecar run.log only.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pqg/diagnostics.hpp"
#include "pqg/exact1d.hpp"
#include "pqg/field_io.hpp"
#include "pqg/random_fields.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace pqg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMaxIter = 2;
constexpr int kExitInvalid = 3;

struct CommonOpts {
    std::vector<int> grid_n{16, 16, 16};
    std::vector<double> periods{two_pi, two_pi, two_pi};
    std::vector<std::string> constant_kv;
    std::string mollifier = "bump";
    double eps = 0.0;
    double tol = 1e-8;
    int max_iter = 10000;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::string mode = "fd";
    std::string method = "gd";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--grid", o.grid_n, "grid points n1,n2,n3")->delimiter(',');
    cmd->add_option("--periods", o.periods, "periods L1,L2,L3")->delimiter(',');
    cmd->add_option("--constants", o.constant_kv,
                    "physical constants k=v,... (f, B_theta_e, B_q, C_theta_e, C_q)")
        ->delimiter(',');
    cmd->add_option("--mollifier", o.mollifier,
                    "mollifier profile: bump | triangular | csv:<path>");
    cmd->add_option("--eps", o.eps, "mollification width");
    cmd->add_option("--tol", o.tol, "certified-gap tolerance (relative to scale)");
    cmd->add_option("--max-iter", o.max_iter, "iteration budget");
    cmd->add_option("--seed", o.seed, "random seed recorded in reports");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--mode", o.mode, "discretization of the min term: fd | spectral")
        ->check(CLI::IsMember({"fd", "spectral"}));
    cmd->add_option("--method", o.method, "iteration: gd | bb")
        ->check(CLI::IsMember({"gd", "bb"}));
}

GridSpec make_grid(const CommonOpts& o) {
    if (o.grid_n.size() != 3) throw ConfigInvalid("--grid needs n1,n2,n3");
    if (o.periods.size() != 3) throw ConfigInvalid("--periods needs L1,L2,L3");
    return GridSpec(o.grid_n[0], o.grid_n[1], o.grid_n[2], o.periods[0],
                    o.periods[1], o.periods[2]);
}

PhysicalConstants make_constants(const CommonOpts& o) {
    PhysicalConstants c;
    for (const auto& kv : o.constant_kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ConfigInvalid("--constants entries must be key=value, got " + kv);
        const std::string key = kv.substr(0, eq);
        const double val = std::stod(kv.substr(eq + 1));
        if (key == "f") c.f = val;
        else if (key == "B_theta_e") c.B_theta_e = val;
        else if (key == "B_q") c.B_q = val;
        else if (key == "C_theta_e") c.C_theta_e = val;
        else if (key == "C_q") c.C_q = val;
        else throw ConfigInvalid("--constants: unknown key " + key);
    }
    c.validate();
    return c;
}

MollifierSpec make_mollifier(const CommonOpts& o, double eps) {
    if (o.mollifier == "bump") return MollifierSpec::bump(eps);
    if (o.mollifier == "triangular") return MollifierSpec::triangular_smoothed(eps);
    if (o.mollifier.rfind("csv:", 0) == 0) {
        std::vector<double> y, p;
        read_profile_csv(o.mollifier.substr(4), y, p);
        return MollifierSpec::tabulated(y, p, eps);
    }
    throw ConfigInvalid("--mollifier: unknown profile " + o.mollifier);
}

SolveConfig make_solve_config(const CommonOpts& o) {
    SolveConfig cfg;
    cfg.tol_gap = o.tol;
    cfg.max_iter = o.max_iter;
    cfg.mode = o.mode == "fd" ? DiffMode::FD : DiffMode::Spectral;
    cfg.method = o.method == "bb" ? SolveMethod::PreconditionedGradientBB
                                  : SolveMethod::PreconditionedGradient;
    return cfg;
}

ScalarField load_field(const std::string& path) {
    if (!fs::exists(path)) throw ConfigInvalid("input file not found: " + path);
    return read_field(path);
}

void ensure_out(const CommonOpts& o) { fs::create_directories(o.out_dir); }

std::string out_path(const CommonOpts& o, const std::string& name) {
    return (fs::path(o.out_dir) / name).string();
}

void write_json(const CommonOpts& o, const std::string& name, const json& j) {
    write_text_atomic(out_path(o, name), j.dump(2) + "\n");
}

void append_run_log(const CommonOpts& o, const std::string& line) {
    std::ofstream log(out_path(o, "run.log"), std::ios::app);
    const auto now = std::chrono::system_clock::now();
    log << std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch())
               .count()
        << " " << line << "\n";
}

json report_to_json(const SolveReport& r, const CommonOpts& o) {
    json j;
    j["status"] = r.converged() ? "converged" : "max_iter_exceeded";
    j["iterations"] = r.iterations;
    j["final_energy"] = r.final_energy;
    j["final_gap_bound"] = r.final_gap_bound;
    j["scale"] = r.scale;
    j["epsilon"] = r.epsilon;
    j["unsaturated_fraction"] = r.unsaturated_fraction;
    j["saturated_fraction"] = r.saturated_fraction;
    j["energy_history"] = r.energy_history;
    j["gap_history"] = r.gap_history;
    if (!r.epsilon_trace.empty()) {
        json trace = json::array();
        for (auto [eps, iters] : r.epsilon_trace)
            trace.push_back({{"epsilon", eps}, {"iterations", iters}});
        j["epsilon_trace"] = trace;
    }
    j["seed"] = o.seed;
    return j;
}

json ratefit_to_json(const RateFit& f) {
    json j;
    j["xs"] = f.xs;
    j["ys"] = f.ys;
    if (!f.envelope.empty()) j["envelope"] = f.envelope;
    j["slope"] = f.slope;
    j["intercept"] = f.intercept;
    j["r2"] = f.r2;
    j["bound_satisfied"] = f.bound_satisfied;
    j["degenerate"] = f.degenerate;
    return j;
}

struct NamedCase {
    InversionData data;
    ScalarField p_exact; // empty grid when no closed form is attached
    bool has_exact = false;
};

// Named data cases for solve/sweep commands.
NamedCase make_case(const std::string& name, const GridSpec& grid,
                    PhysicalConstants constants) {
    if (name == "baseball-cap") {
        auto [data, p] = baseball_cap(grid);
        data.constants = constants;
        return {std::move(data), std::move(p), true};
    }
    if (name == "smooth-saturated") {
        // PV = cos x3, M = 2 + sin x3: saturated everywhere, p = -cos x3
        Exact1DSolution sol = build_exact(
            Profile1D::from_function(grid.n3, [](double x) { return std::cos(x); }),
            Profile1D::from_function(grid.n3, [](double x) { return 2.0 + std::sin(x); }));
        InversionData data = sol.extrude_data(grid, constants);
        ScalarField p = sol.extrude_p(grid);
        return {std::move(data), std::move(p), true};
    }
    throw ConfigInvalid("unknown named case: " + name);
}

Profile1D parse_profile(const std::string& spec, int n) {
    if (spec == "zero") return Profile1D::from_function(n, [](double) { return 0.0; });
    if (spec == "sin") return Profile1D::from_function(n, [](double x) { return std::sin(x); });
    if (spec == "cos") return Profile1D::from_function(n, [](double x) { return std::cos(x); });
    if (spec.rfind("const:", 0) == 0) {
        const double v = std::stod(spec.substr(6));
        return Profile1D::from_function(n, [v](double) { return v; });
    }
    if (spec.rfind("sin+shift:", 0) == 0) {
        const double a = std::stod(spec.substr(10));
        return Profile1D::from_function(n, [a](double x) { return std::sin(x) + a; });
    }
    if (spec.rfind("csv:", 0) == 0) {
        std::vector<double> x, v;
        read_profile_csv(spec.substr(4), x, v);
        if (static_cast<int>(v.size()) != n)
            throw ConfigInvalid("profile csv must have exactly n3 samples");
        return Profile1D(v);
    }
    throw ConfigInvalid("unknown profile: " + spec);
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------
int cmd_solve(const CommonOpts& o, const std::string& case_name,
              const std::string& m_path, const std::string& pv_path,
              const std::string& p0_path, const std::string& continuation,
              bool write_trace) {
    ensure_out(o);
    PhysicalConstants constants = make_constants(o);

    std::optional<InversionData> data;
    if (!case_name.empty()) {
        data = make_case(case_name, make_grid(o), constants).data;
    } else {
        if (m_path.empty() || pv_path.empty())
            throw ConfigInvalid("solve needs --case or both --m and --pv");
        ScalarField M = load_field(m_path);
        ScalarField PV = project_mean_zero(load_field(pv_path));
        data = InversionData(std::move(M), std::move(PV), constants);
    }
    const GridSpec grid = data->grid();

    ScalarField p0 = p0_path.empty()
                         ? ScalarField(grid, 0.0)
                         : project_mean_zero(load_field(p0_path));

    SolveConfig cfg = make_solve_config(o);
    std::ofstream trace_os;
    if (write_trace) {
        trace_os.open(out_path(o, "trace.jsonl"), std::ios::trunc);
        cfg.trace = &trace_os;
    }

    std::pair<ScalarField, SolveReport> result{ScalarField(grid), SolveReport{}};
    if (!continuation.empty()) {
        std::stringstream ss(continuation);
        std::string tok;
        while (std::getline(ss, tok, ',')) cfg.continuation.push_back(std::stod(tok));
        result = continuation_solve(p0, *data, make_mollifier(o, 0.0), cfg);
    } else if (o.eps > 0.0) {
        result = solve_eps(p0, *data, make_mollifier(o, o.eps), cfg);
    } else {
        result = solve(p0, *data, cfg);
    }
    auto& [p_star, report] = result;

    write_field(out_path(o, "solution.pqgf"), p_star);
    write_json(o, "report.json", report_to_json(report, o));

    PhaseField ph = phases(p_star, *data, cfg.mode);
    InterfaceSummary iface = interface_extract(ph);
    {
        std::ostringstream csv;
        csv.precision(17);
        csv << "x3,H_u,q,theta_e,m_minus_dp\n";
        for (int i3 = 0; i3 < grid.n3; ++i3)
            csv << grid.x3(i3) << ',' << ph.H_u(0, 0, i3) << ',' << ph.q(0, 0, i3)
                << ',' << ph.theta_e(0, 0, i3) << ',' << ph.m_minus_dp(0, 0, i3)
                << '\n';
        write_text_atomic(out_path(o, "phases.csv"), csv.str());
    }
    {
        std::ostringstream csv;
        csv.precision(17);
        csv << "x3_crossing\n";
        for (double x : iface.x3_crossings) csv << x << '\n';
        write_text_atomic(out_path(o, "interface.csv"), csv.str());
    }
    append_run_log(o, "solve finished: " +
                          std::string(report.converged() ? "converged" : "max-iter"));
    return report.converged() ? kExitOk : kExitMaxIter;
}

// ---------------------------------------------------------------------------
// exact1d
// ---------------------------------------------------------------------------
int cmd_exact1d(const CommonOpts& o, const std::string& m_profile,
                const std::string& pv_profile) {
    ensure_out(o);
    const GridSpec grid = make_grid(o);
    PhysicalConstants constants = make_constants(o);

    if (m_profile == "baseball-cap") {
        auto [data, p] = baseball_cap(grid);
        data.constants = constants;
        write_field(out_path(o, "M.pqgf"), data.M);
        write_field(out_path(o, "PV.pqgf"), data.PV);
        write_field(out_path(o, "p_exact.pqgf"), p);
        json meta;
        meta["case"] = "baseball-cap";
        meta["c"] = 1.0 / std::numbers::pi;
        meta["grid"] = {grid.n1, grid.n2, grid.n3};
        meta["seed"] = o.seed;
        write_json(o, "meta.json", meta);
        return kExitOk;
    }

    Profile1D M = parse_profile(m_profile, grid.n3);
    Profile1D PV = parse_profile(pv_profile, grid.n3);
    Exact1DSolution sol = build_exact(PV, M);
    InversionData data = sol.extrude_data(grid, constants);
    ScalarField p = sol.extrude_p(grid);
    write_field(out_path(o, "M.pqgf"), data.M);
    write_field(out_path(o, "PV.pqgf"), data.PV);
    write_field(out_path(o, "p_exact.pqgf"), p);
    json meta;
    meta["m_profile"] = m_profile;
    meta["pv_profile"] = pv_profile;
    // the solution solves with data (PV, M - c); M.pqgf already carries M - c
    meta["c"] = sol.c;
    meta["grid"] = {grid.n1, grid.n2, grid.n3};
    meta["seed"] = o.seed;
    write_json(o, "meta.json", meta);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep-eps / sweep-mesh
// ---------------------------------------------------------------------------
int cmd_sweep_eps(const CommonOpts& o, const std::string& case_name,
                  const std::vector<double>& eps_list) {
    ensure_out(o);
    NamedCase c = make_case(case_name, make_grid(o), make_constants(o));
    RateFit fit = epsilon_sweep(c.data, make_mollifier(o, 0.0), eps_list,
                                make_solve_config(o));
    json j = ratefit_to_json(fit);
    j["seed"] = o.seed;
    write_json(o, "ratefit.json", j);
    std::ostringstream csv;
    csv.precision(17);
    csv << "eps,distance_H1,envelope\n";
    for (std::size_t i = 0; i < fit.xs.size(); ++i)
        csv << fit.xs[i] << ',' << fit.ys[i] << ',' << fit.envelope[i] << '\n';
    write_text_atomic(out_path(o, "sweep.csv"), csv.str());
    return kExitOk;
}

int cmd_sweep_mesh(const CommonOpts& o, const std::string& case_name,
                   const std::vector<int>& n_list) {
    ensure_out(o);
    PhysicalConstants constants = make_constants(o);
    ExactCaseGenerator gen = [&](const GridSpec& g) {
        NamedCase c = make_case(case_name, g, constants);
        return std::make_pair(std::move(c.data), std::move(c.p_exact));
    };
    if (o.grid_n.size() != 3) throw ConfigInvalid("--grid needs n1,n2,n3");
    RateFit fit = refinement_study(gen, n_list, o.grid_n[0], o.grid_n[1],
                                   make_solve_config(o));
    json j = ratefit_to_json(fit);
    j["seed"] = o.seed;
    write_json(o, "ratefit.json", j);
    std::ostringstream csv;
    csv.precision(17);
    csv << "h3,rel_H1_error\n";
    for (std::size_t i = 0; i < fit.xs.size(); ++i)
        csv << fit.xs[i] << ',' << fit.ys[i] << '\n';
    write_text_atomic(out_path(o, "sweep.csv"), csv.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------
// audit
// ---------------------------------------------------------------------------
int cmd_audit(const CommonOpts& o, int trials, const std::string& m_path,
              const std::string& pv_path) {
    ensure_out(o);
    const GridSpec grid = make_grid(o);
    InversionData data =
        (!m_path.empty() && !pv_path.empty())
            ? InversionData(load_field(m_path), project_mean_zero(load_field(pv_path)),
                            make_constants(o))
            : InversionData(band_limited_noise(grid, 3, o.seed + 101, 1.0),
                            band_limited_noise(grid, 3, o.seed + 202, 1.0),
                            make_constants(o));
    AuditReport rep = inequality_audit(data, trials, o.seed);
    json j;
    j["trials"] = rep.trials;
    j["seed"] = rep.seed;
    j["scale"] = rep.scale;
    j["all_pass"] = rep.all_pass;
    json results = json::array();
    for (const auto& r : rep.results)
        results.push_back({{"name", r.name},
                           {"worst_margin", r.worst_margin},
                           {"worst_seed", r.worst_seed},
                           {"pass", r.pass}});
    j["results"] = results;
    write_json(o, "audit.json", j);
    return rep.all_pass ? kExitOk : 1;
}

// ---------------------------------------------------------------------------
// plotdata
// ---------------------------------------------------------------------------
int cmd_plotdata(const CommonOpts& o, const std::string& figure) {
    ensure_out(o);
    if (figure == "regularisation-figure") {
        const double eps = o.eps > 0 ? o.eps : 0.5;
        MollifierSpec ref = make_mollifier(o, 1.0);
        MollifierSpec meps = make_mollifier(o, eps);
        std::ostringstream csv;
        csv.precision(17);
        csv << "x,min0,F1,min_eps\n";
        const int n = 1201;
        for (int i = 0; i < n; ++i) {
            const double x = -1.5 + 3.0 * i / (n - 1);
            csv << x << ',' << min0(x) << ',' << ref.min_eps(x) << ','
                << meps.min_eps(x) << '\n';
        }
        write_text_atomic(out_path(o, "regularisation.csv"), csv.str());
        return kExitOk;
    }
    if (figure == "sharp-reg-figure") {
        std::ostringstream csv;
        csv.precision(17);
        csv << "x3,Theta,M\n";
        const int n = 2001;
        for (int i = 0; i < n; ++i) {
            const double x = -std::numbers::pi + two_pi * i / (n - 1);
            csv << x << ',' << baseball_cap_dp(x) << ',' << baseball_cap_M(x) << '\n';
        }
        write_text_atomic(out_path(o, "sharp_reg.csv"), csv.str());
        return kExitOk;
    }
    if (figure == "phase-figure") {
        const GridSpec grid = make_grid(o);
        auto [data, p] = baseball_cap(grid);
        PhaseField ph = phases(p, data);
        std::ostringstream csv;
        csv.precision(17);
        csv << "x3,H_u,H_s,q\n";
        for (int i3 = 0; i3 < grid.n3; ++i3)
            csv << grid.x3(i3) << ',' << ph.H_u(0, 0, i3) << ',' << ph.H_s(0, 0, i3)
                << ',' << ph.q(0, 0, i3) << '\n';
        write_text_atomic(out_path(o, "phase.csv"), csv.str());
        return kExitOk;
    }
    throw UnknownFigure("plotdata: unknown figure " + figure);
}

// ---------------------------------------------------------------------------
// phases
// ---------------------------------------------------------------------------
int cmd_phases(const CommonOpts& o, const std::string& p_path,
               const std::string& m_path, const std::string& pv_path) {
    ensure_out(o);
    ScalarField p = project_mean_zero(load_field(p_path));
    ScalarField M = load_field(m_path);
    ScalarField PV = pv_path.empty() ? ScalarField(M.grid(), 0.0)
                                     : project_mean_zero(load_field(pv_path));
    PV.set_mean_zero(true);
    InversionData data(std::move(M), std::move(PV), make_constants(o));
    PhaseField ph = phases(p, data,
                           o.mode == "fd" ? DiffMode::FD : DiffMode::Spectral);
    InterfaceSummary iface = interface_extract(ph);

    const GridSpec& g = p.grid();
    std::ostringstream csv;
    csv.precision(17);
    csv << "i1,i2,i3,H_u,q,theta_e,m_minus_dp\n";
    for (int i1 = 0; i1 < g.n1; ++i1)
        for (int i2 = 0; i2 < g.n2; ++i2)
            for (int i3 = 0; i3 < g.n3; ++i3)
                csv << i1 << ',' << i2 << ',' << i3 << ',' << ph.H_u(i1, i2, i3)
                    << ',' << ph.q(i1, i2, i3) << ',' << ph.theta_e(i1, i2, i3)
                    << ',' << ph.m_minus_dp(i1, i2, i3) << '\n';
    write_text_atomic(out_path(o, "phases.csv"), csv.str());

    json j;
    j["unsaturated_fraction"] = iface.unsaturated_fraction;
    j["saturated_fraction"] = iface.saturated_fraction;
    j["interface_cell_count"] = iface.cells.size();
    j["x3_crossings"] = iface.x3_crossings;
    j["seed"] = o.seed;
    write_json(o, "phases.json", j);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"potential-vorticity-and-moisture inversion toolkit"};
    app.require_subcommand(1);
    // key=value config, one [subcommand] section per command; command-line
    // flags take precedence over file values
    app.fallthrough();
    app.set_config("--config", "", "key=value configuration file");

    CommonOpts o;

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "minimize the inversion energy");
    std::string case_name, m_path, pv_path, p0_path, continuation;
    bool write_trace = false;
    add_common(solve_cmd, o);
    solve_cmd->add_option("--case", case_name, "named data case (baseball-cap, smooth-saturated)");
    solve_cmd->add_option("--m", m_path, "moisture field (PQGF)");
    solve_cmd->add_option("--pv", pv_path, "potential vorticity field (PQGF)");
    solve_cmd->add_option("--p0", p0_path, "initial iterate (PQGF)");
    solve_cmd->add_option("--continuation", continuation,
                          "eps schedule for warm-started continuation, e.g. 0.1,0.05,0");
    solve_cmd->add_flag("--trace", write_trace, "stream trace.jsonl");

    // exact1d
    auto* exact_cmd = app.add_subcommand("exact1d", "emit closed-form 1D solutions");
    std::string m_profile = "baseball-cap", pv_profile = "zero";
    add_common(exact_cmd, o);
    exact_cmd->add_option("--m-profile", m_profile,
                          "M profile: baseball-cap | sin | cos | const:<v> | "
                          "sin+shift:<a> | csv:<path>");
    exact_cmd->add_option("--pv-profile", pv_profile,
                          "PV profile: zero | sin | cos | csv:<path>");

    // sweep-eps
    auto* sweep_eps_cmd =
        app.add_subcommand("sweep-eps", "eps-convergence study against the sharp solve");
    std::string sweep_case = "baseball-cap";
    std::vector<double> eps_list{0.2, 0.1, 0.05, 0.025};
    add_common(sweep_eps_cmd, o);
    sweep_eps_cmd->add_option("--case", sweep_case, "named data case");
    sweep_eps_cmd->add_option("--eps-list", eps_list, "decreasing eps values")
        ->delimiter(',');

    // sweep-mesh
    auto* sweep_mesh_cmd =
        app.add_subcommand("sweep-mesh", "mesh-refinement study against exact solutions");
    std::string mesh_case = "baseball-cap";
    std::vector<int> n_list{64, 128, 256};
    add_common(sweep_mesh_cmd, o);
    sweep_mesh_cmd->add_option("--case", mesh_case, "named data case");
    sweep_mesh_cmd->add_option("--n-list", n_list, "increasing n3 values")
        ->delimiter(',');

    // audit
    auto* audit_cmd =
        app.add_subcommand("audit", "replay the strong-convexity inequality suite");
    int trials = 100;
    std::string audit_m, audit_pv;
    add_common(audit_cmd, o);
    audit_cmd->add_option("--trials", trials, "random trials");
    audit_cmd->add_option("--m", audit_m, "moisture field (PQGF), random if absent");
    audit_cmd->add_option("--pv", audit_pv, "PV field (PQGF), random if absent");

    // plotdata
    auto* plot_cmd = app.add_subcommand("plotdata", "emit figure curves as CSV");
    std::string figure = "regularisation-figure";
    add_common(plot_cmd, o);
    plot_cmd->add_option("--figure", figure,
                         "phase-figure | regularisation-figure | sharp-reg-figure");

    // phases
    auto* phases_cmd =
        app.add_subcommand("phases", "phase decomposition of an existing solution");
    std::string phases_p, phases_m, phases_pv;
    add_common(phases_cmd, o);
    phases_cmd->add_option("--p", phases_p, "pressure field (PQGF)")->required();
    phases_cmd->add_option("--m", phases_m, "moisture field (PQGF)")->required();
    phases_cmd->add_option("--pv", phases_pv, "PV field (PQGF), optional");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve_cmd->parsed())
            return cmd_solve(o, case_name, m_path, pv_path, p0_path, continuation,
                             write_trace);
        if (exact_cmd->parsed()) return cmd_exact1d(o, m_profile, pv_profile);
        if (sweep_eps_cmd->parsed()) return cmd_sweep_eps(o, sweep_case, eps_list);
        if (sweep_mesh_cmd->parsed()) return cmd_sweep_mesh(o, mesh_case, n_list);
        if (audit_cmd->parsed()) return cmd_audit(o, trials, audit_m, audit_pv);
        if (plot_cmd->parsed()) return cmd_plotdata(o, figure);
        if (phases_cmd->parsed()) return cmd_phases(o, phases_p, phases_m, phases_pv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        if (const auto* pv = dynamic_cast<const PropertyViolated*>(&e)) {
            for (const auto& f : pv->failures()) std::cerr << "  violated: " << f << "\n";
        }
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
