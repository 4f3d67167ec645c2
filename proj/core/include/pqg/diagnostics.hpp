/// @file diagnostics.hpp
/// @brief Post-hoc measurements: interface geometry, local Holder exponents
/// via the Campanato condition, eps / mesh rate fits, and inequality audits.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pqg/solver.hpp"

namespace pqg {

/// Log-log least-squares rate fit of ys against xs.
struct RateFit {
    std::vector<double> xs, ys;
    std::vector<double> envelope; // per-point analytic bound, when one applies
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    bool bound_satisfied = true;
    bool degenerate = false; // ys at measurement-noise level, slope meaningless
};

/// Pure fit on positive data; xs must be strictly decreasing (ConfigInvalid
/// otherwise). Exposed separately so the fit itself can be verified against
/// synthetic power laws.
RateFit fit_log_log(const std::vector<double>& xs, const std::vector<double>& ys);

struct InterfaceSummary {
    std::vector<std::size_t> cells; // cells adjacent to a sign change
    double unsaturated_fraction = 0.0;
    double saturated_fraction = 0.0;
    /// x3 positions of sign changes of M - d3 p, column-scanned and linearly
    /// interpolated, then merged across columns.
    std::vector<double> x3_crossings;
};

InterfaceSummary interface_extract(const PhaseField& ph);

struct HolderReport {
    std::vector<double> alpha_estimates; // one per non-degenerate center
    std::vector<std::array<int, 3>> centers_used;
    std::vector<double> radii;
    double alpha_global = 0.0; // median of the estimates
    int degenerate_centers = 0;
};

struct CenterSpec {
    int count = 32;
    std::uint64_t seed = 0;
    /// When nonempty, these centers are used instead of random ones.
    std::vector<std::array<int, 3>> explicit_centers;
};

/// Fits int_{B_r} |grad u|^2 ~ r^{d-2+2 alpha} per ball (d = 3, geodesic
/// radii, discrete FD gradient) and reports alpha = (slope-1)/2 clamped to
/// [0,1]. Balls whose smallest integral is below 1e-14 * ||grad u||^2 are
/// flagged degenerate and excluded. Radii beyond the half-period throw
/// RadiiOutOfRange.
HolderReport holder_estimate(const ScalarField& u, std::vector<double> radii,
                             const CenterSpec& centers);

/// Default radii: 10 geometric points from 4*max(h_a) to min(L_a)/6 (inside
/// the quarter-period cap).
std::vector<double> default_holder_radii(const GridSpec& grid);

/// Solves at each eps (plus the sharp reference), measures
/// ys = ||p_eps - p_0||_H1 and checks the first-order envelope
/// sqrt(2) * C_phi * vol^{1/2} * eps plus the two solver gap bounds.
RateFit epsilon_sweep(const InversionData& data, const MollifierSpec& profile,
                      const std::vector<double>& eps_list, const SolveConfig& cfg);

/// Relative H1 solve error against an exact1d-backed generator on a sequence
/// of vertical resolutions; xs = h3. The generator receives each grid and
/// returns (data, p_exact).
using ExactCaseGenerator =
    std::function<std::pair<InversionData, ScalarField>(const GridSpec&)>;
RateFit refinement_study(const ExactCaseGenerator& gen,
                         const std::vector<int>& n3_list, int n1, int n2,
                         const SolveConfig& cfg);

struct InequalityResult {
    std::string name;
    double worst_margin = 0.0; // >= 0 means the inequality held with room
    std::uint64_t worst_seed = 0;
    bool pass = true;
};

struct AuditReport {
    std::vector<InequalityResult> results;
    int trials = 0;
    std::uint64_t seed = 0;
    double scale = 1.0;
    bool all_pass = true;
};

/// Replays every Invariants & Properties inequality of the energy module on
/// seeded random field pairs: strong monotonicity (mu = 1/2), Lipschitz
/// derivative (L = 3/2), coercivity, midpoint and first-order strong
/// convexity, the non-negativity shift, and the eps-closeness of the
/// mollified derivative. Margins below -1e-10 * scale^2 fail, recording the
/// offending per-trial seed for deterministic replay.
AuditReport inequality_audit(const InversionData& data, int trials,
                             std::uint64_t seed);

} // namespace pqg
