/// @file solver.hpp
/// @brief Preconditioned first-order minimization with certified stopping.
///
/// The iteration is p <- p - step * (-Lap)^{-1} DE(p) (projected mean-zero
/// each step), i.e. gradient descent in the H1 metric. The spectral inverse
/// Laplacian makes the preconditioned Hessian sit in [mu, L] = [1/2, 3/2]
/// independently of the grid, so the fixed step 2/(mu+L) = 1 converges at a
/// mesh-independent linear rate.
///
/// Stopping is by the certificate that strong convexity buys:
///   E(p) - min E <= ||DE(p)||_{H^-1}^2           (energy gap bound)
///   ||p - p*||_H1 <= 2 ||DE(p)||_{H^-1}          (distance bound)
/// These are exact bounds for the discrete objective, which is 1/2-strongly
/// convex in the discrete H1 metric by construction.

#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "pqg/energy.hpp"

namespace pqg {

enum class SolveMethod { PreconditionedGradient, PreconditionedGradientBB };

struct SolveConfig {
    SolveMethod method = SolveMethod::PreconditionedGradient;
    /// Step in the preconditioned metric; default 2/(mu+L) with mu=1/2, L=3/2.
    double step = 1.0;
    /// Target certified bound on ||p - p*||_H1, relative to the problem scale
    /// max(1, ||M|| + ||PV||_{H^-1}).
    double tol_gap = 1e-8;
    int max_iter = 10000;
    /// Optional eps schedule for continuation_solve (strictly decreasing;
    /// a final 0 stage is appended when absent).
    std::vector<double> continuation;
    /// Discretization of the vertical derivative in the nonsmooth term.
    DiffMode mode = DiffMode::FD;
    /// When set, one JSON line {"iter","energy","gap_bound","epsilon"} per
    /// iteration is streamed here.
    std::ostream* trace = nullptr;
    /// Optional observer invoked with every iterate (index, field); used by
    /// certificate audits that need the full trajectory.
    std::function<void(int, const ScalarField&)> on_iterate;

    void validate() const {
        if (!(step > 0.0) || !(step < 4.0 / 3.0))
            throw ConfigInvalid("SolveConfig: need 0 < step < 2/L = 4/3");
        if (!(tol_gap > 0.0)) throw ConfigInvalid("SolveConfig: tol_gap must be > 0");
        if (max_iter < 1) throw ConfigInvalid("SolveConfig: max_iter must be >= 1");
    }
};

enum class SolveStatus { Converged, MaxIterExceeded };

struct SolveReport {
    SolveStatus status = SolveStatus::Converged;
    int iterations = 0;
    std::vector<double> energy_history;
    std::vector<double> gap_history; // certified distance bounds per iterate
    double final_gap_bound = 0.0;
    double final_energy = 0.0;
    double unsaturated_fraction = 0.0;
    double saturated_fraction = 0.0;
    double scale = 1.0;   // tolerance scale used
    double epsilon = 0.0; // mollification width of this solve (0 = sharp)
    /// (eps, iterations spent) per continuation stage.
    std::vector<std::pair<double, int>> epsilon_trace;

    bool converged() const { return status == SolveStatus::Converged; }
};

struct GapBounds {
    double energy_gap_bound = 0.0; // E(p) - min E <= this
    double distance_bound = 0.0;   // ||p - p*||_H1 <= this
};

/// Certified optimality bounds at p from ||DE(p)||_{H^-1} (mu = 1/2).
GapBounds certified_gap(const ScalarField& p, const InversionData& data,
                        DiffMode mode = DiffMode::FD);

/// Minimizes the sharp energy. On MaxIterExceeded the best (last) iterate is
/// still returned, with report.status saying so.
std::pair<ScalarField, SolveReport> solve(const ScalarField& p0,
                                          const InversionData& data,
                                          const SolveConfig& cfg);

/// Minimizes the mollified energy E_eps; eps = 0 reproduces solve().
std::pair<ScalarField, SolveReport> solve_eps(const ScalarField& p0,
                                              const InversionData& data,
                                              const MollifierSpec& m,
                                              const SolveConfig& cfg);

/// Warm-started eps -> 0 homotopy over cfg.continuation, ending at the sharp
/// problem. Certificates of the final stage apply to the returned iterate.
std::pair<ScalarField, SolveReport> continuation_solve(const ScalarField& p0,
                                                       const InversionData& data,
                                                       const MollifierSpec& m,
                                                       const SolveConfig& cfg);

} // namespace pqg
