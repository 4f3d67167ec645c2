#include "pqg/exact1d.hpp"

#include <cmath>
#include <complex>

#include <fftw3.h>

#include "pqg/fft.hpp"
#include "pqg/operators.hpp"

namespace pqg {

namespace {

void require_extrudable(const GridSpec& grid, int profile_n, const char* where) {
    if (std::abs(grid.L3 - two_pi) > 1e-12)
        throw BadPeriod(std::string(where) + ": grid period L3 must be 2*pi");
    if (grid.n3 != profile_n)
        throw ConfigInvalid(std::string(where) + ": grid n3 must match profile length");
    if (profile_n % 2 != 0)
        throw ConfigInvalid(std::string(where) + ": profile length must be even");
}

// Grid nodes sit at x3 = j*h on [0, 2*pi); profile nodes at -pi + j*h. For
// even n the two lattices coincide modulo the period, shifted by n/2 cells.
int profile_index_for_grid_node(int j, int n) { return (j + n / 2) % n; }

} // namespace

Profile1D::Profile1D(std::vector<double> samples) : v_(std::move(samples)) {
    if (v_.size() < 4) throw ConfigInvalid("Profile1D: need at least 4 samples");
}

Profile1D Profile1D::from_function(int n, const std::function<double(double)>& f) {
    if (n < 4) throw ConfigInvalid("Profile1D: need at least 4 samples");
    std::vector<double> v(n);
    const double h = two_pi / n;
    for (int j = 0; j < n; ++j) v[j] = f(-std::numbers::pi + j * h);
    return Profile1D(std::move(v));
}

double Profile1D::mean() const {
    double s = 0.0;
    for (double x : v_) s += x;
    return s / static_cast<double>(v_.size());
}

double Profile1D::max_abs() const {
    double m = 0.0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
}

Profile1D Profile1D::antiderivative_spectral() const {
    const int n = this->n();
    const double scale = std::max(1.0, max_abs());
    if (std::abs(mean()) > 1e-10 * scale)
        throw NonzeroMeanPV("antiderivative: profile must be mean-zero");

    std::vector<double> in(v_);
    std::vector<std::complex<double>> spec(n / 2 + 1);
    std::vector<double> out(n);
    fftw_plan fwd, bwd;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fwd = fftw_plan_dft_r2c_1d(n, in.data(),
                                   reinterpret_cast<fftw_complex*>(spec.data()),
                                   FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(spec.data()),
                                   out.data(), FFTW_ESTIMATE);
    }
    fftw_execute(fwd);

    spec[0] = 0.0;
    for (int k = 1; k <= n / 2; ++k)
        spec[k] /= std::complex<double>(0.0, static_cast<double>(k));
    if (n % 2 == 0) spec[n / 2] = 0.0;

    fftw_execute(bwd);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }

    const double a0 = out[0] / n;
    for (double& x : out) x = x / n - a0; // gauge A(-pi) = 0
    return Profile1D(std::move(out));
}

Profile1D Profile1D::antiderivative_trapezoid() const {
    const int n = this->n();
    const double scale = std::max(1.0, max_abs());
    const double m = mean();
    if (std::abs(m) > 1e-10 * scale)
        throw NonzeroMeanPV("antiderivative: profile must be mean-zero");
    // subtract the sample mean so the cumulative sum closes periodically
    std::vector<double> out(n, 0.0);
    const double h = this->h();
    for (int j = 1; j < n; ++j)
        out[j] = out[j - 1] + 0.5 * h * ((v_[j - 1] - m) + (v_[j] - m));
    return Profile1D(std::move(out));
}

double phi(double m, double x) { return x + 0.5 * min0(m - x); }
double phi_inv(double m, double y) { return y - min0(m - y); }

InversionData Exact1DSolution::extrude_data(const GridSpec& grid,
                                            PhysicalConstants constants) const {
    require_extrudable(grid, M_data.n(), "extrude_data");
    ScalarField M3(grid), PV3(grid);
    for (int i1 = 0; i1 < grid.n1; ++i1)
        for (int i2 = 0; i2 < grid.n2; ++i2)
            for (int i3 = 0; i3 < grid.n3; ++i3) {
                const int j = profile_index_for_grid_node(i3, grid.n3);
                M3(i1, i2, i3) = M_data[j];
                PV3(i1, i2, i3) = PV[j];
            }
    PV3 = project_mean_zero(PV3); // remove quadrature-level average
    return InversionData(std::move(M3), std::move(PV3), constants);
}

ScalarField Exact1DSolution::extrude_p(const GridSpec& grid) const {
    require_extrudable(grid, p.n(), "extrude_p");
    ScalarField p3(grid);
    for (int i1 = 0; i1 < grid.n1; ++i1)
        for (int i2 = 0; i2 < grid.n2; ++i2)
            for (int i3 = 0; i3 < grid.n3; ++i3)
                p3(i1, i2, i3) = p[profile_index_for_grid_node(i3, grid.n3)];
    return project_mean_zero(p3);
}

Exact1DSolution build_exact(const Profile1D& PVp, const Profile1D& Mp) {
    if (PVp.n() != Mp.n())
        throw ConfigInvalid("build_exact: profiles must share one grid");
    const double scale = std::max(1.0, PVp.max_abs());
    if (std::abs(PVp.mean()) > 1e-10 * scale)
        throw NonzeroMeanPV("build_exact: PV profile must be mean-zero");

    const int n = PVp.n();
    Profile1D A = PVp.antiderivative_spectral();

    Profile1D theta(std::vector<double>(n, 0.0));
    for (int j = 0; j < n; ++j) theta[j] = phi_inv(Mp[j], A[j]);
    const double c = theta.mean();
    for (int j = 0; j < n; ++j) theta[j] -= c; // theta = Theta - c, mean-zero

    // Theta - c may carry kinks; trapezoid integration is kink-robust.
    Profile1D p = theta.antiderivative_trapezoid();
    const double pm = p.mean();
    std::vector<double> pv = p.samples();
    for (double& x : pv) x -= pm;

    Profile1D M_shifted(std::vector<double>(n, 0.0));
    for (int j = 0; j < n; ++j) M_shifted[j] = Mp[j] - c;

    return Exact1DSolution{Profile1D(std::move(pv)), std::move(theta),
                           std::move(M_shifted), PVp, c};
}

Exact1DSolution sharpness_family(const Profile1D& Mp) {
    const int n = Mp.n();
    const double h = Mp.h();
    const double scale = std::max(1e-30, Mp.max_abs());
    // sign M(x) = sign x at the samples (x = 0 itself may carry M = 0)
    for (int j = 0; j < n; ++j) {
        const double x = Mp.x(j);
        if (std::abs(x) < 0.5 * h) continue;
        if (Mp[j] * x <= 0.0)
            throw SignConditionViolated(
                "sharpness_family: sign M(x) = sign x fails near x = " +
                std::to_string(x));
    }
    // M'(0) != 0, estimated from the samples bracketing zero. A profile that
    // is genuinely flat at 0 shows a centered difference of size O(h^2 * |M|),
    // so anything below h * |M| is treated as vanishing.
    const int j0 = n / 2; // x(j0) = 0 for even n; nearest node otherwise
    const double slope =
        (Mp[(j0 + 1) % n] - Mp[(j0 - 1 + n) % n]) / (2.0 * h);
    if (std::abs(slope) < 0.5 * h * scale)
        throw SignConditionViolated("sharpness_family: M'(0) vanishes");

    Profile1D zero(std::vector<double>(n, 0.0));
    return build_exact(zero, Mp);
}

double baseball_cap_M(double x3) {
    return std::sin(x3) - 1.0 / std::numbers::pi;
}

double baseball_cap_dp(double x3) {
    return -min0(std::sin(wrap_symmetric(x3, two_pi))) - 1.0 / std::numbers::pi;
}

double baseball_cap_p(double x3) {
    const double x = wrap_symmetric(x3, two_pi);
    return -x / std::numbers::pi + (x <= 0.0 ? std::cos(x) : 1.0);
}

std::pair<InversionData, ScalarField> baseball_cap(const GridSpec& grid) {
    if (std::abs(grid.L3 - two_pi) > 1e-12)
        throw BadPeriod("baseball_cap: grid period L3 must be 2*pi");
    ScalarField M = ScalarField::from_function(
        grid, [](double, double, double x3) { return baseball_cap_M(x3); });
    ScalarField PV(grid, 0.0);
    PV.set_mean_zero(true);
    ScalarField p = ScalarField::from_function(
        grid, [](double, double, double x3) { return baseball_cap_p(x3); });
    return {InversionData(std::move(M), std::move(PV)), project_mean_zero(p)};
}

} // namespace pqg
