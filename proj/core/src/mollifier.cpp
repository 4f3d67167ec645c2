#include "pqg/mollifier.hpp"

#include <algorithm>
#include <cmath>

namespace pqg {

namespace {

constexpr int kTableNodes = 20001; // uniform on [-1,1], h = 1e-4
constexpr double kCenteredTol = 1e-10;

// 8-point Gauss-Legendre on [-1,1]
constexpr double gl_x[8] = {-0.9602898564975363, -0.7966664774136267,
                            -0.5255324099163290, -0.1834346424956498,
                            0.1834346424956498,  0.5255324099163290,
                            0.7966664774136267,  0.9602898564975363};
constexpr double gl_w[8] = {0.1012285362903763, 0.2223810344533745,
                            0.3137066458778873, 0.3626837833783620,
                            0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

template <class F>
double gl8(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i) s += gl_w[i] * f(mid + half * gl_x[i]);
    return s * half;
}

// Cubic Hermite evaluation on a uniform table with known derivative samples.
double hermite(const std::vector<double>& y, const std::vector<double>& v,
               const std::vector<double>& d, double t) {
    const double h = y[1] - y[0];
    if (t <= y.front()) return v.front();
    if (t >= y.back()) return v.back();
    auto i = static_cast<std::size_t>((t - y.front()) / h);
    i = std::min(i, v.size() - 2);
    const double s = (t - y[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * v[i] + (s3 - 2 * s2 + s) * h * d[i] +
           (-2 * s3 + 3 * s2) * v[i + 1] + (s3 - s2) * h * d[i + 1];
}

double lerp(const std::vector<double>& y, const std::vector<double>& v, double t) {
    if (t <= y.front() || t >= y.back()) return 0.0;
    const double h = y[1] - y[0];
    auto i = static_cast<std::size_t>((t - y.front()) / h);
    i = std::min(i, v.size() - 2);
    const double s = (t - y[i]) / h;
    return (1 - s) * v[i] + s * v[i + 1];
}

} // namespace

void MollifierSpec::build_tables(const std::function<double(double)>& raw, int n_nodes) {
    y_.resize(n_nodes);
    phi_.resize(n_nodes);
    cum_phi_.assign(n_nodes, 0.0);
    cum_yphi_.assign(n_nodes, 0.0);
    cum_y2phi_.assign(n_nodes, 0.0);
    const double h = 2.0 / (n_nodes - 1);
    for (int i = 0; i < n_nodes; ++i) {
        y_[i] = -1.0 + i * h;
        phi_[i] = std::max(0.0, raw(y_[i]));
    }
    y_.front() = -1.0;
    y_.back() = 1.0;
    for (int i = 1; i < n_nodes; ++i) {
        const double a = y_[i - 1], b = y_[i];
        cum_phi_[i] = cum_phi_[i - 1] + gl8(raw, a, b);
        cum_yphi_[i] = cum_yphi_[i - 1] + gl8([&](double t) { return t * raw(t); }, a, b);
        cum_y2phi_[i] =
            cum_y2phi_[i - 1] + gl8([&](double t) { return t * t * raw(t); }, a, b);
    }
}

void MollifierSpec::finalize() {
    const double z = cum_phi_.back();
    if (!(z > 0.0))
        throw PropertyViolated("mollifier: profile integrates to zero", {"int phi = 1"});
    for (auto& v : phi_) v /= z;
    for (auto& v : cum_phi_) v /= z;
    for (auto& v : cum_yphi_) v /= z;
    for (auto& v : cum_y2phi_) v /= z;

    moment1_ = cum_yphi_.back();
    m2_ = cum_y2phi_.back();
    centered_ = std::abs(moment1_) <= kCenteredTol;

    // C_phi = int |y| phi = Psi(1) - 2 Psi(0)
    const std::size_t mid = (y_.size() - 1) / 2;
    c_phi_ = moment1_ - 2.0 * cum_yphi_[mid];

    // F(t) = (min0 * phi)(t) at unit width = t (1 - Phi(t)) + Psi(t) - Psi(1)
    // G(t) = (1/2 min0^2 * phi)(t) at unit width; G' = F.
    const std::size_t n = y_.size();
    Ftab_.resize(n);
    Gtab_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = y_[i];
        const double Phi = cum_phi_[i], Psi = cum_yphi_[i], Q = cum_y2phi_[i];
        Ftab_[i] = t * (1.0 - Phi) + Psi - moment1_;
        Gtab_[i] = 0.5 * (t * t * (1.0 - Phi) - 2.0 * t * (moment1_ - Psi) +
                          (m2_ - Q));
    }
}

MollifierSpec MollifierSpec::bump(double eps) {
    MollifierSpec m;
    m.profile_ = MollifierProfile::Bump;
    m.eps_ = eps;
    if (eps < 0) throw ConfigInvalid("mollifier: eps must be nonnegative");
    m.build_tables(
        [](double t) {
            const double r = 1.0 - t * t;
            return r > 0 ? std::exp(-1.0 / r) : 0.0;
        },
        kTableNodes);
    m.finalize();
    return m;
}

MollifierSpec MollifierSpec::triangular_smoothed(double eps) {
    MollifierSpec m;
    m.profile_ = MollifierProfile::TriangularSmoothed;
    m.eps_ = eps;
    if (eps < 0) throw ConfigInvalid("mollifier: eps must be nonnegative");
    // Self-convolution of the triangle hat = centered cubic B-spline,
    // rescaled so the support is exactly (-1,1).
    auto bspline4 = [](double x) {
        const double a = std::abs(x);
        if (a >= 2.0) return 0.0;
        if (a <= 1.0) return 2.0 / 3.0 - a * a + 0.5 * a * a * a;
        const double b = 2.0 - a;
        return b * b * b / 6.0;
    };
    m.build_tables([&](double t) { return 2.0 * bspline4(2.0 * t); }, kTableNodes);
    m.finalize();
    return m;
}

MollifierSpec MollifierSpec::tabulated(const std::vector<double>& y,
                                       const std::vector<double>& phi,
                                       double eps) {
    if (y.size() != phi.size() || y.size() < 9)
        throw ConfigInvalid("mollifier: tabulated profile needs >= 9 (y, phi) pairs");
    if (eps < 0) throw ConfigInvalid("mollifier: eps must be nonnegative");
    std::vector<std::string> failures;
    if (y.front() < -1.0 - 1e-12 || y.back() > 1.0 + 1e-12)
        failures.push_back("support contained in [-1, 1]");
    double min_phi = 0.0;
    for (double v : phi) min_phi = std::min(min_phi, v);
    if (min_phi < -1e-9) failures.push_back("phi >= 0");
    if (!failures.empty())
        throw PropertyViolated("mollifier: invalid tabulated profile", failures);

    auto interp = [&](double t) -> double {
        if (t <= y.front() || t >= y.back()) return 0.0;
        auto it = std::upper_bound(y.begin(), y.end(), t);
        const auto i = static_cast<std::size_t>(it - y.begin()) - 1;
        const double s = (t - y[i]) / (y[i + 1] - y[i]);
        return std::max(0.0, (1 - s) * phi[i] + s * phi[i + 1]);
    };

    MollifierSpec m;
    m.profile_ = MollifierProfile::Tabulated;
    m.eps_ = eps;
    m.build_tables(interp, kTableNodes);
    const double z = m.cum_phi_.back();
    if (std::abs(z - 1.0) > 1e-6)
        throw PropertyViolated("mollifier: tabulated profile not normalized",
                               {"int phi = 1 (got " + std::to_string(z) + ")"});
    m.finalize(); // renormalizes the residual error exactly
    return m;
}

MollifierSpec MollifierSpec::with_eps(double eps) const {
    if (eps < 0) throw ConfigInvalid("mollifier: eps must be nonnegative");
    MollifierSpec m = *this;
    m.eps_ = eps;
    return m;
}

void MollifierSpec::require_centered(const char* where) const {
    if (!centered_)
        throw NotCentered(std::string(where) + ": mollifier has first moment " +
                          std::to_string(moment1_));
}

double MollifierSpec::phi(double t) const { return lerp(y_, phi_, t); }

double MollifierSpec::phi_eps(double x) const {
    if (eps_ <= 0.0) throw ConfigInvalid("phi_eps undefined at eps = 0");
    return phi(x / eps_) / eps_;
}

double MollifierSpec::F(double t) const {
    if (t <= -1.0) return t - moment1_;
    if (t >= 1.0) return 0.0;
    // Hermite with the exact nodal derivative F' = 1 - Phi.
    const double h = y_[1] - y_[0];
    auto i = static_cast<std::size_t>((t + 1.0) / h);
    i = std::min(i, y_.size() - 2);
    const double s = (t - y_[i]) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double di = 1.0 - cum_phi_[i], di1 = 1.0 - cum_phi_[i + 1];
    return (2 * s3 - 3 * s2 + 1) * Ftab_[i] + (s3 - 2 * s2 + s) * h * di +
           (-2 * s3 + 3 * s2) * Ftab_[i + 1] + (s3 - s2) * h * di1;
}

double MollifierSpec::dF(double t) const {
    if (t <= -1.0) return 1.0;
    if (t >= 1.0) return 0.0;
    return 1.0 - hermite(y_, cum_phi_, phi_, t);
}

double MollifierSpec::min_eps(double x) const {
    if (eps_ <= 0.0) return std::min(x, 0.0);
    require_centered("min_eps");
    if (x <= -eps_) return x;
    if (x >= eps_) return 0.0;
    return eps_ * F(x / eps_);
}

double MollifierSpec::dmin_eps(double x) const {
    if (eps_ <= 0.0) return x < 0.0 ? 1.0 : 0.0;
    require_centered("min_eps");
    if (x <= -eps_) return 1.0;
    if (x >= eps_) return 0.0;
    return dF(x / eps_);
}

double MollifierSpec::f_eps(double s) const {
    if (eps_ <= 0.0) {
        const double m = std::min(s, 0.0);
        return 0.5 * m * m;
    }
    if (s >= eps_) return 0.0;
    if (s <= -eps_)
        return 0.5 * (s * s - 2.0 * s * eps_ * moment1_ + eps_ * eps_ * m2_);
    const double t = s / eps_;
    const double h = y_[1] - y_[0];
    auto i = static_cast<std::size_t>((t + 1.0) / h);
    i = std::min(i, y_.size() - 2);
    const double u = (t - y_[i]) / h;
    const double u2 = u * u, u3 = u2 * u;
    // G' = F at the nodes
    const double g = (2 * u3 - 3 * u2 + 1) * Gtab_[i] + (u3 - 2 * u2 + u) * h * Ftab_[i] +
                     (-2 * u3 + 3 * u2) * Gtab_[i + 1] + (u3 - u2) * h * Ftab_[i + 1];
    return eps_ * eps_ * g;
}

double min_eps(double x, const MollifierSpec& m) { return m.min_eps(x); }

FCheckReport check_F_properties(const std::vector<double>& y,
                                const std::vector<double>& F,
                                double tol) {
    if (y.size() != F.size() || y.size() < 9)
        throw ConfigInvalid("check_F_properties: need >= 9 uniformly spaced samples");
    const std::size_t n = y.size();
    const double h = y[1] - y[0];
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs((y[i] - y[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw ConfigInvalid("check_F_properties: table must be uniformly spaced");
    if (std::abs(y.front() + 1.0) > 1e-9 || std::abs(y.back() - 1.0) > 1e-9)
        throw ConfigInvalid("check_F_properties: table must cover [-1, 1]");

    FCheckReport rep;
    rep.F_at_m1 = F.front();
    rep.F_at_p1 = F.back();
    // one-sided 4th-order first derivatives at the endpoints
    rep.dF_at_m1 =
        (-25 * F[0] + 48 * F[1] - 36 * F[2] + 16 * F[3] - 3 * F[4]) / (12 * h);
    rep.dF_at_p1 = (25 * F[n - 1] - 48 * F[n - 2] + 36 * F[n - 3] - 16 * F[n - 4] +
                    3 * F[n - 5]) /
                   (12 * h);

    std::vector<double> fpp(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i)
        fpp[i] = (F[i + 1] - 2 * F[i] + F[i - 1]) / (h * h);
    double max_fpp = 0.0, max_abs_fpp = 0.0, max_jump = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        max_fpp = std::max(max_fpp, fpp[i]);
        max_abs_fpp = std::max(max_abs_fpp, std::abs(fpp[i]));
        if (i + 2 < n) max_jump = std::max(max_jump, std::abs(fpp[i + 1] - fpp[i]));
    }
    rep.max_Fpp = max_fpp;
    rep.max_Fpp_jump = max_jump;

    if (std::abs(rep.F_at_m1 + 1.0) > tol) rep.failures.push_back("F(-1) = -1");
    if (std::abs(rep.dF_at_m1 - 1.0) > tol) rep.failures.push_back("F'(-1) = 1");
    if (std::abs(rep.F_at_p1) > tol) rep.failures.push_back("F(1) = 0");
    if (std::abs(rep.dF_at_p1) > tol) rep.failures.push_back("F'(1) = 0");
    if (max_fpp > tol) rep.failures.push_back("F'' <= 0");
    // C^2 at the tabulated resolution: a smooth F'' moves by O(h) between
    // neighbors, a kink in F' shows up as a jump comparable to max|F''|.
    if (max_jump > 0.1 * std::max(max_abs_fpp, 1e-12) + tol)
        rep.failures.push_back("F'' continuous at table resolution");

    rep.ok = rep.failures.empty();
    return rep;
}

MollifierSpec mollifier_from_F(const std::vector<double>& y,
                               const std::vector<double>& F,
                               double eps,
                               double tol) {
    FCheckReport rep = check_F_properties(y, F, tol);
    if (!rep.ok)
        throw PropertyViolated("mollifier_from_F: F fails required properties",
                               rep.failures);
    const std::size_t n = y.size();
    const double h = y[1] - y[0];
    std::vector<double> phi(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i)
        phi[i] = std::max(0.0, -(F[i + 1] - 2 * F[i] + F[i - 1]) / (h * h));
    return MollifierSpec::tabulated(y, phi, eps);
}

} // namespace pqg
