#include "pqg/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <tuple>

namespace pqg {

std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

namespace {

std::vector<double> wavenumbers(int n, double L, bool zero_nyquist) {
    std::vector<double> k(n);
    for (int j = 0; j < n; ++j) {
        int m = (j <= n / 2) ? j : j - n;
        if (zero_nyquist && n % 2 == 0 && j == n / 2) m = 0;
        k[j] = two_pi * m / L;
    }
    return k;
}
} // namespace

SpectralWorkspace::SpectralWorkspace(const GridSpec& grid) : grid_(grid) {
    const int n1 = grid.n1, n2 = grid.n2, n3 = grid.n3;
    kfull_[0] = wavenumbers(n1, grid.L1, false);
    kfull_[1] = wavenumbers(n2, grid.L2, false);
    kfull_[2] = wavenumbers(n3, grid.L3, false);
    kderiv_[0] = wavenumbers(n1, grid.L1, true);
    kderiv_[1] = wavenumbers(n2, grid.L2, true);
    kderiv_[2] = wavenumbers(n3, grid.L3, true);

    real_ = fftw_alloc_real(grid.size());
    auto* c = fftw_alloc_complex(static_cast<std::size_t>(n1) * n2 * (n3 / 2 + 1));
    cplx_ = c;

    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    plan_fwd_ = fftw_plan_dft_r2c_3d(n1, n2, n3, real_, c, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_c2r_3d(n1, n2, n3, c, real_, FFTW_ESTIMATE);
}

SpectralWorkspace::~SpectralWorkspace() {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(real_);
    fftw_free(static_cast<fftw_complex*>(cplx_));
}

double SpectralWorkspace::k_deriv(int axis, int index) const {
    return kderiv_[axis - 1][index];
}
double SpectralWorkspace::k_full(int axis, int index) const {
    return kfull_[axis - 1][index];
}

void SpectralWorkspace::forward_locked(const ScalarField& in) {
    std::copy(in.values().begin(), in.values().end(), real_);
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
}

ScalarField SpectralWorkspace::apply_symbol(
    const ScalarField& in,
    const std::function<std::complex<double>(double, double, double)>& symbol) {
    if (in.grid() != grid_) throw GridMismatch("SpectralWorkspace: wrong grid");
    std::lock_guard<std::mutex> lock(mutex_);
    forward_locked(in);

    auto* c = static_cast<fftw_complex*>(cplx_);
    const int n1 = grid_.n1, n2 = grid_.n2, n3h = grid_.n3 / 2 + 1;
    const double inv_n = 1.0 / static_cast<double>(grid_.size());
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n1; ++i1) {
        for (int i2 = 0; i2 < n2; ++i2) {
            for (int i3 = 0; i3 < n3h; ++i3, ++idx) {
                const std::complex<double> s =
                    symbol(kfull_[0][i1], kfull_[1][i2], kfull_[2][i3]) * inv_n;
                const double re = c[idx][0], im = c[idx][1];
                c[idx][0] = re * s.real() - im * s.imag();
                c[idx][1] = re * s.imag() + im * s.real();
            }
        }
    }
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));

    ScalarField out(grid_);
    std::copy(real_, real_ + grid_.size(), out.values().begin());
    return out;
}

double SpectralWorkspace::weighted_power_sum(
    const ScalarField& in,
    const std::function<double(double, double, double)>& weight) {
    if (in.grid() != grid_) throw GridMismatch("SpectralWorkspace: wrong grid");
    std::lock_guard<std::mutex> lock(mutex_);
    forward_locked(in);

    auto* c = static_cast<fftw_complex*>(cplx_);
    const int n1 = grid_.n1, n2 = grid_.n2, n3 = grid_.n3, n3h = n3 / 2 + 1;
    double acc = 0.0;
    std::size_t idx = 0;
    for (int i1 = 0; i1 < n1; ++i1) {
        for (int i2 = 0; i2 < n2; ++i2) {
            for (int i3 = 0; i3 < n3h; ++i3, ++idx) {
                // r2c stores only half of the last axis; interior modes stand
                // for a conjugate pair.
                const bool shared = (i3 == 0) || (n3 % 2 == 0 && i3 == n3 / 2);
                const double pair_w = shared ? 1.0 : 2.0;
                const double mag2 = c[idx][0] * c[idx][0] + c[idx][1] * c[idx][1];
                acc += pair_w * weight(kfull_[0][i1], kfull_[1][i2], kfull_[2][i3]) * mag2;
            }
        }
    }
    const double n = static_cast<double>(grid_.size());
    return acc * grid_.cell_volume() / n;
}

SpectralWorkspace& spectral_workspace(const GridSpec& grid) {
    using Key = std::tuple<int, int, int, double, double, double>;
    static std::mutex cache_mutex;
    static std::map<Key, std::unique_ptr<SpectralWorkspace>> cache;

    Key key{grid.n1, grid.n2, grid.n3, grid.L1, grid.L2, grid.L3};
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_unique<SpectralWorkspace>(grid)).first;
    return *it->second;
}

} // namespace pqg
