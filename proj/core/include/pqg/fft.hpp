/// @file fft.hpp
/// @brief FFTW-backed spectral workspace for one grid.
///
/// One workspace owns the r2c/c2r plans and scratch buffers for a fixed
/// GridSpec. Entry points lock an internal mutex, so a cached workspace can
/// be shared between threads (calls serialize). Plans use FFTW_ESTIMATE:
/// planning is then deterministic, which keeps solver output byte-stable
/// across runs.

#pragma once

#include <complex>
#include <functional>
#include <mutex>
#include <vector>

#include "pqg/field.hpp"

namespace pqg {

class SpectralWorkspace {
public:
    explicit SpectralWorkspace(const GridSpec& grid);
    ~SpectralWorkspace();
    SpectralWorkspace(const SpectralWorkspace&) = delete;
    SpectralWorkspace& operator=(const SpectralWorkspace&) = delete;

    const GridSpec& grid() const { return grid_; }

    /// out(x) <- IFFT[ symbol(k1,k2,k3) * FFT[in] ](x), with the 1/N
    /// normalization folded in. The symbol is complex-valued; it receives
    /// physical wavenumbers k_a = 2*pi*m_a/L_a with m_a in the signed range.
    ScalarField apply_symbol(const ScalarField& in,
                             const std::function<std::complex<double>(double, double, double)>& symbol);

    /// Volume-weighted spectral sum: cellvol/N * sum_k w(k) * |fhat(k)|^2
    /// with conjugate-pair weights handled internally. Equals the L2 inner
    /// product of f with itself when w == 1 (Parseval).
    double weighted_power_sum(const ScalarField& in,
                              const std::function<double(double, double, double)>& weight);

    /// First-derivative wavenumber along an axis: Nyquist zeroed so the
    /// operator maps real fields to real fields and stays skew-adjoint.
    double k_deriv(int axis, int index) const;
    /// Signed wavenumber with the Nyquist mode kept (used in even symbols
    /// such as |k|^2, where realness is not at risk).
    double k_full(int axis, int index) const;

private:
    void forward_locked(const ScalarField& in);

    GridSpec grid_;
    std::mutex mutex_;
    std::vector<double> kfull_[3];
    std::vector<double> kderiv_[3];
    double* real_ = nullptr;   // n1*n2*n3
    void* cplx_ = nullptr;     // fftw_complex, n1*n2*(n3/2+1)
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
};

/// Returns the process-wide cached workspace for a grid (created on first
/// use, guarded by a mutex).
SpectralWorkspace& spectral_workspace(const GridSpec& grid);

/// FFTW plan creation/destruction is not thread-safe; every translation unit
/// that plans must hold this lock while doing so.
std::mutex& fftw_plan_mutex();

} // namespace pqg
