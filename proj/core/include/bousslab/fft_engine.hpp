#pragma once

#include <complex>
#include <memory>
#include <span>

#include "bousslab/grid.hpp"

namespace bousslab {

/// Cached 2D complex transforms for one grid size. Plans are built once per
/// grid (FFTW planning is serialized globally); execution copies through
/// internal aligned buffers and is guarded by a per-engine mutex, so a shared
/// engine is safe to call from several workers.
///
/// Normalization: forward() divides by n^2, so coefficients are the f_hat(k)
/// of f(x) = sum_k f_hat(k) exp(i k.x) and backward() is the plain sum.
class FftEngine {
  public:
    /// Shared engine for the grid's size (one per n, process-wide).
    static FftEngine& shared(const Grid& grid);

    ~FftEngine();
    FftEngine(const FftEngine&) = delete;
    FftEngine& operator=(const FftEngine&) = delete;

    /// Real collocation values -> spectral coefficients (Hermitian to
    /// round-off; callers wanting the exact invariant symmetrize).
    void forward(std::span<const double> physical,
                 std::span<std::complex<double>> spectral);

    /// Spectral coefficients -> real parts of the collocation values.
    void backward(std::span<const std::complex<double>> spectral,
                  std::span<double> physical);

  private:
    explicit FftEngine(int n);
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace bousslab
