#include "bousslab/fft_engine.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace bousslab {

namespace {
std::mutex planner_mutex; // FFTW planning is not thread-safe
} // namespace

struct FftEngine::Impl {
    int n = 0;
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan fwd{};
    fftw_plan bwd{};
    std::mutex exec_mutex;
};

FftEngine::FftEngine(int n) : impl_(std::make_unique<Impl>()) {
    impl_->n = n;
    const std::size_t count = static_cast<std::size_t>(n) * n;
    impl_->in = fftw_alloc_complex(count);
    impl_->out = fftw_alloc_complex(count);
    std::lock_guard lock(planner_mutex);
    impl_->fwd = fftw_plan_dft_2d(n, n, impl_->in, impl_->out, FFTW_FORWARD,
                                  FFTW_MEASURE);
    impl_->bwd = fftw_plan_dft_2d(n, n, impl_->in, impl_->out, FFTW_BACKWARD,
                                  FFTW_MEASURE);
}

FftEngine::~FftEngine() {
    std::lock_guard lock(planner_mutex);
    fftw_destroy_plan(impl_->fwd);
    fftw_destroy_plan(impl_->bwd);
    fftw_free(impl_->in);
    fftw_free(impl_->out);
}

FftEngine& FftEngine::shared(const Grid& grid) {
    static std::mutex cache_mutex;
    static std::map<int, std::unique_ptr<FftEngine>> cache;
    std::lock_guard lock(cache_mutex);
    auto& slot = cache[grid.n()];
    if (!slot)
        slot = std::unique_ptr<FftEngine>(new FftEngine(grid.n()));
    return *slot;
}

void FftEngine::forward(std::span<const double> physical,
                        std::span<std::complex<double>> spectral) {
    auto& s = *impl_;
    const std::size_t count = static_cast<std::size_t>(s.n) * s.n;
    const double scale = 1.0 / static_cast<double>(count);
    std::lock_guard lock(s.exec_mutex);
    for (std::size_t m = 0; m < count; ++m) {
        s.in[m][0] = physical[m];
        s.in[m][1] = 0.0;
    }
    fftw_execute(s.fwd);
    for (std::size_t m = 0; m < count; ++m)
        spectral[m] = std::complex<double>(s.out[m][0] * scale, s.out[m][1] * scale);
}

void FftEngine::backward(std::span<const std::complex<double>> spectral,
                         std::span<double> physical) {
    auto& s = *impl_;
    const std::size_t count = static_cast<std::size_t>(s.n) * s.n;
    std::lock_guard lock(s.exec_mutex);
    for (std::size_t m = 0; m < count; ++m) {
        s.in[m][0] = spectral[m].real();
        s.in[m][1] = spectral[m].imag();
    }
    fftw_execute(s.bwd);
    for (std::size_t m = 0; m < count; ++m)
        physical[m] = s.out[m][0];
}

} // namespace bousslab
