#include "fft.hpp"

#include <cstring>
#include <mutex>
#include <unordered_map>

#include <fftw3.h>

#include "whid/errors.hpp"

namespace whid::detail {

namespace {

// The FFTW planner is a shared global; plan creation and destruction must be
// serialized. Executing a plan is thread safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

/// Owns the plans and aligned buffers for one transform length. Cached per
/// thread, so the planner cost is paid once per (thread, length) and repeated
/// transforms only copy through the buffers.
class PlanEntry {
  public:
    explicit PlanEntry(std::size_t n) : n_(n) {
        real_buf_ = fftw_alloc_real(n);
        cplx_buf_ = fftw_alloc_complex(n / 2 + 1);
        if (real_buf_ == nullptr || cplx_buf_ == nullptr) {
            throw CapacityError("fftw buffer allocation failed");
        }
        std::lock_guard<std::mutex> lock(planner_mutex());
        forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_buf_, cplx_buf_,
                                        FFTW_ESTIMATE);
        backward_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), cplx_buf_, real_buf_,
                                         FFTW_ESTIMATE);
        if (forward_ == nullptr || backward_ == nullptr) {
            throw CapacityError("fftw plan creation failed");
        }
    }

    ~PlanEntry() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (forward_ != nullptr) {
            fftw_destroy_plan(forward_);
        }
        if (backward_ != nullptr) {
            fftw_destroy_plan(backward_);
        }
        fftw_free(real_buf_);
        fftw_free(cplx_buf_);
    }

    PlanEntry(const PlanEntry&) = delete;
    PlanEntry& operator=(const PlanEntry&) = delete;

    std::vector<std::complex<double>> forward(std::span<const double> x) {
        std::memcpy(real_buf_, x.data(), n_ * sizeof(double));
        fftw_execute(forward_);
        std::vector<std::complex<double>> out(n_ / 2 + 1);
        std::memcpy(out.data(), cplx_buf_, out.size() * sizeof(fftw_complex));
        return out;
    }

    std::vector<double> backward(std::span<const std::complex<double>> spectrum) {
        std::memcpy(cplx_buf_, spectrum.data(), spectrum.size() * sizeof(fftw_complex));
        fftw_execute(backward_);
        std::vector<double> out(n_);
        const double scale = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            out[i] = real_buf_[i] * scale;
        }
        return out;
    }

  private:
    std::size_t n_;
    double* real_buf_ = nullptr;
    fftw_complex* cplx_buf_ = nullptr;
    fftw_plan forward_ = nullptr;
    fftw_plan backward_ = nullptr;
};

PlanEntry& plan_for(std::size_t n) {
    thread_local std::unordered_map<std::size_t, PlanEntry> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.try_emplace(n, n).first;
    }
    return it->second;
}

}  // namespace

std::vector<std::complex<double>> rfft(std::span<const double> x) {
    if (x.empty()) {
        throw DegenerateError("rfft of an empty sequence");
    }
    return plan_for(x.size()).forward(x);
}

std::vector<double> irfft(std::span<const std::complex<double>> spectrum, std::size_t n) {
    if (spectrum.empty() || n / 2 + 1 != spectrum.size()) {
        throw DegenerateError("irfft length does not match spectrum size");
    }
    return plan_for(n).backward(spectrum);
}

}  // namespace whid::detail
