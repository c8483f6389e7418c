#include "gaussmax/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace gaussmax::fft {

ComplexBuffer::ComplexBuffer(std::size_t n) : size_(n) {
    data_ = static_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (!data_) throw std::bad_alloc();
}

ComplexBuffer::~ComplexBuffer() {
    if (data_) fftw_free(data_);
}

ComplexBuffer::ComplexBuffer(ComplexBuffer&& other) noexcept
    : data_(other.data_), size_(other.size_) {
    other.data_ = nullptr;
    other.size_ = 0;
}

ComplexBuffer& ComplexBuffer::operator=(ComplexBuffer&& other) noexcept {
    if (this != &other) {
        if (data_) fftw_free(data_);
        data_ = other.data_;
        size_ = other.size_;
        other.data_ = nullptr;
        other.size_ = 0;
    }
    return *this;
}

namespace {

using PlanKey = std::tuple<int, int, int>; // rows, cols (0 for 1d), sign

fftw_plan plan_for(const PlanKey& key, fftw_complex* probe) {
    // Plan creation is not thread-safe in FFTW; execution via
    // fftw_execute_dft on distinct arrays is.
    static std::mutex mutex;
    static std::map<PlanKey, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const auto [rows, cols, sign] = key;
    fftw_plan plan = cols == 0
        ? fftw_plan_dft_1d(rows, probe, probe, sign, FFTW_ESTIMATE)
        : fftw_plan_dft_2d(rows, cols, probe, probe, sign, FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("fftw plan creation failed");
    cache.emplace(key, plan);
    return plan;
}

} // namespace

void transform_1d(ComplexBuffer& buf, int n, int sign) {
    auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plan_for({n, 0, sign}, raw), raw, raw);
}

void transform_2d(ComplexBuffer& buf, int n_rows, int n_cols, int sign) {
    auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plan_for({n_rows, n_cols, sign}, raw), raw, raw);
}

} // namespace gaussmax::fft
