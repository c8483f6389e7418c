#pragma once

#include <complex>
#include <cstddef>
#include <memory>

namespace gaussmax::fft {

// Buffer allocated through fftw_malloc so every transform sees identical
// (16/32-byte) alignment and cached plans stay applicable.
class ComplexBuffer {
public:
    explicit ComplexBuffer(std::size_t n);
    ~ComplexBuffer();

    ComplexBuffer(ComplexBuffer&& other) noexcept;
    ComplexBuffer& operator=(ComplexBuffer&& other) noexcept;
    ComplexBuffer(const ComplexBuffer&) = delete;
    ComplexBuffer& operator=(const ComplexBuffer&) = delete;

    std::complex<double>* data() { return data_; }
    const std::complex<double>* data() const { return data_; }
    std::complex<double>& operator[](std::size_t i) { return data_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return data_[i]; }
    std::size_t size() const { return size_; }

private:
    std::complex<double>* data_ = nullptr;
    std::size_t size_ = 0;
};

// In-place unnormalized transforms. sign = -1 forward (e^{-2pi i jk/n}),
// sign = +1 backward. Plans are FFTW_ESTIMATE, created once per shape under
// a lock and executed concurrently on distinct buffers, which keeps results
// bit-identical for any thread count.
void transform_1d(ComplexBuffer& buf, int n, int sign);
void transform_2d(ComplexBuffer& buf, int n_rows, int n_cols, int sign);

} // namespace gaussmax::fft
