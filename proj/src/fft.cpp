#include "orbitlab/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace orbitlab {

Radix2FFT::Radix2FFT(std::size_t m) : m_(m) {
    if (m == 0 || (m & (m - 1)) != 0)
        throw std::invalid_argument("Radix2FFT: size must be a power of two");
    rev_.resize(m);
    int bits = 0;
    while ((std::size_t{1} << bits) < m) ++bits;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t r = 0;
        for (int b = 0; b < bits; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
        rev_[i] = static_cast<std::uint32_t>(r);
    }
    tw_.resize(m / 2 > 0 ? m / 2 : 1);
    for (std::size_t k = 0; k < m / 2; ++k) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
        tw_[k] = {std::cos(ang), std::sin(ang)};
    }
}

void Radix2FFT::run(std::complex<double>* a, bool invert) const {
    for (std::size_t i = 0; i < m_; ++i)
        if (i < rev_[i]) std::swap(a[i], a[rev_[i]]);
    for (std::size_t len = 2; len <= m_; len <<= 1) {
        const std::size_t step = m_ / len;
        for (std::size_t blk = 0; blk < m_; blk += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                std::complex<double> w = tw_[j * step];
                if (invert) w = std::conj(w);
                const std::complex<double> u = a[blk + j];
                const std::complex<double> v = a[blk + j + len / 2] * w;
                a[blk + j] = u + v;
                a[blk + j + len / 2] = u - v;
            }
        }
    }
    if (invert) {
        const double s = 1.0 / static_cast<double>(m_);
        for (std::size_t i = 0; i < m_; ++i) a[i] *= s;
    }
}

void Radix2FFT::forward(std::complex<double>* a) const { run(a, false); }
void Radix2FFT::inverse(std::complex<double>* a) const { run(a, true); }

namespace {

std::size_t conv_pow2(std::uint32_t p) {
    std::size_t m = 1;
    while (m < 2 * static_cast<std::size_t>(p) - 1) m <<= 1;
    return m;
}

}  // namespace

PrimeFFT::PrimeFFT(std::uint32_t p) : p_(p), fft_(conv_pow2(p)) {
    chirp_.resize(p);
    const std::uint64_t twop = 2ULL * p;
    for (std::uint32_t k = 0; k < p; ++k) {
        const std::uint64_t r = (static_cast<std::uint64_t>(k) * k) % twop;
        const double ang = std::numbers::pi * static_cast<double>(r) / static_cast<double>(p);
        chirp_[k] = {std::cos(ang), std::sin(ang)};
    }
    std::vector<std::complex<double>> b(fft_.size(), {0.0, 0.0});
    for (std::uint32_t k = 0; k < p; ++k) {
        b[k] = std::conj(chirp_[k]);
        if (k > 0) b[fft_.size() - k] = std::conj(chirp_[k]);
    }
    fft_.forward(b.data());
    bhat_ = std::move(b);
}

void PrimeFFT::transform(std::complex<double>* line, std::complex<double>* scratch) const {
    const std::size_t m = fft_.size();
    for (std::size_t i = 0; i < m; ++i) scratch[i] = {0.0, 0.0};
    for (std::uint32_t n = 0; n < p_; ++n) scratch[n] = line[n] * chirp_[n];
    fft_.forward(scratch);
    for (std::size_t i = 0; i < m; ++i) scratch[i] *= bhat_[i];
    fft_.inverse(scratch);
    for (std::uint32_t k = 0; k < p_; ++k) line[k] = scratch[k] * chirp_[k];
}

}  // namespace orbitlab
