#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace orbitlab {

/// Iterative power-of-two FFT with precomputed twiddles and bit-reversal
/// table. Forward uses e^{-i theta}; inverse includes the 1/M scale, so
/// inverse(forward(a) pointwise* forward(b)) is the cyclic convolution.
class Radix2FFT {
public:
    explicit Radix2FFT(std::size_t m);

    std::size_t size() const noexcept { return m_; }
    void forward(std::complex<double>* a) const;
    void inverse(std::complex<double>* a) const;

private:
    void run(std::complex<double>* a, bool invert) const;

    std::size_t m_;
    std::vector<std::uint32_t> rev_;
    std::vector<std::complex<double>> tw_;  // e^{-2 pi i k / M}, k < M/2
};

/// Length-p DFT X_k = sum_n x_n e^{+2 pi i nk/p} for prime p, realized by
/// chirp factorization nk = (n^2 + k^2 - (n-k)^2)/2 and a power-of-two
/// cyclic convolution of size >= 2p-1. The chirp angle is reduced exactly
/// via n^2 mod 2p before any trig call.
class PrimeFFT {
public:
    explicit PrimeFFT(std::uint32_t p);

    std::uint32_t length() const noexcept { return p_; }
    std::size_t conv_size() const noexcept { return fft_.size(); }

    /// In-place transform of line[0..p); scratch must hold conv_size() cells.
    void transform(std::complex<double>* line, std::complex<double>* scratch) const;

private:
    std::uint32_t p_;
    Radix2FFT fft_;
    std::vector<std::complex<double>> chirp_;  // c_k = e^{+i pi k^2 / p}
    std::vector<std::complex<double>> bhat_;   // forward FFT of conj-chirp kernel
};

}  // namespace orbitlab
