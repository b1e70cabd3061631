#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace orbitlab {

/// mt19937_64 with hand-rolled rejection sampling instead of the standard
/// distributions, whose output is not pinned across standard libraries.
/// Identical seeds give identical streams on every platform.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform draw from [0, n), n >= 1, bias-free by rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = eng_();
        } while (r >= limit);
        return r % n;
    }

private:
    std::mt19937_64 eng_;
};

/// base^exp, or nullopt on 64-bit overflow.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > UINT64_MAX) return std::nullopt;
    }
    return static_cast<std::uint64_t>(acc);
}

/// Steps a little-endian base-`radix` counter of `len` digits.
/// Returns false once the counter wraps back to all zeros.
inline bool odometer_step(std::uint32_t* digits, int len, std::uint32_t radix) {
    for (int i = 0; i < len; ++i) {
        if (++digits[i] < radix) return true;
        digits[i] = 0;
    }
    return false;
}

}  // namespace orbitlab
