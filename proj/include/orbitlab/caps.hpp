#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace orbitlab {

/// Thrown when an operation would exceed a configured resource budget.
/// `partial` carries how far the computation got (e.g. closure size so far).
class CapExceeded : public std::runtime_error {
public:
    CapExceeded(const std::string& what, std::uint64_t partial = 0)
        : std::runtime_error(what), partial_(partial) {}
    std::uint64_t partial() const noexcept { return partial_; }

private:
    std::uint64_t partial_;
};

/// Desk-scale resource budgets. Every enumeration that can blow up checks
/// one of these before (or while) it runs.
struct ResourceCaps {
    std::uint64_t max_points = std::uint64_t{1} << 26;  // cells of F_p^d (point sets, DFT tables)
    std::uint64_t max_closure = 2'000'000;              // elements in a group closure
    std::uint64_t max_affine_set = 5'000'000;           // elements in an affine product set
    std::uint64_t max_pairs = 10'000'000;               // enumerated pairs (difference checks, certificates)

    /// Defaults overridden by ORBITLAB_CAP_POINTS, ORBITLAB_CAP_CLOSURE,
    /// ORBITLAB_CAP_AFFSET, ORBITLAB_CAP_PAIRS when set.
    static ResourceCaps from_env();
};

}  // namespace orbitlab
