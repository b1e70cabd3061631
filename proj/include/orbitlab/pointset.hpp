#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "orbitlab/caps.hpp"
#include "orbitlab/fp.hpp"
#include "orbitlab/subspace.hpp"

namespace orbitlab {

/// Mixed-radix codec for F_p^d: code = sum_i x_i p^i. Codes order points
/// lexicographically from the last coordinate down, and fit in 64 bits
/// because construction rejects p^d beyond the point cap.
class PointDomain {
public:
    PointDomain(PrimeModulus mod, int dim, const ResourceCaps& caps = {});

    PrimeModulus modulus() const noexcept { return mod_; }
    int dim() const noexcept { return dim_; }
    std::uint64_t size() const noexcept { return size_; }

    std::uint64_t encode(const FpVector& x) const;
    FpVector decode(std::uint64_t code) const;

    /// Digit-level codec for hot loops (no FpVector allocation).
    void decode_digits(std::uint64_t code, std::uint32_t* out) const noexcept {
        for (int i = 0; i < dim_; ++i) {
            out[i] = static_cast<std::uint32_t>(code % mod_.value());
            code /= mod_.value();
        }
    }
    std::uint64_t encode_digits(const std::uint32_t* digits) const noexcept {
        std::uint64_t code = 0;
        for (int i = dim_ - 1; i >= 0; --i) code = code * mod_.value() + digits[i];
        return code;
    }

    friend bool operator==(const PointDomain& a, const PointDomain& b) noexcept {
        return a.mod_ == b.mod_ && a.dim_ == b.dim_;
    }
    friend bool operator!=(const PointDomain& a, const PointDomain& b) noexcept {
        return !(a == b);
    }

private:
    PrimeModulus mod_;
    int dim_;
    std::uint64_t size_;
};

/// A subset of F_p^d as a dense bitset over the point codes, with the
/// population count kept current. Set algebra never leaves the domain.
class PointSet {
public:
    explicit PointSet(PointDomain dom);
    static PointSet from_vectors(PointDomain dom, std::span<const FpVector> pts);
    static PointSet from_codes(PointDomain dom, std::span<const std::uint64_t> codes);

    const PointDomain& domain() const noexcept { return dom_; }
    std::uint64_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    bool contains_code(std::uint64_t code) const noexcept {
        return (bits_[code >> 6] >> (code & 63)) & 1;
    }
    bool contains(const FpVector& x) const { return contains_code(dom_.encode(x)); }
    /// Returns true if the point was new.
    bool insert_code(std::uint64_t code);
    bool insert(const FpVector& x) { return insert_code(dom_.encode(x)); }

    /// Ascending code order; the canonical iteration order everywhere.
    std::vector<std::uint64_t> codes() const;
    std::vector<FpVector> vectors() const;

    PointSet unified(const PointSet& o) const;
    PointSet intersected(const PointSet& o) const;
    PointSet negated() const;
    PointSet translated(const FpVector& t) const;
    PointSet linear_image(const FpMatrix& m) const;

    friend bool operator==(const PointSet& a, const PointSet& b) noexcept {
        return a.dom_ == b.dom_ && a.bits_ == b.bits_;
    }
    friend bool operator!=(const PointSet& a, const PointSet& b) noexcept { return !(a == b); }

private:
    void check_same(const PointSet& o) const;

    PointDomain dom_;
    std::vector<std::uint64_t> bits_;
    std::uint64_t count_ = 0;
};

/// |S ∩ (r + V)| for every coset of V meeting S, keyed by the canonical
/// representative's code, ascending.
std::vector<std::pair<std::uint64_t, std::uint64_t>> coset_histogram(const PointSet& s,
                                                                     const Subspace& v);

}  // namespace orbitlab
