#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "orbitlab/caps.hpp"
#include "orbitlab/fp.hpp"
#include "orbitlab/pointset.hpp"

namespace orbitlab {

/// Mixed-radix codec for d x d matrices over F_p (d^2 digits, row-major).
/// Construction rejects p^(d^2) overflowing 64 bits, which bounds the
/// moduli this engine can hold group elements for.
class MatrixCodec {
public:
    MatrixCodec(PrimeModulus mod, int dim);

    PrimeModulus modulus() const noexcept { return mod_; }
    int dim() const noexcept { return dim_; }

    std::uint64_t encode(const FpMatrix& m) const;
    FpMatrix decode(std::uint64_t code) const;

private:
    PrimeModulus mod_;
    int dim_;
};

/// A finite subgroup of GL_d(F_p), stored as the sorted codes of all its
/// elements. Built by breadth-first closure from the identity; right
/// multiplication by the generators alone suffices because every generator
/// has finite order.
class MatrixGroup {
public:
    static MatrixGroup closure(PrimeModulus mod, int dim, std::span<const FpMatrix> gens,
                               const ResourceCaps& caps = {});
    static MatrixGroup trivial(PrimeModulus mod, int dim);

    PrimeModulus modulus() const noexcept { return codec_.modulus(); }
    int dim() const noexcept { return codec_.dim(); }
    std::uint64_t order() const noexcept { return codes_.size(); }

    bool contains(const FpMatrix& m) const;
    const std::vector<std::uint64_t>& codes() const noexcept { return codes_; }
    const MatrixCodec& codec() const noexcept { return codec_; }
    const std::vector<FpMatrix>& generators() const noexcept { return gens_; }

    FpMatrix element(std::size_t idx) const { return codec_.decode(codes_[idx]); }
    std::vector<FpMatrix> elements() const;

    bool subgroup_of(const MatrixGroup& g) const;
    MatrixGroup transposed_group() const;

    friend bool operator==(const MatrixGroup& a, const MatrixGroup& b) noexcept {
        return a.codec_.modulus() == b.codec_.modulus() && a.codec_.dim() == b.codec_.dim() &&
               a.codes_ == b.codes_;
    }
    friend bool operator!=(const MatrixGroup& a, const MatrixGroup& b) noexcept {
        return !(a == b);
    }

private:
    friend MatrixGroup stabilizer(const MatrixGroup&, const FpVector&, bool);
    MatrixGroup(MatrixCodec codec, std::vector<std::uint64_t> codes, std::vector<FpMatrix> gens)
        : codec_(codec), codes_(std::move(codes)), gens_(std::move(gens)) {}

    MatrixCodec codec_;
    std::vector<std::uint64_t> codes_;  // sorted ascending
    std::vector<FpMatrix> gens_;
};

/// An orbit {M^T v} (or {M v}) together with the data that produced it.
/// |points| always divides the group order.
struct OrbitSet {
    MatrixGroup group;
    FpVector base_point;
    PointSet points;
    bool transposed;
};

/// Orbit of v != 0 under the group action. `transposed` selects x -> M^T x,
/// the default convention for index sets; pass false for x -> M x.
OrbitSet orbit(const MatrixGroup& h, const FpVector& v, bool transposed = true,
               const ResourceCaps& caps = {});

/// The subgroup of h fixing xi != 0; the default action is M xi = xi, and
/// `transposed` switches to M^T xi = xi (the stabilizer inside H^T).
MatrixGroup stabilizer(const MatrixGroup& h, const FpVector& xi, bool transposed = false);

}  // namespace orbitlab
