#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "orbitlab/caps.hpp"
#include "orbitlab/fp.hpp"

namespace orbitlab {

/// A linear subspace of F_p^d held in reduced row echelon form, so that two
/// Subspace values describe the same space iff their field content is equal.
class Subspace {
public:
    static Subspace span(PrimeModulus mod, int ambient_dim, std::span<const FpVector> vectors);
    static Subspace zero(PrimeModulus mod, int ambient_dim);
    static Subspace full(PrimeModulus mod, int ambient_dim);

    PrimeModulus modulus() const noexcept { return mod_; }
    int ambient_dim() const noexcept { return ambient_; }
    int dim() const noexcept { return static_cast<int>(basis_.size()); }
    const std::vector<FpVector>& basis() const noexcept { return basis_; }
    const std::vector<int>& pivots() const noexcept { return pivots_; }

    bool contains(const FpVector& v) const;

    /// Orthogonal complement w.r.t. the standard dot product;
    /// dim(V) + dim(perp(V)) = d always.
    Subspace perp() const;

    /// Exactly p^(d - dim) vectors, one per coset of this space in F_p^d.
    /// The representatives are the vectors supported on non-pivot coordinates.
    std::vector<FpVector> coset_reps(const ResourceCaps& caps = {}) const;

    /// All p^dim points of the subspace.
    std::vector<FpVector> points(const ResourceCaps& caps = {}) const;

    /// Canonical representative of x + V (pivot coordinates eliminated).
    /// reduce_mod(x) == reduce_mod(y) iff x - y is in V.
    FpVector reduce_mod(const FpVector& x) const;

    friend bool operator==(const Subspace& a, const Subspace& b) noexcept {
        return a.mod_ == b.mod_ && a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) noexcept { return !(a == b); }

private:
    Subspace(PrimeModulus mod, int ambient) : mod_(mod), ambient_(ambient) {}

    PrimeModulus mod_;
    int ambient_;
    std::vector<FpVector> basis_;  // RREF rows
    std::vector<int> pivots_;      // pivot column of each row, strictly increasing
};

/// All subspaces of F_p^d with dim >= min_dim (dim <= max_dim), enumerated by
/// walking RREF shapes. Intended for small d; guarded by the pair cap.
std::vector<Subspace> enumerate_subspaces(PrimeModulus mod, int ambient_dim, int min_dim,
                                          int max_dim, const ResourceCaps& caps = {});

/// The hyperplane {x : normal . x = offset}. The normal is normalized so its
/// first nonzero coordinate is 1, giving one representative per scalar class.
struct AffineHyperplane {
    FpVector normal;
    std::uint32_t offset;

    bool contains(const FpVector& x) const { return normal.dot(x) == offset; }
    friend bool operator==(const AffineHyperplane& a, const AffineHyperplane& b) noexcept {
        return a.normal == b.normal && a.offset == b.offset;
    }
};

/// Normalize an arbitrary nonzero normal/offset pair to the canonical
/// representative of its scalar class.
AffineHyperplane normalize_hyperplane(const FpVector& normal, std::uint32_t offset);

/// Streams each affine hyperplane of F_p^d exactly once:
/// (p^d - 1)/(p - 1) normal classes x p offsets.
class HyperplaneEnumerator {
public:
    HyperplaneEnumerator(PrimeModulus mod, int dim, const ResourceCaps& caps = {});

    std::optional<AffineHyperplane> next();
    std::uint64_t total_count() const noexcept { return total_; }

    /// Normal classes only (offset iteration left to the caller).
    static std::vector<FpVector> normal_classes(PrimeModulus mod, int dim,
                                                const ResourceCaps& caps = {});

private:
    PrimeModulus mod_;
    int dim_;
    std::vector<FpVector> normals_;
    std::size_t normal_idx_ = 0;
    std::uint32_t offset_ = 0;
    std::uint64_t total_;
};

}  // namespace orbitlab
