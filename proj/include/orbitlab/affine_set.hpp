#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "orbitlab/affine.hpp"
#include "orbitlab/caps.hpp"
#include "orbitlab/pointset.hpp"
#include "orbitlab/verdict.hpp"

namespace orbitlab {

/// A finite subset of Aff_d(F_p) stored as sorted element codes. Since the
/// codec puts the linear part in the high digits, codes cluster by linear
/// part, which makes the block decomposition a single pass.
class AffineSet {
public:
    explicit AffineSet(AffineCodec codec);
    static AffineSet from_elements(AffineCodec codec, std::span<const AffineElement> elems);
    static AffineSet from_codes(AffineCodec codec, std::vector<std::uint64_t> codes);

    const AffineCodec& codec() const noexcept { return codec_; }
    std::uint64_t size() const noexcept { return codes_.size(); }
    bool empty() const noexcept { return codes_.empty(); }

    bool contains_code(std::uint64_t code) const;
    bool contains(const AffineElement& a) const { return contains_code(codec_.encode(a)); }
    const std::vector<std::uint64_t>& codes() const noexcept { return codes_; }
    AffineElement element(std::size_t idx) const { return codec_.decode(codes_[idx]); }
    std::vector<AffineElement> elements() const;

    bool symmetric() const noexcept { return symmetric_; }
    bool contains_identity() const noexcept { return has_identity_; }

    AffineSet product(const AffineSet& o, const ResourceCaps& caps = {}) const;
    AffineSet inverse() const;
    /// m-fold product set, m >= 1.
    AffineSet power(int m, const ResourceCaps& caps = {}) const;
    AffineSet unified(const AffineSet& o) const;
    AffineSet intersected(const AffineSet& o) const;
    /// A cup A^-1 cup {1}: the canonical way to meet the symmetry precondition.
    AffineSet symmetrized() const;
    AffineSet left_translated(const AffineElement& g) const;

    /// {a b : (a, b) in pairs}; every pair must come from this x o.
    AffineSet restricted_product(const AffineSet& o,
                                 std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs,
                                 const ResourceCaps& caps = {}) const;

    /// Exhaustive group test: contains identity, closed under inverse and
    /// under every pairwise product. Cost |A|^2 memberships, cap-guarded.
    bool is_closed_group(const ResourceCaps& caps = {}) const;

    friend bool operator==(const AffineSet& a, const AffineSet& b) noexcept {
        return a.codec_.modulus() == b.codec_.modulus() && a.codec_.dim() == b.codec_.dim() &&
               a.codes_ == b.codes_;
    }
    friend bool operator!=(const AffineSet& a, const AffineSet& b) noexcept { return !(a == b); }

private:
    void refresh_flags();

    AffineCodec codec_;
    std::vector<std::uint64_t> codes_;  // sorted ascending
    bool symmetric_ = true;
    bool has_identity_ = false;
};

/// Breadth-first closure of affine generators into the full subgroup.
AffineSet affine_closure(PrimeModulus mod, int dim, std::span<const AffineElement> gens,
                         const ResourceCaps& caps = {});

/// The L / R_M decomposition: linear-part set and one translation fiber per
/// linear part. Fibers partition the set.
struct BlockView {
    std::vector<FpMatrix> l_parts;        // distinct linear parts, code order
    std::vector<std::uint64_t> l_codes;   // matrix codes, parallel to l_parts
    std::vector<PointSet> fibers;         // fibers[i] = R_{l_parts[i]}(base)
    std::uint64_t base_size;

    std::uint64_t max_fiber() const;
    std::uint64_t min_fiber() const;
    /// Index of m in l_parts, or -1.
    std::ptrdiff_t find(const FpMatrix& m) const;
};

BlockView block_view(const AffineSet& a);

/// Tripling data and the greedy covering bound. Requires 1 in A and A = A^-1.
struct GrowthReport {
    std::uint64_t size_a, size_a2, size_a3;
    double tripling;
    std::uint64_t covering_k;  // greedy |X| with A^2 subset of X A
};

GrowthReport growth_report(const AffineSet& a, const ResourceCaps& caps = {});

/// Lower central series probe for H2 relative to H1: W_0 = H2,
/// W_{i+1} = <[a,b] : a in H2, b in W_i>. Layers report whether a pure
/// translation outside H1 survives; nilpotent means the series hit the
/// trivial group within the probed depth.
struct LowerCentralReport {
    struct Layer {
        std::uint64_t order;
        bool translation_outside_h1;
    };
    std::vector<Layer> layers;  // W_0 .. W_last
    int stabilized_at = -1;     // first index whose layer equals its predecessor
    bool nilpotent = false;
};

LowerCentralReport lower_central_probe(const AffineSet& h2, const AffineSet& h1, int depth,
                                       std::span<const AffineElement> h2_gens = {},
                                       const ResourceCaps& caps = {});

}  // namespace orbitlab
