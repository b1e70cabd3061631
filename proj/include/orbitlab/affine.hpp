#pragma once

#include <cstdint>
#include <ostream>

#include "orbitlab/caps.hpp"
#include "orbitlab/fp.hpp"

namespace orbitlab {

/// An element (M, t) of Aff_d(F_p) = GL_d(F_p) x F_p^d acting as
/// x -> M x + t. Equal to the (d+1) x (d+1) block matrix with M upper
/// left, t upper right and bottom row (0,...,0,1), so composition is
/// (M1, t1)(M2, t2) = (M1 M2, M1 t2 + t1).
class AffineElement {
public:
    AffineElement(FpMatrix linear, FpVector translation);
    static AffineElement identity(PrimeModulus mod, int dim);
    static AffineElement pure_translation(FpVector t);

    PrimeModulus modulus() const noexcept { return linear_.modulus(); }
    int dim() const noexcept { return linear_.dim(); }
    const FpMatrix& linear() const noexcept { return linear_; }
    const FpVector& translation() const noexcept { return trans_; }

    bool is_identity() const;
    bool is_translation() const { return linear_.is_identity(); }

    AffineElement compose(const AffineElement& o) const;
    AffineElement inverse() const;
    FpVector apply(const FpVector& x) const { return linear_.apply(x).add(trans_); }

    /// The (d+1) x (d+1) block matrix form.
    FpMatrix block_matrix() const;
    /// Inverse of block_matrix; rejects matrices whose bottom row is not e_{d+1}.
    static AffineElement from_block_matrix(const FpMatrix& m);

    friend bool operator==(const AffineElement& a, const AffineElement& b) noexcept {
        return a.linear_ == b.linear_ && a.trans_ == b.trans_;
    }
    friend bool operator!=(const AffineElement& a, const AffineElement& b) noexcept {
        return !(a == b);
    }

private:
    FpMatrix linear_;
    FpVector trans_;
};

std::ostream& operator<<(std::ostream& os, const AffineElement& a);

/// g h g^-1 h^-1. For g = (I, xi) and h = (N, eta) this collapses to
/// (I, (I - N) xi) independently of eta.
AffineElement commutator(const AffineElement& g, const AffineElement& h);

/// Mixed-radix codec for Aff_d(F_p): d translation digits low, d^2 matrix
/// digits high, so code % p^d is the PointDomain code of the translation and
/// code / p^d is the MatrixCodec code of the linear part. Sorting affine
/// codes therefore groups elements by linear part. Construction rejects
/// p^(d^2+d) overflowing 64 bits.
class AffineCodec {
public:
    AffineCodec(PrimeModulus mod, int dim);

    PrimeModulus modulus() const noexcept { return mod_; }
    int dim() const noexcept { return dim_; }
    std::uint64_t translation_span() const noexcept { return trans_span_; }

    std::uint64_t encode(const AffineElement& a) const;
    AffineElement decode(std::uint64_t code) const;
    std::uint64_t identity_code() const { return encode(AffineElement::identity(mod_, dim_)); }

private:
    PrimeModulus mod_;
    int dim_;
    std::uint64_t trans_span_;  // p^d
};

}  // namespace orbitlab
