#include "orbitlab/affine.hpp"

#include <stdexcept>

#include "orbitlab/util.hpp"

namespace orbitlab {

AffineElement::AffineElement(FpMatrix linear, FpVector translation)
    : linear_(std::move(linear)), trans_(std::move(translation)) {
    if (linear_.modulus() != trans_.modulus())
        throw ModulusMismatchError("AffineElement: modulus differs");
    if (linear_.dim() != trans_.dim())
        throw std::invalid_argument("AffineElement: dimension differs");
    if (!linear_.invertible())
        throw SingularMatrixError("AffineElement: linear part is singular");
}

AffineElement AffineElement::identity(PrimeModulus mod, int dim) {
    return AffineElement(FpMatrix::identity(mod, dim), FpVector::zero(mod, dim));
}

AffineElement AffineElement::pure_translation(FpVector t) {
    FpMatrix id = FpMatrix::identity(t.modulus(), t.dim());
    return AffineElement(std::move(id), std::move(t));
}

bool AffineElement::is_identity() const { return linear_.is_identity() && trans_.is_zero(); }

AffineElement AffineElement::compose(const AffineElement& o) const {
    if (modulus() != o.modulus()) throw ModulusMismatchError("AffineElement: modulus differs");
    if (dim() != o.dim()) throw std::invalid_argument("AffineElement: dimension differs");
    return AffineElement(linear_.mul(o.linear_), linear_.apply(o.trans_).add(trans_));
}

AffineElement AffineElement::inverse() const {
    FpMatrix minv = linear_.inverse();
    return AffineElement(minv, minv.apply(trans_).negated());
}

FpMatrix AffineElement::block_matrix() const {
    const int d = dim();
    std::vector<std::int64_t> e(static_cast<std::size_t>(d + 1) * static_cast<std::size_t>(d + 1),
                                0);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c)
            e[static_cast<std::size_t>(r) * (d + 1) + c] = linear_.at(r, c);
        e[static_cast<std::size_t>(r) * (d + 1) + d] = trans_[r];
    }
    e[static_cast<std::size_t>(d) * (d + 1) + d] = 1;
    return FpMatrix(modulus(), d + 1, std::move(e));
}

AffineElement AffineElement::from_block_matrix(const FpMatrix& m) {
    const int d = m.dim() - 1;
    if (d < 1) throw std::invalid_argument("AffineElement: block matrix too small");
    for (int c = 0; c < d; ++c)
        if (m.at(d, c) != 0)
            throw std::invalid_argument("AffineElement: bottom row is not (0,...,0,1)");
    if (m.at(d, d) != 1)
        throw std::invalid_argument("AffineElement: bottom row is not (0,...,0,1)");
    std::vector<std::int64_t> lin(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
    std::vector<std::int64_t> t(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c)
            lin[static_cast<std::size_t>(r) * d + c] = m.at(r, c);
        t[static_cast<std::size_t>(r)] = m.at(r, d);
    }
    return AffineElement(FpMatrix(m.modulus(), d, std::move(lin)),
                         FpVector(m.modulus(), std::move(t)));
}

std::ostream& operator<<(std::ostream& os, const AffineElement& a) {
    return os << "(" << a.linear() << "," << a.translation() << ")";
}

AffineElement commutator(const AffineElement& g, const AffineElement& h) {
    return g.compose(h).compose(g.inverse()).compose(h.inverse());
}

AffineCodec::AffineCodec(PrimeModulus mod, int dim) : mod_(mod), dim_(dim) {
    if (dim < 1) throw std::invalid_argument("AffineCodec: dimension must be >= 1");
    const unsigned dd = static_cast<unsigned>(dim) * static_cast<unsigned>(dim);
    auto tr = checked_pow(mod.value(), static_cast<unsigned>(dim));
    if (!tr || !checked_pow(mod.value(), dd + static_cast<unsigned>(dim)))
        throw CapExceeded("AffineCodec: p^(d^2+d) exceeds 64-bit codes");
    trans_span_ = *tr;
}

std::uint64_t AffineCodec::encode(const AffineElement& a) const {
    if (a.modulus() != mod_ || a.dim() != dim_)
        throw std::invalid_argument("AffineCodec::encode: element shape mismatch");
    std::uint64_t lin = 0;
    const auto& e = a.linear().entries();
    for (std::size_t i = e.size(); i-- > 0;) lin = lin * mod_.value() + e[i];
    std::uint64_t t = 0;
    for (int i = dim_; i-- > 0;) t = t * mod_.value() + a.translation()[i];
    return t + trans_span_ * lin;
}

AffineElement AffineCodec::decode(std::uint64_t code) const {
    std::uint64_t t = code % trans_span_;
    std::uint64_t lin = code / trans_span_;
    std::vector<std::int64_t> le(static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_));
    for (auto& x : le) {
        x = static_cast<std::int64_t>(lin % mod_.value());
        lin /= mod_.value();
    }
    std::vector<std::int64_t> te(static_cast<std::size_t>(dim_));
    for (auto& x : te) {
        x = static_cast<std::int64_t>(t % mod_.value());
        t /= mod_.value();
    }
    if (lin != 0) throw std::out_of_range("AffineCodec::decode: code out of range");
    return AffineElement(FpMatrix(mod_, dim_, std::move(le)), FpVector(mod_, std::move(te)));
}

}  // namespace orbitlab
