#include "orbitlab/pointset.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

#include "orbitlab/util.hpp"

namespace orbitlab {

PointDomain::PointDomain(PrimeModulus mod, int dim, const ResourceCaps& caps)
    : mod_(mod), dim_(dim) {
    if (dim < 1) throw std::invalid_argument("PointDomain: dimension must be >= 1");
    auto n = checked_pow(mod.value(), static_cast<unsigned>(dim));
    if (!n || *n > caps.max_points) throw CapExceeded("PointDomain: p^d exceeds point cap");
    size_ = *n;
}

std::uint64_t PointDomain::encode(const FpVector& x) const {
    if (x.modulus() != mod_) throw ModulusMismatchError("PointDomain::encode: modulus differs");
    if (x.dim() != dim_) throw std::invalid_argument("PointDomain::encode: dimension differs");
    std::uint64_t code = 0;
    for (int i = dim_ - 1; i >= 0; --i) code = code * mod_.value() + x[i];
    return code;
}

FpVector PointDomain::decode(std::uint64_t code) const {
    if (code >= size_) throw std::out_of_range("PointDomain::decode: code out of range");
    std::vector<std::int64_t> c(static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i) {
        c[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(code % mod_.value());
        code /= mod_.value();
    }
    return FpVector(mod_, std::move(c));
}

PointSet::PointSet(PointDomain dom) : dom_(dom), bits_((dom.size() + 63) / 64, 0) {}

PointSet PointSet::from_vectors(PointDomain dom, std::span<const FpVector> pts) {
    PointSet s(dom);
    for (const FpVector& x : pts) s.insert(x);
    return s;
}

PointSet PointSet::from_codes(PointDomain dom, std::span<const std::uint64_t> codes) {
    PointSet s(dom);
    for (std::uint64_t c : codes) {
        if (c >= dom.size()) throw std::out_of_range("PointSet::from_codes: code out of range");
        s.insert_code(c);
    }
    return s;
}

bool PointSet::insert_code(std::uint64_t code) {
    std::uint64_t& w = bits_[code >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (code & 63);
    if (w & mask) return false;
    w |= mask;
    ++count_;
    return true;
}

std::vector<std::uint64_t> PointSet::codes() const {
    std::vector<std::uint64_t> out;
    out.reserve(count_);
    for (std::size_t w = 0; w < bits_.size(); ++w) {
        std::uint64_t word = bits_[w];
        while (word) {
            const int b = std::countr_zero(word);
            out.push_back((static_cast<std::uint64_t>(w) << 6) | static_cast<unsigned>(b));
            word &= word - 1;
        }
    }
    return out;
}

std::vector<FpVector> PointSet::vectors() const {
    std::vector<FpVector> out;
    out.reserve(count_);
    for (std::uint64_t c : codes()) out.push_back(dom_.decode(c));
    return out;
}

void PointSet::check_same(const PointSet& o) const {
    if (dom_ != o.dom_) throw std::invalid_argument("PointSet: domain mismatch");
}

PointSet PointSet::unified(const PointSet& o) const {
    check_same(o);
    PointSet r(dom_);
    r.count_ = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        r.bits_[i] = bits_[i] | o.bits_[i];
        r.count_ += static_cast<std::uint64_t>(std::popcount(r.bits_[i]));
    }
    return r;
}

PointSet PointSet::intersected(const PointSet& o) const {
    check_same(o);
    PointSet r(dom_);
    r.count_ = 0;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        r.bits_[i] = bits_[i] & o.bits_[i];
        r.count_ += static_cast<std::uint64_t>(std::popcount(r.bits_[i]));
    }
    return r;
}

PointSet PointSet::negated() const {
    PointSet r(dom_);
    for (const FpVector& x : vectors()) r.insert(x.negated());
    return r;
}

PointSet PointSet::translated(const FpVector& t) const {
    PointSet r(dom_);
    for (const FpVector& x : vectors()) r.insert(x.add(t));
    return r;
}

PointSet PointSet::linear_image(const FpMatrix& m) const {
    if (m.modulus() != dom_.modulus() || m.dim() != dom_.dim())
        throw std::invalid_argument("PointSet::linear_image: matrix shape mismatch");
    PointSet r(dom_);
    for (const FpVector& x : vectors()) r.insert(m.apply(x));
    return r;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> coset_histogram(const PointSet& s,
                                                                     const Subspace& v) {
    if (v.modulus() != s.domain().modulus() || v.ambient_dim() != s.domain().dim())
        throw std::invalid_argument("coset_histogram: subspace shape mismatch");
    std::map<std::uint64_t, std::uint64_t> hist;
    for (const FpVector& x : s.vectors()) ++hist[s.domain().encode(v.reduce_mod(x))];
    return {hist.begin(), hist.end()};
}

}  // namespace orbitlab
