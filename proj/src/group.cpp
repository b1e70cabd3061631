#include "orbitlab/group.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "orbitlab/util.hpp"

namespace orbitlab {

MatrixCodec::MatrixCodec(PrimeModulus mod, int dim) : mod_(mod), dim_(dim) {
    if (dim < 1) throw std::invalid_argument("MatrixCodec: dimension must be >= 1");
    if (!checked_pow(mod.value(), static_cast<unsigned>(dim) * static_cast<unsigned>(dim)))
        throw CapExceeded("MatrixCodec: p^(d^2) exceeds 64-bit codes");
}

std::uint64_t MatrixCodec::encode(const FpMatrix& m) const {
    if (m.modulus() != mod_ || m.dim() != dim_)
        throw std::invalid_argument("MatrixCodec::encode: matrix shape mismatch");
    std::uint64_t code = 0;
    const auto& e = m.entries();
    for (std::size_t i = e.size(); i-- > 0;) code = code * mod_.value() + e[i];
    return code;
}

FpMatrix MatrixCodec::decode(std::uint64_t code) const {
    std::vector<std::int64_t> e(static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_));
    for (auto& x : e) {
        x = static_cast<std::int64_t>(code % mod_.value());
        code /= mod_.value();
    }
    if (code != 0) throw std::out_of_range("MatrixCodec::decode: code out of range");
    return FpMatrix(mod_, dim_, std::move(e));
}

MatrixGroup MatrixGroup::closure(PrimeModulus mod, int dim, std::span<const FpMatrix> gens,
                                 const ResourceCaps& caps) {
    MatrixCodec codec(mod, dim);
    std::vector<FpMatrix> kept;
    for (const FpMatrix& g : gens) {
        if (g.modulus() != mod || g.dim() != dim)
            throw std::invalid_argument("MatrixGroup::closure: generator shape mismatch");
        if (!g.invertible())
            throw SingularMatrixError("MatrixGroup::closure: generator is singular");
        kept.push_back(g);
    }

    std::unordered_set<std::uint64_t> seen;
    std::deque<FpMatrix> frontier;
    frontier.push_back(FpMatrix::identity(mod, dim));
    seen.insert(codec.encode(frontier.back()));
    while (!frontier.empty()) {
        FpMatrix m = std::move(frontier.front());
        frontier.pop_front();
        for (const FpMatrix& g : kept) {
            FpMatrix n = m.mul(g);
            if (seen.insert(codec.encode(n)).second) {
                if (seen.size() > caps.max_closure)
                    throw CapExceeded("MatrixGroup::closure: closure cap exceeded", seen.size());
                frontier.push_back(std::move(n));
            }
        }
    }

    std::vector<std::uint64_t> codes(seen.begin(), seen.end());
    std::sort(codes.begin(), codes.end());
    return MatrixGroup(codec, std::move(codes), std::move(kept));
}

MatrixGroup MatrixGroup::trivial(PrimeModulus mod, int dim) {
    return closure(mod, dim, {});
}

bool MatrixGroup::contains(const FpMatrix& m) const {
    if (m.modulus() != modulus() || m.dim() != dim()) return false;
    return std::binary_search(codes_.begin(), codes_.end(), codec_.encode(m));
}

std::vector<FpMatrix> MatrixGroup::elements() const {
    std::vector<FpMatrix> out;
    out.reserve(codes_.size());
    for (std::uint64_t c : codes_) out.push_back(codec_.decode(c));
    return out;
}

bool MatrixGroup::subgroup_of(const MatrixGroup& g) const {
    if (modulus() != g.modulus() || dim() != g.dim()) return false;
    return std::includes(g.codes_.begin(), g.codes_.end(), codes_.begin(), codes_.end());
}

MatrixGroup MatrixGroup::transposed_group() const {
    std::vector<std::uint64_t> codes;
    codes.reserve(codes_.size());
    for (std::uint64_t c : codes_) codes.push_back(codec_.encode(codec_.decode(c).transposed()));
    std::sort(codes.begin(), codes.end());
    std::vector<FpMatrix> gens;
    gens.reserve(gens_.size());
    for (const FpMatrix& g : gens_) gens.push_back(g.transposed());
    return MatrixGroup(codec_, std::move(codes), std::move(gens));
}

OrbitSet orbit(const MatrixGroup& h, const FpVector& v, bool transposed,
               const ResourceCaps& caps) {
    if (v.modulus() != h.modulus() || v.dim() != h.dim())
        throw std::invalid_argument("orbit: vector shape mismatch");
    if (v.is_zero()) throw std::invalid_argument("orbit: base point must be nonzero");
    PointDomain dom(h.modulus(), h.dim(), caps);
    PointSet out(dom);
    out.insert(v);
    std::deque<FpVector> frontier{v};
    while (!frontier.empty()) {
        FpVector x = std::move(frontier.front());
        frontier.pop_front();
        for (const FpMatrix& g : h.generators()) {
            FpVector y = transposed ? g.apply_transposed(x) : g.apply(x);
            if (out.insert(y)) frontier.push_back(std::move(y));
        }
    }
    return OrbitSet{h, v, std::move(out), transposed};
}

MatrixGroup stabilizer(const MatrixGroup& h, const FpVector& xi, bool transposed) {
    if (xi.modulus() != h.modulus() || xi.dim() != h.dim())
        throw std::invalid_argument("stabilizer: vector shape mismatch");
    if (xi.is_zero()) throw std::invalid_argument("stabilizer: vector must be nonzero");
    std::vector<std::uint64_t> codes;
    for (std::uint64_t c : h.codes()) {
        FpMatrix m = h.codec().decode(c);
        FpVector y = transposed ? m.apply_transposed(xi) : m.apply(xi);
        if (y == xi) codes.push_back(c);
    }
    std::vector<FpMatrix> gens;
    for (std::uint64_t c : codes) gens.push_back(h.codec().decode(c));
    return MatrixGroup(h.codec(), std::move(codes), std::move(gens));
}

}  // namespace orbitlab
