#include "orbitlab/affine_set.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <stdexcept>
#include <unordered_set>

#include "orbitlab/group.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace orbitlab {

namespace {

constexpr std::uint64_t kFullCommutatorLimit = 10000;

void sort_dedup(std::vector<std::uint64_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

AffineSet::AffineSet(AffineCodec codec) : codec_(std::move(codec)) {}

AffineSet AffineSet::from_elements(AffineCodec codec, std::span<const AffineElement> elems) {
    std::vector<std::uint64_t> codes;
    codes.reserve(elems.size());
    for (const AffineElement& a : elems) codes.push_back(codec.encode(a));
    return from_codes(std::move(codec), std::move(codes));
}

AffineSet AffineSet::from_codes(AffineCodec codec, std::vector<std::uint64_t> codes) {
    sort_dedup(codes);
    AffineSet s(std::move(codec));
    for (std::uint64_t c : codes) s.codec_.decode(c);  // validates range and invertibility
    s.codes_ = std::move(codes);
    s.refresh_flags();
    return s;
}

void AffineSet::refresh_flags() {
    has_identity_ = contains_code(codec_.identity_code());
    symmetric_ = true;
    for (std::uint64_t c : codes_) {
        if (!contains_code(codec_.encode(codec_.decode(c).inverse()))) {
            symmetric_ = false;
            break;
        }
    }
}

bool AffineSet::contains_code(std::uint64_t code) const {
    return std::binary_search(codes_.begin(), codes_.end(), code);
}

std::vector<AffineElement> AffineSet::elements() const {
    std::vector<AffineElement> out;
    out.reserve(codes_.size());
    for (std::uint64_t c : codes_) out.push_back(codec_.decode(c));
    return out;
}

AffineSet AffineSet::product(const AffineSet& o, const ResourceCaps& caps) const {
    if (codec_.modulus() != o.codec_.modulus() || codec_.dim() != o.codec_.dim())
        throw std::invalid_argument("AffineSet::product: domain mismatch");
    const std::vector<AffineElement> lhs = elements();
    const std::vector<AffineElement> rhs = o.elements();

    std::vector<std::vector<std::uint64_t>> shards;
#ifdef _OPENMP
#pragma omp parallel
    {
#pragma omp single
        shards.resize(static_cast<std::size_t>(omp_get_num_threads()));
        std::unordered_set<std::uint64_t> local;
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(lhs.size()); ++i)
            for (const AffineElement& b : rhs)
                local.insert(codec_.encode(lhs[static_cast<std::size_t>(i)].compose(b)));
        auto& shard = shards[static_cast<std::size_t>(omp_get_thread_num())];
        shard.assign(local.begin(), local.end());
    }
#else
    {
        std::unordered_set<std::uint64_t> local;
        for (const AffineElement& a : lhs)
            for (const AffineElement& b : rhs) local.insert(codec_.encode(a.compose(b)));
        shards.emplace_back(local.begin(), local.end());
    }
#endif

    std::vector<std::uint64_t> merged;
    for (auto& shard : shards) merged.insert(merged.end(), shard.begin(), shard.end());
    sort_dedup(merged);
    if (merged.size() > caps.max_affine_set)
        throw CapExceeded("AffineSet::product: result exceeds the affine set cap", merged.size());

    AffineSet out(codec_);
    out.codes_ = std::move(merged);
    out.refresh_flags();
    return out;
}

AffineSet AffineSet::inverse() const {
    if (symmetric_) return *this;
    std::vector<std::uint64_t> inv;
    inv.reserve(codes_.size());
    for (std::uint64_t c : codes_) inv.push_back(codec_.encode(codec_.decode(c).inverse()));
    sort_dedup(inv);
    AffineSet out(codec_);
    out.codes_ = std::move(inv);
    out.refresh_flags();
    return out;
}

AffineSet AffineSet::power(int m, const ResourceCaps& caps) const {
    if (m < 1) throw std::invalid_argument("AffineSet::power: exponent must be >= 1");
    AffineSet acc = *this;
    for (int i = 1; i < m; ++i) acc = acc.product(*this, caps);
    return acc;
}

AffineSet AffineSet::unified(const AffineSet& o) const {
    if (codec_.modulus() != o.codec_.modulus() || codec_.dim() != o.codec_.dim())
        throw std::invalid_argument("AffineSet::unified: domain mismatch");
    std::vector<std::uint64_t> merged;
    std::set_union(codes_.begin(), codes_.end(), o.codes_.begin(), o.codes_.end(),
                   std::back_inserter(merged));
    AffineSet out(codec_);
    out.codes_ = std::move(merged);
    out.refresh_flags();
    return out;
}

AffineSet AffineSet::intersected(const AffineSet& o) const {
    if (codec_.modulus() != o.codec_.modulus() || codec_.dim() != o.codec_.dim())
        throw std::invalid_argument("AffineSet::intersected: domain mismatch");
    std::vector<std::uint64_t> common;
    std::set_intersection(codes_.begin(), codes_.end(), o.codes_.begin(), o.codes_.end(),
                          std::back_inserter(common));
    AffineSet out(codec_);
    out.codes_ = std::move(common);
    out.refresh_flags();
    return out;
}

AffineSet AffineSet::symmetrized() const {
    AffineSet out = unified(inverse());
    if (!out.has_identity_) {
        out.codes_.insert(
            std::lower_bound(out.codes_.begin(), out.codes_.end(), codec_.identity_code()),
            codec_.identity_code());
        out.has_identity_ = true;
    }
    return out;
}

AffineSet AffineSet::left_translated(const AffineElement& g) const {
    std::vector<std::uint64_t> moved;
    moved.reserve(codes_.size());
    for (std::uint64_t c : codes_) moved.push_back(codec_.encode(g.compose(codec_.decode(c))));
    sort_dedup(moved);
    AffineSet out(codec_);
    out.codes_ = std::move(moved);
    out.refresh_flags();
    return out;
}

AffineSet AffineSet::restricted_product(
    const AffineSet& o, std::span<const std::pair<std::uint64_t, std::uint64_t>> pairs,
    const ResourceCaps& caps) const {
    if (codec_.modulus() != o.codec_.modulus() || codec_.dim() != o.codec_.dim())
        throw std::invalid_argument("AffineSet::restricted_product: domain mismatch");
    if (pairs.size() > caps.max_pairs)
        throw CapExceeded("AffineSet::restricted_product: pair list exceeds the pair cap");
    std::vector<std::uint64_t> prods;
    prods.reserve(pairs.size());
    for (const auto& [ca, cb] : pairs) {
        if (!contains_code(ca) || !o.contains_code(cb))
            throw std::invalid_argument(
                "AffineSet::restricted_product: pair outside the factor sets");
        prods.push_back(codec_.encode(codec_.decode(ca).compose(o.codec_.decode(cb))));
    }
    sort_dedup(prods);
    if (prods.size() > caps.max_affine_set)
        throw CapExceeded("AffineSet::restricted_product: result exceeds the affine set cap",
                          prods.size());
    AffineSet out(codec_);
    out.codes_ = std::move(prods);
    out.refresh_flags();
    return out;
}

bool AffineSet::is_closed_group(const ResourceCaps& caps) const {
    if (!has_identity_ || !symmetric_) return false;
    if (codes_.size() * codes_.size() > caps.max_pairs)
        throw CapExceeded("AffineSet::is_closed_group: pairwise check exceeds the pair cap");
    const std::vector<AffineElement> elems = elements();
    std::atomic<bool> closed{true};
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(elems.size()); ++i) {
        if (!closed.load(std::memory_order_relaxed)) continue;
        for (const AffineElement& b : elems) {
            if (!contains_code(codec_.encode(elems[static_cast<std::size_t>(i)].compose(b)))) {
                closed.store(false, std::memory_order_relaxed);
                break;
            }
        }
    }
    return closed.load();
}

AffineSet affine_closure(PrimeModulus mod, int dim, std::span<const AffineElement> gens,
                         const ResourceCaps& caps) {
    AffineCodec codec(mod, dim);
    std::vector<AffineElement> kept;
    for (const AffineElement& g : gens) {
        if (g.modulus() != mod || g.dim() != dim)
            throw std::invalid_argument("affine_closure: generator shape mismatch");
        kept.push_back(g);
    }

    std::unordered_set<std::uint64_t> seen;
    std::deque<AffineElement> frontier;
    frontier.push_back(AffineElement::identity(mod, dim));
    seen.insert(codec.identity_code());
    while (!frontier.empty()) {
        AffineElement cur = std::move(frontier.front());
        frontier.pop_front();
        for (const AffineElement& g : kept) {
            AffineElement next = cur.compose(g);
            if (seen.insert(codec.encode(next)).second) {
                if (seen.size() > caps.max_closure)
                    throw CapExceeded("affine_closure: closure exceeds the closure cap",
                                      seen.size());
                frontier.push_back(std::move(next));
            }
        }
    }

    std::vector<std::uint64_t> codes(seen.begin(), seen.end());
    return AffineSet::from_codes(std::move(codec), std::move(codes));
}

std::uint64_t BlockView::max_fiber() const {
    std::uint64_t best = 0;
    for (const PointSet& f : fibers) best = std::max(best, f.size());
    return best;
}

std::uint64_t BlockView::min_fiber() const {
    std::uint64_t best = base_size + 1;
    for (const PointSet& f : fibers) best = std::min(best, f.size());
    return fibers.empty() ? 0 : best;
}

std::ptrdiff_t BlockView::find(const FpMatrix& m) const {
    MatrixCodec mc(m.modulus(), m.dim());
    auto it = std::lower_bound(l_codes.begin(), l_codes.end(), mc.encode(m));
    if (it == l_codes.end() || *it != mc.encode(m)) return -1;
    return it - l_codes.begin();
}

BlockView block_view(const AffineSet& a) {
    const AffineCodec& codec = a.codec();
    const std::uint64_t span = codec.translation_span();
    PointDomain dom(codec.modulus(), codec.dim());
    MatrixCodec mc(codec.modulus(), codec.dim());

    BlockView view;
    view.base_size = a.size();
    std::uint64_t cur_lin = 0;
    bool open = false;
    for (std::uint64_t c : a.codes()) {
        const std::uint64_t lin = c / span;
        if (!open || lin != cur_lin) {
            view.l_codes.push_back(lin);
            view.l_parts.push_back(mc.decode(lin));
            view.fibers.emplace_back(dom);
            cur_lin = lin;
            open = true;
        }
        view.fibers.back().insert_code(c % span);
    }

    std::uint64_t total = 0;
    for (const PointSet& f : view.fibers) total += f.size();
    if (total != view.base_size)
        throw std::logic_error("block_view: fibers fail to partition the set");
    return view;
}

GrowthReport growth_report(const AffineSet& a, const ResourceCaps& caps) {
    if (a.empty()) throw std::invalid_argument("growth_report: empty set");
    if (!a.contains_identity())
        throw std::invalid_argument("growth_report: set must contain the identity");
    if (!a.symmetric())
        throw std::invalid_argument("growth_report: set must equal its inverse set");

    const AffineSet a2 = a.product(a, caps);
    const AffineSet a3 = a2.product(a, caps);

    GrowthReport rep;
    rep.size_a = a.size();
    rep.size_a2 = a2.size();
    rep.size_a3 = a3.size();
    rep.tripling = static_cast<double>(a3.size()) / static_cast<double>(a.size());

    // Greedy cover of A^2 by translates xA with centers x drawn from the
    // uncovered part of A^2 itself. Every center covers itself because
    // 1 is in A, so the loop terminates with A^2 inside X A. Among the
    // uncovered candidates the one covering the most uncovered elements
    // wins, ties broken toward the larger code; both rules are fixed so
    // the reported bound is reproducible.
    const std::vector<std::uint64_t>& targets = a2.codes();
    std::vector<bool> covered(targets.size(), false);
    std::uint64_t remaining = targets.size();
    const std::vector<AffineElement> base = a.elements();
    const AffineCodec& codec = a.codec();

    auto target_index = [&](std::uint64_t code) -> std::ptrdiff_t {
        auto it = std::lower_bound(targets.begin(), targets.end(), code);
        if (it == targets.end() || *it != code) return -1;
        return it - targets.begin();
    };

    std::uint64_t k = 0;
    while (remaining > 0) {
        std::size_t best = 0;
        std::vector<std::ptrdiff_t> best_hits;
        bool have_best = false;
        for (std::size_t ci = 0; ci < targets.size(); ++ci) {
            if (covered[ci]) continue;
            const AffineElement x = codec.decode(targets[ci]);
            // Distinct b give distinct x b, so hits carries no duplicates.
            std::vector<std::ptrdiff_t> hits;
            for (const AffineElement& b : base) {
                const std::ptrdiff_t idx = target_index(codec.encode(x.compose(b)));
                if (idx >= 0 && !covered[static_cast<std::size_t>(idx)]) hits.push_back(idx);
            }
            if (!have_best || hits.size() > best_hits.size() ||
                (hits.size() == best_hits.size() && targets[ci] > targets[best])) {
                best = ci;
                best_hits = std::move(hits);
                have_best = true;
            }
        }
        for (std::ptrdiff_t idx : best_hits) {
            covered[static_cast<std::size_t>(idx)] = true;
            --remaining;
        }
        ++k;
    }
    rep.covering_k = k;
    return rep;
}

namespace {

/// Pure translations (I, t != 0) in w that lie outside h1. Uses the codec
/// layout: the identity block is the code range [id_lin * span, (id_lin + 1) * span).
bool translation_outside(const AffineSet& w, const AffineSet& h1) {
    const AffineCodec& codec = w.codec();
    const std::uint64_t span = codec.translation_span();
    MatrixCodec mc(codec.modulus(), codec.dim());
    const std::uint64_t id_lin = mc.encode(FpMatrix::identity(codec.modulus(), codec.dim()));
    const auto& codes = w.codes();
    auto lo = std::lower_bound(codes.begin(), codes.end(), id_lin * span);
    auto hi = std::lower_bound(codes.begin(), codes.end(), (id_lin + 1) * span);
    for (auto it = lo; it != hi; ++it) {
        if (*it % span == 0) continue;  // identity itself
        if (!h1.contains_code(*it)) return true;
    }
    return false;
}

}  // namespace

LowerCentralReport lower_central_probe(const AffineSet& h2, const AffineSet& h1, int depth,
                                       std::span<const AffineElement> h2_gens,
                                       const ResourceCaps& caps) {
    if (h2.codec().modulus() != h1.codec().modulus() || h2.codec().dim() != h1.codec().dim())
        throw std::invalid_argument("lower_central_probe: domain mismatch");
    if (depth < 1) throw std::invalid_argument("lower_central_probe: depth must be >= 1");
    if (!h2.is_closed_group(caps) || !h1.is_closed_group(caps))
        throw std::invalid_argument("lower_central_probe: inputs must be closed groups");
    for (std::uint64_t c : h1.codes())
        if (!h2.contains_code(c))
            throw std::invalid_argument("lower_central_probe: h1 must sit inside h2");

    const PrimeModulus mod = h2.codec().modulus();
    const int dim = h2.codec().dim();
    const bool full = h2.size() <= kFullCommutatorLimit;
    if (!full && h2_gens.empty())
        throw std::invalid_argument(
            "lower_central_probe: generator list required beyond the exact pairwise range");

    LowerCentralReport rep;
    AffineSet w = h2;
    std::vector<AffineElement> w_gens(h2_gens.begin(), h2_gens.end());
    rep.layers.push_back({w.size(), translation_outside(w, h1)});
    if (w.size() == 1) {
        rep.stabilized_at = 0;
        rep.nilpotent = true;
        return rep;
    }

    for (int i = 1; i <= depth; ++i) {
        std::vector<AffineElement> comms;
        if (full) {
            if (h2.size() * w.size() > caps.max_pairs)
                throw CapExceeded("lower_central_probe: commutator pairs exceed the pair cap");
            const std::vector<AffineElement> outer = h2.elements();
            const std::vector<AffineElement> inner = w.elements();
            for (const AffineElement& a : outer)
                for (const AffineElement& b : inner) comms.push_back(commutator(a, b));
        } else {
            for (const AffineElement& a : h2_gens)
                for (const AffineElement& b : w_gens) comms.push_back(commutator(a, b));
        }
        AffineSet next = affine_closure(mod, dim, comms, caps);
        const bool repeated = next == w;
        w_gens = std::move(comms);
        w = std::move(next);
        rep.layers.push_back({w.size(), translation_outside(w, h1)});
        if (repeated || w.size() == 1) {
            rep.stabilized_at = i;
            rep.nilpotent = w.size() == 1;
            break;
        }
    }
    return rep;
}

}  // namespace orbitlab
