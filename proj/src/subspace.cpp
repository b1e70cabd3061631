#include "orbitlab/subspace.hpp"

#include <algorithm>
#include <string>

#include "orbitlab/util.hpp"

namespace orbitlab {

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rref(std::vector<std::vector<std::uint32_t>>& rows, PrimeModulus mod, int width) {
    std::vector<int> pivots;
    std::size_t rank = 0;
    for (int col = 0; col < width && rank < rows.size(); ++col) {
        std::size_t pivot_row = rank;
        while (pivot_row < rows.size() && rows[pivot_row][static_cast<std::size_t>(col)] == 0)
            ++pivot_row;
        if (pivot_row == rows.size()) continue;
        std::swap(rows[rank], rows[pivot_row]);
        std::uint32_t pinv = mod.inv(rows[rank][static_cast<std::size_t>(col)]);
        for (int c = col; c < width; ++c)
            rows[rank][static_cast<std::size_t>(c)] =
                mod.mul(rows[rank][static_cast<std::size_t>(c)], pinv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            std::uint32_t f = rows[r][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int c = col; c < width; ++c)
                rows[r][static_cast<std::size_t>(c)] =
                    mod.sub(rows[r][static_cast<std::size_t>(c)],
                            mod.mul(f, rows[rank][static_cast<std::size_t>(c)]));
        }
        pivots.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    return pivots;
}

}  // namespace

Subspace Subspace::span(PrimeModulus mod, int ambient_dim, std::span<const FpVector> vectors) {
    if (ambient_dim < 1) throw std::invalid_argument("Subspace::span: ambient dimension must be >= 1");
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(vectors.size());
    for (const FpVector& v : vectors) {
        if (v.modulus() != mod) throw ModulusMismatchError("Subspace::span: vector modulus differs");
        if (v.dim() != ambient_dim)
            throw std::invalid_argument("Subspace::span: vector dimension differs");
        rows.push_back(v.coords());
    }
    std::vector<int> pivots = rref(rows, mod, ambient_dim);
    Subspace s(mod, ambient_dim);
    s.pivots_ = std::move(pivots);
    s.basis_.reserve(rows.size());
    for (auto& r : rows) {
        std::vector<std::int64_t> c(r.begin(), r.end());
        s.basis_.emplace_back(mod, std::move(c));
    }
    return s;
}

Subspace Subspace::zero(PrimeModulus mod, int ambient_dim) {
    return Subspace::span(mod, ambient_dim, {});
}

Subspace Subspace::full(PrimeModulus mod, int ambient_dim) {
    std::vector<FpVector> rows;
    for (int i = 0; i < ambient_dim; ++i) {
        std::vector<std::int64_t> c(static_cast<std::size_t>(ambient_dim), 0);
        c[static_cast<std::size_t>(i)] = 1;
        rows.emplace_back(mod, std::move(c));
    }
    return Subspace::span(mod, ambient_dim, rows);
}

bool Subspace::contains(const FpVector& v) const {
    return reduce_mod(v).is_zero();
}

FpVector Subspace::reduce_mod(const FpVector& x) const {
    if (x.modulus() != mod_) throw ModulusMismatchError("Subspace::reduce_mod: modulus differs");
    if (x.dim() != ambient_) throw std::invalid_argument("Subspace::reduce_mod: dimension differs");
    FpVector r = x;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        std::uint32_t f = r[pivots_[i]];
        if (f != 0) r = r.sub(basis_[i].scaled(f));
    }
    return r;
}

Subspace Subspace::perp() const {
    // Nullspace of the RREF basis matrix: one vector per non-pivot column.
    std::vector<bool> is_pivot(static_cast<std::size_t>(ambient_), false);
    for (int pcol : pivots_) is_pivot[static_cast<std::size_t>(pcol)] = true;
    std::vector<FpVector> null_basis;
    for (int c = 0; c < ambient_; ++c) {
        if (is_pivot[static_cast<std::size_t>(c)]) continue;
        std::vector<std::int64_t> w(static_cast<std::size_t>(ambient_), 0);
        w[static_cast<std::size_t>(c)] = 1;
        for (std::size_t i = 0; i < basis_.size(); ++i)
            w[static_cast<std::size_t>(pivots_[i])] =
                -static_cast<std::int64_t>(basis_[i][c]);
        null_basis.emplace_back(mod_, std::move(w));
    }
    return Subspace::span(mod_, ambient_, null_basis);
}

std::vector<FpVector> Subspace::coset_reps(const ResourceCaps& caps) const {
    const int free_count = ambient_ - dim();
    auto total = checked_pow(mod_.value(), static_cast<unsigned>(free_count));
    if (!total || *total > caps.max_points)
        throw CapExceeded("Subspace::coset_reps: p^(d-dim) exceeds point cap");
    std::vector<bool> is_pivot(static_cast<std::size_t>(ambient_), false);
    for (int pcol : pivots_) is_pivot[static_cast<std::size_t>(pcol)] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < ambient_; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);

    std::vector<FpVector> reps;
    reps.reserve(static_cast<std::size_t>(*total));
    std::vector<std::uint32_t> digits(static_cast<std::size_t>(free_count), 0);
    do {
        std::vector<std::int64_t> v(static_cast<std::size_t>(ambient_), 0);
        for (int i = 0; i < free_count; ++i)
            v[static_cast<std::size_t>(free_cols[static_cast<std::size_t>(i)])] =
                digits[static_cast<std::size_t>(i)];
        reps.emplace_back(mod_, std::move(v));
    } while (free_count > 0 && odometer_step(digits.data(), free_count, mod_.value()));
    return reps;
}

std::vector<FpVector> Subspace::points(const ResourceCaps& caps) const {
    auto total = checked_pow(mod_.value(), static_cast<unsigned>(dim()));
    if (!total || *total > caps.max_points)
        throw CapExceeded("Subspace::points: p^dim exceeds point cap");
    std::vector<FpVector> pts;
    pts.reserve(static_cast<std::size_t>(*total));
    std::vector<std::uint32_t> digits(static_cast<std::size_t>(dim()), 0);
    do {
        FpVector acc = FpVector::zero(mod_, ambient_);
        for (int i = 0; i < dim(); ++i)
            if (digits[static_cast<std::size_t>(i)] != 0)
                acc = acc.add(basis_[static_cast<std::size_t>(i)].scaled(
                    digits[static_cast<std::size_t>(i)]));
        pts.push_back(std::move(acc));
    } while (dim() > 0 && odometer_step(digits.data(), dim(), mod_.value()));
    if (dim() == 0) return {FpVector::zero(mod_, ambient_)};
    return pts;
}

std::vector<Subspace> enumerate_subspaces(PrimeModulus mod, int ambient_dim, int min_dim,
                                          int max_dim, const ResourceCaps& caps) {
    if (min_dim < 0 || max_dim > ambient_dim || min_dim > max_dim)
        throw std::invalid_argument("enumerate_subspaces: bad dimension range");
    std::vector<Subspace> out;
    std::uint64_t emitted = 0;
    // Walk RREF shapes: choose pivot columns, then fill the free entries
    // (row i, col c) with c > pivot_i and c not itself a pivot.
    for (int k = min_dim; k <= max_dim; ++k) {
        if (k == 0) {
            out.push_back(Subspace::zero(mod, ambient_dim));
            ++emitted;
            continue;
        }
        std::vector<int> pivots(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) pivots[static_cast<std::size_t>(i)] = i;
        for (;;) {
            std::vector<bool> is_pivot(static_cast<std::size_t>(ambient_dim), false);
            for (int pcol : pivots) is_pivot[static_cast<std::size_t>(pcol)] = true;
            std::vector<std::pair<int, int>> free_pos;
            for (int i = 0; i < k; ++i)
                for (int c = pivots[static_cast<std::size_t>(i)] + 1; c < ambient_dim; ++c)
                    if (!is_pivot[static_cast<std::size_t>(c)]) free_pos.emplace_back(i, c);

            auto combos = checked_pow(mod.value(), static_cast<unsigned>(free_pos.size()));
            if (!combos || emitted + *combos > caps.max_pairs)
                throw CapExceeded("enumerate_subspaces: subspace count exceeds pair cap", emitted);

            std::vector<std::uint32_t> digits(free_pos.size(), 0);
            do {
                std::vector<FpVector> rows;
                rows.reserve(static_cast<std::size_t>(k));
                std::vector<std::vector<std::int64_t>> raw(
                    static_cast<std::size_t>(k),
                    std::vector<std::int64_t>(static_cast<std::size_t>(ambient_dim), 0));
                for (int i = 0; i < k; ++i)
                    raw[static_cast<std::size_t>(i)]
                       [static_cast<std::size_t>(pivots[static_cast<std::size_t>(i)])] = 1;
                for (std::size_t f = 0; f < free_pos.size(); ++f)
                    raw[static_cast<std::size_t>(free_pos[f].first)]
                       [static_cast<std::size_t>(free_pos[f].second)] = digits[f];
                for (auto& r : raw) rows.emplace_back(mod, std::move(r));
                out.push_back(Subspace::span(mod, ambient_dim, rows));
                ++emitted;
            } while (!free_pos.empty() &&
                     odometer_step(digits.data(), static_cast<int>(free_pos.size()), mod.value()));

            // next pivot combination
            int i = k - 1;
            while (i >= 0 && pivots[static_cast<std::size_t>(i)] == ambient_dim - k + i) --i;
            if (i < 0) break;
            ++pivots[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                pivots[static_cast<std::size_t>(j)] = pivots[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

AffineHyperplane normalize_hyperplane(const FpVector& normal, std::uint32_t offset) {
    if (normal.is_zero())
        throw std::invalid_argument("normalize_hyperplane: normal must be nonzero");
    PrimeModulus mod = normal.modulus();
    int lead = 0;
    while (normal[lead] == 0) ++lead;
    std::uint32_t scale = mod.inv(normal[lead]);
    return AffineHyperplane{normal.scaled(scale), mod.mul(offset, scale)};
}

HyperplaneEnumerator::HyperplaneEnumerator(PrimeModulus mod, int dim, const ResourceCaps& caps)
    : mod_(mod), dim_(dim) {
    if (dim < 1) throw std::invalid_argument("HyperplaneEnumerator: dimension must be >= 1");
    normals_ = normal_classes(mod, dim, caps);
    total_ = static_cast<std::uint64_t>(normals_.size()) * mod.value();
}

std::vector<FpVector> HyperplaneEnumerator::normal_classes(PrimeModulus mod, int dim,
                                                           const ResourceCaps& caps) {
    auto cells = checked_pow(mod.value(), static_cast<unsigned>(dim));
    if (!cells || *cells > caps.max_points)
        throw CapExceeded("HyperplaneEnumerator: p^d exceeds point cap");
    std::vector<FpVector> normals;
    // Leading coordinate fixed to 1, everything before it zero: exactly one
    // vector per scalar class, (p^d - 1)/(p - 1) in total.
    for (int lead = 0; lead < dim; ++lead) {
        const int tail = dim - lead - 1;
        std::vector<std::uint32_t> digits(static_cast<std::size_t>(tail), 0);
        do {
            std::vector<std::int64_t> v(static_cast<std::size_t>(dim), 0);
            v[static_cast<std::size_t>(lead)] = 1;
            for (int i = 0; i < tail; ++i)
                v[static_cast<std::size_t>(lead + 1 + i)] = digits[static_cast<std::size_t>(i)];
            normals.emplace_back(mod, std::move(v));
        } while (tail > 0 && odometer_step(digits.data(), tail, mod.value()));
    }
    return normals;
}

std::optional<AffineHyperplane> HyperplaneEnumerator::next() {
    if (normal_idx_ >= normals_.size()) return std::nullopt;
    AffineHyperplane h{normals_[normal_idx_], offset_};
    if (++offset_ == mod_.value()) {
        offset_ = 0;
        ++normal_idx_;
    }
    return h;
}

}  // namespace orbitlab
