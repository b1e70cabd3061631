#include "orbitlab/profile.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace orbitlab {

namespace {

// Digit matrix of the set's points, |S| rows of d digits, code order.
std::vector<std::uint32_t> point_digits(const PointSet& s) {
    const int d = s.domain().dim();
    std::vector<std::uint32_t> out(s.size() * static_cast<std::size_t>(d));
    std::size_t row = 0;
    for (std::uint64_t code : s.codes())
        s.domain().decode_digits(code, out.data() + (row++) * static_cast<std::size_t>(d));
    return out;
}

}  // namespace

InstanceProfile hyperplane_profile(const PointSet& points, const ResourceCaps& caps) {
    if (points.empty()) throw std::invalid_argument("hyperplane_profile: empty set");
    const PrimeModulus mod = points.domain().modulus();
    const int d = points.domain().dim();
    const std::uint32_t p = mod.value();
    const std::vector<FpVector> normals = HyperplaneEnumerator::normal_classes(mod, d, caps);
    const std::vector<std::uint32_t> digits = point_digits(points);
    const std::int64_t n_points = static_cast<std::int64_t>(points.size());
    const std::int64_t n_classes = static_cast<std::int64_t>(normals.size());

    // Per class: histogram normal . x over the set, keep (max count, first
    // offset attaining it). The serial argmax scan below keeps the witness
    // independent of thread count.
    std::vector<std::uint64_t> class_max(normals.size(), 0);
    std::vector<std::uint32_t> class_offset(normals.size(), 0);
#pragma omp parallel
    {
        std::vector<std::uint64_t> hist(p);
#pragma omp for schedule(static)
        for (std::int64_t ci = 0; ci < n_classes; ++ci) {
            const auto& ncoords = normals[static_cast<std::size_t>(ci)].coords();
            hist.assign(p, 0);
            for (std::int64_t r = 0; r < n_points; ++r) {
                const std::uint32_t* x = digits.data() + static_cast<std::size_t>(r) * d;
                std::uint64_t acc = 0;
                for (int i = 0; i < d; ++i)
                    acc += static_cast<std::uint64_t>(ncoords[static_cast<std::size_t>(i)]) * x[i];
                ++hist[acc % p];
            }
            std::uint64_t best = 0;
            std::uint32_t best_off = 0;
            for (std::uint32_t off = 0; off < p; ++off)
                if (hist[off] > best) {
                    best = hist[off];
                    best_off = off;
                }
            class_max[static_cast<std::size_t>(ci)] = best;
            class_offset[static_cast<std::size_t>(ci)] = best_off;
        }
    }

    std::size_t best_class = 0;
    for (std::size_t ci = 1; ci < normals.size(); ++ci)
        if (class_max[ci] > class_max[best_class]) best_class = ci;

    InstanceProfile prof{points.size(),
                         std::log(static_cast<double>(points.size())) / std::log(p),
                         class_max[best_class],
                         0.0,
                         AffineHyperplane{normals[best_class], class_offset[best_class]}};
    if (prof.max_hyperplane_hit < prof.orbit_size)
        prof.beta_eff = 1.0 - std::log(static_cast<double>(prof.max_hyperplane_hit)) /
                                  std::log(static_cast<double>(prof.orbit_size));
    return prof;
}

InstanceProfile hyperplane_profile(const OrbitSet& i, const ResourceCaps& caps) {
    return hyperplane_profile(i.points, caps);
}

StabChainReport stab_chain_check(const MatrixGroup& h, const FpVector& v, const FpVector& xi,
                                 const ResourceCaps& caps) {
    StabChainReport r{};
    r.stab_xi = stabilizer(h, xi).order();
    r.stab_v = stabilizer(h, v, /*transposed=*/true).order();
    const std::uint32_t target = xi.dot(v);
    r.orbit_plane_hits = 0;
    for (const FpVector& x : orbit(h, v, /*transposed=*/true, caps).points.vectors())
        if (xi.dot(x) == target) ++r.orbit_plane_hits;
    return r;
}

namespace reference {

std::uint64_t max_hyperplane_hit(const PointSet& points, const ResourceCaps& caps) {
    if (points.empty()) throw std::invalid_argument("max_hyperplane_hit: empty set");
    HyperplaneEnumerator e(points.domain().modulus(), points.domain().dim(), caps);
    const std::vector<FpVector> pts = points.vectors();
    std::uint64_t best = 0;
    while (auto h = e.next()) {
        std::uint64_t hit = 0;
        for (const FpVector& x : pts)
            if (h->contains(x)) ++hit;
        if (hit > best) best = hit;
    }
    return best;
}

}  // namespace reference

}  // namespace orbitlab
