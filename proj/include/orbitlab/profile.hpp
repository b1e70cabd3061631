#pragma once

#include <cstdint>

#include "orbitlab/group.hpp"
#include "orbitlab/pointset.hpp"
#include "orbitlab/subspace.hpp"

namespace orbitlab {

/// How concentrated a point set is on affine hyperplanes.
/// delta_eff = log_p |I|; beta_eff = 1 - log_{|I|}(max hit), with
/// beta_eff = 0 exactly when the whole set fits in one hyperplane
/// (covers |I| = 1, where the log base degenerates).
struct InstanceProfile {
    std::uint64_t orbit_size;
    double delta_eff;
    std::uint64_t max_hyperplane_hit;
    double beta_eff;
    AffineHyperplane witness;  // first hyperplane attaining the max, enumeration order
};

/// Exact hyperplane profile by histogramming normal . x per normal class;
/// parallel over classes. Requires a nonempty set.
InstanceProfile hyperplane_profile(const PointSet& points, const ResourceCaps& caps = {});
InstanceProfile hyperplane_profile(const OrbitSet& i, const ResourceCaps& caps = {});

/// The chain bounding a character stabilizer through the orbit:
/// |Stab_H(xi)| <= |Stab_{H^T}(v)| . |I cap P| with P = {x : xi.x = xi.v}
/// and I the transposed orbit of v.
struct StabChainReport {
    std::uint64_t stab_xi;        // |{M in H : M xi = xi}|
    std::uint64_t stab_v;         // |{M in H : M^T v = v}|
    std::uint64_t orbit_plane_hits;  // |I cap P|
    bool holds() const noexcept { return stab_xi <= stab_v * orbit_plane_hits; }
};

StabChainReport stab_chain_check(const MatrixGroup& h, const FpVector& v, const FpVector& xi,
                                 const ResourceCaps& caps = {});

namespace reference {

/// Brute force max_P |S cap P| over every (normal, offset) pair, counting
/// membership point by point. Oracle for the histogram kernel.
std::uint64_t max_hyperplane_hit(const PointSet& points, const ResourceCaps& caps = {});

}  // namespace reference

}  // namespace orbitlab
