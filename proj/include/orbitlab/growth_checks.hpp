#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "orbitlab/affine_set.hpp"
#include "orbitlab/caps.hpp"
#include "orbitlab/group.hpp"
#include "orbitlab/spectrum.hpp"
#include "orbitlab/subspace.hpp"
#include "orbitlab/verdict.hpp"

namespace orbitlab {

/// A_alpha = {(M, xi) : M in H, xi in Spec}. Demands an H-invariant,
/// symmetric spectrum; those two properties make A_alpha = A_alpha^-1,
/// which is asserted on the result. A failed precondition usually means
/// the spectrum was cut inside its float margin band.
AffineSet build_A_alpha(const MatrixGroup& h, const Spectrum& spec,
                        const ResourceCaps& caps = {});

/// The alpha_j = alpha_{j-1}^2 / 2 ladder seeded at alpha_0 = p^{-eps0},
/// eps0 = eps' / 2^J, J = ceil(2d/eps'), and the pigeonhole index:
/// the first j with |Spec_{alpha_{j+1}}| <= p^{d/J} |Spec_{alpha_j}|.
struct IterationSchedule {
    double eps_prime;
    int j_cap;                  // J
    double eps0;
    std::vector<double> alphas; // alpha_0 .. alpha_J
    int chosen_j;
    double c;                   // 2^chosen_j
    double phi;                 // alpha_{chosen_j}
};

/// The frequency-pair relation at the pigeonhole index: F_j lists pairs
/// (xi1, xi2) from Spec_{alpha_j} with xi1 - xi2 in Spec_{alpha_{j+1}};
/// E_j is the union of the |H|^2-sized blocks over F_j and is only ever
/// walked through that parameterization, never materialized.
struct PairCertificate {
    int j;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> f_pairs;
    std::uint64_t f_count;
    std::uint64_t h_order;
    double e_count;                  // |F_j| |H|^2
    double pair_bound;               // (alpha_j^2 / 2) |A_{alpha_j}|^2
    bool count_bound_ok;             // e_count >= pair_bound
    std::uint64_t checked_products;  // product memberships actually tested
    bool full_check;                 // every E_j element walked, not sampled
    std::uint64_t containment_failures;
    std::uint64_t margin_incidents;  // ladder thresholds inside the float band
    Verdict verdict;
};

std::pair<IterationSchedule, PairCertificate> prop_p_iteration(const MatrixGroup& h,
                                                               const OrbitSet& orbit,
                                                               double eps_prime,
                                                               const ResourceCaps& caps = {});

/// The two L/R counting observations plus the intersection form with
/// A' = A. The cube clause needs A = A^-1 and is skipped otherwise.
struct BlockObservationsReport {
    std::uint64_t size_a, size_a2;
    std::uint64_t l_size;  // |L(A)|
    std::uint64_t max_fiber, min_fiber;
    bool intersection_ok;  // |A| <= |L(A)| max_fiber
    bool square_ok;        // |A^2| >= |L(A)| max_fiber
    bool cube_applicable;  // A = A^-1
    bool cube_ok;          // every M in L(A): |R_M(A^3)| >= max_fiber
    Verdict verdict;
};

BlockObservationsReport block_observations_check(const AffineSet& a,
                                                 const ResourceCaps& caps = {});

/// The smallest K making the (A, B) hypotheses hold: B's greedy covering
/// bound, |B|/|A| and |A|/|A cap gB|. Infinite (rejected downstream) when
/// A cap gB is empty; g defaults to the identity.
double measured_k(const AffineSet& a, const AffineSet& b, const ResourceCaps& caps = {});
double measured_k(const AffineSet& a, const AffineSet& b, const AffineElement& g,
                  const ResourceCaps& caps = {});

/// The four block-decomposition inequalities for a K-approximate B against
/// A. Hypotheses are verified first and failure reports hypotheses_unmet;
/// with hypotheses met the inequalities are theorems, so a fail is a bug.
struct BlocksLemmaReport {
    double k;
    std::uint64_t covering_k;
    bool hyp_approx;        // covering_k <= K
    bool hyp_size;          // |B| <= K |A|
    bool hyp_intersection;  // |A cap B| >= |A| / K
    std::uint64_t l_a, l_b, l_ab;  // |L(A)|, |L(B)|, |L(A) cap L(B)|
    std::uint64_t min_ra, max_ra;  // fiber extremes of A
    std::uint64_t max_rb;          // largest fiber of B
    std::uint64_t max_rab;         // largest fiber of A cap B
    bool ineq_linear_count;        // |L(B)| <= K^3 |L(A) cap L(B)|
    bool ineq_linear_lower;        // |L(A) cap L(B)| >= K^-1 (min_ra/max_ra) |L(A)|
    bool ineq_fiber_upper;         // max_rb <= K^3 max_rab
    bool ineq_fiber_lower;         // max_rab >= K^-1 min_ra
    Verdict verdict;
};

BlocksLemmaReport blocks_lemma_check(const AffineSet& a, const AffineSet& b, double k,
                                     const ResourceCaps& caps = {});

/// The stabilizer-coset chain for L(B) against Stab(xi), step by step in
/// exact form, with the orbit-size power p^{delta beta} replaced by the
/// measured fraction |Stab_H(xi)| / |H| throughout.
struct StabLemmaReport {
    double k;
    std::uint64_t h_order;         // |H| = |L(A_alpha)|
    std::uint64_t stab_h_xi;       // |Stab_H(xi)|
    double stab_fraction;          // stab_h_xi / h_order
    std::uint64_t s_count;         // distinct Stab(xi)-cosets meeting L(B)
    std::uint64_t lhs_shifted;     // |L(g)^-1 H cap L(B)|
    std::uint64_t max_coset_stab;  // max over those cosets of |H cap L(g) M Stab(xi)|
    std::uint64_t l_b, l_b2;       // |L(B)|, |L(B^2)|
    std::uint64_t l_b_stab;        // |L(B) cap Stab(xi)|
    bool hyp_approx, hyp_size, hyp_intersection;
    bool step_coset_cap;    // max_coset_stab <= stab_h_xi
    bool step_coset_bound;  // lhs_shifted <= max_coset_stab * s_count
    bool step_lower;        // lhs_shifted >= |H| / K
    bool step_product;      // l_b2 >= s_count * l_b_stab
    bool step_power;        // l_b2 <= K^6 l_b
    bool final_bound;       // l_b_stab <= stab_fraction * K^7 * l_b
    Verdict verdict;
};

StabLemmaReport stab_lemma_check(const AffineSet& a_alpha, const AffineSet& b,
                                 const AffineElement& g, const FpVector& xi, double k,
                                 const ResourceCaps& caps = {});

/// T_M = R_M(B^{3k}) + V: saturating one fiber by a subspace of certified
/// translations. T_M decomposes exactly into cosets of V and must land
/// inside the 4k-th power's fiber.
struct TranslateUnionReport {
    int k;
    std::uint64_t base_fiber_size;  // |R_M(B^{3k})|
    std::uint64_t v_size;
    std::uint64_t t_size;
    std::uint64_t coset_count;  // |F|
    double fiber_ratio;         // base_fiber_size / t_size
    bool contained;             // T subset of R_M(B^{4k})
    PointSet base_fiber;
    PointSet t;
    std::vector<std::uint64_t> coset_reps;
    Verdict verdict;
};

TranslateUnionReport translate_union_check(const AffineSet& b, int k, const FpMatrix& m,
                                           const Subspace& v, const ResourceCaps& caps = {});

}  // namespace orbitlab
