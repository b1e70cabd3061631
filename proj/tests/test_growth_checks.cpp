#include <doctest.h>

#include <cmath>
#include <vector>

#include "orbitlab/growth_checks.hpp"
#include "orbitlab/util.hpp"

using namespace orbitlab;

namespace {

MatrixGroup scalar_group(PrimeModulus mod, std::int64_t gen) {
    std::vector<FpMatrix> gens = {FpMatrix(mod, 1, {gen})};
    return MatrixGroup::closure(mod, 1, gens);
}

/// Quadratic-residue fixture: H = <g^2> acting on F_p, I = H 1.
struct QrInstance {
    MatrixGroup h;
    OrbitSet orbit;
    SpectrumField field;
};

QrInstance qr_instance(std::int64_t p, std::int64_t square_gen) {
    PrimeModulus mod(p);
    MatrixGroup h = scalar_group(mod, square_gen);
    OrbitSet o = orbit(h, FpVector(mod, {1}));
    SpectrumField f = dft_full(o.points);
    return {h, std::move(o), std::move(f)};
}

AffineSet klein_semidirect(PrimeModulus mod, std::vector<std::int64_t> k0) {
    // K0 x F_p inside Aff_1: every linear part of k0 over every translation.
    std::vector<AffineElement> elems;
    for (std::int64_t m : k0)
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(mod.value()); ++t)
            elems.push_back(AffineElement(FpMatrix(mod, 1, {m}), FpVector(mod, {t})));
    return AffineSet::from_elements(AffineCodec(mod, 1), elems);
}

}  // namespace

TEST_CASE("A_alpha embedding of the residue instance") {
    QrInstance inst = qr_instance(7, 2);
    REQUIRE(inst.orbit.points.size() == 3);

    AffineSet wide = build_A_alpha(inst.h, spec_alpha(inst.field, 0.4));
    CHECK(wide.size() == 21);  // |H| = 3 times the full frequency space
    CHECK(wide.symmetric());
    CHECK(wide.contains_identity());

    AffineSet narrow = build_A_alpha(inst.h, spec_alpha(inst.field, 0.5));
    CHECK(narrow.size() == 3);  // Spec = {0}: the group with zero translations
    for (const AffineElement& a : narrow.elements()) CHECK(a.translation().is_zero());
}

TEST_CASE("A_alpha rejects non-symmetric or non-invariant spectra") {
    PrimeModulus p7(7);
    MatrixGroup h = scalar_group(p7, 2);
    PointDomain dom(p7, 1);

    Spectrum lopsided{0.4, PointSet::from_codes(dom, std::vector<std::uint64_t>{0, 1}),
                      PointSet(dom)};
    CHECK_THROWS_AS(build_A_alpha(h, lopsided), std::invalid_argument);

    Spectrum skewed{0.4, PointSet::from_codes(dom, std::vector<std::uint64_t>{0, 1, 6}),
                    PointSet(dom)};
    CHECK_THROWS_AS(build_A_alpha(h, skewed), std::invalid_argument);

    Spectrum zero_only{0.9, PointSet::from_codes(dom, std::vector<std::uint64_t>{0}),
                       PointSet(dom)};
    AffineSet tiny = build_A_alpha(h, zero_only);
    CHECK(tiny.size() == 3);
}

TEST_CASE("iteration schedule arithmetic at d=1, eps'=0.5") {
    QrInstance inst = qr_instance(11, 4);
    auto [sched, cert] = prop_p_iteration(inst.h, inst.orbit, 0.5);

    CHECK(sched.j_cap == 4);
    CHECK(sched.eps0 == doctest::Approx(0.03125).epsilon(1e-15));
    REQUIRE(sched.alphas.size() == 5);
    CHECK(sched.alphas[0] == doctest::Approx(std::pow(11.0, -0.03125)).epsilon(1e-12));
    for (int j = 1; j <= 4; ++j)
        CHECK(sched.alphas[j] ==
              doctest::Approx(0.5 * sched.alphas[j - 1] * sched.alphas[j - 1]).epsilon(1e-12));

    // Spec stays {0} on the first two rungs, so the pigeonhole fires at 0.
    CHECK(sched.chosen_j == 0);
    CHECK(sched.c == 1.0);
    CHECK(sched.phi == sched.alphas[0]);
    CHECK(cert.j == 0);
    CHECK(cert.f_count == 1);  // only (0, 0)
    CHECK(cert.h_order == 5);
    CHECK(cert.e_count == 25.0);
    CHECK(cert.full_check);
    CHECK(cert.checked_products == 25);
    CHECK(cert.containment_failures == 0);
    CHECK(cert.count_bound_ok);
    CHECK(cert.verdict == Verdict::pass);
}

TEST_CASE("iteration reaches a nondegenerate pigeonhole index at eps'=1") {
    QrInstance inst = qr_instance(11, 4);
    auto [sched, cert] = prop_p_iteration(inst.h, inst.orbit, 1.0);

    CHECK(sched.j_cap == 2);
    CHECK(sched.eps0 == doctest::Approx(0.25).epsilon(1e-15));
    // Spec jumps from {0} to everything between alpha_0 and alpha_1.
    CHECK(sched.chosen_j == 1);
    CHECK(sched.c == 2.0);
    CHECK(sched.phi == doctest::Approx(0.5 * std::pow(11.0, -0.5)).epsilon(1e-12));

    CHECK(cert.f_count == 121);
    CHECK(cert.e_count == doctest::Approx(121.0 * 25.0));
    CHECK(cert.pair_bound ==
          doctest::Approx(0.5 * sched.phi * sched.phi * 55.0 * 55.0).epsilon(1e-12));
    CHECK(cert.count_bound_ok);
    CHECK(cert.full_check);
    CHECK(cert.checked_products == 121 * 25);
    CHECK(cert.containment_failures == 0);
    CHECK(cert.verdict == Verdict::pass);

    for (const auto& [c1, c2] : cert.f_pairs) {
        CHECK(c1 < 11);
        CHECK(c2 < 11);
    }
}

TEST_CASE("iteration rejects a bad eps' and mismatched domains") {
    QrInstance inst = qr_instance(11, 4);
    CHECK_THROWS_AS(prop_p_iteration(inst.h, inst.orbit, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(prop_p_iteration(inst.h, inst.orbit, 1.5), std::invalid_argument);

    QrInstance other = qr_instance(7, 2);
    CHECK_THROWS_AS(prop_p_iteration(other.h, inst.orbit, 0.5), std::invalid_argument);
}

TEST_CASE("block observations on a semidirect subgroup hold with equality") {
    PrimeModulus p5(5);
    AffineSet b = klein_semidirect(p5, {1, 4});
    REQUIRE(b.is_closed_group());
    BlockObservationsReport rep = block_observations_check(b);
    CHECK(rep.size_a == 10);
    CHECK(rep.size_a2 == 10);
    CHECK(rep.l_size == 2);
    CHECK(rep.max_fiber == 5);
    CHECK(rep.min_fiber == 5);
    CHECK(rep.intersection_ok);
    CHECK(rep.square_ok);
    CHECK(rep.cube_applicable);
    CHECK(rep.cube_ok);
    CHECK(rep.verdict == Verdict::pass);
}

TEST_CASE("block observations on the residue A_alpha") {
    QrInstance inst = qr_instance(7, 2);
    AffineSet a = build_A_alpha(inst.h, spec_alpha(inst.field, 0.4));
    BlockObservationsReport rep = block_observations_check(a);
    CHECK(rep.l_size == 3);
    CHECK(rep.max_fiber == 7);
    CHECK(rep.size_a2 >= 21);
    CHECK(rep.verdict == Verdict::pass);
}

TEST_CASE("block observations skip the cube clause without symmetry") {
    PrimeModulus p5(5);
    std::vector<AffineElement> elems = {
        AffineElement(FpMatrix(p5, 1, {1}), FpVector(p5, {0})),
        AffineElement(FpMatrix(p5, 1, {1}), FpVector(p5, {1}))};
    AffineSet a = AffineSet::from_elements(AffineCodec(p5, 1), elems);
    BlockObservationsReport rep = block_observations_check(a);
    CHECK_FALSE(rep.cube_applicable);
    CHECK(rep.intersection_ok);
    CHECK(rep.square_ok);
    CHECK(rep.verdict == Verdict::pass);
}

TEST_CASE("block observations hold on seeded symmetric subsets of Aff_2(F_3)") {
    PrimeModulus p3(3);
    SeededRng rng(411);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<AffineElement> elems;
        elems.push_back(AffineElement::identity(p3, 2));
        while (elems.size() < 12) {
            std::vector<std::int64_t> entries(4);
            for (auto& e : entries) e = static_cast<std::int64_t>(rng.uniform_below(3));
            FpMatrix m(p3, 2, entries);
            if (!m.invertible()) continue;
            FpVector t(p3, {static_cast<std::int64_t>(rng.uniform_below(3)),
                            static_cast<std::int64_t>(rng.uniform_below(3))});
            elems.push_back(AffineElement(m, t));
        }
        AffineSet a = AffineSet::from_elements(AffineCodec(p3, 2), elems).symmetrized();
        BlockObservationsReport rep = block_observations_check(a);
        CHECK(rep.verdict == Verdict::pass);
    }
}

TEST_CASE("blocks lemma: subgroup against itself at K = 1") {
    PrimeModulus p5(5);
    AffineSet b = klein_semidirect(p5, {1, 2, 3, 4});
    REQUIRE(b.is_closed_group());
    BlocksLemmaReport rep = blocks_lemma_check(b, b, 1.0);
    CHECK(rep.covering_k == 1);
    CHECK(rep.hyp_approx);
    CHECK(rep.hyp_size);
    CHECK(rep.hyp_intersection);
    CHECK(rep.l_a == 4);
    CHECK(rep.l_b == 4);
    CHECK(rep.l_ab == 4);
    CHECK(rep.min_ra == 5);
    CHECK(rep.max_rb == 5);
    CHECK(rep.max_rab == 5);
    CHECK(rep.ineq_linear_count);
    CHECK(rep.ineq_linear_lower);
    CHECK(rep.ineq_fiber_upper);
    CHECK(rep.ineq_fiber_lower);
    CHECK(rep.verdict == Verdict::pass);
}

TEST_CASE("blocks lemma: translations inside the residue A_alpha") {
    QrInstance inst = qr_instance(7, 2);
    AffineSet a = build_A_alpha(inst.h, spec_alpha(inst.field, 0.4));
    AffineSet b = klein_semidirect(PrimeModulus(7), {1});
    const double k = measured_k(a, b);
    CHECK(k == doctest::Approx(3.0));
    BlocksLemmaReport rep = blocks_lemma_check(a, b, k);
    CHECK(rep.hyp_approx);
    CHECK(rep.hyp_size);
    CHECK(rep.hyp_intersection);
    CHECK(rep.l_a == 3);
    CHECK(rep.l_b == 1);
    CHECK(rep.l_ab == 1);
    CHECK(rep.max_rab == 7);
    CHECK(rep.verdict == Verdict::pass);
}

TEST_CASE("blocks lemma reports unmet hypotheses instead of failing") {
    PrimeModulus p5(5);
    AffineSet trans = klein_semidirect(p5, {1});
    // A is a coset of the translations: disjoint from B = translations.
    std::vector<AffineElement> coset;
    for (std::int64_t t = 0; t < 5; ++t)
        coset.push_back(AffineElement(FpMatrix(p5, 1, {2}), FpVector(p5, {t})));
    AffineSet a = AffineSet::from_elements(AffineCodec(p5, 1), coset);

    BlocksLemmaReport rep = blocks_lemma_check(a, trans, 2.0);
    CHECK(rep.hyp_approx);
    CHECK(rep.hyp_size);
    CHECK_FALSE(rep.hyp_intersection);
    CHECK(rep.verdict == Verdict::hypotheses_unmet);

    CHECK(measured_k(a, trans) == std::numeric_limits<double>::infinity());
}

TEST_CASE("stab lemma chain on the residue subgroup, identity shift") {
    QrInstance inst = qr_instance(7, 2);
    AffineSet a = build_A_alpha(inst.h, spec_alpha(inst.field, 0.4));
    AffineElement id = AffineElement::identity(PrimeModulus(7), 1);
    FpVector xi(PrimeModulus(7), {1});

    StabLemmaReport rep = stab_lemma_check(a, a, id, xi, 1.0);
    CHECK(rep.h_order == 3);
    CHECK(rep.stab_h_xi == 1);
    CHECK(rep.stab_fraction == doctest::Approx(1.0 / 3.0));
    CHECK(rep.s_count == 3);
    CHECK(rep.lhs_shifted == 3);
    CHECK(rep.max_coset_stab == 1);
    CHECK(rep.l_b == 3);
    CHECK(rep.l_b2 == 3);
    CHECK(rep.l_b_stab == 1);
    CHECK(rep.step_coset_cap);
    CHECK(rep.step_coset_bound);
    CHECK(rep.step_lower);
    CHECK(rep.step_product);
    CHECK(rep.step_power);
    CHECK(rep.final_bound);  // equality: 1 = (1/3) K^7 3 at K = 1
    CHECK(rep.verdict == Verdict::pass);
}

TEST_CASE("stab lemma chain under a nontrivial shift") {
    QrInstance inst = qr_instance(7, 2);
    AffineSet a = build_A_alpha(inst.h, spec_alpha(inst.field, 0.4));
    AffineElement g(FpMatrix(PrimeModulus(7), 1, {2}), FpVector(PrimeModulus(7), {3}));
    FpVector xi(PrimeModulus(7), {1});

    StabLemmaReport rep = stab_lemma_check(a, a, g, xi, 1.0);
    CHECK(rep.lhs_shifted == 3);  // 2^-1 H = H again
    CHECK(rep.s_count == 3);
    CHECK(rep.verdict == Verdict::pass);
}

TEST_CASE("stab lemma on the translation block inside A_alpha") {
    QrInstance inst = qr_instance(7, 2);
    AffineSet a = build_A_alpha(inst.h, spec_alpha(inst.field, 0.4));
    AffineSet b = klein_semidirect(PrimeModulus(7), {1});
    AffineElement id = AffineElement::identity(PrimeModulus(7), 1);
    FpVector xi(PrimeModulus(7), {1});

    StabLemmaReport rep = stab_lemma_check(a, b, id, xi, measured_k(a, b));
    CHECK(rep.s_count == 1);
    CHECK(rep.lhs_shifted == 1);
    CHECK(rep.l_b_stab == 1);
    CHECK(rep.l_b2 == 1);
    CHECK(rep.verdict == Verdict::pass);

    CHECK_THROWS_AS(stab_lemma_check(a, b, id, FpVector(PrimeModulus(7), {0}), 1.0),
                    std::invalid_argument);
}

TEST_CASE("translate union on a semidirect subgroup has ratio 1") {
    PrimeModulus p5(5);
    AffineSet b = klein_semidirect(p5, {1, 4});
    Subspace v = Subspace::full(p5, 1);
    TranslateUnionReport rep = translate_union_check(b, 1, FpMatrix(p5, 1, {4}), v);
    CHECK(rep.base_fiber_size == 5);
    CHECK(rep.t_size == 5);
    CHECK(rep.coset_count == 1);
    CHECK(rep.fiber_ratio == doctest::Approx(1.0));
    CHECK(rep.contained);
    CHECK(rep.verdict == Verdict::pass);
}

TEST_CASE("translate union saturates a synthetic two-block set") {
    PrimeModulus p3(3);
    FpMatrix m(p3, 2, {2, 0, 0, 1});
    std::vector<AffineElement> elems = {
        AffineElement::identity(p3, 2),
        AffineElement::pure_translation(FpVector(p3, {1, 0})),
        AffineElement::pure_translation(FpVector(p3, {2, 0})),
        AffineElement(m, FpVector(p3, {0, 1})),
        AffineElement(m, FpVector(p3, {0, 2})),
    };
    AffineSet b = AffineSet::from_elements(AffineCodec(p3, 2), elems);
    REQUIRE(b.symmetric());
    REQUIRE(b.contains_identity());

    Subspace v = Subspace::span(p3, 2, std::vector<FpVector>{FpVector(p3, {1, 0})});
    for (int k = 1; k <= 2; ++k) {
        TranslateUnionReport rep = translate_union_check(b, k, m, v);
        CHECK(rep.contained);
        CHECK(rep.verdict == Verdict::pass);
        CHECK(rep.t_size == rep.coset_count * rep.v_size);
        CHECK(rep.fiber_ratio <= 1.0);
        CHECK(rep.base_fiber.intersected(rep.t) == rep.base_fiber);
    }
}

TEST_CASE("translate union guards its preconditions") {
    PrimeModulus p3(3);
    FpMatrix m(p3, 2, {2, 0, 0, 1});
    std::vector<AffineElement> elems = {
        AffineElement::identity(p3, 2),
        AffineElement::pure_translation(FpVector(p3, {1, 0})),
        AffineElement::pure_translation(FpVector(p3, {2, 0})),
        AffineElement(m, FpVector(p3, {0, 1})),
        AffineElement(m, FpVector(p3, {0, 2})),
    };
    AffineSet b = AffineSet::from_elements(AffineCodec(p3, 2), elems);

    Subspace e2 = Subspace::span(p3, 2, std::vector<FpVector>{FpVector(p3, {0, 1})});
    CHECK_THROWS_AS(translate_union_check(b, 1, m, e2), std::invalid_argument);

    Subspace e1 = Subspace::span(p3, 2, std::vector<FpVector>{FpVector(p3, {1, 0})});
    CHECK_THROWS_AS(translate_union_check(b, 1, FpMatrix(p3, 2, {1, 1, 0, 1}), e1),
                    std::invalid_argument);
    CHECK_THROWS_AS(translate_union_check(b, 0, m, e1), std::invalid_argument);
    CHECK_THROWS_AS(translate_union_check(b, 1, m, Subspace::zero(p3, 2)),
                    std::invalid_argument);
}
