#include <doctest.h>

#include <algorithm>
#include <set>

#include "orbitlab/subspace.hpp"

using namespace orbitlab;

TEST_CASE("span reduces to canonical form") {
    PrimeModulus p(3);
    std::vector<FpVector> gens{FpVector(p, {1, 1}), FpVector(p, {2, 2})};
    Subspace s = Subspace::span(p, 2, gens);
    CHECK(s.dim() == 1);
    CHECK(s.basis()[0] == FpVector(p, {1, 1}));
    CHECK(s.pivots() == std::vector<int>{0});
    CHECK(s.contains(FpVector(p, {2, 2})));
    CHECK_FALSE(s.contains(FpVector(p, {1, 2})));

    // Same space from different generators compares equal.
    std::vector<FpVector> gens2{FpVector(p, {2, 2})};
    CHECK(s == Subspace::span(p, 2, gens2));
}

TEST_CASE("zero and full spaces") {
    PrimeModulus p(5);
    Subspace z = Subspace::zero(p, 2);
    CHECK(z.dim() == 0);
    CHECK(z.contains(FpVector::zero(p, 2)));
    CHECK_FALSE(z.contains(FpVector(p, {1, 0})));

    Subspace f = Subspace::full(p, 2);
    CHECK(f.dim() == 2);
    CHECK(f.contains(FpVector(p, {3, 4})));
    CHECK(z.perp() == f);
    CHECK(f.perp() == z);
}

TEST_CASE("perp of a line in F_3^2") {
    PrimeModulus p(3);
    std::vector<FpVector> g{FpVector(p, {1, 1})};
    Subspace s = Subspace::span(p, 2, g);
    Subspace t = s.perp();
    CHECK(t.dim() == 1);
    CHECK(t.contains(FpVector(p, {1, 2})));
    // Every pairing vanishes.
    for (const FpVector& a : s.points())
        for (const FpVector& b : t.points()) CHECK(a.dot(b) == 0);
}

TEST_CASE("perp is an involution and dims are complementary") {
    for (std::uint64_t q : {3ULL, 5ULL, 7ULL}) {
        PrimeModulus p(q);
        for (int d = 1; d <= 3; ++d) {
            for (const Subspace& s : enumerate_subspaces(p, d, 0, d)) {
                Subspace t = s.perp();
                CHECK(s.dim() + t.dim() == d);
                CHECK(t.perp() == s);
            }
        }
    }
}

TEST_CASE("coset representatives hit every coset exactly once") {
    PrimeModulus p(5);
    std::vector<FpVector> g{FpVector(p, {0, 1})};
    Subspace s = Subspace::span(p, 2, g);
    std::vector<FpVector> reps = s.coset_reps();
    REQUIRE(reps.size() == 5);
    // Supported off the pivot coordinate: reps are (t, 0).
    for (const FpVector& r : reps) CHECK(r[1] == 0);
    std::set<std::vector<std::uint32_t>> reduced;
    for (const FpVector& r : reps) reduced.insert(s.reduce_mod(r).coords());
    CHECK(reduced.size() == 5);
}

TEST_CASE("reduce_mod is constant on cosets and separates them") {
    PrimeModulus p(3);
    std::vector<FpVector> g{FpVector(p, {1, 1, 0}), FpVector(p, {0, 0, 1})};
    Subspace s = Subspace::span(p, 3, g);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                FpVector x(p, {a, b, c});
                FpVector rx = s.reduce_mod(x);
                CHECK(s.contains(x.sub(rx)));
                for (const FpVector& w : s.points())
                    CHECK(s.reduce_mod(x.add(w)) == rx);
            }
}

TEST_CASE("points enumerates the whole subspace") {
    PrimeModulus p(3);
    std::vector<FpVector> g{FpVector(p, {1, 0, 2}), FpVector(p, {0, 1, 1})};
    Subspace s = Subspace::span(p, 3, g);
    std::vector<FpVector> pts = s.points();
    REQUIRE(pts.size() == 9);
    std::set<std::vector<std::uint32_t>> seen;
    for (const FpVector& x : pts) {
        CHECK(s.contains(x));
        seen.insert(x.coords());
    }
    CHECK(seen.size() == 9);
}

TEST_CASE("subspace counts match Gaussian binomials") {
    // Lines in F_p^2: p+1. All subspaces of F_p^2: 1 + (p+1) + 1.
    PrimeModulus p(5);
    CHECK(enumerate_subspaces(p, 2, 1, 1).size() == 6);
    CHECK(enumerate_subspaces(p, 2, 0, 2).size() == 8);
    // Lines and planes in F_3^3: both (27-1)/(3-1) = 13.
    PrimeModulus q(3);
    CHECK(enumerate_subspaces(q, 3, 1, 1).size() == 13);
    CHECK(enumerate_subspaces(q, 3, 2, 2).size() == 13);
    // Enumerated spaces are pairwise distinct.
    auto all = enumerate_subspaces(q, 3, 0, 3);
    CHECK(all.size() == 28);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) CHECK(all[i] != all[j]);
}

TEST_CASE("hyperplane normalization picks the scalar-class representative") {
    PrimeModulus p(5);
    AffineHyperplane h = normalize_hyperplane(FpVector(p, {0, 3}), 4);
    CHECK(h.normal == FpVector(p, {0, 1}));
    CHECK(h.offset == 3);  // 4 * inv(3) = 4 * 2 = 8 = 3
    CHECK_THROWS_AS(normalize_hyperplane(FpVector::zero(p, 2), 1), std::invalid_argument);

    // All scalings of (2,4)x=1 normalize identically.
    AffineHyperplane base = normalize_hyperplane(FpVector(p, {2, 4}), 1);
    for (std::uint32_t s = 1; s < 5; ++s)
        CHECK(normalize_hyperplane(FpVector(p, {2, 4}).scaled(s), p.mul(s, 1)) == base);
}

TEST_CASE("hyperplane enumeration counts and covers") {
    // d=1: p hyperplanes (points). d=2: p(p+1). 3 / 12 / 30 for the cases below.
    {
        HyperplaneEnumerator e(PrimeModulus(3), 1);
        CHECK(e.total_count() == 3);
    }
    {
        HyperplaneEnumerator e(PrimeModulus(3), 2);
        CHECK(e.total_count() == 12);
    }
    {
        HyperplaneEnumerator e(PrimeModulus(5), 2);
        CHECK(e.total_count() == 30);
        std::set<std::pair<std::vector<std::uint32_t>, std::uint32_t>> seen;
        std::uint64_t n = 0;
        int point_hits = 0;
        FpVector probe(PrimeModulus(5), {2, 3});
        while (auto h = e.next()) {
            ++n;
            seen.insert({h->normal.coords(), h->offset});
            CHECK(normalize_hyperplane(h->normal, h->offset) == *h);
            if (h->contains(probe)) ++point_hits;
        }
        CHECK(n == 30);
        CHECK(seen.size() == 30);
        // Every point lies on one hyperplane per normal class.
        CHECK(point_hits == 6);
    }
}
