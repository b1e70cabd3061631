#include <doctest.h>

#include <algorithm>

#include "orbitlab/pointset.hpp"

using namespace orbitlab;

TEST_CASE("point codec roundtrips and orders lexicographically from the tail") {
    PointDomain dom(PrimeModulus(5), 2);
    CHECK(dom.size() == 25);
    for (std::uint64_t c = 0; c < 25; ++c) CHECK(dom.encode(dom.decode(c)) == c);
    CHECK(dom.encode(FpVector(PrimeModulus(5), {3, 4})) == 3 + 4 * 5);
    CHECK_THROWS_AS(dom.decode(25), std::out_of_range);
    CHECK_THROWS_AS(dom.encode(FpVector(PrimeModulus(7), {1, 2})), ModulusMismatchError);

    std::uint32_t digits[2];
    dom.decode_digits(23, digits);
    CHECK(digits[0] == 3);
    CHECK(digits[1] == 4);
    CHECK(dom.encode_digits(digits) == 23);
}

TEST_CASE("domain construction respects the point cap") {
    ResourceCaps tiny;
    tiny.max_points = 100;
    CHECK_THROWS_AS(PointDomain(PrimeModulus(11), 2, tiny), CapExceeded);
    CHECK(PointDomain(PrimeModulus(7), 2, tiny).size() == 49);
}

TEST_CASE("insert, contains, and canonical code order") {
    PointDomain dom(PrimeModulus(7), 1);
    PointSet s(dom);
    CHECK(s.empty());
    CHECK(s.insert_code(4));
    CHECK_FALSE(s.insert_code(4));
    CHECK(s.insert_code(2));
    CHECK(s.insert_code(1));
    CHECK(s.size() == 3);
    CHECK(s.contains_code(2));
    CHECK_FALSE(s.contains_code(3));
    CHECK(s.codes() == std::vector<std::uint64_t>{1, 2, 4});
}

TEST_CASE("set algebra") {
    PointDomain dom(PrimeModulus(5), 2);
    PrimeModulus p = dom.modulus();
    std::vector<FpVector> av{FpVector(p, {1, 0}), FpVector(p, {2, 3})};
    std::vector<FpVector> bv{FpVector(p, {2, 3}), FpVector(p, {0, 1})};
    PointSet a = PointSet::from_vectors(dom, av);
    PointSet b = PointSet::from_vectors(dom, bv);

    CHECK(a.unified(b).size() == 3);
    PointSet i = a.intersected(b);
    CHECK(i.size() == 1);
    CHECK(i.contains(FpVector(p, {2, 3})));

    PointSet n = a.negated();
    CHECK(n.contains(FpVector(p, {4, 0})));
    CHECK(n.contains(FpVector(p, {3, 2})));
    CHECK(n.size() == 2);

    PointSet t = a.translated(FpVector(p, {0, 2}));
    CHECK(t.contains(FpVector(p, {1, 2})));
    CHECK(t.contains(FpVector(p, {2, 0})));

    FpMatrix m(p, 2, {0, 1, 1, 0});
    PointSet im = a.linear_image(m);
    CHECK(im.contains(FpVector(p, {0, 1})));
    CHECK(im.contains(FpVector(p, {3, 2})));

    PointDomain other(PrimeModulus(7), 2);
    CHECK_THROWS_AS(a.unified(PointSet(other)), std::invalid_argument);
}

TEST_CASE("singular image collapses and size tracks it") {
    PointDomain dom(PrimeModulus(3), 2);
    PrimeModulus p = dom.modulus();
    PointSet s(dom);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) s.insert(FpVector(p, {x, y}));
    FpMatrix proj(p, 2, {1, 0, 0, 0});
    PointSet im = s.linear_image(proj);
    CHECK(im.size() == 3);
}

TEST_CASE("coset histogram counts fibers") {
    PrimeModulus p(3);
    PointDomain dom(p, 2);
    std::vector<FpVector> pts{FpVector(p, {0, 0}), FpVector(p, {1, 1}), FpVector(p, {2, 2}),
                              FpVector(p, {1, 0})};
    PointSet s = PointSet::from_vectors(dom, pts);
    std::vector<FpVector> g{FpVector(p, {1, 1})};
    Subspace v = Subspace::span(p, 2, g);
    auto hist = coset_histogram(s, v);
    REQUIRE(hist.size() == 2);
    CHECK(hist[0] == std::pair<std::uint64_t, std::uint64_t>{dom.encode(FpVector(p, {0, 0})), 3});
    CHECK(hist[1] == std::pair<std::uint64_t, std::uint64_t>{dom.encode(FpVector(p, {0, 2})), 1});
}
