#include <doctest.h>

#include <algorithm>

#include "orbitlab/group.hpp"

using namespace orbitlab;

namespace {

MatrixGroup closure1(PrimeModulus p, std::initializer_list<std::int64_t> scalars) {
    std::vector<FpMatrix> gens;
    for (std::int64_t s : scalars) gens.emplace_back(p, 1, std::vector<std::int64_t>{s});
    return MatrixGroup::closure(p, 1, gens);
}

}  // namespace

TEST_CASE("matrix codec roundtrips") {
    MatrixCodec codec(PrimeModulus(5), 2);
    FpMatrix m(PrimeModulus(5), 2, {1, 2, 3, 4});
    CHECK(codec.decode(codec.encode(m)) == m);
    for (std::uint64_t c = 0; c < 625; ++c) CHECK(codec.encode(codec.decode(c)) == c);
    CHECK_THROWS_AS(codec.decode(625), std::out_of_range);
    // p^(d^2) must fit in 64 bits: 10007^4 does, 10007^9 does not.
    CHECK_NOTHROW(MatrixCodec(PrimeModulus(10007), 2));
    CHECK_THROWS_AS(MatrixCodec(PrimeModulus(10007), 3), CapExceeded);
}

TEST_CASE("scalar closure: squares mod 7") {
    MatrixGroup h = closure1(PrimeModulus(7), {2});
    CHECK(h.order() == 3);
    std::vector<std::uint64_t> want{1, 2, 4};
    CHECK(h.codes() == want);
    CHECK(h.contains(FpMatrix(PrimeModulus(7), 1, {4})));
    CHECK_FALSE(h.contains(FpMatrix(PrimeModulus(7), 1, {3})));
}

TEST_CASE("trivial group and singular generator rejection") {
    MatrixGroup t = MatrixGroup::trivial(PrimeModulus(5), 2);
    CHECK(t.order() == 1);
    CHECK(t.contains(FpMatrix::identity(PrimeModulus(5), 2)));
    std::vector<FpMatrix> bad{FpMatrix(PrimeModulus(5), 2, {1, 2, 2, 4})};
    CHECK_THROWS_AS(MatrixGroup::closure(PrimeModulus(5), 2, bad), SingularMatrixError);
}

TEST_CASE("rotation generator of order 4") {
    PrimeModulus p(5);
    std::vector<FpMatrix> gens{FpMatrix(p, 2, {0, 4, 1, 0})};
    MatrixGroup h = MatrixGroup::closure(p, 2, gens);
    CHECK(h.order() == 4);
    // M^2 = -I.
    CHECK(h.contains(FpMatrix(p, 2, {4, 0, 0, 4})));
}

TEST_CASE("classical group orders from closure") {
    PrimeModulus p(3);
    std::vector<FpMatrix> sl{FpMatrix(p, 2, {1, 1, 0, 1}), FpMatrix(p, 2, {0, -1, 1, 0})};
    MatrixGroup slg = MatrixGroup::closure(p, 2, sl);
    CHECK(slg.order() == 24);  // |SL_2(F_3)|

    std::vector<FpMatrix> gl = sl;
    gl.emplace_back(p, 2, std::vector<std::int64_t>{2, 0, 0, 1});
    MatrixGroup glg = MatrixGroup::closure(p, 2, gl);
    CHECK(glg.order() == 48);  // |GL_2(F_3)| = (9-1)(9-3)
    CHECK(slg.subgroup_of(glg));
    CHECK_FALSE(glg.subgroup_of(slg));

    // Closure is closed: products and inverses stay inside.
    auto elems = glg.elements();
    for (std::size_t i = 0; i < elems.size(); i += 7)
        for (std::size_t j = 0; j < elems.size(); j += 11) {
            CHECK(glg.contains(elems[i].mul(elems[j])));
            CHECK(glg.contains(elems[i].inverse()));
        }
}

TEST_CASE("closure cap throws with partial progress") {
    PrimeModulus p(7);
    ResourceCaps tiny;
    tiny.max_closure = 10;
    std::vector<FpMatrix> sl{FpMatrix(p, 2, {1, 1, 0, 1}), FpMatrix(p, 2, {0, -1, 1, 0})};
    try {
        MatrixGroup::closure(p, 2, sl, tiny);
        FAIL("expected CapExceeded");
    } catch (const CapExceeded& e) {
        CHECK(e.partial() > 10);
    }
}

TEST_CASE("transposed orbit of the unipotent line") {
    PrimeModulus p(5);
    std::vector<FpMatrix> gens{FpMatrix(p, 2, {1, 1, 0, 1})};
    MatrixGroup h = MatrixGroup::closure(p, 2, gens);
    CHECK(h.order() == 5);
    OrbitSet i = orbit(h, FpVector(p, {1, 0}));
    CHECK(i.transposed);
    CHECK(i.points.size() == 5);
    for (int t = 0; t < 5; ++t) CHECK(i.points.contains(FpVector(p, {1, t})));
    CHECK_THROWS_AS(orbit(h, FpVector::zero(p, 2)), std::invalid_argument);
}

TEST_CASE("untransposed orbit of the rotation group") {
    PrimeModulus p(5);
    std::vector<FpMatrix> gens{FpMatrix(p, 2, {0, 4, 1, 0})};
    MatrixGroup h = MatrixGroup::closure(p, 2, gens);
    OrbitSet o = orbit(h, FpVector(p, {1, 0}), /*transposed=*/false);
    CHECK(o.points.size() == 4);
    CHECK(o.points.contains(FpVector(p, {1, 0})));
    CHECK(o.points.contains(FpVector(p, {0, 1})));
    CHECK(o.points.contains(FpVector(p, {4, 0})));
    CHECK(o.points.contains(FpVector(p, {0, 4})));
}

TEST_CASE("scalar orbit of the squares") {
    PrimeModulus p(7);
    MatrixGroup h = closure1(p, {2});
    OrbitSet o = orbit(h, FpVector(p, {3}));
    CHECK(o.points.codes() == std::vector<std::uint64_t>{3, 5, 6});
}

TEST_CASE("orbit-stabilizer identity across a whole group") {
    PrimeModulus p(3);
    std::vector<FpMatrix> gl{FpMatrix(p, 2, {1, 1, 0, 1}), FpMatrix(p, 2, {0, -1, 1, 0}),
                             FpMatrix(p, 2, {2, 0, 0, 1})};
    MatrixGroup h = MatrixGroup::closure(p, 2, gl);
    for (bool transposed : {false, true}) {
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (a == 0 && b == 0) continue;
                FpVector v(p, {a, b});
                OrbitSet o = orbit(h, v, transposed);
                MatrixGroup st = stabilizer(h, v, transposed);
                CHECK(o.points.size() * st.order() == h.order());
                // Stabilizer is an actual subgroup.
                CHECK(st.subgroup_of(h));
                auto se = st.elements();
                for (const FpMatrix& m : se) {
                    FpVector w = transposed ? m.apply_transposed(v) : m.apply(v);
                    CHECK(w == v);
                }
            }
    }
}

TEST_CASE("transposed group mirrors membership") {
    PrimeModulus p(5);
    std::vector<FpMatrix> gens{FpMatrix(p, 2, {1, 1, 0, 1})};
    MatrixGroup h = MatrixGroup::closure(p, 2, gens);
    MatrixGroup ht = h.transposed_group();
    CHECK(ht.order() == h.order());
    CHECK(ht.contains(FpMatrix(p, 2, {1, 0, 1, 1})));
    // orbit(h, v, transposed) is orbit(h^T, v, untransposed).
    FpVector v(p, {1, 0});
    CHECK(orbit(h, v, true).points == orbit(ht, v, false).points);
}

TEST_CASE("diagonal stabilizer example") {
    PrimeModulus p(5);
    std::vector<FpMatrix> gens{FpMatrix(p, 2, {2, 0, 0, 3})};  // diag(g, g^-1), g=2
    MatrixGroup h = MatrixGroup::closure(p, 2, gens);
    CHECK(h.order() == 4);
    MatrixGroup st = stabilizer(h, FpVector(p, {1, 0}));
    CHECK(st.order() == 1);
    CHECK_THROWS_AS(stabilizer(h, FpVector::zero(p, 2)), std::invalid_argument);
}
