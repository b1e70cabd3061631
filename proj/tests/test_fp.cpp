#include <doctest.h>

#include <sstream>

#include "orbitlab/caps.hpp"
#include "orbitlab/fp.hpp"

using namespace orbitlab;

TEST_CASE("primality check matches small primes") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(is_prime_u64(101));
    CHECK(is_prime_u64(10007));
    CHECK(is_prime_u64(2147483647ULL));  // 2^31 - 1
    CHECK_FALSE(is_prime_u64(1));
    CHECK_FALSE(is_prime_u64(91));       // 7 * 13
    CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2,3,5,7
}

TEST_CASE("modulus rejects composites and out-of-range values") {
    CHECK_THROWS_AS(PrimeModulus(4), std::invalid_argument);
    CHECK_THROWS_AS(PrimeModulus(2), std::invalid_argument);
    CHECK_THROWS_AS(PrimeModulus(1), std::invalid_argument);
    CHECK_THROWS_AS(PrimeModulus(2147483659ULL), std::invalid_argument);  // prime, >= 2^31
    CHECK(PrimeModulus(3).value() == 3);
    CHECK(PrimeModulus(10007).value() == 10007);
}

TEST_CASE("scalar arithmetic is exact") {
    PrimeModulus p(7);
    CHECK(p.reduce(-1) == 6);
    CHECK(p.reduce(-13) == 1);
    CHECK(p.add(5, 4) == 2);
    CHECK(p.sub(2, 5) == 4);
    CHECK(p.neg(0) == 0);
    CHECK(p.neg(3) == 4);
    CHECK(p.mul(4, 5) == 6);
    CHECK(p.pow(3, 0) == 1);
    CHECK(p.pow(3, 6) == 1);  // Fermat
    CHECK(p.pow(0, 0) == 1);
    for (std::uint32_t a = 1; a < 7; ++a) CHECK(p.mul(a, p.inv(a)) == 1);
    CHECK_THROWS(p.inv(0));

    PrimeModulus big(2147483647ULL);
    std::uint32_t a = 2147483646u;
    CHECK(big.mul(a, a) == 1);  // (-1)^2
}

TEST_CASE("vector operations") {
    PrimeModulus p(5);
    FpVector v(p, {1, -1});
    CHECK(v.dim() == 2);
    CHECK(v[0] == 1);
    CHECK(v[1] == 4);
    CHECK_FALSE(v.is_zero());
    CHECK(FpVector::zero(p, 3).is_zero());

    FpVector w(p, {2, 3});
    CHECK(v.add(w) == FpVector(p, {3, 2}));
    CHECK(v.sub(w) == FpVector(p, {4, 1}));
    CHECK(v.negated() == FpVector(p, {4, 1}));
    CHECK(v.scaled(3) == FpVector(p, {3, 2}));
    CHECK(v.dot(w) == p.reduce(2 - 3));

    CHECK_THROWS_AS(v.add(FpVector(p, {1, 2, 3})), std::invalid_argument);
    CHECK_THROWS_AS(v.add(FpVector(PrimeModulus(7), {1, 2})), ModulusMismatchError);

    std::ostringstream os;
    os << v;
    CHECK(os.str() == "(1,4)");
}

TEST_CASE("matrix product, transpose, both actions") {
    PrimeModulus p(5);
    FpMatrix m(p, 2, {1, 1, 0, 1});
    FpVector v(p, {1, 0});
    CHECK(m.apply(v) == FpVector(p, {1, 0}));
    CHECK(m.apply_transposed(v) == FpVector(p, {1, 1}));
    CHECK(m.transposed() == FpMatrix(p, 2, {1, 0, 1, 1}));
    CHECK(m.apply_transposed(v) == m.transposed().apply(v));

    FpMatrix a(p, 2, {1, 2, 3, 4});
    FpMatrix b(p, 2, {0, 1, 1, 0});
    CHECK(a.mul(b) == FpMatrix(p, 2, {2, 1, 4, 3}));
    CHECK(a.add(b) == FpMatrix(p, 2, {1, 3, 4, 4}));
    CHECK(a.sub(b) == FpMatrix(p, 2, {1, 1, 2, 4}));
    CHECK(FpMatrix::identity(p, 2).is_identity());
    CHECK_FALSE(a.is_identity());
}

TEST_CASE("matrix inverse and singularity detection") {
    PrimeModulus p(5);
    FpMatrix m(p, 2, {2, 0, 0, 3});
    CHECK(m.invertible());
    CHECK(m.inverse() == FpMatrix(p, 2, {3, 0, 0, 2}));
    CHECK(m.mul(m.inverse()).is_identity());

    FpMatrix s(p, 2, {1, 2, 2, 4});  // rank 1
    CHECK_FALSE(s.invertible());
    CHECK_THROWS_AS(s.inverse(), SingularMatrixError);

    FpMatrix g(p, 3, {1, 2, 0, 0, 1, 3, 4, 0, 2});
    CHECK(g.mul(g.inverse()).is_identity());
    CHECK(g.inverse().mul(g).is_identity());
}

TEST_CASE("inverse agrees with exhaustive 2x2 invertibility count") {
    // |GL_2(F_3)| = (9-1)(9-3) = 48.
    PrimeModulus p(3);
    int invertible = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    FpMatrix m(p, 2, {a, b, c, d});
                    if (m.invertible()) {
                        ++invertible;
                        CHECK(m.mul(m.inverse()).is_identity());
                    } else {
                        CHECK_THROWS_AS(m.inverse(), SingularMatrixError);
                    }
                }
    CHECK(invertible == 48);
}

TEST_CASE("resource caps read environment overrides") {
    ResourceCaps base;
    CHECK(base.max_points == (std::uint64_t{1} << 26));
    CHECK(base.max_closure == 2'000'000);
}
