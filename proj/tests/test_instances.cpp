#include <doctest.h>

#include <cmath>

#include "orbitlab/instances.hpp"

using namespace orbitlab;

TEST_CASE("family names round trip") {
    for (Family f : {Family::cyclic_random, Family::diagonal_torus, Family::quadratic_residue,
                     Family::unipotent_counterexample, Family::explicit_generators})
        CHECK(family_from_name(family_name(f)) == f);
    CHECK_THROWS_AS(family_from_name("qr"), std::invalid_argument);
}

TEST_CASE("smallest primitive roots") {
    CHECK(primitive_root(PrimeModulus(3)) == 2);
    CHECK(primitive_root(PrimeModulus(5)) == 2);
    CHECK(primitive_root(PrimeModulus(7)) == 3);
    CHECK(primitive_root(PrimeModulus(11)) == 2);
    CHECK(primitive_root(PrimeModulus(23)) == 5);
    CHECK(primitive_root(PrimeModulus(41)) == 6);
}

TEST_CASE("quadratic-residue instance at p=7") {
    InstanceConfig cfg;
    cfg.p = 7;
    Instance inst = gen_instance(cfg);
    CHECK(inst.group.order() == 3);
    CHECK(inst.group.contains(FpMatrix(PrimeModulus(7), 1, {2})));
    CHECK(inst.group.contains(FpMatrix(PrimeModulus(7), 1, {4})));
    CHECK(inst.orbit.points.size() == 3);
    CHECK(inst.orbit.points.contains_code(1));
    CHECK(inst.orbit.points.contains_code(2));
    CHECK(inst.orbit.points.contains_code(4));
    CHECK(inst.profile.beta_eff == doctest::Approx(1.0));
    CHECK(inst.profile.delta_eff == doctest::Approx(std::log(3.0) / std::log(7.0)));
}

TEST_CASE("unipotent counterexample orbit lies in one hyperplane") {
    InstanceConfig cfg;
    cfg.p = 11;
    cfg.d = 2;
    cfg.family = Family::unipotent_counterexample;
    Instance inst = gen_instance(cfg);
    CHECK(inst.group.order() == 11);
    CHECK(inst.orbit.points.size() == 11);
    for (const FpVector& x : inst.orbit.points.vectors()) CHECK(x[0] == 1);
    CHECK(inst.profile.beta_eff == 0.0);
    CHECK(inst.profile.max_hyperplane_hit == 11);
}

TEST_CASE("diagonal torus orbit is the hyperbola") {
    InstanceConfig cfg;
    cfg.p = 5;
    cfg.d = 2;
    cfg.family = Family::diagonal_torus;
    Instance inst = gen_instance(cfg);
    CHECK(inst.group.order() == 4);
    REQUIRE(inst.orbit.points.size() == 4);
    PrimeModulus p5(5);
    for (const FpVector& x : inst.orbit.points.vectors())
        CHECK(p5.mul(x[0], x[1]) == 1);
}

TEST_CASE("cyclic-random instances replay bit for bit") {
    InstanceConfig cfg;
    cfg.p = 11;
    cfg.d = 2;
    cfg.family = Family::cyclic_random;
    cfg.seed = 42;
    Instance a = gen_instance(cfg);
    Instance b = gen_instance(cfg);
    CHECK(a.group == b.group);
    CHECK(a.orbit.points == b.orbit.points);
    CHECK(a.profile.beta_eff == b.profile.beta_eff);
    CHECK(a.group.order() >= 1);
}

TEST_CASE("explicit generators build the given group") {
    InstanceConfig cfg;
    cfg.p = 11;
    cfg.d = 2;
    cfg.family = Family::explicit_generators;
    cfg.gens = {{1, 1, 0, 1}};
    Instance inst = gen_instance(cfg);
    CHECK(inst.group.order() == 11);
    CHECK(inst.profile.beta_eff == 0.0);
}

TEST_CASE("config validation") {
    InstanceConfig cfg;
    cfg.p = 7;
    cfg.d = 2;
    CHECK_THROWS_AS(gen_instance(cfg), std::invalid_argument);  // QR needs d=1

    cfg = {};
    cfg.family = Family::unipotent_counterexample;
    CHECK_THROWS_AS(gen_instance(cfg), std::invalid_argument);  // needs d=2

    cfg = {};
    cfg.family = Family::diagonal_torus;
    CHECK_THROWS_AS(gen_instance(cfg), std::invalid_argument);

    cfg = {};
    cfg.family = Family::explicit_generators;
    cfg.d = 1;
    CHECK_THROWS_AS(gen_instance(cfg), std::invalid_argument);  // no generators
    cfg.gens = {{0}};
    CHECK_THROWS_AS(gen_instance(cfg), std::invalid_argument);  // singular
    cfg.gens = {{1, 2}};
    CHECK_THROWS_AS(gen_instance(cfg), std::invalid_argument);  // not d*d

    cfg = {};
    cfg.v = {1, 2};
    CHECK_THROWS_AS(gen_instance(cfg), std::invalid_argument);  // wrong v length

    cfg = {};
    cfg.p = 4;
    CHECK_THROWS(gen_instance(cfg));  // not a prime
}
