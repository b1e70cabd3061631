#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "orbitlab/caps.hpp"
#include "orbitlab/group.hpp"
#include "orbitlab/profile.hpp"

namespace orbitlab {

/// Built-in generator families. Names are the kebab-case CLI spellings.
enum class Family {
    cyclic_random,
    diagonal_torus,
    quadratic_residue,
    unipotent_counterexample,
    explicit_generators,
};

const char* family_name(Family f) noexcept;
Family family_from_name(const std::string& name);

/// Recipe for one (group, orbit, profile) triple. Identical configs produce
/// identical instances bit for bit, including the random family.
struct InstanceConfig {
    std::int64_t p = 7;
    int d = 1;
    Family family = Family::quadratic_residue;
    std::vector<std::int64_t> v;  // base point; family default when empty
    bool transposed = true;
    std::uint64_t seed = 0;
    std::vector<std::vector<std::int64_t>> gens;  // explicit-generators: row-major d*d each
};

struct Instance {
    InstanceConfig config;
    MatrixGroup group;
    OrbitSet orbit;
    InstanceProfile profile;
};

/// Smallest generator of F_p^*.
std::int64_t primitive_root(PrimeModulus mod);

/// Builds the group, the orbit of the base point, and the hyperplane
/// profile. cyclic-random rejection-samples an invertible matrix from the
/// seed and closes the cyclic group it generates.
Instance gen_instance(const InstanceConfig& cfg, const ResourceCaps& caps = {});

}  // namespace orbitlab
