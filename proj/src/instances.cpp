#include "orbitlab/instances.hpp"

#include <stdexcept>

#include "orbitlab/util.hpp"

namespace orbitlab {

namespace {

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        out.push_back(q);
        while (n % q == 0) n /= q;
    }
    if (n > 1) out.push_back(n);
    return out;
}

FpVector base_point(const InstanceConfig& cfg, PrimeModulus mod) {
    if (!cfg.v.empty()) {
        if (static_cast<int>(cfg.v.size()) != cfg.d)
            throw std::invalid_argument("base point has wrong dimension");
        return FpVector(mod, cfg.v);
    }
    switch (cfg.family) {
        case Family::unipotent_counterexample: return FpVector(mod, {1, 0});
        default: break;
    }
    return FpVector(mod, std::vector<std::int64_t>(cfg.d, 1));
}

void require_dim(const InstanceConfig& cfg, int d) {
    if (cfg.d != d)
        throw std::invalid_argument(std::string(family_name(cfg.family)) + " requires d=" +
                                    std::to_string(d));
}

std::vector<FpMatrix> family_generators(const InstanceConfig& cfg, PrimeModulus mod) {
    switch (cfg.family) {
        case Family::quadratic_residue: {
            require_dim(cfg, 1);
            const std::int64_t g = primitive_root(mod);
            return {FpMatrix(mod, 1, {g * g % cfg.p})};
        }
        case Family::unipotent_counterexample: {
            require_dim(cfg, 2);
            return {FpMatrix(mod, 2, {1, 1, 0, 1})};
        }
        case Family::diagonal_torus: {
            require_dim(cfg, 2);
            const auto g = static_cast<std::uint32_t>(primitive_root(mod));
            const std::uint32_t ginv = mod.pow(g, mod.value() - 2);
            return {FpMatrix(mod, 2, {g, 0, 0, ginv})};
        }
        case Family::cyclic_random: {
            SeededRng rng(cfg.seed);
            const auto n = static_cast<std::uint64_t>(cfg.d) * static_cast<std::uint64_t>(cfg.d);
            for (int attempt = 0; attempt < 1000; ++attempt) {
                std::vector<std::int64_t> entries(n);
                for (auto& e : entries)
                    e = static_cast<std::int64_t>(rng.uniform_below(mod.value()));
                FpMatrix m(mod, cfg.d, entries);
                if (m.invertible()) return {m};
            }
            throw std::runtime_error("cyclic-random: retries exhausted without an invertible draw");
        }
        case Family::explicit_generators: {
            if (cfg.gens.empty())
                throw std::invalid_argument("explicit-generators requires at least one matrix");
            std::vector<FpMatrix> out;
            for (const auto& entries : cfg.gens) {
                if (entries.size() != static_cast<std::size_t>(cfg.d) * cfg.d)
                    throw std::invalid_argument("generator entry count is not d*d");
                out.push_back(FpMatrix(mod, cfg.d, entries));
                if (!out.back().invertible())
                    throw std::invalid_argument("explicit generator is singular");
            }
            return out;
        }
    }
    throw std::invalid_argument("unknown family");
}

}  // namespace

const char* family_name(Family f) noexcept {
    switch (f) {
        case Family::cyclic_random: return "cyclic-random";
        case Family::diagonal_torus: return "diagonal-torus";
        case Family::quadratic_residue: return "quadratic-residue";
        case Family::unipotent_counterexample: return "unipotent-counterexample";
        case Family::explicit_generators: return "explicit-generators";
    }
    return "unknown";
}

Family family_from_name(const std::string& name) {
    for (Family f : {Family::cyclic_random, Family::diagonal_torus, Family::quadratic_residue,
                     Family::unipotent_counterexample, Family::explicit_generators})
        if (name == family_name(f)) return f;
    throw std::invalid_argument("unknown family: " + name);
}

std::int64_t primitive_root(PrimeModulus mod) {
    const std::int64_t p = mod.value();
    const std::vector<std::int64_t> factors = prime_factors(p - 1);
    for (std::int64_t g = 2; g < p; ++g) {
        bool generates = true;
        for (std::int64_t q : factors) {
            if (mod.pow(static_cast<std::uint32_t>(g),
                        static_cast<std::uint64_t>((p - 1) / q)) == 1) {
                generates = false;
                break;
            }
        }
        if (generates) return g;
    }
    throw std::logic_error("no primitive root found");  // unreachable for prime p
}

Instance gen_instance(const InstanceConfig& cfg, const ResourceCaps& caps) {
    if (cfg.d < 1) throw std::invalid_argument("dimension must be at least 1");
    PrimeModulus mod(cfg.p);
    const std::vector<FpMatrix> gens = family_generators(cfg, mod);
    MatrixGroup h = MatrixGroup::closure(mod, cfg.d, gens, caps);
    OrbitSet o = orbit(h, base_point(cfg, mod), cfg.transposed, caps);
    InstanceProfile prof = hyperplane_profile(o, caps);
    return Instance{cfg, std::move(h), std::move(o), prof};
}

}  // namespace orbitlab
