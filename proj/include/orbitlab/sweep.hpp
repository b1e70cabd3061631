#pragma once

#include <string>
#include <vector>

#include "orbitlab/battery.hpp"
#include "orbitlab/instances.hpp"

namespace orbitlab {

struct SweepOptions {
    std::vector<double> alphas;  // battery default grid when empty
    double eps_prime = 0.5;
    int jobs = 1;
    ResourceCaps caps;
};

struct SweepRow {
    InstanceConfig config;
    bool generated = false;
    std::uint64_t h_order = 0;
    std::uint64_t orbit_size = 0;
    double delta_eff = 0.0;
    double beta_eff = 0.0;
    double ratio = 0.0;
    double log_p_ratio = 0.0;
    std::vector<CheckOutcome> checks;
    double time_ms = 0.0;
    std::string error;  // nonempty when the instance could not be generated
};

struct SweepResult {
    std::vector<SweepRow> rows;
    bool any_fail() const;
};

/// Battery per config, jobs-way parallel across instances. Rows come back
/// sorted by (family, p, seed) and their content is identical for any jobs.
SweepResult run_sweep(std::vector<InstanceConfig> configs, const SweepOptions& opt = {});

/// Fixed-schema CSV: instance measurements, one verdict column per battery
/// check, a timing column (left empty unless `timing`), and an error column.
/// Floats carry 12 significant digits.
std::string sweep_csv(const SweepResult& result, bool timing = false);

/// Same rows as JSON, including per-check detail strings.
std::string sweep_json(const SweepResult& result, bool timing = false);

}  // namespace orbitlab
