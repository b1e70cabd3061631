#pragma once

#include <span>
#include <string>
#include <vector>

#include "orbitlab/caps.hpp"
#include "orbitlab/instances.hpp"
#include "orbitlab/verdict.hpp"

namespace orbitlab {

struct CheckOutcome {
    std::string name;
    Verdict verdict;
    std::string detail;  // deterministic one-liner: counts, bounds, skip reasons
};

/// One outcome per verifier, in the fixed battery_check_names() order.
/// Resource overruns surface as inconclusive outcomes, never as aborts.
struct BatteryReport {
    std::vector<CheckOutcome> checks;
    double max_ratio = 0.0;

    bool any_fail() const;
    const CheckOutcome* find(const std::string& name) const;
};

/// Canonical check order; doubles as the sweep's verdict column set.
std::span<const char* const> battery_check_names();

/// Runs every verifier on one instance: profile consistency, stabilizer
/// chain, DFT oracle agreement, Parseval, spectrum difference closure per
/// alpha, subspace concentration over (eta, V), block observations on
/// A_alpha, the iteration driver, the two lemma chains on a constructed
/// B-family, translated fiber unions, and the decay trend gate.
BatteryReport verify_all(const Instance& inst, std::span<const double> alphas,
                         double eps_prime, const ResourceCaps& caps = {});

/// The default alpha grid {0.1, ..., 0.9}.
std::vector<double> default_alpha_grid();

}  // namespace orbitlab
