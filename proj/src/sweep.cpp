#include "orbitlab/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string_view>
#include <tuple>

#include <json.hpp>

namespace orbitlab {

namespace {

std::string num(double x) {
    char b[40];
    std::snprintf(b, sizeof b, "%.12g", x);
    return b;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

SweepRow run_one(const InstanceConfig& cfg, const SweepOptions& opt,
                 const std::vector<double>& alphas) {
    SweepRow row;
    row.config = cfg;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const Instance inst = gen_instance(cfg, opt.caps);
        row.generated = true;
        row.h_order = inst.group.order();
        row.orbit_size = inst.profile.orbit_size;
        row.delta_eff = inst.profile.delta_eff;
        row.beta_eff = inst.profile.beta_eff;
        BatteryReport rep = verify_all(inst, alphas, opt.eps_prime, opt.caps);
        row.ratio = rep.max_ratio;
        row.log_p_ratio = row.ratio > 0.0
                              ? std::log(row.ratio) / std::log(static_cast<double>(cfg.p))
                              : -std::numeric_limits<double>::infinity();
        row.checks = std::move(rep.checks);
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    row.time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

}  // namespace

bool SweepResult::any_fail() const {
    for (const SweepRow& row : rows)
        for (const CheckOutcome& c : row.checks)
            if (c.verdict == Verdict::fail) return true;
    return false;
}

SweepResult run_sweep(std::vector<InstanceConfig> configs, const SweepOptions& opt) {
    const auto key = [](const InstanceConfig& c) {
        return std::make_tuple(std::string_view(family_name(c.family)), c.p, c.seed);
    };
    std::stable_sort(configs.begin(), configs.end(),
                     [&](const InstanceConfig& a, const InstanceConfig& b) {
                         return key(a) < key(b);
                     });
    const std::vector<double> alphas = opt.alphas.empty() ? default_alpha_grid() : opt.alphas;

    SweepResult result;
    result.rows.resize(configs.size());
    const int jobs = std::max(1, opt.jobs);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(configs.size()); ++i)
        result.rows[static_cast<std::size_t>(i)] = run_one(configs[static_cast<std::size_t>(i)], opt, alphas);
    return result;
}

std::string sweep_csv(const SweepResult& result, bool timing) {
    std::string out =
        "p,d,family,seed,h_order,orbit_size,delta_eff,beta_eff,max_nonzero_ratio,log_p_ratio";
    for (const char* name : battery_check_names()) out += std::string(",") + name;
    out += ",time_ms,error\n";

    for (const SweepRow& row : result.rows) {
        out += std::to_string(row.config.p) + ',' + std::to_string(row.config.d) + ',' +
               family_name(row.config.family) + ',' + std::to_string(row.config.seed);
        if (row.generated) {
            out += ',' + std::to_string(row.h_order) + ',' + std::to_string(row.orbit_size) +
                   ',' + num(row.delta_eff) + ',' + num(row.beta_eff) + ',' + num(row.ratio) +
                   ',' + num(row.log_p_ratio);
            for (const char* name : battery_check_names()) {
                out += ',';
                for (const CheckOutcome& c : row.checks)
                    if (c.name == name) {
                        out += to_string(c.verdict);
                        break;
                    }
            }
        } else {
            for (int i = 0; i < 6 + static_cast<int>(battery_check_names().size()); ++i) out += ',';
        }
        out += ',';
        if (timing) out += num(row.time_ms);
        out += ',' + csv_escape(row.error) + '\n';
    }
    return out;
}

std::string sweep_json(const SweepResult& result, bool timing) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const SweepRow& row : result.rows) {
        nlohmann::ordered_json j;
        j["p"] = row.config.p;
        j["d"] = row.config.d;
        j["family"] = family_name(row.config.family);
        j["seed"] = row.config.seed;
        if (row.generated) {
            j["h_order"] = row.h_order;
            j["orbit_size"] = row.orbit_size;
            j["delta_eff"] = row.delta_eff;
            j["beta_eff"] = row.beta_eff;
            j["max_nonzero_ratio"] = row.ratio;
            j["log_p_ratio"] = std::isfinite(row.log_p_ratio) ? nlohmann::ordered_json(row.log_p_ratio)
                                                              : nlohmann::ordered_json(nullptr);
            nlohmann::ordered_json checks = nlohmann::ordered_json::array();
            for (const CheckOutcome& c : row.checks)
                checks.push_back({{"name", c.name},
                                  {"verdict", to_string(c.verdict)},
                                  {"detail", c.detail}});
            j["checks"] = std::move(checks);
        }
        if (timing) j["time_ms"] = row.time_ms;
        if (!row.error.empty()) j["error"] = row.error;
        rows.push_back(std::move(j));
    }
    return rows.dump(2) + "\n";
}

}  // namespace orbitlab
