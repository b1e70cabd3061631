#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbitlab/growth_checks.hpp"
#include "orbitlab/spectrum.hpp"
#include "orbitlab/sweep.hpp"

using namespace orbitlab;
using nlohmann::ordered_json;

namespace {

struct CommonOpts {
    std::int64_t p = 7;
    int d = 1;
    std::string family = "quadratic-residue";
    std::vector<std::int64_t> v;
    std::string gens;
    std::uint64_t seed = 0;
    bool no_transposed = false;
    std::vector<std::string> caps;
    std::string out = "text";
};

std::vector<std::vector<std::int64_t>> parse_gens(const std::string& s) {
    std::vector<std::vector<std::int64_t>> out;
    std::stringstream mats(s);
    std::string mat;
    while (std::getline(mats, mat, ';')) {
        std::vector<std::int64_t> entries;
        std::stringstream cells(mat);
        std::string cell;
        while (std::getline(cells, cell, ',')) entries.push_back(std::stoll(cell));
        out.push_back(std::move(entries));
    }
    return out;
}

void add_instance_flags(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--p", o.p, "prime modulus");
    cmd->add_option("--d", o.d, "ambient dimension");
    cmd->add_option("--family", o.family,
                    "cyclic-random | diagonal-torus | quadratic-residue | "
                    "unipotent-counterexample | explicit-generators");
    cmd->add_option("--v", o.v, "base point coordinates")->delimiter(',');
    cmd->add_option("--gens", o.gens,
                    "generators for explicit-generators, row-major, ';' between matrices");
    cmd->add_option("--seed", o.seed, "seed for the random family and sampled checks");
    cmd->add_flag("--no-transposed", o.no_transposed, "orbit under M instead of M^T");
    cmd->add_option("--cap", o.caps, "override a resource cap, NAME=VALUE "
                                     "(points, closure, affset, pairs)");
    cmd->add_option("--out", o.out, "text | json")->check(CLI::IsMember({"text", "json"}));
}

InstanceConfig to_config(const CommonOpts& o) {
    InstanceConfig cfg;
    cfg.p = o.p;
    cfg.d = o.d;
    cfg.family = family_from_name(o.family);
    cfg.v = o.v;
    cfg.seed = o.seed;
    cfg.transposed = !o.no_transposed;
    if (!o.gens.empty()) cfg.gens = parse_gens(o.gens);
    return cfg;
}

ResourceCaps to_caps(const CommonOpts& o) {
    ResourceCaps caps = ResourceCaps::from_env();
    for (const std::string& s : o.caps) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--cap expects NAME=VALUE");
        const std::string name = s.substr(0, eq);
        const std::uint64_t value = std::stoull(s.substr(eq + 1));
        if (name == "points") caps.max_points = value;
        else if (name == "closure") caps.max_closure = value;
        else if (name == "affset") caps.max_affine_set = value;
        else if (name == "pairs") caps.max_pairs = value;
        else throw std::invalid_argument("unknown cap: " + name);
    }
    return caps;
}

ordered_json vec_json(const FpVector& v) {
    ordered_json a = ordered_json::array();
    for (int i = 0; i < v.dim(); ++i) a.push_back(v[i]);
    return a;
}

std::string vec_text(const FpVector& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

ordered_json instance_json(const Instance& inst) {
    ordered_json j;
    j["p"] = inst.config.p;
    j["d"] = inst.config.d;
    j["family"] = family_name(inst.config.family);
    j["seed"] = inst.config.seed;
    j["h_order"] = inst.group.order();
    j["orbit_size"] = inst.profile.orbit_size;
    j["delta_eff"] = inst.profile.delta_eff;
    j["beta_eff"] = inst.profile.beta_eff;
    return j;
}

void print_header(const Instance& inst) {
    std::cout << "p=" << inst.config.p << " d=" << inst.config.d
              << " family=" << family_name(inst.config.family) << " |H|=" << inst.group.order()
              << " |I|=" << inst.profile.orbit_size << "\n";
}

int run_orbit(const CommonOpts& o) {
    const Instance inst = gen_instance(to_config(o), to_caps(o));
    if (o.out == "json") {
        ordered_json j = instance_json(inst);
        ordered_json pts = ordered_json::array();
        for (const FpVector& x : inst.orbit.points.vectors()) pts.push_back(vec_json(x));
        j["points"] = std::move(pts);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    print_header(inst);
    const auto vecs = inst.orbit.points.vectors();
    std::cout << "orbit:";
    for (std::size_t i = 0; i < vecs.size() && i < 64; ++i) std::cout << ' ' << vec_text(vecs[i]);
    if (vecs.size() > 64) std::cout << " ... (" << vecs.size() - 64 << " more)";
    std::cout << "\n";
    return 0;
}

int run_spectrum(const CommonOpts& o, std::optional<double> alpha, bool exact) {
    const ResourceCaps caps = to_caps(o);
    const Instance inst = gen_instance(to_config(o), caps);
    const SpectrumField field = dft_full(inst.orbit.points, caps);

    std::optional<Spectrum> spec;
    if (alpha)
        spec = exact ? spec_alpha_exact(inst.orbit.points, *alpha) : spec_alpha(field, *alpha);

    if (o.out == "json") {
        ordered_json j = instance_json(inst);
        j["max_nonzero_ratio"] = field.max_nonzero_ratio();
        j["parseval_gap"] = parseval_gap(field);
        if (spec) {
            ordered_json s;
            s["alpha"] = spec->alpha;
            s["exact"] = exact;
            s["size"] = spec->points.size();
            s["margin_flagged"] = spec->margin_flags.size();
            ordered_json pts = ordered_json::array();
            for (const FpVector& x : spec->points.vectors()) pts.push_back(vec_json(x));
            s["frequencies"] = std::move(pts);
            j["spec"] = std::move(s);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    print_header(inst);
    std::cout << "max_nonzero_ratio=" << field.max_nonzero_ratio()
              << " parseval_gap=" << parseval_gap(field) << "\n";
    if (spec) {
        std::cout << "Spec_" << spec->alpha << (exact ? " (exact)" : "") << ": "
                  << spec->points.size() << " frequencies, " << spec->margin_flags.size()
                  << " margin-flagged\n";
        const auto vecs = spec->points.vectors();
        std::cout << "frequencies:";
        for (std::size_t i = 0; i < vecs.size() && i < 64; ++i)
            std::cout << ' ' << vec_text(vecs[i]);
        if (vecs.size() > 64) std::cout << " ... (" << vecs.size() - 64 << " more)";
        std::cout << "\n";
    }
    return 0;
}

int run_profile(const CommonOpts& o) {
    const Instance inst = gen_instance(to_config(o), to_caps(o));
    const InstanceProfile& pr = inst.profile;
    if (o.out == "json") {
        ordered_json j = instance_json(inst);
        j["max_hyperplane_hit"] = pr.max_hyperplane_hit;
        j["witness_normal"] = vec_json(pr.witness.normal);
        j["witness_offset"] = pr.witness.offset;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    print_header(inst);
    std::cout << "delta_eff=" << pr.delta_eff << " beta_eff=" << pr.beta_eff
              << " max_hyperplane_hit=" << pr.max_hyperplane_hit << " witness "
              << vec_text(pr.witness.normal) << "." << "x=" << pr.witness.offset << "\n";
    return 0;
}

int run_verify(const CommonOpts& o, const std::string& what, std::vector<double> alphas,
               double eps_prime) {
    bool known = what == "all";
    for (const char* name : battery_check_names()) known = known || what == name;
    if (!known) throw std::invalid_argument("unknown check: " + what);

    const Instance inst = gen_instance(to_config(o), to_caps(o));
    if (alphas.empty()) alphas = default_alpha_grid();
    const BatteryReport rep = verify_all(inst, alphas, eps_prime, to_caps(o));

    bool failed = false;
    if (o.out == "json") {
        ordered_json j = instance_json(inst);
        j["max_nonzero_ratio"] = rep.max_ratio;
        ordered_json checks = ordered_json::array();
        for (const CheckOutcome& c : rep.checks) {
            if (what != "all" && what != c.name) continue;
            checks.push_back(
                {{"name", c.name}, {"verdict", to_string(c.verdict)}, {"detail", c.detail}});
            failed = failed || c.verdict == Verdict::fail;
        }
        j["checks"] = std::move(checks);
        std::cout << j.dump(2) << "\n";
        return failed ? 1 : 0;
    }
    print_header(inst);
    for (const CheckOutcome& c : rep.checks) {
        if (what != "all" && what != c.name) continue;
        std::cout << c.name << ": " << to_string(c.verdict);
        if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
        std::cout << "\n";
        failed = failed || c.verdict == Verdict::fail;
    }
    return failed ? 1 : 0;
}

int run_growth(const CommonOpts& o, double alpha, bool exact) {
    const ResourceCaps caps = to_caps(o);
    const Instance inst = gen_instance(to_config(o), caps);
    const Spectrum spec = exact ? spec_alpha_exact(inst.orbit.points, alpha)
                                : spec_alpha(dft_full(inst.orbit.points, caps), alpha);
    const AffineSet a = build_A_alpha(inst.group, spec, caps);
    const GrowthReport growth = growth_report(a, caps);
    const BlockObservationsReport obs = block_observations_check(a, caps);

    if (o.out == "json") {
        ordered_json j = instance_json(inst);
        j["alpha"] = alpha;
        j["spec_size"] = spec.points.size();
        j["a_size"] = growth.size_a;
        j["a2_size"] = growth.size_a2;
        j["a3_size"] = growth.size_a3;
        j["tripling"] = growth.tripling;
        j["covering_k"] = growth.covering_k;
        j["l_size"] = obs.l_size;
        j["max_fiber"] = obs.max_fiber;
        j["min_fiber"] = obs.min_fiber;
        j["block_observations"] = to_string(obs.verdict);
        std::cout << j.dump(2) << "\n";
        return obs.verdict == Verdict::fail ? 1 : 0;
    }
    print_header(inst);
    std::cout << "alpha=" << alpha << " |Spec|=" << spec.points.size() << " |A|=" << growth.size_a
              << " |A^2|=" << growth.size_a2 << " |A^3|=" << growth.size_a3
              << " tripling=" << growth.tripling << " covering_K=" << growth.covering_k << "\n";
    std::cout << "|L(A)|=" << obs.l_size << " fibers " << obs.min_fiber << ".." << obs.max_fiber
              << " block_observations=" << to_string(obs.verdict) << "\n";
    return obs.verdict == Verdict::fail ? 1 : 0;
}

int run_iterate(const CommonOpts& o, double eps_prime) {
    const ResourceCaps caps = to_caps(o);
    const Instance inst = gen_instance(to_config(o), caps);
    const auto [sched, cert] = prop_p_iteration(inst.group, inst.orbit, eps_prime, caps);

    if (o.out == "json") {
        ordered_json j = instance_json(inst);
        j["eps_prime"] = sched.eps_prime;
        j["j_cap"] = sched.j_cap;
        j["eps0"] = sched.eps0;
        j["alphas"] = sched.alphas;
        j["chosen_j"] = sched.chosen_j;
        j["c"] = sched.c;
        j["phi"] = sched.phi;
        j["f_count"] = cert.f_count;
        j["e_count"] = cert.e_count;
        j["pair_bound"] = cert.pair_bound;
        j["count_bound_ok"] = cert.count_bound_ok;
        j["checked_products"] = cert.checked_products;
        j["full_check"] = cert.full_check;
        j["containment_failures"] = cert.containment_failures;
        j["margin_incidents"] = cert.margin_incidents;
        j["verdict"] = to_string(cert.verdict);
        std::cout << j.dump(2) << "\n";
        return cert.verdict == Verdict::fail ? 1 : 0;
    }
    print_header(inst);
    std::cout << "eps'=" << sched.eps_prime << " J=" << sched.j_cap << " eps0=" << sched.eps0
              << " chosen_j=" << sched.chosen_j << " c=" << sched.c << " phi=" << sched.phi
              << "\n";
    std::cout << "|F_j|=" << cert.f_count << " |E_j|=" << cert.e_count
              << " bound=" << cert.pair_bound << " count_bound=" << (cert.count_bound_ok ? "ok" : "violated")
              << " products=" << cert.checked_products << (cert.full_check ? " (full)" : " (sampled)")
              << " failures=" << cert.containment_failures << "\n";
    std::cout << "verdict=" << to_string(cert.verdict) << "\n";
    return cert.verdict == Verdict::fail ? 1 : 0;
}

std::vector<InstanceConfig> load_config_file(const std::string& path, SweepOptions& opt) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    if (!doc.contains("version") || doc["version"] != 1)
        throw std::runtime_error("unsupported config version (expect 1)");
    if (doc.contains("eps_prime")) opt.eps_prime = doc["eps_prime"];
    if (doc.contains("alphas")) opt.alphas = doc["alphas"].get<std::vector<double>>();

    std::vector<InstanceConfig> configs;
    for (const auto& item : doc.at("instances")) {
        InstanceConfig cfg;
        cfg.p = item.at("p");
        cfg.d = item.value("d", 1);
        cfg.family = family_from_name(item.value("family", std::string("quadratic-residue")));
        cfg.seed = item.value("seed", std::uint64_t{0});
        cfg.transposed = item.value("transposed", true);
        if (item.contains("v")) cfg.v = item["v"].get<std::vector<std::int64_t>>();
        if (item.contains("gens"))
            cfg.gens = item["gens"].get<std::vector<std::vector<std::int64_t>>>();
        configs.push_back(std::move(cfg));
    }
    return configs;
}

int run_sweep_cmd(const CommonOpts& o, const std::string& config_path,
                  std::vector<std::int64_t> ps, std::vector<std::uint64_t> seeds,
                  std::vector<double> alphas, double eps_prime, int jobs, bool timing,
                  const std::string& out_file) {
    SweepOptions opt;
    opt.eps_prime = eps_prime;
    opt.alphas = std::move(alphas);
    opt.jobs = jobs;
    opt.caps = to_caps(o);

    std::vector<InstanceConfig> configs;
    if (!config_path.empty()) {
        configs = load_config_file(config_path, opt);
    } else {
        if (ps.empty()) ps = {o.p};
        if (seeds.empty()) seeds = {o.seed};
        for (std::int64_t p : ps)
            for (std::uint64_t seed : seeds) {
                CommonOpts one = o;
                one.p = p;
                one.seed = seed;
                configs.push_back(to_config(one));
            }
    }

    const SweepResult result = run_sweep(std::move(configs), opt);
    const std::string rendered =
        (o.out == "json") ? sweep_json(result, timing) : sweep_csv(result, timing);
    if (out_file.empty() || out_file == "-") {
        std::cout << rendered;
    } else {
        std::ofstream out(out_file, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write: " + out_file);
        out << rendered;
    }
    return result.any_fail() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic laboratory for exponential sums over matrix orbits"};
    app.require_subcommand(1);

    CommonOpts common;
    std::optional<double> alpha_opt;
    double alpha = 0.5;
    double eps_prime = 0.5;
    bool exact = false;
    std::string what = "all";
    std::string config_path;
    std::vector<std::int64_t> ps;
    std::vector<std::uint64_t> seeds;
    std::vector<double> alpha_grid;
    int jobs = 1;
    bool timing = false;
    std::string out_file;

    CLI::App* orbit_cmd = app.add_subcommand("orbit", "enumerate the orbit of the base point");
    add_instance_flags(orbit_cmd, common);

    CLI::App* spectrum_cmd =
        app.add_subcommand("spectrum", "exponential-sum magnitudes and large-spectrum slices");
    add_instance_flags(spectrum_cmd, common);
    spectrum_cmd->add_option("--alpha", alpha_opt, "also list Spec_alpha");
    spectrum_cmd->add_flag("--exact", exact, "decide thresholds in exact arithmetic (p <= 61)");

    CLI::App* profile_cmd = app.add_subcommand("profile", "hyperplane concentration profile");
    add_instance_flags(profile_cmd, common);

    CLI::App* verify_cmd = app.add_subcommand("verify", "run the verifier battery");
    add_instance_flags(verify_cmd, common);
    verify_cmd->add_option("check", what, "all or one battery check name");
    verify_cmd->add_option("--alpha", alpha_grid, "alpha grid override")->delimiter(',');
    verify_cmd->add_option("--eps-prime", eps_prime, "iteration parameter");

    CLI::App* growth_cmd = app.add_subcommand("growth", "A_alpha product growth and coverings");
    add_instance_flags(growth_cmd, common);
    growth_cmd->add_option("--alpha", alpha, "spectrum threshold");
    growth_cmd->add_flag("--exact", exact, "exact spectrum thresholds (p <= 61)");

    CLI::App* iterate_cmd = app.add_subcommand("iterate", "alpha-ladder pigeonhole certificate");
    add_instance_flags(iterate_cmd, common);
    iterate_cmd->add_option("--eps-prime", eps_prime, "ladder parameter in (0, 1]");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "battery over many instances, CSV/JSON out");
    add_instance_flags(sweep_cmd, common);
    sweep_cmd->add_option("--config", config_path, "JSON config file (schema version 1)");
    sweep_cmd->add_option("--ps", ps, "prime list")->delimiter(',');
    sweep_cmd->add_option("--seeds", seeds, "seed list")->delimiter(',');
    sweep_cmd->add_option("--alpha", alpha_grid, "alpha grid override")->delimiter(',');
    sweep_cmd->add_option("--eps-prime", eps_prime, "iteration parameter");
    sweep_cmd->add_option("--jobs", jobs, "parallel instances");
    sweep_cmd->add_flag("--timing", timing, "fill the timing column");
    sweep_cmd->add_option("--out-file", out_file, "output path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*orbit_cmd) return run_orbit(common);
        if (*spectrum_cmd) return run_spectrum(common, alpha_opt, exact);
        if (*profile_cmd) return run_profile(common);
        if (*verify_cmd) return run_verify(common, what, alpha_grid, eps_prime);
        if (*growth_cmd) return run_growth(common, alpha, exact);
        if (*iterate_cmd) return run_iterate(common, eps_prime);
        if (*sweep_cmd)
            return run_sweep_cmd(common, config_path, ps, seeds, alpha_grid, eps_prime, jobs,
                                 timing, out_file);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
