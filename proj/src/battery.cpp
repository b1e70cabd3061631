#include "orbitlab/battery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <optional>
#include <set>

#include "orbitlab/growth_checks.hpp"
#include "orbitlab/spectral_checks.hpp"
#include "orbitlab/spectrum.hpp"
#include "orbitlab/subspace.hpp"
#include "orbitlab/util.hpp"

namespace orbitlab {

namespace {

// Seeds for the per-check sample streams, fixed so reruns agree.
constexpr std::uint64_t kStabSalt = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kDftSalt = 0xda942042e4dd58b5ULL;
constexpr std::uint64_t kCosetSalt = 0x2545f4914f6cdd1dULL;
constexpr std::uint64_t kThickenSalt = 0x94d049bb133111ebULL;

constexpr double kRelSlack = 1e-12;

bool leq(double lhs, double rhs) { return lhs <= rhs * (1.0 + kRelSlack) + 1e-12; }

std::string fmt(const char* f, ...) {
    char buf[256];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

Verdict aggregate(const std::vector<Verdict>& vs) {
    bool any_pass = false, any_inc = false;
    for (Verdict v : vs) {
        if (v == Verdict::fail) return Verdict::fail;
        if (v == Verdict::inconclusive) any_inc = true;
        if (v == Verdict::pass) any_pass = true;
    }
    if (any_inc) return Verdict::inconclusive;
    if (any_pass) return Verdict::pass;
    return Verdict::hypotheses_unmet;
}

std::string tally(const std::vector<Verdict>& vs) {
    int n[4] = {0, 0, 0, 0};
    for (Verdict v : vs) ++n[static_cast<int>(v)];
    return fmt("%d pass, %d fail, %d unmet, %d inconclusive", n[0], n[1], n[2], n[3]);
}

/// One K0 x W block together with the subspace it translates along.
struct FamilyMember {
    std::string label;
    AffineSet b;
    Subspace w;
};

struct BFamily {
    std::vector<FamilyMember> members;
    std::optional<AffineSet> a_star;
    std::optional<Spectrum> spec_star;
    double alpha_star = 0.0;
};

struct Ctx {
    const Instance& inst;
    std::span<const double> alphas;
    double eps_prime;
    const ResourceCaps& caps;
    std::optional<SpectrumField> field;
    std::string field_error;
    BFamily family;

    PrimeModulus mod() const { return inst.group.modulus(); }
    int dim() const { return inst.group.dim(); }
    const PointSet& points() const { return inst.orbit.points; }
    std::uint64_t space() const { return points().domain().size(); }
};

template <typename F>
CheckOutcome run_check(const char* name, F&& body) {
    try {
        auto [v, detail] = body();
        return {name, v, std::move(detail)};
    } catch (const CapExceeded& e) {
        return {name, Verdict::inconclusive, std::string("cap: ") + e.what()};
    } catch (const std::invalid_argument& e) {
        return {name, Verdict::inconclusive, std::string("precondition: ") + e.what()};
    }
}

using Body = std::pair<Verdict, std::string>;

Body no_field(const Ctx& ctx) { return {Verdict::inconclusive, "no field: " + ctx.field_error}; }

// ---- profile ----------------------------------------------------------

Body check_profile(const Ctx& ctx) {
    const InstanceProfile& pr = ctx.inst.profile;
    const auto n = static_cast<double>(pr.orbit_size);
    const double p = static_cast<double>(ctx.mod().value());
    std::vector<std::string> bad;

    if (std::abs(pr.delta_eff - std::log(n) / std::log(p)) > 1e-12) bad.push_back("delta_eff");
    if (pr.max_hyperplane_hit < 1 || pr.max_hyperplane_hit > pr.orbit_size) bad.push_back("hit range");
    if ((pr.beta_eff == 0.0) != (pr.max_hyperplane_hit == pr.orbit_size)) bad.push_back("beta zero law");

    std::uint64_t witness_hits = 0;
    for (const FpVector& x : ctx.points().vectors())
        if (pr.witness.contains(x)) ++witness_hits;
    if (witness_hits != pr.max_hyperplane_hit) bad.push_back("witness");

    const std::uint64_t classes = (ctx.space() - 1) / (ctx.mod().value() - 1);
    const std::uint64_t planes = classes * ctx.mod().value();
    bool oracle = false;
    if (planes * pr.orbit_size <= 20'000'000) {
        oracle = true;
        if (reference::max_hyperplane_hit(ctx.points(), ctx.caps) != pr.max_hyperplane_hit)
            bad.push_back("oracle");
    }
    if (!bad.empty()) {
        std::string what;
        for (const auto& b : bad) what += (what.empty() ? "" : ", ") + b;
        return {Verdict::fail, what};
    }
    return {Verdict::pass,
            fmt("delta=%.6g beta=%.6g hit=%llu%s", pr.delta_eff, pr.beta_eff,
                static_cast<unsigned long long>(pr.max_hyperplane_hit),
                oracle ? " (oracle)" : "")};
}

// ---- stab_chain -------------------------------------------------------

Body check_stab_chain(const Ctx& ctx) {
    std::set<std::uint64_t> codes = {1};  // e1 first, then seeded draws
    SeededRng rng(ctx.inst.config.seed ^ kStabSalt);
    const std::uint64_t nonzero = ctx.space() - 1;
    while (codes.size() < std::min<std::uint64_t>(8, nonzero))
        codes.insert(1 + rng.uniform_below(nonzero));

    std::uint64_t held = 0;
    for (std::uint64_t c : codes) {
        const FpVector xi = ctx.points().domain().decode(c);
        if (stab_chain_check(ctx.inst.group, ctx.inst.orbit.base_point, xi, ctx.caps).holds())
            ++held;
    }
    if (held == codes.size())
        return {Verdict::pass, fmt("%zu/%zu xi", codes.size(), codes.size())};
    return {Verdict::fail, fmt("%llu/%zu xi held", static_cast<unsigned long long>(held),
                               codes.size())};
}

// ---- dft_oracle -------------------------------------------------------

Body check_dft_oracle(const Ctx& ctx) {
    if (!ctx.field) return no_field(ctx);
    std::set<std::uint64_t> codes;
    if (ctx.space() <= 256) {
        for (std::uint64_t c = 0; c < ctx.space(); ++c) codes.insert(c);
    } else {
        SeededRng rng(ctx.inst.config.seed ^ kDftSalt);
        while (codes.size() < 256) codes.insert(rng.uniform_below(ctx.space()));
    }
    double worst = 0.0;
    for (std::uint64_t c : codes) {
        const double naive = exp_sum(ctx.points(), ctx.points().domain().decode(c));
        worst = std::max(worst, std::abs(ctx.field->magnitude(c) - naive));
    }
    const bool ok = worst <= ctx.field->tolerance();
    return {ok ? Verdict::pass : Verdict::fail,
            fmt("max dev %.3g over %zu xi", worst, codes.size())};
}

// ---- parseval ---------------------------------------------------------

Body check_parseval(const Ctx& ctx) {
    if (!ctx.field) return no_field(ctx);
    const double gap = parseval_gap(*ctx.field);
    return {gap <= 1e-6 ? Verdict::pass : Verdict::fail, fmt("rel gap %.3g", gap)};
}

// ---- difference -------------------------------------------------------

Verdict exact_difference(const PointSet& i, double alpha, const ResourceCaps& caps) {
    const Spectrum sa = spec_alpha_exact(i, alpha);
    const Spectrum sb = spec_alpha_exact(i, alpha * alpha / 2.0);
    if (sa.margin_flags.size() != 0 || sb.margin_flags.size() != 0) return Verdict::inconclusive;

    const std::vector<std::uint64_t>& codes = sa.points.codes();
    const auto n = static_cast<std::uint64_t>(codes.size());
    if (n * n > caps.max_pairs) return Verdict::inconclusive;
    const PointDomain& dom = i.domain();
    std::vector<FpVector> vecs;
    vecs.reserve(codes.size());
    for (std::uint64_t c : codes) vecs.push_back(dom.decode(c));
    std::uint64_t qualifying = 0;
    for (const FpVector& x : vecs)
        for (const FpVector& y : vecs)
            if (sb.points.contains_code(dom.encode(x.sub(y)))) ++qualifying;
    const double bound = 0.5 * alpha * alpha * static_cast<double>(n) * static_cast<double>(n);
    return leq(bound, static_cast<double>(qualifying)) ? Verdict::pass : Verdict::fail;
}

Body check_difference(const Ctx& ctx) {
    if (!ctx.field) return no_field(ctx);
    std::vector<Verdict> vs;
    int exact_resolved = 0;
    for (double alpha : ctx.alphas) {
        DifferenceReport rep = spec_difference_check(*ctx.field, alpha, ctx.caps);
        Verdict v = rep.verdict;
        if (v == Verdict::inconclusive && ctx.mod().value() <= 61) {
            v = exact_difference(ctx.points(), alpha, ctx.caps);
            if (v != Verdict::inconclusive) ++exact_resolved;
        }
        vs.push_back(v);
    }
    std::string detail = fmt("%zu alphas: %s", vs.size(), tally(vs).c_str());
    if (exact_resolved) detail += fmt(", %d resolved exactly", exact_resolved);
    return {aggregate(vs), detail};
}

// ---- concentration ----------------------------------------------------

Body check_concentration(Ctx& ctx) {
    if (!ctx.field) return no_field(ctx);
    const PrimeModulus mod = ctx.mod();
    const std::vector<Subspace> subs = enumerate_subspaces(mod, ctx.dim(), 1, ctx.dim(), ctx.caps);

    std::uint64_t total = 0;
    for (const Subspace& v : subs)
        total += checked_pow(mod.value(), static_cast<unsigned>(ctx.dim() - v.dim())).value();

    struct Cell {
        const Subspace* v;
        FpVector eta;
    };
    std::vector<Cell> cells;
    const std::uint64_t budget = 512;
    SeededRng rng(ctx.inst.config.seed ^ kCosetSalt);
    for (const Subspace& v : subs) {
        std::vector<FpVector> reps = v.coset_reps(ctx.caps);
        if (total <= budget) {
            for (FpVector& eta : reps) cells.push_back({&v, std::move(eta)});
            continue;
        }
        const std::uint64_t quota =
            std::min<std::uint64_t>(reps.size(), std::max<std::uint64_t>(1, budget * reps.size() / total));
        std::set<std::uint64_t> picked = {0};
        while (picked.size() < quota) picked.insert(rng.uniform_below(reps.size()));
        for (std::uint64_t k : picked) cells.push_back({&v, reps[k]});
    }

    std::map<double, Spectrum> exact_cache;
    std::vector<Verdict> vs;
    for (const Cell& cell : cells) {
        for (double alpha : ctx.alphas) {
            ConcentrationReport rep = subspace_concentration_check(
                ctx.points(), *ctx.field, ctx.inst.profile, alpha, cell.eta, *cell.v, ctx.caps);
            Verdict v = rep.verdict;
            if (v == Verdict::inconclusive && mod.value() <= 61) {
                auto it = exact_cache.find(alpha);
                if (it == exact_cache.end())
                    it = exact_cache.emplace(alpha, spec_alpha_exact(ctx.points(), alpha)).first;
                const Spectrum& ex = it->second;
                const FpVector key = cell.v->reduce_mod(cell.eta);
                bool flagged = false;
                std::uint64_t count = 0;
                const PointDomain& dom = ctx.points().domain();
                for (std::uint64_t c : ex.points.codes())
                    if (cell.v->reduce_mod(dom.decode(c)) == key) ++count;
                for (std::uint64_t c : ex.margin_flags.codes())
                    if (cell.v->reduce_mod(dom.decode(c)) == key) flagged = true;
                if (!flagged)
                    v = leq(alpha * alpha * static_cast<double>(count), rep.rhs_exact)
                            ? Verdict::pass
                            : Verdict::fail;
            }
            vs.push_back(v);
        }
    }
    return {aggregate(vs), fmt("%zu cells x %zu alphas: %s", cells.size(), ctx.alphas.size(),
                               tally(vs).c_str())};
}

// ---- block_obs --------------------------------------------------------

std::uint64_t affine_gate(const ResourceCaps& caps) {
    const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(caps.max_pairs)));
    return std::min<std::uint64_t>(3000, root);
}

Body check_block_obs(const Ctx& ctx) {
    if (!ctx.field) return no_field(ctx);
    const std::uint64_t gate = affine_gate(ctx.caps);
    std::vector<Verdict> vs;
    std::size_t skipped = 0;
    for (double alpha : ctx.alphas) {
        const Spectrum s = spec_alpha(*ctx.field, alpha);
        const std::uint64_t size = ctx.inst.group.order() * s.points.size();
        if (size == 0 || size > gate || size > ctx.caps.max_affine_set) {
            ++skipped;
            continue;
        }
        try {
            const AffineSet a = build_A_alpha(ctx.inst.group, s, ctx.caps);
            vs.push_back(block_observations_check(a, ctx.caps).verdict);
        } catch (const std::invalid_argument&) {
            vs.push_back(Verdict::inconclusive);  // margin broke symmetry or invariance
        }
    }
    if (vs.empty()) return {Verdict::inconclusive, "A_alpha over the gate at every alpha"};
    std::string detail = fmt("%zu alphas (%zu skipped): %s", vs.size(), skipped, tally(vs).c_str());
    return {aggregate(vs), detail};
}

// ---- iteration --------------------------------------------------------

Body check_iteration(const Ctx& ctx) {
    auto [sched, cert] = prop_p_iteration(ctx.inst.group, ctx.inst.orbit, ctx.eps_prime, ctx.caps);
    return {cert.verdict,
            fmt("j=%d of %d, |F|=%llu, %llu products%s", sched.chosen_j, sched.j_cap,
                static_cast<unsigned long long>(cert.f_count),
                static_cast<unsigned long long>(cert.checked_products),
                cert.full_check ? "" : " (sampled)")};
}

// ---- B-family construction --------------------------------------------

bool invariant_under(const Subspace& w, const MatrixGroup& k0) {
    for (const FpMatrix& m : k0.generators())
        for (const FpVector& b : w.basis())
            if (!w.contains(m.apply(b))) return false;
    return true;
}

BFamily build_family(const Ctx& ctx) {
    BFamily fam;
    if (!ctx.field) return fam;
    const PrimeModulus mod = ctx.mod();
    const int d = ctx.dim();
    const MatrixGroup& h = ctx.inst.group;
    const std::uint64_t gate = affine_gate(ctx.caps);

    std::vector<double> sorted(ctx.alphas.begin(), ctx.alphas.end());
    std::sort(sorted.begin(), sorted.end());
    for (double alpha : sorted) {
        const Spectrum s = spec_alpha(*ctx.field, alpha);
        const std::uint64_t size = h.order() * s.points.size();
        if (size == 0 || size > gate) continue;
        try {
            fam.a_star.emplace(build_A_alpha(h, s, ctx.caps));
            fam.spec_star.emplace(s);
            fam.alpha_star = alpha;
            break;
        } catch (const std::invalid_argument&) {
        }
    }
    if (!fam.a_star) return fam;

    std::vector<MatrixGroup> k0s = {MatrixGroup::trivial(mod, d)};
    if (h.order() > 1 && !h.generators().empty()) {
        const FpMatrix& g0 = h.generators().front();
        std::vector<FpMatrix> sq = {g0.mul(g0)};
        MatrixGroup even = MatrixGroup::closure(mod, d, sq, ctx.caps);
        if (even.order() > 1 && even.order() < h.order()) k0s.push_back(std::move(even));
        k0s.push_back(h);
    }

    const std::vector<Subspace> subs = enumerate_subspaces(mod, d, 0, d, ctx.caps);
    const AffineCodec codec(mod, d);
    const std::uint64_t span = codec.translation_span();
    const PointDomain& dom = ctx.points().domain();
    std::optional<Subspace> first_w;  // seeds the thickened member below

    for (const MatrixGroup& k0 : k0s) {
        std::vector<const Subspace*> ws;
        for (const Subspace& w : subs)
            if (invariant_under(w, k0)) ws.push_back(&w);
        if (ws.size() > 6) ws.resize(6);  // enumeration order: dims ascending

        for (const Subspace* w : ws) {
            const std::uint64_t wsize = checked_pow(mod.value(), static_cast<unsigned>(w->dim())).value();
            if (k0.order() * wsize > gate) continue;
            const std::vector<FpVector> wpts = w->points(ctx.caps);
            std::vector<std::uint64_t> codes;
            codes.reserve(k0.order() * wsize);
            for (std::uint64_t mc : k0.codes())
                for (const FpVector& t : wpts) codes.push_back(dom.encode(t) + span * mc);
            AffineSet b = AffineSet::from_codes(codec, std::move(codes));
            if (w->dim() >= 1 && !first_w && k0.order() == 1) first_w = *w;
            fam.members.push_back(
                {fmt("K0=%llu,W=dim%d", static_cast<unsigned long long>(k0.order()), w->dim()),
                 std::move(b), *w});
        }
    }

    // One symmetrized random thickening of the W-translations block.
    if (first_w) {
        SeededRng rng(ctx.inst.config.seed ^ kThickenSalt);
        const std::uint64_t idc = codec.encode(AffineElement::identity(mod, d)) / span;
        std::vector<std::uint64_t> thick;
        for (const FpVector& t : first_w->points(ctx.caps))
            thick.push_back(dom.encode(t) + span * idc);
        for (int extra = 0; extra < 4; ++extra) {
            const std::uint64_t mc = h.codes()[rng.uniform_below(h.order())];
            const std::uint64_t tc = rng.uniform_below(ctx.space());
            thick.push_back(tc + span * mc);
        }
        AffineSet b = AffineSet::from_codes(codec, std::move(thick)).symmetrized();
        if (b.size() <= gate) fam.members.push_back({"thickened", std::move(b), *first_w});
    }
    return fam;
}

double clamped_k(double k) { return std::isfinite(k) ? k : 1e6; }

// ---- blocks_lemma -----------------------------------------------------

Body check_blocks_lemma(const Ctx& ctx) {
    if (!ctx.family.a_star) return {Verdict::inconclusive, "no A_alpha within the gate"};
    const AffineSet& a = *ctx.family.a_star;
    std::vector<Verdict> vs;
    for (const FamilyMember& m : ctx.family.members) {
        const double k = clamped_k(measured_k(a, m.b, ctx.caps));
        vs.push_back(blocks_lemma_check(a, m.b, k, ctx.caps).verdict);
    }
    if (vs.empty()) return {Verdict::inconclusive, "empty B-family"};
    return {aggregate(vs), fmt("%zu members: %s", vs.size(), tally(vs).c_str())};
}

// ---- stab_lemma -------------------------------------------------------

FpVector star_xi(const Ctx& ctx) {
    if (ctx.family.spec_star)
        for (std::uint64_t c : ctx.family.spec_star->points.codes())
            if (c != 0) return ctx.points().domain().decode(c);
    return ctx.points().domain().decode(1);
}

Body check_stab_lemma(const Ctx& ctx) {
    if (!ctx.family.a_star) return {Verdict::inconclusive, "no A_alpha within the gate"};
    const AffineSet& a = *ctx.family.a_star;
    const FpVector xi = star_xi(ctx);

    std::vector<AffineElement> gs = {AffineElement::identity(ctx.mod(), ctx.dim())};
    for (const AffineElement& e : a.elements()) {
        if (e.linear().is_identity() && e.translation().is_zero()) continue;
        gs.push_back(e);
        break;
    }

    std::vector<Verdict> vs;
    for (const FamilyMember& m : ctx.family.members) {
        for (const AffineElement& g : gs) {
            const double k = clamped_k(measured_k(a, m.b, g, ctx.caps));
            vs.push_back(stab_lemma_check(a, m.b, g, xi, k, ctx.caps).verdict);
        }
    }
    if (vs.empty()) return {Verdict::inconclusive, "empty B-family"};
    return {aggregate(vs), fmt("%zu tuples: %s", vs.size(), tally(vs).c_str())};
}

// ---- translate_union --------------------------------------------------

Body check_translate_union(const Ctx& ctx) {
    std::vector<Verdict> vs;
    std::size_t tried = 0;
    for (const FamilyMember& m : ctx.family.members) {
        if (m.w.dim() < 1) continue;
        ++tried;
        FpMatrix mat = FpMatrix::identity(ctx.mod(), ctx.dim());
        for (const AffineElement& e : m.b.elements())
            if (!e.linear().is_identity()) {
                mat = e.linear();
                break;
            }
        for (int k = 1; k <= (m.b.size() <= 512 ? 2 : 1); ++k) {
            try {
                vs.push_back(translate_union_check(m.b, k, mat, m.w, ctx.caps).verdict);
            } catch (const CapExceeded&) {
                vs.push_back(Verdict::inconclusive);
            }
        }
    }
    if (vs.empty())
        return {Verdict::inconclusive, tried ? "all runs capped" : "no member with dim W >= 1"};
    return {aggregate(vs), fmt("%zu runs: %s", vs.size(), tally(vs).c_str())};
}

// ---- trend ------------------------------------------------------------

Body check_trend(const Ctx& ctx) {
    if (!ctx.field) return no_field(ctx);
    const InstanceProfile& pr = ctx.inst.profile;
    const double floor_size = std::sqrt(static_cast<double>(ctx.mod().value()));
    const double ratio = ctx.field->max_nonzero_ratio();
    if (pr.beta_eff < 0.3 || static_cast<double>(pr.orbit_size) < floor_size)
        return {Verdict::hypotheses_unmet,
                fmt("beta=%.4g |I|=%llu", pr.beta_eff,
                    static_cast<unsigned long long>(pr.orbit_size))};
    return {ratio < 0.9 ? Verdict::pass : Verdict::fail, fmt("ratio=%.6g", ratio)};
}

}  // namespace

bool BatteryReport::any_fail() const {
    return std::any_of(checks.begin(), checks.end(),
                       [](const CheckOutcome& c) { return c.verdict == Verdict::fail; });
}

const CheckOutcome* BatteryReport::find(const std::string& name) const {
    for (const CheckOutcome& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::span<const char* const> battery_check_names() {
    static constexpr const char* names[] = {"profile",       "stab_chain",   "dft_oracle",
                                            "parseval",      "difference",   "concentration",
                                            "block_obs",     "iteration",    "blocks_lemma",
                                            "stab_lemma",    "translate_union", "trend"};
    return names;
}

std::vector<double> default_alpha_grid() {
    return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
}

BatteryReport verify_all(const Instance& inst, std::span<const double> alphas, double eps_prime,
                         const ResourceCaps& caps) {
    Ctx ctx{inst, alphas, eps_prime, caps, std::nullopt, "", {}};
    try {
        ctx.field.emplace(dft_full(inst.orbit.points, caps));
    } catch (const CapExceeded& e) {
        ctx.field_error = e.what();
    }
    try {
        ctx.family = build_family(ctx);
    } catch (const CapExceeded&) {
    }

    BatteryReport rep;
    rep.max_ratio = ctx.field ? ctx.field->max_nonzero_ratio() : 0.0;
    rep.checks.push_back(run_check("profile", [&] { return check_profile(ctx); }));
    rep.checks.push_back(run_check("stab_chain", [&] { return check_stab_chain(ctx); }));
    rep.checks.push_back(run_check("dft_oracle", [&] { return check_dft_oracle(ctx); }));
    rep.checks.push_back(run_check("parseval", [&] { return check_parseval(ctx); }));
    rep.checks.push_back(run_check("difference", [&] { return check_difference(ctx); }));
    rep.checks.push_back(run_check("concentration", [&] { return check_concentration(ctx); }));
    rep.checks.push_back(run_check("block_obs", [&] { return check_block_obs(ctx); }));
    rep.checks.push_back(run_check("iteration", [&] { return check_iteration(ctx); }));
    rep.checks.push_back(run_check("blocks_lemma", [&] { return check_blocks_lemma(ctx); }));
    rep.checks.push_back(run_check("stab_lemma", [&] { return check_stab_lemma(ctx); }));
    rep.checks.push_back(run_check("translate_union", [&] { return check_translate_union(ctx); }));
    rep.checks.push_back(run_check("trend", [&] { return check_trend(ctx); }));
    return rep;
}

}  // namespace orbitlab
