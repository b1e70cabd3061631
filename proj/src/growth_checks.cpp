#include "orbitlab/growth_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "orbitlab/util.hpp"

namespace orbitlab {

namespace {

// One-sided float slack for comparisons mixing exact counts with real K
// powers; never wide enough to flip a genuine violation of an integer bound.
constexpr double kRelSlack = 1e-12;

bool leq(double lhs, double rhs) { return lhs <= rhs * (1.0 + kRelSlack) + 1e-12; }

void check_same_frame(const AffineSet& a, const AffineSet& b, const char* who) {
    if (a.codec().modulus() != b.codec().modulus() || a.codec().dim() != b.codec().dim())
        throw std::invalid_argument(std::string(who) + ": domain mismatch");
}

}  // namespace

AffineSet build_A_alpha(const MatrixGroup& h, const Spectrum& spec, const ResourceCaps& caps) {
    const PointDomain& dom = spec.points.domain();
    if (h.modulus() != dom.modulus() || h.dim() != dom.dim())
        throw std::invalid_argument("build_A_alpha: group and spectrum domains differ");
    if (!spectrum_symmetric(spec))
        throw std::invalid_argument(
            "build_A_alpha: spectrum is not symmetric under negation; "
            "threshold likely sits inside the float margin band");
    if (!spectrum_h_invariant(spec, h))
        throw std::invalid_argument(
            "build_A_alpha: spectrum is not invariant under the group; "
            "threshold likely sits inside the float margin band");

    AffineCodec codec(h.modulus(), h.dim());
    const std::uint64_t span = codec.translation_span();
    const std::uint64_t total = h.order() * spec.points.size();
    if (total > caps.max_affine_set)
        throw CapExceeded("build_A_alpha: |H| |Spec| exceeds the affine set cap", total);

    std::vector<std::uint64_t> codes;
    codes.reserve(total);
    const std::vector<std::uint64_t> tcodes = spec.points.codes();
    for (std::uint64_t mcode : h.codes())
        for (std::uint64_t tcode : tcodes) codes.push_back(tcode + span * mcode);
    AffineSet out = AffineSet::from_codes(std::move(codec), std::move(codes));

    if (out.size() != total) throw std::logic_error("build_A_alpha: duplicate embedded elements");
    if (!out.symmetric())
        throw std::logic_error("build_A_alpha: embedded set is not symmetric");
    if (!out.empty() && !out.contains_identity())
        throw std::logic_error("build_A_alpha: embedded set misses the identity");
    return out;
}

std::pair<IterationSchedule, PairCertificate> prop_p_iteration(const MatrixGroup& h,
                                                               const OrbitSet& orbit,
                                                               double eps_prime,
                                                               const ResourceCaps& caps) {
    if (!(eps_prime > 0.0) || eps_prime > 1.0)
        throw std::invalid_argument("prop_p_iteration: eps' must lie in (0, 1]");
    const PointDomain& dom = orbit.points.domain();
    if (h.modulus() != dom.modulus() || h.dim() != dom.dim())
        throw std::invalid_argument("prop_p_iteration: group and orbit domains differ");
    const int d = dom.dim();
    const double p = static_cast<double>(dom.modulus().value());

    IterationSchedule sched;
    sched.eps_prime = eps_prime;
    sched.j_cap = static_cast<int>(std::ceil(2.0 * d / eps_prime));
    sched.eps0 = std::ldexp(eps_prime, -sched.j_cap);
    sched.alphas.resize(static_cast<std::size_t>(sched.j_cap) + 1);
    sched.alphas[0] = std::pow(p, -sched.eps0);
    for (int j = 1; j <= sched.j_cap; ++j) {
        const double prev = sched.alphas[static_cast<std::size_t>(j) - 1];
        sched.alphas[static_cast<std::size_t>(j)] = 0.5 * prev * prev;
    }
    // Closed form alpha_j = 2^{1-2^j} p^{-2^j eps0} while it stays
    // representable; the recursion must track it to float accuracy.
    for (int j = 0; j <= sched.j_cap && j < 20; ++j) {
        const double pw = std::ldexp(1.0, j);  // 2^j
        const double closed = std::exp2(1.0 - pw) * std::pow(p, -pw * sched.eps0);
        if (closed < 1e-200) break;
        if (std::abs(closed - sched.alphas[static_cast<std::size_t>(j)]) > 1e-9 * closed)
            throw std::logic_error("prop_p_iteration: alpha ladder drifted from its closed form");
    }

    const SpectrumField field = dft_full(orbit.points, caps);
    const double growth_thr = std::pow(p, static_cast<double>(d) / sched.j_cap);

    std::vector<Spectrum> rungs;
    rungs.push_back(spec_alpha(field, sched.alphas[0]));
    int chosen = -1;
    for (int j = 0; j < sched.j_cap; ++j) {
        const double next_alpha = sched.alphas[static_cast<std::size_t>(j) + 1];
        if (!(next_alpha > 0.0))
            throw std::logic_error("prop_p_iteration: alpha ladder underflowed to zero "
                                   "before the pigeonhole index");
        rungs.push_back(spec_alpha(field, next_alpha));
        const double sz_next = static_cast<double>(rungs[static_cast<std::size_t>(j) + 1].points.size());
        const double sz_cur = static_cast<double>(rungs[static_cast<std::size_t>(j)].points.size());
        if (sz_next <= growth_thr * sz_cur) {
            chosen = j;
            break;
        }
    }
    if (chosen < 0)
        throw std::logic_error("prop_p_iteration: no pigeonhole index up to J-1, "
                               "impossible for spectra inside F_p^d");
    sched.chosen_j = chosen;
    sched.c = std::ldexp(1.0, chosen);
    sched.phi = sched.alphas[static_cast<std::size_t>(chosen)];

    const Spectrum& cur = rungs[static_cast<std::size_t>(chosen)];
    const Spectrum& next = rungs[static_cast<std::size_t>(chosen) + 1];

    PairCertificate cert;
    cert.j = chosen;
    cert.h_order = h.order();
    cert.margin_incidents = 0;
    bool ambiguous = false;
    for (int j = 0; j <= chosen + 1; ++j) {
        cert.margin_incidents += rungs[static_cast<std::size_t>(j)].margin_flags.size();
        ambiguous = ambiguous || field.threshold_ambiguous(sched.alphas[static_cast<std::size_t>(j)]);
    }

    const std::vector<std::uint64_t> cur_codes = cur.points.codes();
    const std::uint64_t nj = cur_codes.size();
    if (nj * nj > caps.max_pairs)
        throw CapExceeded("prop_p_iteration: F_j enumeration exceeds the pair cap", nj * nj);
    std::vector<FpVector> cur_vecs;
    cur_vecs.reserve(nj);
    for (std::uint64_t c : cur_codes) cur_vecs.push_back(dom.decode(c));
    for (std::size_t i1 = 0; i1 < cur_vecs.size(); ++i1)
        for (std::size_t i2 = 0; i2 < cur_vecs.size(); ++i2)
            if (next.points.contains(cur_vecs[i1].sub(cur_vecs[i2])))
                cert.f_pairs.emplace_back(cur_codes[i1], cur_codes[i2]);
    cert.f_count = cert.f_pairs.size();

    const double h_count = static_cast<double>(cert.h_order);
    cert.e_count = static_cast<double>(cert.f_count) * h_count * h_count;
    const double a_alpha_size = h_count * static_cast<double>(nj);
    const double alpha_j = sched.alphas[static_cast<std::size_t>(chosen)];
    cert.pair_bound = 0.5 * alpha_j * alpha_j * a_alpha_size * a_alpha_size;
    // Same inequality with |H|^2 cancelled, so the compare stays in exact range.
    cert.count_bound_ok =
        static_cast<double>(cert.f_count) >=
        0.5 * alpha_j * alpha_j * static_cast<double>(nj) * static_cast<double>(nj) *
            (1.0 - kRelSlack);

    // Containment: every E_j element ((M1, xi1), (M2, -M1^-1 xi2)) multiplies
    // into (M1 M2, xi1 - xi2), which must land in A_{alpha_{j+1}} = H x Spec.
    const std::vector<FpMatrix> elems = h.elements();
    std::vector<FpMatrix> invs;
    invs.reserve(elems.size());
    for (const FpMatrix& m : elems) invs.push_back(m.inverse());

    cert.containment_failures = 0;
    cert.checked_products = 0;
    cert.full_check = cert.e_count <= 1e6;
    auto check_one = [&](std::size_t pair_idx, std::size_t m1, std::size_t m2) {
        const auto& [c1, c2] = cert.f_pairs[pair_idx];
        const FpVector xi1 = dom.decode(c1);
        const FpVector xi2 = dom.decode(c2);
        const AffineElement left(elems[m1], xi1);
        const AffineElement right(elems[m2], invs[m1].apply(xi2).negated());
        const AffineElement prod = left.compose(right);
        ++cert.checked_products;
        if (!h.contains(prod.linear()) || !next.points.contains(prod.translation()))
            ++cert.containment_failures;
    };
    if (cert.full_check) {
        for (std::size_t pi = 0; pi < cert.f_pairs.size(); ++pi)
            for (std::size_t m1 = 0; m1 < elems.size(); ++m1)
                for (std::size_t m2 = 0; m2 < elems.size(); ++m2) check_one(pi, m1, m2);
    } else {
        SeededRng rng(0x5bd1e9955bd1e995ULL ^ dom.modulus().value() ^
                      (static_cast<std::uint64_t>(d) << 32) ^ cert.f_count);
        for (int s = 0; s < 10000; ++s)
            check_one(static_cast<std::size_t>(rng.uniform_below(cert.f_count)),
                      static_cast<std::size_t>(rng.uniform_below(elems.size())),
                      static_cast<std::size_t>(rng.uniform_below(elems.size())));
    }

    if (ambiguous)
        cert.verdict = Verdict::inconclusive;
    else if (cert.count_bound_ok && cert.containment_failures == 0)
        cert.verdict = Verdict::pass;
    else
        cert.verdict = Verdict::fail;
    return {std::move(sched), std::move(cert)};
}

BlockObservationsReport block_observations_check(const AffineSet& a, const ResourceCaps& caps) {
    if (a.empty()) throw std::invalid_argument("block_observations_check: empty set");
    const BlockView view = block_view(a);
    const AffineSet a2 = a.product(a, caps);

    BlockObservationsReport rep;
    rep.size_a = a.size();
    rep.size_a2 = a2.size();
    rep.l_size = view.l_parts.size();
    rep.max_fiber = view.max_fiber();
    rep.min_fiber = view.min_fiber();
    rep.intersection_ok = rep.size_a <= rep.l_size * rep.max_fiber;
    rep.square_ok = rep.size_a2 >= rep.l_size * rep.max_fiber;
    rep.cube_applicable = a.symmetric();
    rep.cube_ok = true;
    if (rep.cube_applicable) {
        const AffineSet a3 = a2.product(a, caps);
        const BlockView view3 = block_view(a3);
        for (const FpMatrix& m : view.l_parts) {
            const std::ptrdiff_t idx = view3.find(m);
            if (idx < 0 || view3.fibers[static_cast<std::size_t>(idx)].size() < rep.max_fiber) {
                rep.cube_ok = false;
                break;
            }
        }
    }
    rep.verdict = rep.intersection_ok && rep.square_ok && (!rep.cube_applicable || rep.cube_ok)
                      ? Verdict::pass
                      : Verdict::fail;
    return rep;
}

double measured_k(const AffineSet& a, const AffineSet& b, const AffineElement& g,
                  const ResourceCaps& caps) {
    check_same_frame(a, b, "measured_k");
    if (a.empty() || b.empty()) throw std::invalid_argument("measured_k: empty set");
    const double covering = static_cast<double>(growth_report(b, caps).covering_k);
    const double size_ratio = static_cast<double>(b.size()) / static_cast<double>(a.size());
    const AffineSet inter = a.intersected(b.left_translated(g));
    const double inter_ratio =
        inter.empty() ? std::numeric_limits<double>::infinity()
                      : static_cast<double>(a.size()) / static_cast<double>(inter.size());
    return std::max({covering, size_ratio, inter_ratio, 1.0});
}

double measured_k(const AffineSet& a, const AffineSet& b, const ResourceCaps& caps) {
    return measured_k(a, b, AffineElement::identity(a.codec().modulus(), a.codec().dim()), caps);
}

BlocksLemmaReport blocks_lemma_check(const AffineSet& a, const AffineSet& b, double k,
                                     const ResourceCaps& caps) {
    check_same_frame(a, b, "blocks_lemma_check");
    if (a.empty() || b.empty()) throw std::invalid_argument("blocks_lemma_check: empty set");
    if (!(k >= 1.0)) throw std::invalid_argument("blocks_lemma_check: K must be >= 1");

    BlocksLemmaReport rep;
    rep.k = k;
    if (b.contains_identity() && b.symmetric()) {
        rep.covering_k = growth_report(b, caps).covering_k;
        rep.hyp_approx = static_cast<double>(rep.covering_k) <= k * (1.0 + kRelSlack);
    } else {
        rep.covering_k = 0;
        rep.hyp_approx = false;
    }
    rep.hyp_size = leq(static_cast<double>(b.size()), k * static_cast<double>(a.size()));
    const AffineSet inter = a.intersected(b);
    rep.hyp_intersection =
        leq(static_cast<double>(a.size()), k * static_cast<double>(inter.size()));

    const BlockView va = block_view(a);
    const BlockView vb = block_view(b);
    const BlockView vab = block_view(inter);
    rep.l_a = va.l_parts.size();
    rep.l_b = vb.l_parts.size();
    std::vector<std::uint64_t> shared;
    std::set_intersection(va.l_codes.begin(), va.l_codes.end(), vb.l_codes.begin(),
                          vb.l_codes.end(), std::back_inserter(shared));
    rep.l_ab = shared.size();
    rep.min_ra = va.min_fiber();
    rep.max_ra = va.max_fiber();
    rep.max_rb = vb.max_fiber();
    rep.max_rab = vab.max_fiber();

    const double k3 = k * k * k;
    rep.ineq_linear_count = leq(static_cast<double>(rep.l_b), k3 * static_cast<double>(rep.l_ab));
    rep.ineq_linear_lower =
        leq(static_cast<double>(rep.min_ra) * static_cast<double>(rep.l_a),
            k * static_cast<double>(rep.l_ab) * static_cast<double>(rep.max_ra));
    rep.ineq_fiber_upper = leq(static_cast<double>(rep.max_rb), k3 * static_cast<double>(rep.max_rab));
    rep.ineq_fiber_lower =
        leq(static_cast<double>(rep.min_ra), k * static_cast<double>(rep.max_rab));

    if (!rep.hyp_approx || !rep.hyp_size || !rep.hyp_intersection)
        rep.verdict = Verdict::hypotheses_unmet;
    else if (rep.ineq_linear_count && rep.ineq_linear_lower && rep.ineq_fiber_upper &&
             rep.ineq_fiber_lower)
        rep.verdict = Verdict::pass;
    else
        rep.verdict = Verdict::fail;
    return rep;
}

StabLemmaReport stab_lemma_check(const AffineSet& a_alpha, const AffineSet& b,
                                 const AffineElement& g, const FpVector& xi, double k,
                                 const ResourceCaps& caps) {
    check_same_frame(a_alpha, b, "stab_lemma_check");
    if (a_alpha.empty() || b.empty()) throw std::invalid_argument("stab_lemma_check: empty set");
    const PrimeModulus mod = a_alpha.codec().modulus();
    const int dim = a_alpha.codec().dim();
    if (xi.modulus() != mod || xi.dim() != dim || g.modulus() != mod || g.dim() != dim)
        throw std::invalid_argument("stab_lemma_check: frequency or shift shape mismatch");
    if (xi.is_zero()) throw std::invalid_argument("stab_lemma_check: xi must be nonzero");
    if (!(k >= 1.0)) throw std::invalid_argument("stab_lemma_check: K must be >= 1");

    const PointDomain dom(mod, dim, caps);
    const BlockView va = block_view(a_alpha);
    const BlockView vb = block_view(b);

    StabLemmaReport rep;
    rep.k = k;
    rep.h_order = va.l_parts.size();
    rep.l_b = vb.l_parts.size();

    // Orbit histogram of xi under H: hist[w] = |{h in H : h xi = w}|.
    // Stab_H(xi) is the diagonal entry, and |H cap L(g) M Stab(xi)| is the
    // entry at L(g) M xi, so one histogram serves the whole chain.
    std::unordered_map<std::uint64_t, std::uint64_t> hist;
    for (const FpMatrix& m : va.l_parts) ++hist[dom.encode(m.apply(xi))];
    const std::uint64_t xi_code = dom.encode(xi);
    const auto self = hist.find(xi_code);
    rep.stab_h_xi = self == hist.end() ? 0 : self->second;
    rep.stab_fraction = static_cast<double>(rep.stab_h_xi) / static_cast<double>(rep.h_order);

    const FpMatrix gl = g.linear();
    std::vector<std::uint64_t> coset_keys;  // M xi over M in L(B); dedup = coset count
    coset_keys.reserve(vb.l_parts.size());
    rep.lhs_shifted = 0;
    rep.l_b_stab = 0;
    std::vector<std::uint64_t> h_codes = va.l_codes;  // sorted by construction
    MatrixCodec mc(mod, dim);
    for (const FpMatrix& m : vb.l_parts) {
        const std::uint64_t key = dom.encode(m.apply(xi));
        coset_keys.push_back(key);
        if (key == xi_code) ++rep.l_b_stab;
        if (std::binary_search(h_codes.begin(), h_codes.end(), mc.encode(gl.mul(m))))
            ++rep.lhs_shifted;
    }
    std::sort(coset_keys.begin(), coset_keys.end());
    coset_keys.erase(std::unique(coset_keys.begin(), coset_keys.end()), coset_keys.end());
    rep.s_count = coset_keys.size();

    rep.max_coset_stab = 0;
    for (std::uint64_t key : coset_keys) {
        const auto it = hist.find(dom.encode(gl.apply(dom.decode(key))));
        if (it != hist.end()) rep.max_coset_stab = std::max(rep.max_coset_stab, it->second);
    }

    const AffineSet b2 = b.product(b, caps);
    rep.l_b2 = block_view(b2).l_parts.size();

    if (b.contains_identity() && b.symmetric()) {
        rep.hyp_approx =
            static_cast<double>(growth_report(b, caps).covering_k) <= k * (1.0 + kRelSlack);
    } else {
        rep.hyp_approx = false;
    }
    rep.hyp_size = leq(static_cast<double>(b.size()), k * static_cast<double>(a_alpha.size()));
    const AffineSet shifted = a_alpha.intersected(b.left_translated(g));
    rep.hyp_intersection =
        leq(static_cast<double>(a_alpha.size()), k * static_cast<double>(shifted.size()));

    rep.step_coset_cap = rep.max_coset_stab <= rep.stab_h_xi;
    rep.step_coset_bound = rep.lhs_shifted <= rep.max_coset_stab * rep.s_count;
    rep.step_lower =
        leq(static_cast<double>(rep.h_order), k * static_cast<double>(rep.lhs_shifted));
    rep.step_product = rep.l_b2 >= rep.s_count * rep.l_b_stab;
    const double k6 = std::pow(k, 6.0);
    rep.step_power = leq(static_cast<double>(rep.l_b2), k6 * static_cast<double>(rep.l_b));
    rep.final_bound = leq(static_cast<double>(rep.l_b_stab),
                          rep.stab_fraction * k6 * k * static_cast<double>(rep.l_b));

    if (!rep.hyp_approx || !rep.hyp_size || !rep.hyp_intersection)
        rep.verdict = Verdict::hypotheses_unmet;
    else if (rep.step_coset_cap && rep.step_coset_bound && rep.step_lower && rep.step_product &&
             rep.step_power && rep.final_bound)
        rep.verdict = Verdict::pass;
    else
        rep.verdict = Verdict::fail;
    return rep;
}

TranslateUnionReport translate_union_check(const AffineSet& b, int k, const FpMatrix& m,
                                           const Subspace& v, const ResourceCaps& caps) {
    const PrimeModulus mod = b.codec().modulus();
    const int dim = b.codec().dim();
    if (k < 1) throw std::invalid_argument("translate_union_check: k must be >= 1");
    if (v.modulus() != mod || v.ambient_dim() != dim || m.modulus() != mod || m.dim() != dim)
        throw std::invalid_argument("translate_union_check: shape mismatch");
    if (v.dim() < 1)
        throw std::invalid_argument("translate_union_check: V must be a nontrivial subspace");
    if (!b.contains_identity() || !b.symmetric())
        throw std::invalid_argument(
            "translate_union_check: B must be symmetric and contain the identity");

    const AffineSet bk = b.power(k, caps);
    const std::vector<FpVector> vpoints = v.points(caps);
    for (const FpVector& w : vpoints)
        if (!bk.contains(AffineElement::pure_translation(w)))
            throw std::invalid_argument(
                "translate_union_check: V is not inside the k-th power's identity fiber");
    if (block_view(b).find(m) < 0)
        throw std::invalid_argument("translate_union_check: M is not a linear part of B");

    const AffineSet b3k = bk.power(3, caps);
    const AffineSet b4k = b3k.product(bk, caps);
    const BlockView view3 = block_view(b3k);
    const std::ptrdiff_t idx3 = view3.find(m);
    if (idx3 < 0) throw std::logic_error("translate_union_check: M vanished from L(B^3k)");
    const PointSet& base = view3.fibers[static_cast<std::size_t>(idx3)];

    if (base.size() * vpoints.size() > caps.max_pairs)
        throw CapExceeded("translate_union_check: saturation exceeds the pair cap");
    PointDomain dom(mod, dim, caps);
    PointSet t(dom);
    std::vector<std::uint64_t> reps;
    for (std::uint64_t code : base.codes()) {
        const FpVector x = dom.decode(code);
        for (const FpVector& w : vpoints) t.insert(x.add(w));
        reps.push_back(dom.encode(v.reduce_mod(x)));
    }
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    if (t.size() != reps.size() * vpoints.size())
        throw std::logic_error("translate_union_check: coset decomposition mismatch");

    const BlockView view4 = block_view(b4k);
    const std::ptrdiff_t idx4 = view4.find(m);
    if (idx4 < 0) throw std::logic_error("translate_union_check: M vanished from L(B^4k)");
    const PointSet& fiber4 = view4.fibers[static_cast<std::size_t>(idx4)];
    const bool contained = t.intersected(fiber4) == t;

    return TranslateUnionReport{
        .k = k,
        .base_fiber_size = base.size(),
        .v_size = vpoints.size(),
        .t_size = t.size(),
        .coset_count = reps.size(),
        .fiber_ratio = static_cast<double>(base.size()) / static_cast<double>(t.size()),
        .contained = contained,
        .base_fiber = base,
        .t = std::move(t),
        .coset_reps = std::move(reps),
        .verdict = contained ? Verdict::pass : Verdict::fail,
    };
}

}  // namespace orbitlab
