#include "orbitlab/spectral_checks.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace orbitlab {

DifferenceReport spec_difference_check(const SpectrumField& field, double alpha,
                                       const ResourceCaps& caps) {
    const Spectrum hi = spec_alpha(field, alpha);
    const Spectrum lo = spec_alpha(field, alpha * alpha / 2.0);
    DifferenceReport r{alpha, hi.points.size(), 0,
                       (alpha * alpha / 2.0) * static_cast<double>(hi.points.size()) *
                           static_cast<double>(hi.points.size()),
                       hi.margin_flags.size() + lo.margin_flags.size(), Verdict::pass};

    if (r.spec_size * r.spec_size > caps.max_pairs)
        throw CapExceeded("spec_difference_check: pair enumeration exceeds cap",
                          r.spec_size * r.spec_size);

    const std::vector<FpVector> pts = hi.points.vectors();
    for (const FpVector& a : pts)
        for (const FpVector& b : pts)
            if (lo.points.contains(a.sub(b))) ++r.qualifying_pairs;

    const bool conclusive = !field.threshold_ambiguous(alpha) &&
                            !field.threshold_ambiguous(alpha * alpha / 2.0);
    if (!conclusive)
        r.verdict = Verdict::inconclusive;
    else
        r.verdict = static_cast<double>(r.qualifying_pairs) >= r.bound ? Verdict::pass
                                                                       : Verdict::fail;
    return r;
}

namespace {

std::complex<double> complex_exp_sum(const std::vector<FpVector>& pts, const FpVector& xi) {
    const std::uint32_t p = xi.modulus().value();
    std::complex<double> acc = 0.0;
    for (const FpVector& x : pts) {
        const double ang = 2.0 * std::numbers::pi * xi.dot(x) / p;
        acc += std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc;
}

}  // namespace

ConcentrationReport subspace_concentration_check(const PointSet& i, const SpectrumField& field,
                                                 const InstanceProfile& prof, double alpha,
                                                 const FpVector& eta, const Subspace& v,
                                                 const ResourceCaps& caps) {
    if (v.dim() < 1)
        throw std::invalid_argument("subspace_concentration_check: V must be nontrivial");
    if (i.empty()) throw std::invalid_argument("subspace_concentration_check: empty source");
    const PrimeModulus mod = i.domain().modulus();
    if (eta.modulus() != mod || eta.dim() != i.domain().dim() || v.modulus() != mod ||
        v.ambient_dim() != i.domain().dim())
        throw std::invalid_argument("subspace_concentration_check: shape mismatch");

    const std::vector<FpVector> vpoints = v.points(caps);
    const Subspace vperp = v.perp();
    const std::vector<FpVector> xreps = vperp.coset_reps(caps);
    if (vpoints.size() * xreps.size() > caps.max_pairs)
        throw CapExceeded("subspace_concentration_check: |V| x |reps| exceeds cap");

    const Spectrum spec = spec_alpha(field, alpha);
    ConcentrationReport r{alpha, eta, v, 0, 0.0, 0, 0.0, 0.0, 0.0, 0, Verdict::pass};
    for (const FpVector& w : vpoints) {
        const FpVector xi = eta.add(w);
        if (spec.points.contains(xi)) ++r.spec_in_coset;
        if (spec.margin_flags.contains(xi)) ++r.margin_incidents;
    }
    r.lhs = alpha * alpha * static_cast<double>(r.spec_in_coset);

    for (const auto& [rep, count] : coset_histogram(i, vperp))
        if (count > r.max_fiber) r.max_fiber = count;
    r.rhs_exact = static_cast<double>(vpoints.size()) * static_cast<double>(r.max_fiber) /
                  static_cast<double>(i.size());
    r.rhs_paper = std::pow(alpha, -2.0) *
                  std::pow(mod.value(), -prof.delta_eff * prof.beta_eff) *
                  static_cast<double>(vpoints.size());

    // f(v) = S(eta+v)/|I| on V; f-hat over representatives of F_p^d / V-perp.
    // The pairing xi.v is rep-independent because V-perp pairs to zero with V.
    const std::vector<FpVector> pts = i.vectors();
    std::vector<std::complex<double>> fvals;
    fvals.reserve(vpoints.size());
    double sum_f_sq = 0.0;
    for (const FpVector& w : vpoints) {
        const std::complex<double> f = complex_exp_sum(pts, eta.add(w)) /
                                       static_cast<double>(i.size());
        fvals.push_back(f);
        sum_f_sq += std::norm(f);
    }
    double sum_fhat_sq = 0.0;
    for (const FpVector& xi : xreps) {
        std::complex<double> acc = 0.0;
        const std::uint32_t p = mod.value();
        for (std::size_t k = 0; k < vpoints.size(); ++k) {
            const double ang = 2.0 * std::numbers::pi * xi.dot(vpoints[k]) / p;
            acc += fvals[k] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        sum_fhat_sq += std::norm(acc / static_cast<double>(vpoints.size()));
    }
    const double lhs_pars = sum_f_sq;
    const double rhs_pars = static_cast<double>(vpoints.size()) * sum_fhat_sq;
    const double denom = std::max(std::abs(lhs_pars), std::abs(rhs_pars));
    r.parseval_rel_gap = denom > 0.0 ? std::abs(lhs_pars - rhs_pars) / denom : 0.0;

    if (field.threshold_ambiguous(alpha))
        r.verdict = Verdict::inconclusive;
    else if (r.parseval_rel_gap >= 1e-6 || r.lhs > r.rhs_exact * (1.0 + 1e-9) + 1e-12)
        r.verdict = Verdict::fail;
    else
        r.verdict = Verdict::pass;
    return r;
}

ConcentrationReport subspace_concentration_check(const PointSet& i, double alpha,
                                                 const FpVector& eta, const Subspace& v,
                                                 const ResourceCaps& caps) {
    const SpectrumField field = dft_full(i, caps);
    const InstanceProfile prof = hyperplane_profile(i, caps);
    return subspace_concentration_check(i, field, prof, alpha, eta, v, caps);
}

}  // namespace orbitlab
