#pragma once

#include <cstdint>
#include <vector>

#include "orbitlab/caps.hpp"
#include "orbitlab/group.hpp"
#include "orbitlab/pointset.hpp"

namespace orbitlab {

/// |S(xi)| for every character xi in F_p^d, where S(xi) = sum over the
/// source set of e_p(xi . x). tolerance() = 1e-9 * |I| is the float slack
/// every threshold comparison must respect.
class SpectrumField {
public:
    SpectrumField(PointDomain dom, std::vector<double> magnitudes, std::uint64_t source_size);

    const PointDomain& domain() const noexcept { return dom_; }
    std::uint64_t source_size() const noexcept { return source_size_; }
    double tolerance() const noexcept { return 1e-9 * static_cast<double>(source_size_); }

    double magnitude(std::uint64_t code) const { return mags_[code]; }
    double magnitude(const FpVector& xi) const { return mags_[dom_.encode(xi)]; }
    const std::vector<double>& magnitudes() const noexcept { return mags_; }

    /// max over xi != 0 of |S(xi)| / |I|.
    double max_nonzero_ratio() const;

    /// True when alpha sits within 10 tolerance/|I| of some magnitude
    /// ratio, i.e. float membership at this threshold cannot be trusted.
    bool threshold_ambiguous(double alpha) const;

private:
    PointDomain dom_;
    std::vector<double> mags_;
    std::uint64_t source_size_;
};

/// exp_sum by the definition, one cos/sin per term. The measurement
/// everything else is checked against, and itself the unit oracle.
double exp_sum(const PointSet& i, const FpVector& xi);

/// Full table of |S(xi)|. Picks between the table-driven sparse evaluation
/// (O(p^d |I|)) and per-axis chirp FFTs (O(d p^d log p)) by a measured
/// cost crossover; both paths agree within tolerance and are deterministic
/// for any thread count. The fast path transiently holds p^d complex cells.
SpectrumField dft_full(const PointSet& i, const ResourceCaps& caps = {});

/// Kernel selection override for benchmarking and cross-checks.
enum class DftStrategy { automatic, sparse_table, chirp };

SpectrumField dft_full(const PointSet& i, DftStrategy strategy, const ResourceCaps& caps = {});

/// Spec_alpha with an explicit float tie band: points get |S| > alpha|I| + tau,
/// margin_flags get (alpha|I| - tau, alpha|I| + tau].
struct Spectrum {
    double alpha;
    PointSet points;
    PointSet margin_flags;
};

Spectrum spec_alpha(const SpectrumField& field, double alpha);

/// Exact-arithmetic spec_alpha for p <= 61: |S(xi)|^2 is evaluated from the
/// integer autocorrelation of residue counts at >= 160-bit precision, so the
/// band collapses (margin_flags only on provable near-ties).
Spectrum spec_alpha_exact(const PointSet& i, double alpha);

double max_nonzero_ratio(const SpectrumField& field);

/// Relative Parseval defect |sum |S|^2 - p^d |I|| / (p^d |I|).
double parseval_gap(const SpectrumField& field);

/// Set equality checks used by the verifiers; membership from the given spectrum.
bool spectrum_symmetric(const Spectrum& s);
bool spectrum_h_invariant(const Spectrum& s, const MatrixGroup& h);

namespace reference {

/// Naive dense evaluation straight from the definition; serial, one trig
/// pair per term. Oracle for dft_full.
SpectrumField dft_full(const PointSet& i, const ResourceCaps& caps = {});

}  // namespace reference

}  // namespace orbitlab
