#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "orbitlab/fft.hpp"
#include "orbitlab/spectrum.hpp"

using namespace orbitlab;

namespace {

PointSet qr_set(std::uint64_t q) {
    PrimeModulus p(q);
    PointDomain dom(p, 1);
    PointSet s(dom);
    for (std::uint64_t x = 1; x < q; ++x) s.insert_code((x * x) % q);
    return s;
}

PointSet random_set(PointDomain dom, std::uint64_t want, std::mt19937_64& rng) {
    PointSet s(dom);
    while (s.size() < want) s.insert_code(rng() % dom.size());
    return s;
}

}  // namespace

TEST_CASE("prime-length transform equals the direct DFT") {
    std::mt19937_64 rng(7);
    for (std::uint32_t p : {3u, 7u, 31u, 101u}) {
        PrimeFFT pf(p);
        std::vector<std::complex<double>> line(p), scratch(pf.conv_size());
        for (auto& z : line)
            z = {std::uniform_real_distribution<>(-1, 1)(rng),
                 std::uniform_real_distribution<>(-1, 1)(rng)};
        std::vector<std::complex<double>> want(p);
        for (std::uint32_t k = 0; k < p; ++k) {
            std::complex<double> acc = 0;
            for (std::uint32_t n = 0; n < p; ++n) {
                const double ang = 2.0 * std::numbers::pi * ((std::uint64_t)n * k % p) / p;
                acc += line[n] * std::complex<double>(std::cos(ang), std::sin(ang));
            }
            want[k] = acc;
        }
        pf.transform(line.data(), scratch.data());
        for (std::uint32_t k = 0; k < p; ++k) CHECK(std::abs(line[k] - want[k]) < 1e-10);
    }
}

TEST_CASE("exp_sum basics") {
    PointSet qr = qr_set(7);
    PrimeModulus p(7);
    CHECK(exp_sum(qr, FpVector(p, {0})) == doctest::Approx(3.0));
    CHECK(exp_sum(qr, FpVector(p, {1})) == doctest::Approx(std::sqrt(2.0)));

    PointDomain dom(p, 1);
    PointSet full(dom);
    for (std::uint64_t c = 0; c < 7; ++c) full.insert_code(c);
    CHECK(exp_sum(full, FpVector(p, {3})) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(exp_sum(PointSet(dom), FpVector(p, {1})), std::invalid_argument);
}

TEST_CASE("field magnitudes: singleton, quadratic residues, full line") {
    PrimeModulus p(7);
    PointDomain dom(p, 1);
    PointSet single(dom);
    single.insert_code(4);
    SpectrumField fs = dft_full(single);
    for (std::uint64_t c = 0; c < 7; ++c) CHECK(fs.magnitude(c) == doctest::Approx(1.0));

    SpectrumField fq = dft_full(qr_set(7));
    CHECK(fq.magnitude(std::uint64_t{0}) == doctest::Approx(3.0));
    for (std::uint64_t c = 1; c < 7; ++c)
        CHECK(fq.magnitude(c) == doctest::Approx(std::sqrt(2.0)));
    CHECK(fq.max_nonzero_ratio() == doctest::Approx(std::sqrt(2.0) / 3.0));

    PointSet full(dom);
    for (std::uint64_t c = 0; c < 7; ++c) full.insert_code(c);
    SpectrumField ff = dft_full(full);
    CHECK(ff.max_nonzero_ratio() < 1e-12);
}

TEST_CASE("quadratic residue law for p = 3 mod 4") {
    for (std::uint64_t q : {7ULL, 11ULL, 19ULL, 23ULL}) {
        SpectrumField f = dft_full(qr_set(q));
        const double want = std::sqrt(static_cast<double>(q) + 1.0) / 2.0;
        for (std::uint64_t c = 1; c < q; ++c)
            CHECK(std::abs(f.magnitude(c) - want) < 1e-9);
    }
}

TEST_CASE("both dft paths match the trig oracle") {
    std::mt19937_64 rng(99);
    for (std::uint64_t q : {7ULL, 11ULL, 31ULL}) {
        for (int d = 1; d <= 2; ++d) {
            PointDomain dom(PrimeModulus(q), d);
            // Small set lands on the sparse path, large set on the chirp path.
            for (std::uint64_t want : {std::uint64_t{3}, dom.size() / 2}) {
                PointSet s = random_set(dom, want, rng);
                SpectrumField fast = dft_full(s);
                SpectrumField slow = reference::dft_full(s);
                const double tol = 1e-9 * static_cast<double>(s.size());
                for (std::uint64_t c = 0; c < dom.size(); ++c)
                    CHECK(std::abs(fast.magnitude(c) - slow.magnitude(c)) < tol);
            }
        }
    }
}

TEST_CASE("parseval and negation symmetry on random sets") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 6; ++trial) {
        PointDomain dom(PrimeModulus(11), 2);
        PointSet s = random_set(dom, 5 + rng() % 40, rng);
        SpectrumField f = dft_full(s);
        CHECK(parseval_gap(f) < 1e-6);
        CHECK(f.magnitude(std::uint64_t{0}) == doctest::Approx(double(s.size())));
        for (std::uint64_t c = 0; c < dom.size(); ++c) {
            const std::uint64_t neg = dom.encode(dom.decode(c).negated());
            CHECK(f.magnitude(c) == doctest::Approx(f.magnitude(neg)));
        }
    }
}

TEST_CASE("spec_alpha thresholds around the quadratic residue ratio") {
    SpectrumField f = dft_full(qr_set(7));
    Spectrum hi = spec_alpha(f, 0.5);
    CHECK(hi.points.codes() == std::vector<std::uint64_t>{0});
    CHECK(hi.margin_flags.empty());
    Spectrum lo = spec_alpha(f, 0.4);
    CHECK(lo.points.size() == 7);
    CHECK(spectrum_symmetric(lo));
    CHECK_THROWS_AS(spec_alpha(f, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(spec_alpha(f, 1.5), std::invalid_argument);
}

TEST_CASE("threshold ambiguity detection") {
    SpectrumField f = dft_full(qr_set(7));
    const double ratio = std::sqrt(2.0) / 3.0;
    CHECK(f.threshold_ambiguous(ratio));
    CHECK(f.threshold_ambiguous(ratio + 5e-9));
    CHECK_FALSE(f.threshold_ambiguous(0.4));
    CHECK_FALSE(f.threshold_ambiguous(0.5));
}

TEST_CASE("spectrum is invariant under the acting group") {
    PrimeModulus p(5);
    std::vector<FpMatrix> gens{FpMatrix(p, 2, {0, 4, 1, 0})};
    MatrixGroup h = MatrixGroup::closure(p, 2, gens);
    OrbitSet i = orbit(h, FpVector(p, {1, 0}));
    SpectrumField f = dft_full(i.points);
    for (double a : {0.2, 0.35, 0.6, 0.9}) {
        Spectrum s = spec_alpha(f, a);
        if (!s.margin_flags.empty()) continue;
        CHECK(spectrum_h_invariant(s, h));
        CHECK(spectrum_symmetric(s));
        CHECK(s.points.contains_code(0));
    }
}

TEST_CASE("exact spectra agree with float spectra away from ties") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 4; ++trial) {
        PointDomain dom(PrimeModulus(11), 1);
        PointSet s = random_set(dom, 3 + rng() % 7, rng);
        SpectrumField f = dft_full(s);
        for (double a = 0.1; a < 0.95; a += 0.1) {
            if (f.threshold_ambiguous(a)) continue;
            Spectrum fl = spec_alpha(f, a);
            Spectrum ex = spec_alpha_exact(s, a);
            CHECK(fl.points == ex.points);
            CHECK(ex.margin_flags.empty());
        }
    }
}

TEST_CASE("exact mode decides a strict threshold tie") {
    // Singleton source: |S(xi)| = 1 for all xi; alpha = 1 makes every
    // comparison an exact tie, which strict > must resolve to "out".
    PointDomain dom(PrimeModulus(7), 1);
    PointSet s(dom);
    s.insert_code(3);
    Spectrum ex = spec_alpha_exact(s, 1.0);
    CHECK(ex.points.empty());
    CHECK(ex.margin_flags.empty());

    // Float path cannot: everything lands in the margin band.
    Spectrum fl = spec_alpha(dft_full(s), 1.0);
    CHECK(fl.points.empty());
    CHECK(fl.margin_flags.size() == 7);
}

TEST_CASE("exact mode pins the quadratic residue ratio") {
    PointSet qr = qr_set(7);
    // sqrt(2)/3 = 0.47140452...; membership flips between these alphas.
    Spectrum below = spec_alpha_exact(qr, 0.4714);
    CHECK(below.points.size() == 7);
    Spectrum above = spec_alpha_exact(qr, 0.4715);
    CHECK(above.points.codes() == std::vector<std::uint64_t>{0});
    CHECK_THROWS_AS(spec_alpha_exact(qr_set(67), 0.5), std::invalid_argument);
}
