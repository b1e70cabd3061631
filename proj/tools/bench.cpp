#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "orbitlab/instances.hpp"
#include "orbitlab/profile.hpp"
#include "orbitlab/spectrum.hpp"

using namespace orbitlab;

namespace {

/// Best-of timing: repeat until 0.2 s accumulated or 5 reps, keep the minimum.
template <class F>
double time_ms(F&& f) {
    double best = 1e300, total = 0.0;
    for (int rep = 0; rep < 5 && (rep < 2 || total < 200.0); ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        best = std::min(best, ms);
        total += ms;
    }
    return best;
}

Instance make(std::int64_t p, int d, Family family, std::uint64_t seed = 0) {
    InstanceConfig cfg;
    cfg.p = p;
    cfg.d = d;
    cfg.family = family;
    cfg.seed = seed;
    return gen_instance(cfg);
}

double max_dev(const SpectrumField& a, const SpectrumField& b) {
    double dev = 0.0;
    for (std::uint64_t c = 0; c < a.domain().size(); ++c)
        dev = std::max(dev, std::abs(a.magnitude(c) - b.magnitude(c)));
    return dev;
}

/// Per-cell unit count of the chirp path: d (M/p) log2 M with M the
/// Bluestein length, mirroring the decision formula in dft_full.
double chirp_units(std::int64_t p, int d) {
    std::size_t m = 1;
    while (m < 2 * static_cast<std::size_t>(p) - 1) m <<= 1;
    return d * (static_cast<double>(m) / static_cast<double>(p)) *
           std::log2(static_cast<double>(m));
}

}  // namespace

int main() {
    struct DftRow {
        std::int64_t p;
        int d;
        Family family;
    };
    const std::vector<DftRow> dft_rows = {
        {241, 1, Family::quadratic_residue},  {1009, 1, Family::quadratic_residue},
        {4001, 1, Family::quadratic_residue}, {10007, 1, Family::quadratic_residue},
        {11, 2, Family::diagonal_torus},      {31, 2, Family::diagonal_torus},
        {101, 2, Family::diagonal_torus},
    };

    std::printf("dft kernels (ms, best of reps)\n");
    std::printf("%7s %2s %7s %9s %9s %9s %9s %10s %9s\n", "p", "d", "|I|", "naive", "sparse",
                "chirp", "auto", "dev", "implied-k");
    std::vector<double> implied;
    for (const DftRow& row : dft_rows) {
        const Instance inst = make(row.p, row.d, row.family);
        const PointSet& pts = inst.orbit.points;

        SpectrumField naive = reference::dft_full(pts);
        SpectrumField sparse = dft_full(pts, DftStrategy::sparse_table);
        SpectrumField chirp = dft_full(pts, DftStrategy::chirp);
        const double dev =
            std::max(max_dev(naive, sparse), max_dev(naive, chirp)) / static_cast<double>(pts.size());

        const double t_naive = time_ms([&] { naive = reference::dft_full(pts); });
        const double t_sparse = time_ms([&] { sparse = dft_full(pts, DftStrategy::sparse_table); });
        const double t_chirp = time_ms([&] { chirp = dft_full(pts, DftStrategy::chirp); });
        const double t_auto = time_ms([&] { (void)dft_full(pts); });

        // kFastCrossover calibration: the k that equates measured per-unit
        // costs, t_chirp |I| / (t_sparse d (M/p) log2 M).
        const double k = t_chirp * static_cast<double>(pts.size()) /
                         (t_sparse * chirp_units(row.p, row.d));
        implied.push_back(k);

        std::printf("%7lld %2d %7llu %9.3f %9.3f %9.3f %9.3f %10.2e %9.3f\n",
                    static_cast<long long>(row.p), row.d,
                    static_cast<unsigned long long>(pts.size()), t_naive, t_sparse, t_chirp,
                    t_auto, dev, k);
    }
    std::sort(implied.begin(), implied.end());
    const double median = implied[implied.size() / 2];
    std::printf("median implied crossover constant: %.3f\n\n", median);

    const std::vector<DftRow> prof_rows = {
        {11, 2, Family::diagonal_torus},
        {31, 2, Family::diagonal_torus},
        {101, 2, Family::diagonal_torus},
        {13, 3, Family::cyclic_random},
    };
    std::printf("max hyperplane hit (ms, best of reps)\n");
    std::printf("%7s %2s %7s %8s %9s %9s %8s\n", "p", "d", "|I|", "planes", "naive", "histogram",
                "speedup");
    for (const DftRow& row : prof_rows) {
        const Instance inst = make(row.p, row.d, row.family, 1);
        const PointSet& pts = inst.orbit.points;
        const std::uint64_t p = static_cast<std::uint64_t>(row.p);
        std::uint64_t classes = 1;
        for (int t = 1; t < row.d; ++t) classes = classes * p + 1;
        const std::uint64_t planes = classes * p;

        std::uint64_t naive_hit = 0, kernel_hit = 0;
        const double t_naive = time_ms([&] { naive_hit = reference::max_hyperplane_hit(pts); });
        const double t_kernel =
            time_ms([&] { kernel_hit = hyperplane_profile(pts).max_hyperplane_hit; });
        if (naive_hit != kernel_hit) {
            std::printf("MISMATCH p=%llu d=%d naive=%llu kernel=%llu\n",
                        static_cast<unsigned long long>(p), row.d,
                        static_cast<unsigned long long>(naive_hit),
                        static_cast<unsigned long long>(kernel_hit));
            return 1;
        }
        std::printf("%7llu %2d %7llu %8llu %9.3f %9.3f %8.1fx\n",
                    static_cast<unsigned long long>(p), row.d,
                    static_cast<unsigned long long>(pts.size()),
                    static_cast<unsigned long long>(planes), t_naive, t_kernel,
                    t_naive / t_kernel);
    }
    return 0;
}
