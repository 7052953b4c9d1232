// Compares the serial reference implementations of the batch kernels against
// their OpenMP counterparts and reports timings plus agreement.

#include <chrono>
#include <cstdio>
#include <filesystem>

#include <omp.h>

#include "rs/batch.hpp"
#include "rs/core.hpp"
#include "rs/erasure.hpp"
#include "rs/geometry.hpp"
#include "rs/lr.hpp"
#include "rs/majorization.hpp"
#include "rs/rng.hpp"

using namespace rs;

namespace {

template <class Fn>
double time_secs(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel, bool agree) {
    std::printf("%-34s %9.3f ms %9.3f ms   x%.2f   %s\n", name, serial * 1e3,
                parallel * 1e3, serial / parallel, agree ? "identical" : "DIFFER");
}

}  // namespace

int main() {
    Config cfg;
    cfg.cache_dir =
        (std::filesystem::temp_directory_path() / "rs_bench_cache").string();
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-34s %12s %12s %8s\n", "kernel", "serial", "openmp", "speedup");

    // Erasure subset scan on a 12-block system (2^12 - 2 subsets).
    {
        const auto params = Parameters::make(std::vector<int>(12, 1), 4);
        const auto w = Weights::make(RVec::Ones(12), params);
        const auto sys = geom::random_projective(params, w, 1, cfg);
        std::vector<erasure::ErasureReport> a, b;
        const double ts = time_secs([&] { a = erasure::scan(sys, erasure::Exec::Serial, cfg); });
        const double tp = time_secs([&] { b = erasure::scan(sys, erasure::Exec::OpenMP, cfg); });
        bool agree = a.size() == b.size();
        for (std::size_t i = 0; agree && i < a.size(); ++i) {
            agree = a[i].j == b[i].j && a[i].survives == b[i].survives;
            if (a[i].exact_a) agree = agree && a[i].exact_a == b[i].exact_a;
        }
        row("erasure scan (m=12)", ts, tp, agree);
    }

    // Spectrum sampling of random projective systems.
    {
        const auto params = Parameters::make({3, 2, 2}, 4);
        const auto w = Weights::make(RVec::Ones(3), params);
        auto kernel = [&](std::size_t i) {
            const auto sys = geom::random_projective(params, w, 500 + i, cfg);
            return spectrum(sys).entries(0);
        };
        std::vector<double> a, b;
        const double ts = time_secs(
            [&] { a = batch::map_indexed<double>(4000, kernel, batch::Exec::Serial); });
        const double tp = time_secs(
            [&] { b = batch::map_indexed<double>(4000, kernel, batch::Exec::OpenMP); });
        row("projective sampling (4000)", ts, tp, a == b);
    }

    // Conjecture harness (optimal spectrum computed once, then sampling).
    {
        const auto params = Parameters::make({3, 2, 2}, 4);
        const auto w = Weights::make(RVec::Ones(3), params);
        maj::HarnessReport a, b;
        const double ts = time_secs(
            [&] { a = maj::conjecture_harness(params, w, 2000, 7, batch::Exec::Serial, cfg); });
        const double tp = time_secs(
            [&] { b = maj::conjecture_harness(params, w, 2000, 7, batch::Exec::OpenMP, cfg); });
        row("conjecture harness (2000)", ts, tp,
            a.passes == b.passes && a.worst_margin == b.worst_margin);
    }

    // Dual sampling around a fixed system.
    {
        const auto sys = [] {
            Rng rng(3);
            std::vector<Mat> blocks;
            for (int k : {2, 2, 2}) blocks.push_back(gaussian_matrix(k, 3, rng));
            return ReconstructionSystem::make(Parameters::make({2, 2, 2}, 3),
                                              std::move(blocks));
        }();
        auto kernel = [&](std::size_t i) {
            Rng rng = Rng::substream(11, i);
            return spectrum(geom::random_dual(sys, rng, 1.0, cfg)).entries(0);
        };
        std::vector<double> a, b;
        const double ts = time_secs(
            [&] { a = batch::map_indexed<double>(20000, kernel, batch::Exec::Serial); });
        const double tp = time_secs(
            [&] { b = batch::map_indexed<double>(20000, kernel, batch::Exec::OpenMP); });
        row("dual sampling (20000)", ts, tp, a == b);
    }

    return 0;
}
