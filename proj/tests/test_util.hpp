#pragma once

#include <filesystem>

#include "rs/config.hpp"
#include "rs/core.hpp"
#include "rs/geometry.hpp"
#include "rs/rng.hpp"
#include "rs/types.hpp"

namespace rs_test {

inline rs::Config test_config() {
    rs::Config cfg;
    cfg.cache_dir =
        (std::filesystem::temp_directory_path() / "rs_test_cache").string();
    return cfg;
}

/// Random (not necessarily projective) reconstruction system with Gaussian
/// blocks, retried until S_V is invertible.
inline rs::ReconstructionSystem random_rs(const rs::Parameters& params,
                                          std::uint64_t seed) {
    const auto cfg = test_config();
    for (std::uint64_t attempt = 0;; ++attempt) {
        rs::Rng rng = rs::Rng::substream(seed, attempt);
        std::vector<rs::Mat> blocks;
        for (int i = 0; i < params.m; ++i)
            blocks.push_back(rs::gaussian_matrix(params.k[i], params.d, rng));
        auto sys = rs::ReconstructionSystem::make(params, std::move(blocks));
        if (rs::is_rs(sys, cfg)) return sys;
    }
}

inline rs::RVec unit_vector(int d, rs::Rng& rng) {
    rs::RVec x(d);
    for (int i = 0; i < d; ++i) x(i) = rng.normal();
    return x / x.norm();
}

inline rs::Mat random_unit_cvec(int d, rs::Rng& rng) {
    rs::Mat x = rs::gaussian_matrix(d, 1, rng);
    return x / x.norm();
}

}  // namespace rs_test
