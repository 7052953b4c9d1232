#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace rs {

/// Run-wide numerical policy. Every tolerance used by the library lives here
/// so reports can embed the effective values. A matrix counts as invertible
/// when sigma_min > rank_tol_rel * sigma_max; this single rule is shared by
/// is_rs, canonical_dual and the erasure module.
struct Config {
    double rank_tol_rel = 1e-10;      // relative sigma rule for invertibility
    double dual_tol = 1e-8;           // default tolerance for is_dual
    double projective_tol = 1e-10;    // default tolerance for projective_check
    double membership_slack = 1e-9;   // relative slack in spectral-picture inequalities
    double tight_residual = 1e-8;     // ||S - sigma I|| threshold for tightness
    double commute_tol = 1e-8;        // spectral projections vs commutant
    double construct_residual = 1e-6; // accepted residual for constructive duals
    double lambda_floor_rel = 1e-6;   // epsilon floor: mu_d >= lambda_floor_rel * tau/d

    std::uint64_t seed = 1;
    bool certified = true;            // refuse sampling fallbacks when true
    std::string cache_dir;            // empty: use RS_CACHE_DIR or ./lr_cache

    // Named generator spec; fixed so seeded runs are bit-exact across platforms.
    static constexpr const char* rng_name = "mt19937_64/boxmuller-v1";

    /// Set a tolerance by name ("rank_tol_rel", "dual_tol", ...). Throws
    /// ArgumentError on unknown names.
    void set_tolerance(const std::string& name, double value);

    /// Name -> value view of all tolerances, for report embedding.
    std::map<std::string, double> tolerances() const;
};

const Config& default_config();

}  // namespace rs
