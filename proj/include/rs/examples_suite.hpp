#pragma once

#include <string>
#include <vector>

#include "rs/config.hpp"
#include "rs/types.hpp"

namespace rs::examples {

/// The explicit minimizer for (m, k, d) = (3, (3,2,2), 4) with unit weights:
/// subspaces span{e1,e2,e3}, span{e1, w2}, span{e2, w3} with
/// w2 = -e3/2 + sqrt(3) e4 / 2 and w3 = -e3/2 - sqrt(3) e4 / 2.
/// lambda(S_V) = (2, 2, 3/2, 3/2).
ReconstructionSystem minimizer_322(const Config& cfg = default_config());

/// Riesz minimizer with orthogonal coordinate blocks: V_i = v_i x identity
/// rows on block i's coordinate range. Requires sum k_i = d.
ReconstructionSystem orthogonal_riesz(const Parameters& params, const Weights& w);

/// Two-subspace minimizer with commuting coordinate projections
/// (m = 2, k_1 + k_2 > d, k_i != d).
ReconstructionSystem commuting_two_subspace(int k1, int k2, int d, double v1, double v2);

/// Friedrichs angle cosine between R(V_i^*) and R(V_j^*): the largest
/// principal-angle cosine strictly below 1.
double friedrichs_cos(const ReconstructionSystem& sys, int i, int j);

struct Check {
    std::string label;
    bool pass = false;
    std::string detail;
};

struct ScenarioResult {
    std::string name;
    std::vector<Check> checks;
    bool passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

std::vector<std::string> scenario_names();

/// Runs one named scenario ("two-block-riesz", "vector-frame-commutant",
/// "vector-frame-lambda", "riesz-lambda", "two-subspace-lambda",
/// "minimizer-3-322-4").
ScenarioResult run_scenario(const std::string& name,
                            const Config& cfg = default_config());

std::vector<ScenarioResult> run_all(const Config& cfg = default_config());

}  // namespace rs::examples
