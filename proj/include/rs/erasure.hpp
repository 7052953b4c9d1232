#pragma once

#include <optional>
#include <vector>

#include "rs/config.hpp"
#include "rs/types.hpp"

namespace rs::erasure {

/// Outcome of deleting the block set J from a system. Bounds are reported as
/// empty (not clamped) when the hypotheses of their theorems fail.
struct ErasureReport {
    std::vector<int> j;                  // erased indices, 0-based increasing
    Mat m_j;                             // I_d - sum_{i in J} V_i^* V_i S_V^{-1}
    bool survives = false;               // M_J invertible (relative sigma rule)
    std::optional<double> bound_new;     // A_V / ||M_J^{-1}||
    std::optional<double> bound_ck;      // A_V - sum ||V_i||^2, if positive
    std::optional<double> bound_asgari;  // |J| = 1 only
    std::optional<double> exact_a;       // lambda_min(S_{V_J}) when it survives
    std::optional<double> b_trunc;       // lambda_max(S_{V_J}) when it survives
};

/// Erasure analysis for a proper nonempty J. Also asserts the identity
/// S_{V_J} = M_J S_V internally (valid whether or not M_J is invertible).
ErasureReport erase(const ReconstructionSystem& sys, const std::vector<int>& j,
                    const Config& cfg = default_config());

/// Truncated canonical dual { W_i M_J^{-1} }_{i not in J}, W = V#. Equals the
/// canonical dual of the restricted system.
ReconstructionSystem truncated_dual(const ReconstructionSystem& sys,
                                    const std::vector<int>& j,
                                    const Config& cfg = default_config());

enum class Exec { Serial, OpenMP };

/// Reports for every proper nonempty J, ordered by |J| then lexicographically.
/// Capped at m <= 20. The parallel path evaluates subsets concurrently but
/// aggregates in the same deterministic order as the serial reference.
std::vector<ErasureReport> scan(const ReconstructionSystem& sys,
                                Exec exec = Exec::OpenMP,
                                const Config& cfg = default_config());

/// All proper nonempty subsets of {0..m-1}, sorted by size then lexicographic.
std::vector<std::vector<int>> subset_order(int m);

}  // namespace rs::erasure
