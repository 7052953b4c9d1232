#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rs/batch.hpp"
#include "rs/config.hpp"
#include "rs/types.hpp"

namespace rs::potential {

/// FP(V) = tr S_V^2.
double frame_potential(const ReconstructionSystem& sys);

/// Joint potential FP(V, W) = tr S_V^2 + tr S_W^2. Duality is not required;
/// shapes must match.
double joint_potential(const ReconstructionSystem& v, const ReconstructionSystem& w);

/// F(x) = sum x_i^2 + x_i^{-2}, the spectral form of FP(V, V#).
double f_objective(const RVec& mu);

/// (tau^4 + d^4) / (d tau^2); attained exactly when a tight projective
/// system exists for the parameters.
double universal_lower_bound(const Parameters& params, const Weights& w);

/// Frobenius-orthonormal basis of the commutant C_V = {V_i^* V_i}'.
struct CommutantBasis {
    std::vector<Mat> basis;
    int dimension = 0;
};
CommutantBasis commutant(const ReconstructionSystem& sys,
                         const Config& cfg = default_config());

/// dim C_V == 1 (scalars only).
bool is_irreducible(const ReconstructionSystem& sys,
                    const Config& cfg = default_config());

/// One sigma-eigenspace compression V^j of a decomposed system.
struct TightComponent {
    double sigma = 0.0;
    int dim = 0;                       // d_j
    std::vector<int> k;                // k^j, one entry per original block (zeros kept)
    std::vector<int> kept_blocks;      // indices with k^j_i >= 1
    std::optional<ReconstructionSystem> system;  // blocks reduced to their row spaces
    double tight_residual = 0.0;       // || S_{V^j} - sigma I ||
    double commute_residual = 0.0;     // max_i || [P_sigma, V_i^* V_i] ||
    std::vector<int> irreducible_dims; // dims of the minimal-projection split
};

/// Tight-orthogonal-sum structure of a projective system. The commutation of
/// the spectral projections with every V_i^* V_i is the minimizer test; it is
/// reported, never assumed.
struct DecompositionReport {
    bool minimizer_structure = false;  // all spectral projections in C_V
    double worst_commute_residual = 0.0;
    double worst_tight_residual = 0.0;
    std::vector<TightComponent> components;
};
DecompositionReport tight_decomposition(const ReconstructionSystem& sys,
                                        const Config& cfg = default_config());

/// Optimal spectrum lambda_v and minimum p_v of the joint potential.
struct MinimizerCertificate {
    SpectrumVector lambda_v;
    double p_v = 0.0;
    bool certified = true;  // false when the LR cap forced sampling mode
    std::vector<std::pair<double, int>> sigma;  // distinct values with multiplicities
};

/// Minimizes F over the Horn-Klyachko polytope (trace tau, sorted, mu_d >=
/// epsilon floor) by an active-set Newton method on the deduplicated linear
/// description. When LR enumeration hits its cap: throws CapError if
/// cfg.certified, otherwise falls back to Riemannian sampling descent and
/// flags the result non-certified.
MinimizerCertificate optimal_spectrum(const Parameters& params, const Weights& w,
                                      const Config& cfg = default_config());

/// Attempts to synthesize a projective system whose RS operator has the
/// target spectrum, by Riemannian descent of tr S^2 + tr S^{-2} followed by
/// power-sum polishing. Failure is reported, not thrown.
struct ConstructResult {
    std::optional<ReconstructionSystem> sys;
    double residual = 0.0;  // || lambda(S) - target ||_inf of the best try
    bool success = false;
};
ConstructResult construct_with_spectrum(const Parameters& params, const Weights& w,
                                        const RVec& target, std::uint64_t seed,
                                        int restarts = 100,
                                        batch::Exec exec = batch::Exec::OpenMP,
                                        const Config& cfg = default_config());

}  // namespace rs::potential
