#pragma once

#include <optional>
#include <vector>

#include "rs/config.hpp"
#include "rs/types.hpp"

namespace rs {

/// Synthesis operator T_V^* = [V_1^* | ... | V_m^*], d x n. Column ranges
/// partition C^n by the k_i.
Mat synthesis(const ReconstructionSystem& sys);

/// Analysis operator T_V (n x d): x -> (V_1 x, ..., V_m x) stacked.
Mat analysis(const ReconstructionSystem& sys);

/// RS operator S_V = sum_i V_i^* V_i, symmetrized. Positive semidefinite.
Mat frame_operator(const ReconstructionSystem& sys);

/// Gram matrix G_V = T_V T_V^*, n x n.
Mat gram(const ReconstructionSystem& sys);

/// True iff S_V is invertible under the relative sigma rule.
bool is_rs(const ReconstructionSystem& sys, const Config& cfg = default_config());

/// lambda(S_V) non-increasing.
SpectrumVector spectrum(const ReconstructionSystem& sys);

/// Frame constants (A_V, B_V) = (lambda_min, lambda_max)(S_V).
/// Throws SingularityError (carrying lambda_min) when sys is not an RS.
std::pair<double, double> bounds(const ReconstructionSystem& sys,
                                 const Config& cfg = default_config());

/// Canonical dual V# = { V_i S_V^{-1} }. S_{V#} = S_V^{-1} and is_dual(V#, V).
ReconstructionSystem canonical_dual(const ReconstructionSystem& sys,
                                    const Config& cfg = default_config());

/// True iff || T_W^* T_V - I_d || <= tol (spectral norm).
bool is_dual(const ReconstructionSystem& w, const ReconstructionSystem& v, double tol);
bool is_dual(const ReconstructionSystem& w, const ReconstructionSystem& v);

/// If every block satisfies V_i V_i^* = v_i^2 I within tol, returns the
/// weights v_i = ||V_i||_sp; otherwise empty.
std::optional<Weights> projective_check(const ReconstructionSystem& sys, double tol);
std::optional<Weights> projective_check(const ReconstructionSystem& sys);

/// Right action V . U = { V_i U } for invertible U (d x d).
/// S_{V.U} = U^* S_V U.
ReconstructionSystem act(const ReconstructionSystem& sys, const Mat& u,
                         const Config& cfg = default_config());

/// Sub-system keeping the listed block indices (0-based, increasing).
ReconstructionSystem restrict_to(const ReconstructionSystem& sys,
                                 const std::vector<int>& keep);

}  // namespace rs
