#pragma once

#include <cstdint>
#include <vector>

#include "rs/config.hpp"
#include "rs/rng.hpp"
#include "rs/types.hpp"

namespace rs::geom {

/// Tuple of isometries U_i in C^{d x k_i} (orthonormal columns).
struct IsometryTuple {
    std::vector<Mat> u;

    static IsometryTuple make(std::vector<Mat> u, double tol = 1e-10);
};

/// Tuple of orthogonal projections P_i of rank k_i in C^{d x d}.
struct ProjectionTuple {
    std::vector<Mat> p;
};

/// Draws a projective system with the given weights: V_i = v_i U_i^* with U_i
/// the positive-diagonal QR factor of a Gaussian d x k_i matrix. Retries on a
/// fresh substream until S_V is invertible. Deterministic in (seed).
ReconstructionSystem random_projective(const Parameters& params, const Weights& w,
                                       std::uint64_t seed,
                                       const Config& cfg = default_config());

/// P_i = U_i U_i^*.
ProjectionTuple phi(const IsometryTuple& iso);

/// S_v(Q) = sum v_i^2 Q_i; trace is tau for projection tuples.
Mat s_v_map(const ProjectionTuple& proj, const Weights& w);

/// gamma: isometry tuple -> projective system { v_i U_i^* }.
ReconstructionSystem gamma_map(const IsometryTuple& iso, const Parameters& params,
                               const Weights& w);

/// Inverse of gamma on projective systems: U_i = v_i^{-1} V_i^*.
IsometryTuple isometries_of(const ReconstructionSystem& sys, const Weights& w);

/// Local polar section s_{P,W}(Q) = h_P(Q) W where h_P(Q) is the unitary
/// polar factor of Q P + (I-Q)(I-P). Requires ||Q - P|| < 1 and W W^* = P.
/// The result X satisfies X X^* = Q, and s_{P,W}(P) = W.
Mat local_section(const Mat& p, const Mat& q, const Mat& w,
                  const Config& cfg = default_config());

/// Checks the dual parametrization: with W = U . V# (block rows of U T_{V#}),
/// is_dual(W, sys) must agree with the predicate P U^* P = P, P = P_{R(T_V)}.
/// Returns whether the two booleans agree (they always should).
bool dual_parametrization_probe(const ReconstructionSystem& sys, const Mat& u_gl,
                                double tol, const Config& cfg = default_config());

/// System W = U . V for U in GL(n): blocks are the row-blocks of U T_V.
ReconstructionSystem gl_action(const ReconstructionSystem& sys, const Mat& u_gl,
                               const Config& cfg = default_config());

/// Orthogonal projection onto R(T_V) in C^n.
Mat range_projection(const ReconstructionSystem& sys,
                     const Config& cfg = default_config());

/// Random dual of sys: T_W^* = T_{V#}^* + Z (I - P) with Z Gaussian of the
/// given scale. Exactly dual by construction.
ReconstructionSystem random_dual(const ReconstructionSystem& sys, Rng& rng,
                                 double scale, const Config& cfg = default_config());

}  // namespace rs::geom
