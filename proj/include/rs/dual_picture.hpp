#pragma once

#include <cstdint>
#include <utility>

#include "rs/batch.hpp"
#include "rs/certificate.hpp"
#include "rs/config.hpp"
#include "rs/types.hpp"

namespace rs::dualpic {

/// Membership oracle for Lambda(D(V)), the spectra of RS operators of duals
/// of sys. For n >= 2d membership is mu_j >= lambda_{d-j+1}(S_V)^{-1}; for
/// n < 2d the upper interlacing family is added. The certificate names the
/// first violated inequality ("mayor2d" / "menor2d", 1-based index, both
/// sides). mu must be strictly positive.
std::pair<bool, Certificate> contains(const ReconstructionSystem& sys,
                                      const SpectrumVector& mu,
                                      const Config& cfg = default_config());

/// Constructive half of the Fan-Pall theorem: returns a dual W of sys with
/// lambda(S_W) = mu. The rank-d projection P with
/// lambda(P D_n(mu) P) = (lambda(S_V^{-1}), 0) is built by a chain of n-d
/// single-codimension interlacing compressions, with a projected-gradient
/// fallback on the isometry manifold; the dual is then assembled through the
/// unitary chain of the existence proof. Throws ArgumentError for
/// non-members and ConvergenceError (carrying the residual) if the numerical
/// construction misses its tolerance.
ReconstructionSystem construct_dual_with_spectrum(const ReconstructionSystem& sys,
                                                  const SpectrumVector& mu,
                                                  const Config& cfg = default_config());

/// tr S_V^{-2}: the frame-potential floor over all duals, attained only by
/// the canonical dual.
double dual_potential_floor(const ReconstructionSystem& sys,
                            const Config& cfg = default_config());

/// Samples pairs of member spectra (from random duals) and checks convex
/// combinations stay members.
bool convexity_probe(const ReconstructionSystem& sys, int trials, std::uint64_t seed,
                     batch::Exec exec = batch::Exec::OpenMP,
                     const Config& cfg = default_config());

/// Isometry C (n x d) with C^* diag(a) C having spectrum target (both given
/// non-increasingly; target has d entries, a has n). Exposed for tests.
/// Requires the Fan-Pall interlacing conditions between a and target.
Mat fan_pall_isometry(const RVec& a, const RVec& target, std::uint64_t seed,
                      const Config& cfg = default_config());

}  // namespace rs::dualpic
