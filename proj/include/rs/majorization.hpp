#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rs/batch.hpp"
#include "rs/config.hpp"
#include "rs/types.hpp"

namespace rs::maj {

enum class Relation { Majorized, WeaklyMajorized, Incomparable };

struct MajorizationVerdict {
    Relation relation = Relation::Incomparable;
    // First partial-sum index (1-based) violating the stronger relation:
    // for WeaklyMajorized this is the trace mismatch marker (0), for
    // Incomparable the first violated partial sum.
    int witness = 0;
};

/// Verdict for x against y ("x majorized by y"). Partial sums of the sorted
/// vectors are compared with relative slack 1e-9 * ||y||_1; Majorized
/// additionally requires equal totals.
MajorizationVerdict majorizes(const RVec& x, const RVec& y);

bool is_majorized(const RVec& x, const RVec& y);        // x < y
bool is_weakly_majorized(const RVec& x, const RVec& y); // x <_w y

/// Appending lemma: if b <= min gamma, tr(gamma, b 1_m) <= tr(alpha, beta) and
/// gamma <_w alpha, then (gamma, b 1_m) <_w (alpha, beta). Returns the truth
/// of the conclusion for the given inputs; throws when b > min gamma, and
/// reports unmet hypotheses via the optional flag.
struct AppendCheck {
    bool hypotheses_met = false;
    bool conclusion = false;
};
AppendCheck append_lemma_check(const RVec& alpha, const RVec& gamma,
                               const RVec& beta, double b);

/// Pinching M = P S P + (I-P) S (I-P); lambda(M) < lambda(S).
Mat pinch(const Mat& s, const Mat& p);

/// Spectrum of the potential minimizer for vector frames (k = 1_m): the
/// d-irregularity index r and the flat tail c 1_{d-r}.
SpectrumVector vector_frame_lambda(const RVec& v_sorted, int d);

/// Empirical harness for the majorization-minimality conjecture.
struct HarnessReport {
    Parameters params;
    RVec weights;
    RVec lambda_v;
    int samples = 0;
    int passes = 0;
    double worst_margin = 0.0;  // most negative partial-sum slack seen
    std::optional<ReconstructionSystem> counterexample;
};

/// Samples random projective systems and tests lambda_v < lambda(S_V).
/// A counterexample is an outcome, not an error.
HarnessReport conjecture_harness(const Parameters& params, const Weights& w,
                                 int samples, std::uint64_t seed,
                                 batch::Exec exec = batch::Exec::OpenMP,
                                 const Config& cfg = default_config());

}  // namespace rs::maj
