#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rs/batch.hpp"
#include "rs/certificate.hpp"
#include "rs/config.hpp"
#include "rs/types.hpp"

namespace rs::lr {

/// Non-increasing non-negative parts, trailing zeros trimmed.
using Partition = std::vector<int>;

/// Strictly increasing 1-based indices j_1 < ... < j_r inside {1..d}.
using IndexTuple = std::vector<int>;

/// (m+1)-tuple (J_0, J_1, ..., J_m) of common cardinality r.
struct LRTuple {
    std::vector<IndexTuple> j;

    bool operator==(const LRTuple& o) const = default;
};

Partition normalize(Partition p);  // trims trailing zeros, validates ordering

/// Associated partition lambda(J) = (j_r - r, ..., j_1 - 1).
Partition partition_of(const IndexTuple& j);

/// All r-subsets of {1..d} in lexicographic order.
std::vector<IndexTuple> index_tuples(int d, int r);

/// Multi-factor Littlewood-Richardson coefficient c^outer_{inners}, computed
/// by iterated two-factor expansion; two-factor coefficients count LR skew
/// tableaux (row-weak, column-strict, lattice reading word). Returns 0
/// whenever sizes do not match. Partitions are capped at 64 cells.
long long lr_coefficient(const Partition& outer, const std::vector<Partition>& inners);

/// LR_d^r(m): all (m+1)-tuples over K_d^r whose associated partitions carry a
/// positive LR coefficient, in lexicographic order. Memoized per (d, r, m) in
/// memory and on disk (cache_dir/d{d}_r{r}_m{m}.json). Throws CapError when
/// C(d,r)^{m+1} > 10^7.
std::vector<LRTuple> enumerate_lr_tuples(int d, int r, int m,
                                         const Config& cfg = default_config());

/// Deduplicated linear description of the operator-picture inequalities:
/// one row per distinct J_0 with the smallest right-hand side over all
/// tuples sharing it, plus the trace value tau. Rows are 0-based index sets.
struct InequalitySystem {
    int d = 0;
    double tau = 0.0;
    std::vector<std::pair<std::vector<int>, double>> rows;
};
InequalitySystem inequality_system(const Parameters& params, const Weights& w,
                                   const Config& cfg = default_config());

/// Membership oracle for Lambda(O_v): trace condition, Horn-Klyachko
/// inequalities for every r, and strict positivity of mu_d. The certificate
/// names the first violated condition in canonical (r, lex) order.
std::pair<bool, Certificate> op_picture_contains(const Parameters& params,
                                                 const Weights& w,
                                                 const SpectrumVector& mu,
                                                 const Config& cfg = default_config());

/// Samples pairs of member spectra from random projective systems and checks
/// convex combinations stay members.
bool op_picture_convexity_probe(const Parameters& params, const Weights& w,
                                int trials, std::uint64_t seed,
                                batch::Exec exec = batch::Exec::OpenMP,
                                const Config& cfg = default_config());

}  // namespace rs::lr
