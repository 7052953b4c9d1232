#pragma once

#include <numeric>
#include <vector>

#include "rs/config.hpp"
#include "rs/linalg.hpp"

namespace rs {

/// (m, k, d) parameter set. n = sum k_i; any reconstruction system needs n >= d.
struct Parameters {
    int m = 0;
    std::vector<int> k;
    int d = 0;
    int n = 0;

    static Parameters make(std::vector<int> k, int d);

    bool operator==(const Parameters& o) const = default;

    /// Start offset of block i inside C^n.
    int offset(int i) const {
        return std::accumulate(k.begin(), k.begin() + i, 0);
    }
};

/// Positive block weights with tau = sum v_i^2 k_i.
struct Weights {
    RVec v;
    double tau = 0.0;

    static Weights make(RVec v, const Parameters& p);
};

/// Real eigenvalue vector sorted non-increasingly (multiplicities kept).
struct SpectrumVector {
    RVec entries;

    static SpectrumVector make(RVec entries);       // validates ordering
    static SpectrumVector sort_of(const RVec& raw); // sorts a raw vector

    int size() const { return static_cast<int>(entries.size()); }
    double operator[](int i) const { return entries(i); }

    /// (entries, 0_{n-d}) padding, e.g. lambda(G_V) from lambda(S_V).
    SpectrumVector pad(int n) const;
};

/// An (m, k, d) system: m operator blocks V_i in L(C^d, C^{k_i}), stored dense.
struct ReconstructionSystem {
    Parameters params;
    std::vector<Mat> blocks;  // blocks[i] is k_i x d

    static ReconstructionSystem make(Parameters p, std::vector<Mat> blocks);
};

}  // namespace rs
