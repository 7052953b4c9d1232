#include "rs/types.hpp"

#include <algorithm>

#include "rs/errors.hpp"

namespace rs {

Parameters Parameters::make(std::vector<int> k, int d) {
    if (k.empty()) throw ArgumentError("Parameters: m must be >= 1");
    if (d < 1) throw ArgumentError("Parameters: d must be >= 1");
    for (int ki : k)
        if (ki < 1) throw ArgumentError("Parameters: every k_i must be >= 1");
    Parameters p;
    p.m = static_cast<int>(k.size());
    p.k = std::move(k);
    p.d = d;
    p.n = std::accumulate(p.k.begin(), p.k.end(), 0);
    if (p.n < d) throw ArgumentError("Parameters: n = tr k must be >= d");
    return p;
}

Weights Weights::make(RVec v, const Parameters& p) {
    if (v.size() != p.m) throw StructuralError("Weights: length != m");
    double tau = 0.0;
    for (int i = 0; i < p.m; ++i) {
        if (v(i) <= 0) throw ArgumentError("Weights: v_i must be positive");
        tau += v(i) * v(i) * p.k[i];
    }
    Weights w;
    w.v = std::move(v);
    w.tau = tau;
    return w;
}

SpectrumVector SpectrumVector::make(RVec entries) {
    for (Eigen::Index i = 0; i + 1 < entries.size(); ++i)
        if (entries(i) < entries(i + 1))
            throw ArgumentError("SpectrumVector: entries must be non-increasing");
    return SpectrumVector{std::move(entries)};
}

SpectrumVector SpectrumVector::sort_of(const RVec& raw) {
    RVec s = raw;
    std::sort(s.data(), s.data() + s.size(), std::greater<double>());
    return SpectrumVector{std::move(s)};
}

SpectrumVector SpectrumVector::pad(int n) const {
    return SpectrumVector{pad_zeros(entries, n)};
}

ReconstructionSystem ReconstructionSystem::make(Parameters p, std::vector<Mat> blocks) {
    if (static_cast<int>(blocks.size()) != p.m)
        throw StructuralError("ReconstructionSystem: block count != m");
    for (int i = 0; i < p.m; ++i) {
        if (blocks[i].rows() != p.k[i] || blocks[i].cols() != p.d)
            throw StructuralError("ReconstructionSystem: block " + std::to_string(i) +
                                  " has shape " + std::to_string(blocks[i].rows()) + "x" +
                                  std::to_string(blocks[i].cols()) + ", expected " +
                                  std::to_string(p.k[i]) + "x" + std::to_string(p.d));
    }
    return ReconstructionSystem{std::move(p), std::move(blocks)};
}

}  // namespace rs
