#include "rs/erasure.hpp"

#include <algorithm>

#include "rs/batch.hpp"
#include "rs/core.hpp"
#include "rs/errors.hpp"

namespace rs::erasure {

namespace {

std::vector<int> complement_of(const std::vector<int>& j, int m) {
    std::vector<int> keep;
    std::size_t pos = 0;
    for (int i = 0; i < m; ++i) {
        if (pos < j.size() && j[pos] == i) {
            ++pos;
        } else {
            keep.push_back(i);
        }
    }
    return keep;
}

void validate_j(const std::vector<int>& j, int m) {
    if (j.empty()) throw ArgumentError("erase: J must be nonempty");
    if (static_cast<int>(j.size()) >= m) throw ArgumentError("erase: J must be proper");
    int prev = -1;
    for (int i : j) {
        if (i <= prev || i >= m)
            throw ArgumentError("erase: J indices must be increasing and in range");
        prev = i;
    }
}

}  // namespace

ErasureReport erase(const ReconstructionSystem& sys, const std::vector<int>& j,
                    const Config& cfg) {
    const Parameters& p = sys.params;
    validate_j(j, p.m);

    const Mat s = frame_operator(sys);
    if (!invertible_rel(s, cfg.rank_tol_rel))
        throw SingularityError("erase: system is not an RS", sigma_min(s));
    const Mat sinv = s.inverse();
    const auto [a_v, b_v] = bounds(sys, cfg);

    Mat erased_sum = Mat::Zero(p.d, p.d);
    double norms_sq = 0.0;
    for (int i : j) {
        erased_sum += sys.blocks[i].adjoint() * sys.blocks[i];
        const double ni = spectral_norm(sys.blocks[i]);
        norms_sq += ni * ni;
    }

    ErasureReport rep;
    rep.j = j;
    rep.m_j = Mat::Identity(p.d, p.d) - erased_sum * sinv;

    // Identity S_{V_J} = M_J S_V, valid for every J (invertible or not).
    // Computed blockwise: the remainder may have tr k < d and still be a
    // perfectly fine (non-RS) operator sum.
    Mat s_rest = Mat::Zero(p.d, p.d);
    for (int i : complement_of(j, p.m))
        s_rest += sys.blocks[i].adjoint() * sys.blocks[i];
    s_rest = hermitize(s_rest);
    if ((s_rest - rep.m_j * s).norm() > 1e-10 * std::max(1.0, s.norm()))
        throw Error("erase: internal identity S_{V_J} = M_J S_V violated");

    rep.survives = invertible_rel(rep.m_j, cfg.rank_tol_rel);

    const double ck = a_v - norms_sq;
    if (ck > 0) rep.bound_ck = ck;

    if (rep.survives) {
        const double inv_norm = 1.0 / sigma_min(rep.m_j);  // ||M_J^{-1}||
        rep.bound_new = a_v / inv_norm;
        if (j.size() == 1)
            rep.bound_asgari = a_v * a_v / (a_v + norms_sq * inv_norm * inv_norm);
        const RVec lam = eigvals_desc(s_rest);
        rep.exact_a = lam(lam.size() - 1);
        rep.b_trunc = lam(0);
    }
    return rep;
}

ReconstructionSystem truncated_dual(const ReconstructionSystem& sys,
                                    const std::vector<int>& j, const Config& cfg) {
    const ErasureReport rep = erase(sys, j, cfg);
    if (!rep.survives)
        throw SingularityError("truncated_dual: M_J singular", sigma_min(rep.m_j));
    const Mat mj_inv = rep.m_j.inverse();
    const auto dual = canonical_dual(sys, cfg);
    const auto keep = complement_of(j, sys.params.m);
    std::vector<int> k;
    std::vector<Mat> blocks;
    for (int i : keep) {
        k.push_back(sys.params.k[i]);
        blocks.push_back(dual.blocks[i] * mj_inv);
    }
    return ReconstructionSystem::make(Parameters::make(std::move(k), sys.params.d),
                                      std::move(blocks));
}

std::vector<std::vector<int>> subset_order(int m) {
    std::vector<std::vector<int>> subsets;
    for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
        std::vector<int> j;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) j.push_back(i);
        subsets.push_back(std::move(j));
    }
    std::stable_sort(subsets.begin(), subsets.end(),
                     [](const std::vector<int>& a, const std::vector<int>& b) {
                         if (a.size() != b.size()) return a.size() < b.size();
                         return a < b;
                     });
    return subsets;
}

std::vector<ErasureReport> scan(const ReconstructionSystem& sys, Exec exec,
                                const Config& cfg) {
    const int m = sys.params.m;
    if (m > 20) throw CapError("scan: 2^m subsets exceed the m <= 20 cap");
    if (m < 2) throw ArgumentError("scan: need m >= 2 for a proper nonempty J");
    const auto subsets = subset_order(m);
    const auto mode =
        exec == Exec::Serial ? batch::Exec::Serial : batch::Exec::OpenMP;
    return batch::map_indexed<ErasureReport>(
        subsets.size(), [&](std::size_t i) { return erase(sys, subsets[i], cfg); },
        mode);
}

}  // namespace rs::erasure
