#include "rs/core.hpp"

#include <cmath>

#include "rs/errors.hpp"

namespace rs {

Mat synthesis(const ReconstructionSystem& sys) {
    const Parameters& p = sys.params;
    Mat t = Mat::Zero(p.d, p.n);
    int col = 0;
    for (int i = 0; i < p.m; ++i) {
        t.middleCols(col, p.k[i]) = sys.blocks[i].adjoint();
        col += p.k[i];
    }
    return t;
}

Mat analysis(const ReconstructionSystem& sys) { return synthesis(sys).adjoint(); }

Mat frame_operator(const ReconstructionSystem& sys) {
    const Parameters& p = sys.params;
    Mat s = Mat::Zero(p.d, p.d);
    for (const Mat& v : sys.blocks) s += v.adjoint() * v;
    return hermitize(s);
}

Mat gram(const ReconstructionSystem& sys) {
    const Mat t = analysis(sys);
    return hermitize(t * t.adjoint());
}

bool is_rs(const ReconstructionSystem& sys, const Config& cfg) {
    return invertible_rel(frame_operator(sys), cfg.rank_tol_rel);
}

SpectrumVector spectrum(const ReconstructionSystem& sys) {
    return SpectrumVector::make(eigvals_desc(frame_operator(sys)));
}

std::pair<double, double> bounds(const ReconstructionSystem& sys, const Config& cfg) {
    const RVec lam = eigvals_desc(frame_operator(sys));
    const double a = lam(lam.size() - 1);
    const double b = lam(0);
    if (!(a > cfg.rank_tol_rel * b))
        throw SingularityError("bounds: system is not an RS (S_V singular)", a);
    return {a, b};
}

ReconstructionSystem canonical_dual(const ReconstructionSystem& sys, const Config& cfg) {
    const Mat s = frame_operator(sys);
    if (!invertible_rel(s, cfg.rank_tol_rel))
        throw SingularityError("canonical_dual: S_V singular", sigma_min(s));
    const Mat sinv = s.inverse();
    std::vector<Mat> blocks;
    blocks.reserve(sys.blocks.size());
    for (const Mat& v : sys.blocks) blocks.push_back(v * sinv);
    return ReconstructionSystem::make(sys.params, std::move(blocks));
}

bool is_dual(const ReconstructionSystem& w, const ReconstructionSystem& v, double tol) {
    if (!(w.params == v.params))
        throw StructuralError("is_dual: parameter mismatch");
    const Mat defect = synthesis(w) * analysis(v) - Mat::Identity(v.params.d, v.params.d);
    return spectral_norm(defect) <= tol;
}

bool is_dual(const ReconstructionSystem& w, const ReconstructionSystem& v) {
    return is_dual(w, v, default_config().dual_tol);
}

std::optional<Weights> projective_check(const ReconstructionSystem& sys, double tol) {
    const Parameters& p = sys.params;
    RVec v(p.m);
    for (int i = 0; i < p.m; ++i) {
        const Mat vv = sys.blocks[i] * sys.blocks[i].adjoint();
        const double vi = spectral_norm(sys.blocks[i]);
        if (vi <= 0) return std::nullopt;
        const Mat defect = vv - vi * vi * Mat::Identity(p.k[i], p.k[i]);
        if (spectral_norm(defect) > tol) return std::nullopt;
        v(i) = vi;
    }
    return Weights::make(std::move(v), p);
}

std::optional<Weights> projective_check(const ReconstructionSystem& sys) {
    return projective_check(sys, default_config().projective_tol);
}

ReconstructionSystem act(const ReconstructionSystem& sys, const Mat& u, const Config& cfg) {
    if (u.rows() != sys.params.d || u.cols() != sys.params.d)
        throw StructuralError("act: U must be d x d");
    if (!invertible_rel(u, cfg.rank_tol_rel))
        throw SingularityError("act: U singular", sigma_min(u));
    std::vector<Mat> blocks;
    blocks.reserve(sys.blocks.size());
    for (const Mat& v : sys.blocks) blocks.push_back(v * u);
    return ReconstructionSystem::make(sys.params, std::move(blocks));
}

ReconstructionSystem restrict_to(const ReconstructionSystem& sys,
                                 const std::vector<int>& keep) {
    if (keep.empty()) throw ArgumentError("restrict_to: empty block selection");
    std::vector<int> k;
    std::vector<Mat> blocks;
    int prev = -1;
    for (int i : keep) {
        if (i <= prev || i >= sys.params.m)
            throw ArgumentError("restrict_to: indices must be increasing and in range");
        prev = i;
        k.push_back(sys.params.k[i]);
        blocks.push_back(sys.blocks[i]);
    }
    return ReconstructionSystem::make(Parameters::make(std::move(k), sys.params.d),
                                      std::move(blocks));
}

}  // namespace rs
