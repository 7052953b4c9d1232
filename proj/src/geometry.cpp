#include "rs/geometry.hpp"

#include "rs/core.hpp"
#include "rs/errors.hpp"

namespace rs::geom {

IsometryTuple IsometryTuple::make(std::vector<Mat> u, double tol) {
    for (const Mat& ui : u) {
        const Mat defect = ui.adjoint() * ui - Mat::Identity(ui.cols(), ui.cols());
        if (spectral_norm(defect) > tol)
            throw ArgumentError("IsometryTuple: columns not orthonormal");
    }
    return IsometryTuple{std::move(u)};
}

ReconstructionSystem random_projective(const Parameters& params, const Weights& w,
                                       std::uint64_t seed, const Config& cfg) {
    for (int i = 0; i < params.m; ++i)
        if (params.k[i] > params.d)
            throw ArgumentError("random_projective: k_i > d has no isometry");
    constexpr int kMaxRetries = 100;
    for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
        Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(attempt));
        std::vector<Mat> blocks;
        blocks.reserve(params.m);
        for (int i = 0; i < params.m; ++i) {
            const Mat g = gaussian_matrix(params.d, params.k[i], rng);
            const Mat u = qr_q_positive(g);
            blocks.push_back(w.v(i) * u.adjoint());
        }
        auto sys = ReconstructionSystem::make(params, std::move(blocks));
        if (is_rs(sys, cfg)) return sys;
    }
    throw DegeneracyError("random_projective: no invertible S_V after retries");
}

ProjectionTuple phi(const IsometryTuple& iso) {
    ProjectionTuple out;
    out.p.reserve(iso.u.size());
    for (const Mat& ui : iso.u) out.p.push_back(hermitize(ui * ui.adjoint()));
    return out;
}

Mat s_v_map(const ProjectionTuple& proj, const Weights& w) {
    if (proj.p.empty()) throw ArgumentError("s_v_map: empty tuple");
    const Eigen::Index d = proj.p[0].rows();
    Mat s = Mat::Zero(d, d);
    for (std::size_t i = 0; i < proj.p.size(); ++i)
        s += w.v(static_cast<int>(i)) * w.v(static_cast<int>(i)) * proj.p[i];
    return hermitize(s);
}

ReconstructionSystem gamma_map(const IsometryTuple& iso, const Parameters& params,
                               const Weights& w) {
    std::vector<Mat> blocks;
    blocks.reserve(iso.u.size());
    for (std::size_t i = 0; i < iso.u.size(); ++i)
        blocks.push_back(w.v(static_cast<int>(i)) * iso.u[i].adjoint());
    return ReconstructionSystem::make(params, std::move(blocks));
}

IsometryTuple isometries_of(const ReconstructionSystem& sys, const Weights& w) {
    std::vector<Mat> u;
    u.reserve(sys.blocks.size());
    for (std::size_t i = 0; i < sys.blocks.size(); ++i)
        u.push_back(sys.blocks[i].adjoint() / w.v(static_cast<int>(i)));
    return IsometryTuple::make(std::move(u));
}

Mat local_section(const Mat& p, const Mat& q, const Mat& w, const Config& cfg) {
    const Eigen::Index d = p.rows();
    if (q.rows() != d || q.cols() != d || p.cols() != d)
        throw StructuralError("local_section: projection shape mismatch");
    if (spectral_norm(w * w.adjoint() - p) > 1e-8)
        throw ArgumentError("local_section: W W^* != P");
    if (spectral_norm(q - p) >= 1.0 - 1e-8)
        throw OutOfChartError("local_section: ||Q - P|| >= 1, outside chart");
    const Mat t = q * p + (Mat::Identity(d, d) - q) * (Mat::Identity(d, d) - p);
    if (sigma_min(t) < cfg.rank_tol_rel)
        throw DegeneracyError("local_section: polar factor ill-conditioned");
    return polar_unitary(t) * w;
}

Mat range_projection(const ReconstructionSystem& sys, const Config& cfg) {
    const Mat t = analysis(sys);        // n x d
    const Mat tp = pinv(t, cfg.rank_tol_rel);
    return hermitize(t * tp);
}

ReconstructionSystem gl_action(const ReconstructionSystem& sys, const Mat& u_gl,
                               const Config& cfg) {
    const Parameters& p = sys.params;
    if (u_gl.rows() != p.n || u_gl.cols() != p.n)
        throw StructuralError("gl_action: U must be n x n");
    if (!invertible_rel(u_gl, cfg.rank_tol_rel))
        throw SingularityError("gl_action: U singular", sigma_min(u_gl));
    const Mat ut = u_gl * analysis(sys);  // n x d
    std::vector<Mat> blocks;
    blocks.reserve(p.m);
    for (int i = 0; i < p.m; ++i)
        blocks.push_back(ut.middleRows(p.offset(i), p.k[i]));
    return ReconstructionSystem::make(p, std::move(blocks));
}

bool dual_parametrization_probe(const ReconstructionSystem& sys, const Mat& u_gl,
                                double tol, const Config& cfg) {
    const auto vd = canonical_dual(sys, cfg);
    const auto w = gl_action(vd, u_gl, cfg);
    const bool dual = is_dual(w, sys, tol);
    const Mat p = range_projection(sys, cfg);
    const bool predicate = spectral_norm(p * u_gl.adjoint() * p - p) <= tol;
    return dual == predicate;
}

ReconstructionSystem random_dual(const ReconstructionSystem& sys, Rng& rng,
                                 double scale, const Config& cfg) {
    const Parameters& pr = sys.params;
    const auto vd = canonical_dual(sys, cfg);
    const Mat p = range_projection(sys, cfg);
    const Mat z = scale * gaussian_matrix(pr.d, pr.n, rng);
    const Mat g = z * (Mat::Identity(pr.n, pr.n) - p);
    const Mat tw_star = synthesis(vd) + g;  // d x n
    std::vector<Mat> blocks;
    blocks.reserve(pr.m);
    for (int i = 0; i < pr.m; ++i)
        blocks.push_back(tw_star.middleCols(pr.offset(i), pr.k[i]).adjoint());
    return ReconstructionSystem::make(pr, std::move(blocks));
}

}  // namespace rs::geom
