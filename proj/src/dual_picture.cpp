#include "rs/dual_picture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rs/core.hpp"
#include "rs/errors.hpp"
#include "rs/geometry.hpp"
#include "rs/rng.hpp"

namespace rs::dualpic {

namespace {

/// lambda(S_V^{-1}) non-increasing, from lambda(S_V) non-increasing.
RVec inverse_spectrum_desc(const RVec& lam) {
    RVec rho(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i)
        rho(i) = 1.0 / lam(lam.size() - 1 - i);
    return rho;
}

/// One interlacing compression step: given the (non-increasing) spectrum a of
/// a diagonal matrix and a target b of length len(a)-1 interlacing it, build
/// an isometry B with B^* diag(a) B unitarily diagonalized to spectrum b.
/// Returns the p x (p-1) matrix C = B X and the achieved spectrum.
///
/// The unit vector u defining the compressed hyperplane u-perp comes from the
/// characteristic-polynomial identity of rank-one bordering:
///   u_i^2 = prod_k (a_i - b_k) / prod_{j != i} (a_i - a_j),
/// with tie clusters of a handled by matching one forced copy of the tie
/// value in b per extra element (those coordinates get u_i = 0).
std::pair<Mat, RVec> compress_step(const RVec& a, const RVec& b) {
    const int p = static_cast<int>(a.size());
    const double scale = std::max(std::abs(a(0)), std::abs(a(p - 1))) + 1.0;
    const double tie_tol = 1e-12 * scale;

    // Cluster equal values of a; representatives carry the mixing weight.
    std::vector<int> rep;          // indices of cluster representatives
    std::vector<int> owner(p, 0);  // cluster id per index
    for (int i = 0; i < p; ++i) {
        if (i == 0 || a(i - 1) - a(i) > tie_tol) rep.push_back(i);
        owner[i] = static_cast<int>(rep.size()) - 1;
    }
    const int pr = static_cast<int>(rep.size());

    // Each cluster of size s forces s-1 copies of its value in b; match and
    // remove them, keeping the reduced target br for the representatives.
    std::vector<bool> b_used(b.size(), false);
    for (int c = 0; c < pr; ++c) {
        int extras = 0;
        for (int i = 0; i < p; ++i)
            if (owner[i] == c) ++extras;
        --extras;
        const double val = a(rep[c]);
        for (Eigen::Index k = 0; k < b.size() && extras > 0; ++k) {
            if (!b_used[k] && std::abs(b(k) - val) <= tie_tol) {
                b_used[k] = true;
                --extras;
            }
        }
        if (extras > 0)
            throw ConvergenceError("compress_step: interlacing tie mismatch",
                                   static_cast<double>(extras));
    }
    std::vector<double> br;
    for (Eigen::Index k = 0; k < b.size(); ++k)
        if (!b_used[k]) br.push_back(b(k));
    if (static_cast<int>(br.size()) != pr - 1)
        throw ConvergenceError("compress_step: reduced target size mismatch", 0.0);

    // Mixing weights on representatives; factors interleaved to keep the
    // running product near unit magnitude.
    RVec u = RVec::Zero(p);
    double usq_total = 0.0;
    for (int ci = 0; ci < pr; ++ci) {
        const double ai = a(rep[ci]);
        double prod = 1.0;
        int bi = 0, aj = 0;
        while (bi < pr - 1 || aj < pr) {
            if (aj < pr && (bi >= pr - 1 || std::abs(prod) >= 1.0)) {
                if (aj != ci) prod /= (ai - a(rep[aj]));
                ++aj;
            } else {
                prod *= (ai - br[bi]);
                ++bi;
            }
        }
        u(rep[ci]) = std::sqrt(std::max(0.0, prod));
        usq_total += std::max(0.0, prod);
    }
    if (usq_total <= 0.0)
        throw ConvergenceError("compress_step: degenerate mixing vector", usq_total);
    u /= std::sqrt(usq_total);

    // Orthonormal basis of u-perp via a Householder reflection mapping u -> e1.
    RVec v = u;
    v(0) -= 1.0;
    Mat basis;
    if (v.norm() < 1e-14) {
        basis = Mat::Identity(p, p).rightCols(p - 1);
    } else {
        const Eigen::MatrixXd h =
            Eigen::MatrixXd::Identity(p, p) - 2.0 / v.squaredNorm() * (v * v.transpose());
        basis = h.rightCols(p - 1).cast<Cplx>();
    }

    const Mat compressed = basis.adjoint() * a.asDiagonal().toDenseMatrix().cast<Cplx>() * basis;
    auto [vals, vecs] = eig_desc(compressed);
    return {basis * vecs, std::move(vals)};
}

/// Plan the chain of intermediate spectra from (mu,0-padding) down to target.
std::vector<RVec> plan_chain(const RVec& a0, const RVec& target) {
    const int n = static_cast<int>(a0.size());
    const int d = static_cast<int>(target.size());
    std::vector<RVec> chain;
    chain.push_back(a0);
    for (int t = 0; t + 1 <= n - d; ++t) {
        const RVec& prev = chain.back();
        const int len = static_cast<int>(prev.size()) - 1;
        RVec next(len);
        for (int j = 0; j < len; ++j) {
            if (j < d)
                next(j) = std::max(target(j), prev(j + 1));
            else
                next(j) = prev(j + 1);
        }
        chain.push_back(std::move(next));
    }
    return chain;
}

double spectrum_residual(const Mat& c, const RVec& diag_a, const RVec& target) {
    const Mat m = c.adjoint() * diag_a.asDiagonal().toDenseMatrix().cast<Cplx>() * c;
    const RVec vals = eigvals_desc(m);
    return (vals - target).cwiseAbs().maxCoeff();
}

/// Projected-gradient fallback over isometries C (n x d), minimizing
/// || lambda(C^* diag(a) C) - target ||^2 with polar retraction.
Mat fan_pall_descent(const RVec& a, const RVec& target, std::uint64_t seed) {
    const int n = static_cast<int>(a.size());
    const int d = static_cast<int>(target.size());
    const Mat da = a.asDiagonal().toDenseMatrix().cast<Cplx>();

    Mat best;
    double best_res = std::numeric_limits<double>::infinity();
    for (std::uint64_t restart = 0; restart < 20; ++restart) {
        Rng rng = Rng::substream(seed, restart);
        Mat c = qr_q_positive(gaussian_matrix(n, d, rng));
        double step = 1e-2;
        double f_prev = std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < 2000; ++iter) {
            auto [vals, vecs] = eig_desc(c.adjoint() * da * c);
            const RVec diff = vals - target;
            const double f = diff.squaredNorm();
            if (f < 1e-20) break;
            const Mat z = vecs * diff.asDiagonal() * vecs.adjoint();
            const Mat grad = 4.0 * (da * (c * z));
            Mat trial = polar_unitary(c - step * grad);
            auto trial_vals = eigvals_desc(trial.adjoint() * da * trial);
            const double f_trial = (trial_vals - target).squaredNorm();
            if (f_trial < f) {
                c = std::move(trial);
                step *= 1.25;
            } else {
                step *= 0.5;
                if (step < 1e-14) break;
            }
            if (std::abs(f_prev - f) < 1e-18 * (1.0 + f)) break;
            f_prev = f;
        }
        const double res = spectrum_residual(c, a, target);
        if (res < best_res) {
            best_res = res;
            best = c;
        }
        if (best_res <= 1e-8) break;
    }
    if (best_res > 1e-8)
        throw ConvergenceError("fan_pall_isometry: descent fallback stalled", best_res);
    return best;
}

}  // namespace

Mat fan_pall_isometry(const RVec& a, const RVec& target, std::uint64_t seed,
                      const Config& cfg) {
    const int n = static_cast<int>(a.size());
    const int d = static_cast<int>(target.size());
    if (d > n) throw ArgumentError("fan_pall_isometry: target longer than spectrum");
    try {
        const auto chain = plan_chain(a, target);
        Mat c = Mat::Identity(n, n);
        RVec cur = a;
        for (std::size_t t = 1; t < chain.size(); ++t) {
            auto [step_c, vals] = compress_step(cur, chain[t]);
            c = c * step_c;
            cur = std::move(vals);
        }
        const double res = (cur - target).cwiseAbs().maxCoeff();
        if (res <= std::min(1e-8, cfg.construct_residual)) return c;
    } catch (const ConvergenceError&) {
        // fall through to descent
    }
    return fan_pall_descent(a, target, seed);
}

std::pair<bool, Certificate> contains(const ReconstructionSystem& sys,
                                      const SpectrumVector& mu, const Config& cfg) {
    const Parameters& p = sys.params;
    if (mu.size() != p.d) throw ArgumentError("dual picture: mu must have length d");
    for (int i = 0; i < p.d; ++i)
        if (!(mu[i] > 0)) throw ArgumentError("dual picture: mu must be strictly positive");

    const auto [a_v, b_v] = bounds(sys, cfg);
    (void)a_v;
    (void)b_v;
    const RVec lam = spectrum(sys).entries;
    const RVec rho = inverse_spectrum_desc(lam);  // lambda(S_V^{-1}) desc
    const double slack = cfg.membership_slack * std::max(1.0, rho(0));

    Certificate cert;
    // mu_j >= lambda_j(S_V^{-1}) entrywise (both non-increasing).
    for (int j = 1; j <= p.d; ++j) {
        const double lhs = mu[j - 1];
        const double rhs = rho(j - 1);
        if (lhs < rhs - slack) {
            cert.member = false;
            cert.violated = Violation{"mayor2d", j, {}, lhs, rhs};
            return {false, cert};
        }
    }
    if (p.n < 2 * p.d) {
        // mu_{d-i+1} <= lambda_{2d-n-i+1}(S_V^{-1}) for i <= 2d-n.
        for (int i = 1; i <= 2 * p.d - p.n; ++i) {
            const double lhs = mu[p.d - i];
            const double rhs = rho(2 * p.d - p.n - i);
            if (lhs > rhs + slack) {
                cert.member = false;
                cert.violated = Violation{"menor2d", i, {}, lhs, rhs};
                return {false, cert};
            }
        }
    }
    return {true, Certificate::member_ok()};
}

ReconstructionSystem construct_dual_with_spectrum(const ReconstructionSystem& sys,
                                                  const SpectrumVector& mu,
                                                  const Config& cfg) {
    if (!contains(sys, mu, cfg).first)
        throw ArgumentError("construct_dual_with_spectrum: mu is not a member");
    const Parameters& p = sys.params;
    const int n = p.n, d = p.d;

    const RVec rho = inverse_spectrum_desc(spectrum(sys).entries);
    const RVec a0 = pad_zeros(mu.entries, n);

    // Fan-Pall compression: C^* D_n(mu) C has spectrum rho.
    const Mat c = fan_pall_isometry(a0, rho, cfg.seed, cfg);

    // T_U with S_U = D(mu): sqrt(mu) on the leading diagonal, rows split
    // across blocks in index order.
    Mat t_u = Mat::Zero(n, d);
    for (int j = 0; j < d; ++j) t_u(j, j) = std::sqrt(mu[j]);

    // Unitary conjugating P D_n(mu) P onto G_V^dagger, P = C C^*.
    const Mat dn_mu = a0.asDiagonal().toDenseMatrix().cast<Cplx>();
    const Mat p_proj = c * c.adjoint();
    const Mat a_mat = hermitize(p_proj * dn_mu * p_proj);
    auto [avals, avecs] = eig_desc(a_mat);
    const Mat g_dag = pinv(gram(sys), cfg.rank_tol_rel);
    auto [gvals, gvecs] = eig_desc(g_dag);
    (void)avals;
    (void)gvals;
    const Mat w_u = avecs * gvecs.adjoint();

    const Mat t_v = analysis(sys);
    const Mat v_d = t_u.adjoint() * w_u * t_v;    // approx unitary
    Mat t_w_star = (w_u.adjoint() * t_u * v_d).adjoint();  // d x n

    // Exact-duality polish: project onto the affine set of duals.
    const auto vd = canonical_dual(sys, cfg);
    const Mat proj = geom::range_projection(sys, cfg);
    const Mat t_vd_star = synthesis(vd);
    t_w_star = t_vd_star + (t_w_star - t_vd_star) * (Mat::Identity(n, n) - proj);

    std::vector<Mat> blocks;
    blocks.reserve(p.m);
    for (int i = 0; i < p.m; ++i)
        blocks.push_back(t_w_star.middleCols(p.offset(i), p.k[i]).adjoint());
    auto w_sys = ReconstructionSystem::make(p, std::move(blocks));

    const RVec achieved = spectrum(w_sys).entries;
    const double res = (achieved - mu.entries).cwiseAbs().maxCoeff();
    if (res > cfg.construct_residual)
        throw ConvergenceError("construct_dual_with_spectrum: spectrum residual too large",
                               res);
    return w_sys;
}

double dual_potential_floor(const ReconstructionSystem& sys, const Config& cfg) {
    const auto [a_v, b_v] = bounds(sys, cfg);
    (void)a_v;
    (void)b_v;
    const RVec lam = spectrum(sys).entries;
    double floor = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) floor += 1.0 / (lam(i) * lam(i));
    return floor;
}

bool convexity_probe(const ReconstructionSystem& sys, int trials, std::uint64_t seed,
                     batch::Exec exec, const Config& cfg) {
    auto one = [&](std::size_t t) -> bool {
        Rng rng1 = Rng::substream(seed, 2 * t + 1);
        Rng rng2 = Rng::substream(seed, 2 * t + 2);
        const auto w1 = geom::random_dual(sys, rng1, 0.5 + rng1.uniform(), cfg);
        const auto w2 = geom::random_dual(sys, rng2, 0.5 + rng2.uniform(), cfg);
        const RVec mu1 = spectrum(w1).entries;
        const RVec mu2 = spectrum(w2).entries;
        for (double tmix : {0.3, 0.5, 0.7}) {
            const auto mu = SpectrumVector::sort_of(tmix * mu1 + (1.0 - tmix) * mu2);
            if (!contains(sys, mu, cfg).first) return false;
        }
        return true;
    };
    const auto results =
        batch::map_indexed<bool>(static_cast<std::size_t>(trials), one, exec);
    return std::all_of(results.begin(), results.end(), [](bool b) { return b; });
}

}  // namespace rs::dualpic
