#include "rs/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rs/core.hpp"
#include "rs/errors.hpp"
#include "rs/geometry.hpp"
#include "rs/lr.hpp"
#include "rs/rng.hpp"

namespace rs::potential {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Active-set Newton minimization of F over { A mu <= b, 1.mu = tau }.
// ---------------------------------------------------------------------------

struct Polytope {
    MatrixXd a;   // inequality rows, a_i . mu <= b_i
    VectorXd b;
    double tau = 0.0;
};

VectorXd grad_f(const VectorXd& mu) {
    VectorXd g(mu.size());
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        g(i) = 2.0 * mu(i) - 2.0 / (mu(i) * mu(i) * mu(i));
    return g;
}

VectorXd hess_diag_f(const VectorXd& mu) {
    VectorXd h(mu.size());
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        h(i) = 2.0 + 6.0 / (mu(i) * mu(i) * mu(i) * mu(i));
    return h;
}

double eval_f(const VectorXd& mu) {
    double f = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        f += mu(i) * mu(i) + 1.0 / (mu(i) * mu(i));
    return f;
}

/// Lawson-Hanson NNLS: minimize || M x + g || with x >= 0.
/// Returns the residual norm.
double nnls_residual(const MatrixXd& m, const VectorXd& g) {
    const Eigen::Index nvar = m.cols();
    VectorXd x = VectorXd::Zero(nvar);
    std::vector<bool> passive(nvar, false);
    const VectorXd target = -g;

    for (int outer = 0; outer < 3 * static_cast<int>(nvar) + 10; ++outer) {
        const VectorXd w = m.transpose() * (target - m * x);
        int best = -1;
        double best_w = 1e-12 * (1.0 + g.norm());
        for (Eigen::Index j = 0; j < nvar; ++j)
            if (!passive[j] && w(j) > best_w) {
                best_w = w(j);
                best = static_cast<int>(j);
            }
        if (best < 0) break;
        passive[best] = true;

        for (int inner = 0; inner < 3 * static_cast<int>(nvar) + 10; ++inner) {
            std::vector<int> idx;
            for (Eigen::Index j = 0; j < nvar; ++j)
                if (passive[j]) idx.push_back(static_cast<int>(j));
            MatrixXd mp(m.rows(), idx.size());
            for (std::size_t c = 0; c < idx.size(); ++c) mp.col(c) = m.col(idx[c]);
            const VectorXd z =
                mp.completeOrthogonalDecomposition().solve(target);
            bool all_pos = true;
            for (Eigen::Index c = 0; c < z.size(); ++c)
                if (z(c) <= 0) all_pos = false;
            if (all_pos) {
                x.setZero();
                for (std::size_t c = 0; c < idx.size(); ++c) x(idx[c]) = z(c);
                break;
            }
            // step back to the boundary, deactivate the blocking variable
            double alpha = 1.0;
            for (std::size_t c = 0; c < idx.size(); ++c) {
                if (z(c) <= 0) {
                    const double xc = x(idx[c]);
                    if (xc - z(c) > 0) alpha = std::min(alpha, xc / (xc - z(c)));
                }
            }
            for (std::size_t c = 0; c < idx.size(); ++c) {
                x(idx[c]) += alpha * (z(c) - x(idx[c]));
                if (x(idx[c]) <= 1e-14) {
                    x(idx[c]) = 0.0;
                    passive[idx[c]] = false;
                }
            }
        }
    }
    return (m * x + g).norm();
}

struct ActiveSetResult {
    VectorXd mu;
    double f = 0.0;
    bool converged = false;
};

ActiveSetResult minimize_on_polytope(const Polytope& poly, const VectorXd& mu0) {
    const Eigen::Index d = mu0.size();
    const Eigen::Index ni = poly.a.rows();
    const double b_scale = 1.0 + poly.b.cwiseAbs().maxCoeff();
    const double feas_pad = 1e-12 * b_scale;

    VectorXd mu = mu0;
    std::vector<bool> active(ni, false);
    for (Eigen::Index i = 0; i < ni; ++i)
        active[i] = (poly.b(i) - poly.a.row(i).dot(mu) <= 1e-10 * b_scale);

    ActiveSetResult out;
    for (int outer = 0; outer < 1000; ++outer) {
        std::vector<int> act;
        for (Eigen::Index i = 0; i < ni; ++i)
            if (active[i]) act.push_back(static_cast<int>(i));

        MatrixXd a_eq(act.size() + 1, d);
        for (std::size_t r = 0; r < act.size(); ++r) a_eq.row(r) = poly.a.row(act[r]);
        a_eq.row(act.size()).setOnes();  // trace row

        Eigen::FullPivLU<MatrixXd> lu(a_eq);
        lu.setThreshold(1e-10);
        const MatrixXd z = lu.kernel();  // d x dim(null)
        const bool null_trivial = (lu.rank() >= d) || z.cols() == 0 ||
                                  (z.cols() == 1 && z.norm() < 1e-14);

        const VectorXd g = grad_f(mu);
        VectorXd p = VectorXd::Zero(d);
        if (!null_trivial) {
            const VectorXd h = hess_diag_f(mu);
            const MatrixXd zhz = z.transpose() * h.asDiagonal() * z;
            const VectorXd q = zhz.ldlt().solve(-z.transpose() * g);
            p = z * q;
        }

        if (p.norm() <= 1e-12 * (1.0 + mu.norm())) {
            // Face-stationary: check KKT multipliers. Columns: active
            // inequality gradients plus +/- trace direction (free sign).
            MatrixXd cols(d, act.size() + 2);
            for (std::size_t c = 0; c < act.size(); ++c)
                cols.col(c) = poly.a.row(act[c]).transpose();
            cols.col(act.size()).setOnes();
            cols.col(act.size() + 1).setConstant(-1.0);
            const double res = nnls_residual(cols, g);
            if (res <= 1e-7 * (1.0 + g.norm())) {
                out.mu = mu;
                out.f = eval_f(mu);
                out.converged = true;
                return out;
            }
            if (act.empty()) break;  // nothing to drop; numerical dead end
            // Drop the most negative plain-LS multiplier.
            MatrixXd bmat(d, act.size() + 1);
            for (std::size_t c = 0; c < act.size(); ++c)
                bmat.col(c) = poly.a.row(act[c]).transpose();
            bmat.col(act.size()).setOnes();
            const VectorXd y = bmat.completeOrthogonalDecomposition().solve(-g);
            int drop = -1;
            double worst = -1e-10;
            for (std::size_t c = 0; c < act.size(); ++c)
                if (y(c) < worst) {
                    worst = y(c);
                    drop = act[c];
                }
            if (drop < 0) break;
            active[drop] = false;
            continue;
        }

        // Ratio test against inactive constraints.
        double alpha_max = 1.0;
        int blocking = -1;
        for (Eigen::Index i = 0; i < ni; ++i) {
            if (active[i]) continue;
            const double ap = poly.a.row(i).dot(p);
            if (ap > 1e-14) {
                const double slack =
                    std::max(0.0, poly.b(i) + feas_pad - poly.a.row(i).dot(mu));
                const double alpha = slack / ap;
                if (alpha < alpha_max) {
                    alpha_max = alpha;
                    blocking = static_cast<int>(i);
                }
            }
        }
        // Backtracking on F from alpha_max.
        const double gdotp = g.dot(p);
        double alpha = alpha_max;
        const double f0 = eval_f(mu);
        int bt = 0;
        while (bt < 60) {
            const VectorXd trial = mu + alpha * p;
            if (trial.minCoeff() > 0 && eval_f(trial) <= f0 + 0.1 * alpha * gdotp) break;
            alpha *= 0.5;
            ++bt;
        }
        if (bt == 60) break;
        mu += alpha * p;
        if (blocking >= 0 && std::abs(alpha - alpha_max) < 1e-15) active[blocking] = true;
    }
    out.mu = mu;
    out.f = eval_f(mu);
    out.converged = false;
    return out;
}

Polytope build_polytope(const Parameters& params, const Weights& w, const Config& cfg) {
    const auto ineq = lr::inequality_system(params, w, cfg);
    const int d = params.d;
    const double eps = cfg.lambda_floor_rel * w.tau / d;

    std::vector<std::pair<VectorXd, double>> rows;
    for (const auto& [j0, rhs] : ineq.rows) {
        VectorXd a = VectorXd::Zero(d);
        for (int i : j0) a(i) = 1.0;
        rows.emplace_back(std::move(a), rhs);
    }
    for (int i = 0; i + 1 < d; ++i) {  // sorted: mu_{i+1} - mu_i <= 0
        VectorXd a = VectorXd::Zero(d);
        a(i) = -1.0;
        a(i + 1) = 1.0;
        rows.emplace_back(std::move(a), 0.0);
    }
    {
        VectorXd a = VectorXd::Zero(d);  // floor: -mu_d <= -eps
        a(d - 1) = -1.0;
        rows.emplace_back(std::move(a), -eps);
    }

    Polytope poly;
    poly.tau = w.tau;
    poly.a.resize(rows.size(), d);
    poly.b.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        poly.a.row(i) = rows[i].first.transpose();
        poly.b(i) = rows[i].second;
    }
    return poly;
}

VectorXd feasible_start(const Parameters& params, const Weights& w, double eps,
                        const Config& cfg) {
    for (unsigned attempt = 0; attempt < 64; ++attempt) {
        const auto sys = geom::random_projective(
            params, w, splitmix64(cfg.seed ^ (0xFEEDULL + attempt)), cfg);
        const RVec lam = spectrum(sys).entries;
        if (lam(lam.size() - 1) >= 2.0 * eps) return lam;
    }
    throw DegeneracyError("optimal_spectrum: no interior feasible sample found");
}

std::vector<std::pair<double, int>> cluster_values(const RVec& lam, double tol) {
    std::vector<std::pair<double, int>> out;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (!out.empty() && std::abs(out.back().first - lam(i)) <= tol) {
            auto& [val, cnt] = out.back();
            val = (val * cnt + lam(i)) / (cnt + 1);
            ++cnt;
        } else {
            out.emplace_back(lam(i), 1);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Riemannian descent over isometry tuples (sampling mode and constructor).
// ---------------------------------------------------------------------------

struct DescentState {
    std::vector<Mat> u;  // d x k_i isometries
};

Mat assemble_s(const DescentState& st, const Parameters& params, const Weights& w) {
    Mat s = Mat::Zero(params.d, params.d);
    for (int i = 0; i < params.m; ++i)
        s += w.v(i) * w.v(i) * st.u[i] * st.u[i].adjoint();
    return hermitize(s);
}

DescentState random_state(const Parameters& params, Rng& rng) {
    DescentState st;
    st.u.reserve(params.m);
    for (int i = 0; i < params.m; ++i)
        st.u.push_back(qr_q_positive(gaussian_matrix(params.d, params.k[i], rng)));
    return st;
}

/// Minimizes a smooth objective over the product of isometry manifolds with
/// polar retraction and a monotone adaptive step.
template <class ObjGrad>
double descend(DescentState& st, const Parameters& params, ObjGrad&& obj_grad,
               int iters) {
    double step = 1e-3;
    std::vector<Mat> grad(params.m);
    double f = obj_grad(st, nullptr);
    for (int it = 0; it < iters; ++it) {
        obj_grad(st, &grad);
        DescentState trial = st;
        double gnorm2 = 0.0;
        for (int i = 0; i < params.m; ++i) gnorm2 += grad[i].squaredNorm();
        if (gnorm2 < 1e-26) break;
        for (int i = 0; i < params.m; ++i)
            trial.u[i] = polar_unitary(st.u[i] - step * grad[i]);
        const double f_trial = obj_grad(trial, nullptr);
        if (f_trial < f) {
            st = std::move(trial);
            f = f_trial;
            step = std::min(step * 1.3, 1e2);
        } else {
            step *= 0.4;
            if (step < 1e-15) break;
        }
    }
    return f;
}

ReconstructionSystem state_to_system(const DescentState& st, const Parameters& params,
                                     const Weights& w) {
    std::vector<Mat> blocks;
    blocks.reserve(params.m);
    for (int i = 0; i < params.m; ++i)
        blocks.push_back(w.v(i) * st.u[i].adjoint());
    return ReconstructionSystem::make(params, std::move(blocks));
}

}  // namespace

double frame_potential(const ReconstructionSystem& sys) {
    const Mat s = frame_operator(sys);
    return (s * s).trace().real();
}

double joint_potential(const ReconstructionSystem& v, const ReconstructionSystem& w) {
    if (!(v.params == w.params))
        throw StructuralError("joint_potential: parameter mismatch");
    return frame_potential(v) + frame_potential(w);
}

double f_objective(const RVec& mu) {
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        if (!(mu(i) > 0)) throw ArgumentError("f_objective: entries must be positive");
    return eval_f(mu);
}

double universal_lower_bound(const Parameters& params, const Weights& w) {
    const double tau = w.tau;
    const double d = params.d;
    return (tau * tau * tau * tau + d * d * d * d) / (d * tau * tau);
}

CommutantBasis commutant(const ReconstructionSystem& sys, const Config& cfg) {
    (void)cfg;
    const int d = sys.params.d;
    const int dd = d * d;
    const int m = sys.params.m;
    Mat stacked(m * dd, dd);
    for (int i = 0; i < m; ++i) {
        const Mat p = sys.blocks[i].adjoint() * sys.blocks[i];
        // vec(P A - A P) = (I (x) P - P^T (x) I) vec(A), column-major vec.
        Mat op = Mat::Zero(dd, dd);
        for (int c = 0; c < d; ++c)
            op.block(c * d, c * d, d, d) += p;
        for (int c = 0; c < d; ++c)
            for (int r = 0; r < d; ++r)
                op.block(r * d, c * d, d, d) -= p.transpose()(r, c) * Mat::Identity(d, d);
        stacked.middleRows(i * dd, dd) = op;
    }
    Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
    const RVec s = svd.singularValues();
    const double tol = 1e-10 * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
    CommutantBasis out;
    for (Eigen::Index c = dd - 1; c >= 0; --c) {
        if (c < s.size() && s(c) > tol) break;
        const Mat vcol = svd.matrixV().col(c);
        out.basis.push_back(Eigen::Map<const Mat>(vcol.data(), d, d));
    }
    out.dimension = static_cast<int>(out.basis.size());
    return out;
}

bool is_irreducible(const ReconstructionSystem& sys, const Config& cfg) {
    return commutant(sys, cfg).dimension == 1;
}

DecompositionReport tight_decomposition(const ReconstructionSystem& sys,
                                        const Config& cfg) {
    const auto weights = projective_check(sys, cfg.projective_tol);
    if (!weights)
        throw ArgumentError("tight_decomposition: system is not projective");
    const Parameters& pr = sys.params;

    const Mat s = frame_operator(sys);
    auto [lam, vecs] = eig_desc(s);
    const double cluster_tol = 1e-7 * std::max(1.0, lam(0));
    const auto clusters = cluster_values(lam, cluster_tol);

    DecompositionReport rep;
    rep.minimizer_structure = true;

    int col = 0;
    for (const auto& [sigma, dim] : clusters) {
        TightComponent comp;
        comp.sigma = sigma;
        comp.dim = dim;
        const Mat basis = vecs.middleCols(col, dim);  // d x dim
        col += dim;
        const Mat proj = basis * basis.adjoint();

        double commute_res = 0.0;
        for (int i = 0; i < pr.m; ++i) {
            const Mat pi = sys.blocks[i].adjoint() * sys.blocks[i];
            commute_res = std::max(commute_res, spectral_norm(proj * pi - pi * proj));
        }
        comp.commute_residual = commute_res;
        if (commute_res > cfg.commute_tol) rep.minimizer_structure = false;

        const Mat s_comp = basis.adjoint() * s * basis;
        comp.tight_residual =
            spectral_norm(s_comp - sigma * Mat::Identity(dim, dim));

        std::vector<int> kept_k;
        std::vector<Mat> kept_blocks;
        for (int i = 0; i < pr.m; ++i) {
            const Mat raw = sys.blocks[i] * basis;  // k_i x dim
            Eigen::JacobiSVD<Mat> svd(raw, Eigen::ComputeThinU);
            const RVec sv = svd.singularValues();
            const double tol = 1e-10 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
            int rank = 0;
            for (Eigen::Index t = 0; t < sv.size(); ++t)
                if (sv(t) > tol) ++rank;
            comp.k.push_back(rank);
            if (rank >= 1) {
                comp.kept_blocks.push_back(i);
                const Mat row_basis = svd.matrixU().leftCols(rank);  // k_i x rank
                kept_k.push_back(rank);
                kept_blocks.push_back(row_basis.adjoint() * raw);    // rank x dim
            }
        }
        if (!kept_k.empty()) {
            auto comp_sys = ReconstructionSystem::make(
                Parameters::make(kept_k, dim), std::move(kept_blocks));
            // Irreducible split: spectral projections of a random self-adjoint
            // commutant element; eigenvalue near-collisions retried.
            const auto cb = commutant(comp_sys, cfg);
            if (cb.dimension == 1) {
                comp.irreducible_dims = {dim};
            } else {
                bool split_done = false;
                for (std::uint64_t retry = 0; retry < 5 && !split_done; ++retry) {
                    Rng rng = Rng::substream(0xC0117ULL, retry);
                    Mat h = Mat::Zero(dim, dim);
                    for (const Mat& b : cb.basis) h += rng.normal() * b;
                    h = hermitize(h);
                    const RVec ev = eigvals_desc(h);
                    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
                    bool ambiguous = false;
                    std::vector<int> dims;
                    int run = 1;
                    for (Eigen::Index t = 1; t <= ev.size(); ++t) {
                        const double gap =
                            (t < ev.size()) ? ev(t - 1) - ev(t)
                                            : std::numeric_limits<double>::infinity();
                        if (gap <= 1e-12 * scale) {
                            ++run;
                        } else if (gap < 1e-8 * scale) {
                            ambiguous = true;
                            break;
                        } else {
                            dims.push_back(run);
                            run = 1;
                        }
                    }
                    if (!ambiguous) {
                        comp.irreducible_dims = std::move(dims);
                        split_done = true;
                    }
                }
                if (!split_done) comp.irreducible_dims = {dim};  // give up, report whole
            }
            comp.system = std::move(comp_sys);
        }
        rep.worst_commute_residual =
            std::max(rep.worst_commute_residual, comp.commute_residual);
        rep.worst_tight_residual =
            std::max(rep.worst_tight_residual, comp.tight_residual);
        rep.components.push_back(std::move(comp));
    }
    return rep;
}

MinimizerCertificate optimal_spectrum(const Parameters& params, const Weights& w,
                                      const Config& cfg) {
    MinimizerCertificate cert;
    if (params.d == 1) {
        cert.lambda_v = SpectrumVector::make((RVec(1) << w.tau).finished());
        cert.p_v = eval_f(cert.lambda_v.entries);
        cert.certified = true;
        cert.sigma = {{w.tau, 1}};
        return cert;
    }

    try {
        const Polytope poly = build_polytope(params, w, cfg);
        const double eps = cfg.lambda_floor_rel * w.tau / params.d;
        const VectorXd mu0 = feasible_start(params, w, eps, cfg);
        auto res = minimize_on_polytope(poly, mu0);
        if (!res.converged) {
            // Retry from a second sample before giving up.
            Config cfg2 = cfg;
            cfg2.seed = splitmix64(cfg.seed ^ 0xA17ULL);
            const VectorXd mu1 = feasible_start(params, w, eps, cfg2);
            res = minimize_on_polytope(poly, mu1);
            if (!res.converged)
                throw ConvergenceError("optimal_spectrum: active-set did not certify",
                                       0.0);
        }
        // The epsilon floor must be inactive at the optimum.
        if (res.mu(params.d - 1) <= eps * (1.0 + 1e-6))
            throw ConvergenceError("optimal_spectrum: epsilon floor active at optimum",
                                   res.mu(params.d - 1));
        cert.lambda_v = SpectrumVector::sort_of(res.mu);
        cert.p_v = res.f;
        cert.certified = true;
    } catch (const CapError&) {
        if (cfg.certified) throw;
        // Sampling mode: Riemannian descent of F(lambda(S)) over isometries.
        auto one = [&](std::size_t restart) {
            Rng rng = Rng::substream(cfg.seed, 0xBEEF00ULL + restart);
            DescentState st = random_state(params, rng);
            auto obj = [&](const DescentState& s, std::vector<Mat>* grad) {
                const Mat sm = assemble_s(s, params, w);
                const Mat sinv = sm.inverse();
                const Mat s3inv = sinv * sinv * sinv;
                if (grad) {
                    const Mat core = sm - s3inv;
                    for (int i = 0; i < params.m; ++i)
                        (*grad)[i] = 4.0 * w.v(i) * w.v(i) * (core * s.u[i]);
                }
                return (sm * sm).trace().real() + (sinv * sinv).trace().real();
            };
            const double f = descend(st, params, obj, 3000);
            return std::make_pair(f, st);
        };
        auto results = batch::map_indexed<std::pair<double, DescentState>>(
            100, one, batch::Exec::OpenMP);
        std::size_t best = 0;
        for (std::size_t i = 1; i < results.size(); ++i)
            if (results[i].first < results[best].first) best = i;
        const Mat s = assemble_s(results[best].second, params, w);
        cert.lambda_v = SpectrumVector::sort_of(eigvals_desc(s));
        cert.p_v = results[best].first;
        cert.certified = false;
    }

    cert.sigma = cluster_values(cert.lambda_v.entries,
                                1e-7 * std::max(1.0, cert.lambda_v[0]));
    return cert;
}

ConstructResult construct_with_spectrum(const Parameters& params, const Weights& w,
                                        const RVec& target, std::uint64_t seed,
                                        int restarts, batch::Exec exec,
                                        const Config& cfg) {
    (void)cfg;
    const int d = params.d;
    if (target.size() != d)
        throw ArgumentError("construct_with_spectrum: target must have length d");
    RVec tpow(d);
    for (int p = 1; p <= d; ++p) {
        double t = 0.0;
        for (int i = 0; i < d; ++i) t += std::pow(target(i), p);
        tpow(p - 1) = t;
    }

    auto one = [&](std::size_t restart) {
        Rng rng = Rng::substream(seed, 0xC0DE00ULL + restart);
        DescentState st = random_state(params, rng);

        // Stage A: joint-potential descent locates the global basin.
        auto obj_f = [&](const DescentState& s, std::vector<Mat>* grad) {
            const Mat sm = assemble_s(s, params, w);
            const Mat sinv = sm.inverse();
            const Mat s3inv = sinv * sinv * sinv;
            if (grad) {
                const Mat core = sm - s3inv;
                for (int i = 0; i < params.m; ++i)
                    (*grad)[i] = 4.0 * w.v(i) * w.v(i) * (core * s.u[i]);
            }
            return (sm * sm).trace().real() + (sinv * sinv).trace().real();
        };
        descend(st, params, obj_f, 1500);

        // Stage B: power-sum matching drives lambda(S) onto the target.
        auto obj_p = [&](const DescentState& s, std::vector<Mat>* grad) {
            const Mat sm = assemble_s(s, params, w);
            double f = 0.0;
            std::vector<double> err(d);
            std::vector<Mat> pows(d);  // S^{p-1}
            Mat acc = Mat::Identity(params.d, params.d);
            for (int p = 1; p <= d; ++p) {
                pows[p - 1] = acc;
                acc = acc * sm;
                const double tr = (pows[p - 1] * sm).trace().real();
                const double wgt = 1.0 / std::max(1.0, tpow(p - 1) * tpow(p - 1));
                err[p - 1] = tr - tpow(p - 1);
                f += wgt * err[p - 1] * err[p - 1];
            }
            if (grad) {
                Mat core = Mat::Zero(params.d, params.d);
                for (int p = 1; p <= d; ++p) {
                    const double wgt = 1.0 / std::max(1.0, tpow(p - 1) * tpow(p - 1));
                    core += 2.0 * wgt * err[p - 1] * p * pows[p - 1];
                }
                for (int i = 0; i < params.m; ++i)
                    (*grad)[i] = 2.0 * w.v(i) * w.v(i) * (core * s.u[i]);
            }
            return f;
        };
        descend(st, params, obj_p, 2500);

        const RVec lam = eigvals_desc(assemble_s(st, params, w));
        const double res = (lam - target).cwiseAbs().maxCoeff();
        return std::make_pair(res, st);
    };

    auto results = batch::map_indexed<std::pair<double, DescentState>>(
        static_cast<std::size_t>(restarts), one, exec);
    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
        if (results[i].first < results[best].first) best = i;

    ConstructResult out;
    out.residual = results[best].first;
    out.success = out.residual <= 1e-8;
    if (out.success) out.sys = state_to_system(results[best].second, params, w);
    return out;
}

}  // namespace rs::potential
