#include "rs/majorization.hpp"

#include <algorithm>
#include <cmath>

#include "rs/core.hpp"
#include "rs/errors.hpp"
#include "rs/geometry.hpp"
#include "rs/potential.hpp"

namespace rs::maj {

namespace {

RVec sorted_desc(const RVec& x) {
    RVec s = x;
    std::sort(s.data(), s.data() + s.size(), std::greater<double>());
    return s;
}

}  // namespace

MajorizationVerdict majorizes(const RVec& x, const RVec& y) {
    if (x.size() != y.size()) throw ArgumentError("majorizes: length mismatch");
    const RVec xs = sorted_desc(x);
    const RVec ys = sorted_desc(y);
    const double slack = 1e-9 * ys.cwiseAbs().sum();
    double px = 0.0, py = 0.0;
    int first_violation = 0;
    for (Eigen::Index i = 0; i < xs.size(); ++i) {
        px += xs(i);
        py += ys(i);
        if (px > py + slack && first_violation == 0)
            first_violation = static_cast<int>(i) + 1;
    }
    if (first_violation != 0)
        return {Relation::Incomparable, first_violation};
    if (std::abs(px - py) <= slack) return {Relation::Majorized, 0};
    return {Relation::WeaklyMajorized, static_cast<int>(xs.size())};
}

bool is_majorized(const RVec& x, const RVec& y) {
    return majorizes(x, y).relation == Relation::Majorized;
}

bool is_weakly_majorized(const RVec& x, const RVec& y) {
    const auto v = majorizes(x, y).relation;
    return v == Relation::Majorized || v == Relation::WeaklyMajorized;
}

AppendCheck append_lemma_check(const RVec& alpha, const RVec& gamma,
                               const RVec& beta, double b) {
    if (alpha.size() != gamma.size())
        throw ArgumentError("append_lemma_check: alpha and gamma lengths differ");
    if (gamma.size() == 0) throw ArgumentError("append_lemma_check: empty gamma");
    if (b > gamma.minCoeff())
        throw ArgumentError("append_lemma_check: requires b <= min gamma");
    const Eigen::Index n = gamma.size();
    const Eigen::Index m = beta.size();

    RVec left(n + m), right(n + m);
    left.head(n) = gamma;
    left.tail(m).setConstant(b);
    right.head(n) = alpha;
    right.tail(m) = beta;

    AppendCheck out;
    const double slack = 1e-9 * (right.cwiseAbs().sum() + 1.0);
    out.hypotheses_met =
        (left.sum() <= right.sum() + slack) && is_weakly_majorized(gamma, alpha);
    out.conclusion = is_weakly_majorized(left, right);
    return out;
}

Mat pinch(const Mat& s, const Mat& p) {
    if (s.rows() != s.cols() || p.rows() != p.cols() || s.rows() != p.rows())
        throw StructuralError("pinch: shape mismatch");
    if (spectral_norm(p * p - p) > 1e-10 || spectral_norm(p - p.adjoint()) > 1e-10)
        throw ArgumentError("pinch: P is not an orthogonal projection");
    const Mat q = Mat::Identity(p.rows(), p.cols()) - p;
    return hermitize(p * s * p + q * s * q);
}

SpectrumVector vector_frame_lambda(const RVec& v_sorted, int d) {
    const int m = static_cast<int>(v_sorted.size());
    if (d > m) throw ArgumentError("vector_frame_lambda: requires d <= m");
    if (d < 1) throw ArgumentError("vector_frame_lambda: d must be positive");
    for (int i = 0; i + 1 < m; ++i)
        if (v_sorted(i) < v_sorted(i + 1))
            throw ArgumentError("vector_frame_lambda: weights must be sorted non-increasingly");

    RVec sq(m);
    for (int i = 0; i < m; ++i) sq(i) = v_sorted(i) * v_sorted(i);

    int r = 0;
    for (int j = 1; j <= d - 1; ++j) {
        double tail = 0.0;
        for (int i = j; i < m; ++i) tail += sq(i);
        if ((d - j) * sq(j - 1) > tail) r = j;
    }
    double tail = 0.0;
    for (int i = r; i < m; ++i) tail += sq(i);
    const double c = tail / (d - r);

    RVec lam(d);
    for (int i = 0; i < r; ++i) lam(i) = sq(i);
    for (int i = r; i < d; ++i) lam(i) = c;
    return SpectrumVector::make(std::move(lam));
}

HarnessReport conjecture_harness(const Parameters& params, const Weights& w,
                                 int samples, std::uint64_t seed, batch::Exec exec,
                                 const Config& cfg) {
    const auto cert = potential::optimal_spectrum(params, w, cfg);
    HarnessReport rep;
    rep.params = params;
    rep.weights = w.v;
    rep.lambda_v = cert.lambda_v.entries;
    rep.samples = samples;

    struct Item {
        bool pass = true;
        double margin = 0.0;
        std::optional<ReconstructionSystem> sys;
    };
    auto run_one = [&](std::size_t i) {
        Item item;
        const auto sys = geom::random_projective(
            params, w, splitmix64(seed ^ (0x9e37u + i)), cfg);
        const RVec lam = spectrum(sys).entries;
        // Margin: min over k of (partial sum of sample) - (partial sum of
        // lambda_v); the conjecture asks lambda_v < lambda(S_V).
        double margin = std::numeric_limits<double>::infinity();
        double pv = 0.0, ps = 0.0;
        for (Eigen::Index k = 0; k < lam.size(); ++k) {
            pv += rep.lambda_v(k);
            ps += lam(k);
            margin = std::min(margin, ps - pv);
        }
        item.margin = margin;
        item.pass = is_majorized(rep.lambda_v, lam);
        if (!item.pass) item.sys = sys;
        return item;
    };
    const auto items = batch::map_indexed<Item>(static_cast<std::size_t>(samples),
                                                run_one, exec);
    rep.worst_margin = std::numeric_limits<double>::infinity();
    for (const auto& item : items) {
        if (item.pass) ++rep.passes;
        rep.worst_margin = std::min(rep.worst_margin, item.margin);
        if (!item.pass && !rep.counterexample) rep.counterexample = item.sys;
    }
    if (samples == 0) rep.worst_margin = 0.0;
    return rep;
}

}  // namespace rs::maj
