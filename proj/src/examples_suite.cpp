#include "rs/examples_suite.hpp"

#include <cmath>
#include <sstream>

#include "rs/core.hpp"
#include "rs/errors.hpp"
#include "rs/geometry.hpp"
#include "rs/majorization.hpp"
#include "rs/potential.hpp"
#include "rs/rng.hpp"

namespace rs::examples {

namespace {

Mat rows_from(const std::vector<RVec>& rows, int d) {
    Mat b(static_cast<int>(rows.size()), d);
    for (std::size_t r = 0; r < rows.size(); ++r)
        b.row(static_cast<Eigen::Index>(r)) = rows[r].transpose().cast<Cplx>();
    return b;
}

std::string vec_str(const RVec& v) {
    std::ostringstream os;
    os.precision(12);
    os << "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
    os << ")";
    return os.str();
}

Check check_near(const std::string& label, const RVec& got, const RVec& want,
                 double tol) {
    Check c;
    c.label = label;
    c.pass = got.size() == want.size() &&
             (got - want).cwiseAbs().maxCoeff() <= tol;
    c.detail = "got " + vec_str(got) + ", want " + vec_str(want);
    return c;
}

Check check_true(const std::string& label, bool ok, const std::string& detail = "") {
    return Check{label, ok, detail};
}

}  // namespace

ReconstructionSystem minimizer_322(const Config& cfg) {
    (void)cfg;
    const int d = 4;
    const double s3 = std::sqrt(3.0);
    RVec e1 = RVec::Zero(d), e2 = RVec::Zero(d), e3 = RVec::Zero(d);
    e1(0) = 1;
    e2(1) = 1;
    e3(2) = 1;
    RVec w2 = RVec::Zero(d), w3 = RVec::Zero(d);
    w2(2) = -0.5;
    w2(3) = s3 / 2.0;
    w3(2) = -0.5;
    w3(3) = -s3 / 2.0;

    std::vector<Mat> blocks;
    blocks.push_back(rows_from({e1, e2, e3}, d));
    blocks.push_back(rows_from({e1, w2}, d));
    blocks.push_back(rows_from({e2, w3}, d));
    return ReconstructionSystem::make(Parameters::make({3, 2, 2}, d), std::move(blocks));
}

ReconstructionSystem orthogonal_riesz(const Parameters& params, const Weights& w) {
    if (params.n != params.d)
        throw ArgumentError("orthogonal_riesz: requires tr k = d");
    std::vector<Mat> blocks;
    for (int i = 0; i < params.m; ++i) {
        Mat b = Mat::Zero(params.k[i], params.d);
        for (int r = 0; r < params.k[i]; ++r) b(r, params.offset(i) + r) = w.v(i);
        blocks.push_back(std::move(b));
    }
    return ReconstructionSystem::make(params, std::move(blocks));
}

ReconstructionSystem commuting_two_subspace(int k1, int k2, int d, double v1,
                                            double v2) {
    if (k1 + k2 <= d || k1 == d || k2 == d)
        throw ArgumentError("commuting_two_subspace: need k1 + k2 > d, k_i != d");
    const int r0 = k1 + k2 - d;
    Mat b1 = Mat::Zero(k1, d);
    for (int r = 0; r < k1; ++r) b1(r, r) = v1;
    Mat b2 = Mat::Zero(k2, d);
    for (int r = 0; r < k2; ++r) b2(r, k1 - r0 + r) = v2;
    return ReconstructionSystem::make(Parameters::make({k1, k2}, d), {b1, b2});
}

double friedrichs_cos(const ReconstructionSystem& sys, int i, int j) {
    // Orthonormal bases of R(V_i^*); principal-angle cosines are the singular
    // values of X^* Y, with cosines at 1 spanning the intersection.
    auto basis_of = [&](int t) {
        Eigen::JacobiSVD<Mat> svd(sys.blocks[t].adjoint(), Eigen::ComputeThinU);
        const RVec s = svd.singularValues();
        const double tol = 1e-10 * std::max(1.0, s.size() ? s(0) : 0.0);
        int rank = 0;
        for (Eigen::Index c = 0; c < s.size(); ++c)
            if (s(c) > tol) ++rank;
        return Mat(svd.matrixU().leftCols(rank));
    };
    const Mat x = basis_of(i), y = basis_of(j);
    const RVec s = singular_values(x.adjoint() * y);
    for (Eigen::Index c = 0; c < s.size(); ++c)
        if (s(c) <= 1.0 - 1e-8) return s(c);
    return 0.0;
}

namespace {

ScenarioResult scenario_two_block_riesz(const Config& cfg) {
    ScenarioResult res;
    res.name = "two-block-riesz";
    const auto params = Parameters::make({3, 2}, 5);
    const auto w = Weights::make((RVec(2) << 1.0, 1.0).finished(), params);

    bool all_reducible = true;
    int worst_dim = 1 << 30;
    for (unsigned t = 0; t < 20; ++t) {
        const auto sys =
            geom::random_projective(params, w, splitmix64(cfg.seed ^ (0xE1ULL + t)), cfg);
        const int dim = potential::commutant(sys, cfg).dimension;
        worst_dim = std::min(worst_dim, dim);
        if (dim < 2) all_reducible = false;
    }
    res.checks.push_back(check_true(
        "no irreducible system exists for k1 > k2, k1 + k2 = d (20 samples)",
        all_reducible, "min commutant dim = " + std::to_string(worst_dim)));

    // Orthogonal split: tight and reducible.
    auto sys = orthogonal_riesz(params, w);
    const auto [a, b] = bounds(sys, cfg);
    res.checks.push_back(check_true("orthogonal split is tight",
                                    std::abs(a - b) <= 1e-12,
                                    "A=" + std::to_string(a) + " B=" + std::to_string(b)));
    res.checks.push_back(check_true("orthogonal split is reducible",
                                    !potential::is_irreducible(sys, cfg)));
    return res;
}

ScenarioResult scenario_vector_frame_commutant(const Config& cfg) {
    ScenarioResult res;
    res.name = "vector-frame-commutant";
    const auto params = Parameters::make({1, 1, 1, 1}, 2);
    const auto w = Weights::make(RVec::Ones(4), params);

    // Orthogonal index split: f1, f2 on e1; f3, f4 on e2.
    std::vector<Mat> blocks;
    for (int i = 0; i < 4; ++i) {
        Mat b = Mat::Zero(1, 2);
        b(0, i / 2) = 1.0;
        blocks.push_back(std::move(b));
    }
    const auto split_sys = ReconstructionSystem::make(params, std::move(blocks));
    res.checks.push_back(check_true("orthogonally split frame is reducible",
                                    !potential::is_irreducible(split_sys, cfg)));

    bool generic_irreducible = true;
    for (unsigned t = 0; t < 20; ++t) {
        const auto sys =
            geom::random_projective(params, w, splitmix64(cfg.seed ^ (0xE2ULL + t)), cfg);
        if (!potential::is_irreducible(sys, cfg)) generic_irreducible = false;
    }
    res.checks.push_back(
        check_true("generic vector frames are irreducible (20 samples)",
                   generic_irreducible));
    return res;
}

ScenarioResult scenario_vector_frame_lambda(const Config& cfg) {
    ScenarioResult res;
    res.name = "vector-frame-lambda";
    const int m = 5, d = 3;
    const auto params = Parameters::make(std::vector<int>(m, 1), d);
    const auto w = Weights::make((RVec(5) << 2.0, 1.5, 1.0, 0.8, 0.5).finished(), params);

    const auto lam = maj::vector_frame_lambda(w.v, d);
    const auto cert = potential::optimal_spectrum(params, w, cfg);
    res.checks.push_back(check_near("irregularity formula matches optimal spectrum",
                                    lam.entries, cert.lambda_v.entries, 1e-7));
    res.checks.push_back(check_true("certified", cert.certified));
    return res;
}

ScenarioResult scenario_riesz_lambda(const Config& cfg) {
    ScenarioResult res;
    res.name = "riesz-lambda";
    const auto params = Parameters::make({2, 1}, 3);
    const auto w = Weights::make((RVec(2) << 1.3, 0.7).finished(), params);

    RVec expected(3);
    expected << 1.3 * 1.3, 1.3 * 1.3, 0.7 * 0.7;
    const auto cert = potential::optimal_spectrum(params, w, cfg);
    res.checks.push_back(check_near("lambda_v equals sorted squared weights",
                                    cert.lambda_v.entries, expected, 1e-7));

    const auto sys = orthogonal_riesz(params, w);
    res.checks.push_back(check_near("orthogonal construction attains lambda_v",
                                    spectrum(sys).entries, expected, 1e-12));
    return res;
}

ScenarioResult scenario_two_subspace_lambda(const Config& cfg) {
    ScenarioResult res;
    res.name = "two-subspace-lambda";
    const int k1 = 3, k2 = 2, d = 4;
    const double v1 = 1.2, v2 = 0.9;
    const auto params = Parameters::make({k1, k2}, d);
    const auto w = Weights::make((RVec(2) << v1, v2).finished(), params);

    const int r0 = k1 + k2 - d, r1 = k1 - r0, r2 = k2 - r0;
    RVec expected(d);
    int at = 0;
    for (int i = 0; i < r0; ++i) expected(at++) = v1 * v1 + v2 * v2;
    for (int i = 0; i < r1; ++i) expected(at++) = v1 * v1;
    for (int i = 0; i < r2; ++i) expected(at++) = v2 * v2;

    const auto cert = potential::optimal_spectrum(params, w, cfg);
    res.checks.push_back(check_near("two-subspace closed form matches lambda_v",
                                    cert.lambda_v.entries, expected, 1e-7));

    const auto sys = commuting_two_subspace(k1, k2, d, v1, v2);
    res.checks.push_back(check_near("commuting construction attains lambda_v",
                                    spectrum(sys).entries, expected, 1e-12));
    return res;
}

ScenarioResult scenario_minimizer_322(const Config& cfg) {
    ScenarioResult res;
    res.name = "minimizer-3-322-4";
    const auto sys = minimizer_322(cfg);
    const auto params = sys.params;
    const auto w = Weights::make(RVec::Ones(3), params);

    RVec expected(4);
    expected << 2.0, 2.0, 1.5, 1.5;
    res.checks.push_back(
        check_near("explicit system spectrum", spectrum(sys).entries, expected, 1e-12));

    const auto cert = potential::optimal_spectrum(params, w, cfg);
    res.checks.push_back(
        check_near("lambda_v = (2, 2, 3/2, 3/2)", cert.lambda_v.entries, expected, 1e-7));
    res.checks.push_back(check_true(
        "p_v = 125/9",
        std::abs(cert.p_v - 125.0 / 9.0) <= 1e-7,
        "p_v = " + std::to_string(cert.p_v)));
    res.checks.push_back(check_true(
        "joint potential of (V, V#) attains p_v",
        std::abs(potential::joint_potential(sys, canonical_dual(sys, cfg)) -
                 125.0 / 9.0) <= 1e-9));

    const auto rep = potential::tight_decomposition(sys, cfg);
    bool two_components =
        rep.components.size() == 2 && rep.minimizer_structure &&
        std::abs(rep.components[0].sigma - 2.0) <= 1e-9 && rep.components[0].dim == 2 &&
        std::abs(rep.components[1].sigma - 1.5) <= 1e-9 && rep.components[1].dim == 2 &&
        rep.worst_tight_residual <= 1e-8;
    res.checks.push_back(check_true("decomposes into tight components (2,2) and (3/2,2)",
                                    two_components));

    res.checks.push_back(check_true(
        "canonical dual is not projective",
        !projective_check(canonical_dual(sys, cfg), cfg.projective_tol).has_value()));

    bool angles = true;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(friedrichs_cos(sys, i, j) - 0.5) > 1e-10) angles = false;
    res.checks.push_back(
        check_true("Friedrichs angle cosines are 1/2 for every pair", angles));
    return res;
}

}  // namespace

std::vector<std::string> scenario_names() {
    return {"two-block-riesz",    "vector-frame-commutant", "vector-frame-lambda",
            "riesz-lambda",       "two-subspace-lambda",    "minimizer-3-322-4"};
}

ScenarioResult run_scenario(const std::string& name, const Config& cfg) {
    if (name == "two-block-riesz") return scenario_two_block_riesz(cfg);
    if (name == "vector-frame-commutant") return scenario_vector_frame_commutant(cfg);
    if (name == "vector-frame-lambda") return scenario_vector_frame_lambda(cfg);
    if (name == "riesz-lambda") return scenario_riesz_lambda(cfg);
    if (name == "two-subspace-lambda") return scenario_two_subspace_lambda(cfg);
    if (name == "minimizer-3-322-4") return scenario_minimizer_322(cfg);
    throw ArgumentError("unknown scenario: " + name);
}

std::vector<ScenarioResult> run_all(const Config& cfg) {
    std::vector<ScenarioResult> out;
    for (const auto& name : scenario_names()) out.push_back(run_scenario(name, cfg));
    return out;
}

}  // namespace rs::examples
