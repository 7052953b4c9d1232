#include <doctest.h>

#include "rs/core.hpp"
#include "rs/dual_picture.hpp"
#include "rs/errors.hpp"
#include "rs/geometry.hpp"
#include "test_util.hpp"

using namespace rs;
using rs_test::random_rs;
using rs_test::test_config;

namespace {

ReconstructionSystem parseval_system(int n, int d, const std::vector<int>& k,
                                     std::uint64_t seed) {
    Rng rng(seed);
    const Mat q = qr_q_positive(gaussian_matrix(n, d, rng));
    std::vector<Mat> blocks;
    int row = 0;
    for (int ki : k) {
        blocks.push_back(q.middleRows(row, ki));
        row += ki;
    }
    return ReconstructionSystem::make(Parameters::make(k, d), std::move(blocks));
}

}  // namespace

TEST_CASE("membership: canonical dual spectrum is always a member") {
    const auto cfg = test_config();
    for (std::uint64_t t = 0; t < 20; ++t) {
        const auto sys = random_rs(Parameters::make({2, 2, 2}, 3), 100 + t);
        const auto mu = spectrum(canonical_dual(sys, cfg));
        CHECK(dualpic::contains(sys, mu, cfg).first);
    }
}

TEST_CASE("membership: Parseval floor for n >= 2d") {
    const auto cfg = test_config();
    const auto sys = parseval_system(6, 3, {2, 2, 2}, 3);
    // S = I: member iff min mu >= 1.
    RVec ok(3);
    ok << 2.0, 1.5, 1.0;
    CHECK(dualpic::contains(sys, SpectrumVector::make(ok), cfg).first);

    RVec bad(3);
    bad << 2.0, 2.0, 0.5;
    const auto [member, cert] =
        dualpic::contains(sys, SpectrumVector::make(bad), cfg);
    CHECK(!member);
    REQUIRE(cert.violated.has_value());
    CHECK(cert.violated->family == "mayor2d");
    CHECK(cert.violated->index == 3);  // j = d
    CHECK(cert.violated->lhs == doctest::Approx(0.5));
    CHECK(cert.violated->rhs == doctest::Approx(1.0));
}

TEST_CASE("membership: n < 2d adds the upper interlacing family") {
    const auto cfg = test_config();
    // Riesz case n = d: Lambda(D(V)) is the single point lambda(S_V^{-1}).
    Mat v(2, 2);
    v << 1, 0, 0, 2;  // S = diag(1,4), dual spectrum = (1, 1/4)
    const auto sys = ReconstructionSystem::make(Parameters::make({2}, 2), {v});
    RVec exact(2);
    exact << 1.0, 0.25;
    CHECK(dualpic::contains(sys, SpectrumVector::make(exact), cfg).first);

    RVec above(2);
    above << 1.1, 0.25;  // violates the menor family (must equal here)
    const auto [member, cert] =
        dualpic::contains(sys, SpectrumVector::make(above), cfg);
    CHECK(!member);
    REQUIRE(cert.violated.has_value());
    CHECK(cert.violated->family == "menor2d");

    RVec below(2);
    below << 1.0, 0.2;  // violates mayor2d
    const auto [m2, c2] = dualpic::contains(sys, SpectrumVector::make(below), cfg);
    CHECK(!m2);
    CHECK(c2.violated->family == "mayor2d");

    CHECK_THROWS_AS(
        dualpic::contains(sys, SpectrumVector::make((RVec(2) << 1.0, 0.0).finished()),
                          cfg),
        ArgumentError);
}

TEST_CASE("membership in n < 2d agrees with random-dual sampling") {
    const auto cfg = test_config();
    const auto params = Parameters::make({3, 1}, 3);  // n = 4 < 6 = 2d
    const auto sys = random_rs(params, 17);
    Rng rng(23);

    // Sampled duals give members.
    for (int t = 0; t < 200; ++t) {
        const auto w = geom::random_dual(sys, rng, 0.3 + rng.uniform(), cfg);
        CHECK(dualpic::contains(sys, spectrum(w), cfg).first);
    }

    // A certified non-member is never approached by sampled duals.
    const RVec rho = spectrum(canonical_dual(sys, cfg)).entries;
    RVec bad = rho;
    bad(params.d - 1) *= 0.5;  // below the canonical floor: not a member
    const auto verdict = dualpic::contains(sys, SpectrumVector::sort_of(bad), cfg);
    REQUIRE(!verdict.first);
    double closest = 1e30;
    for (int t = 0; t < 2000; ++t) {
        const auto w = geom::random_dual(sys, rng, 0.05 + 2.0 * rng.uniform(), cfg);
        closest = std::min(
            closest, (spectrum(w).entries - bad).cwiseAbs().maxCoeff());
    }
    CHECK(closest > 1e-3);
}

TEST_CASE("construct_dual_with_spectrum: canonical target") {
    const auto cfg = test_config();
    const auto sys = random_rs(Parameters::make({2, 2, 1}, 3), 29);
    const auto mu = spectrum(canonical_dual(sys, cfg));
    const auto w = dualpic::construct_dual_with_spectrum(sys, mu, cfg);
    CHECK(is_dual(w, sys, 1e-8));
    CHECK((spectrum(w).entries - mu.entries).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("construct_dual_with_spectrum: Parseval bumped spectrum") {
    const auto cfg = test_config();
    const auto sys = parseval_system(7, 3, {3, 2, 2}, 5);
    RVec mu(3);
    mu << 1.5, 1.0, 1.0;
    const auto w =
        dualpic::construct_dual_with_spectrum(sys, SpectrumVector::make(mu), cfg);
    CHECK(is_dual(w, sys, 1e-8));
    CHECK((spectrum(w).entries - mu).cwiseAbs().maxCoeff() <= 1e-6);

    // Non-member target is rejected up front.
    RVec bad(3);
    bad << 1.5, 1.0, 0.5;
    CHECK_THROWS_AS(
        dualpic::construct_dual_with_spectrum(sys, SpectrumVector::make(bad), cfg),
        ArgumentError);
}

TEST_CASE("construct_dual_with_spectrum: interlacing boundary in n < 2d") {
    const auto cfg = test_config();
    const auto params = Parameters::make({2, 2}, 3);  // n = 4 < 6
    const auto sys = random_rs(params, 31);
    const RVec lam = spectrum(sys).entries;
    // Upper boundary of the menor family: mu_{d} = lambda_{n-d+ i}... pick the
    // canonical dual spectrum and push its smallest entry to the bound.
    RVec rho(3);
    for (int i = 0; i < 3; ++i) rho(i) = 1.0 / lam(2 - i);
    // Equality case: mu = (rho_1, rho_2, bound) where the menor2d constraint
    // for i = 1 forces mu_3 <= lambda_{2d-n-i+1}(S^{-1}) = lambda_2(S^{-1}).
    RVec mu(3);
    mu << rho(0) + 0.3, rho(1), rho(1);
    const auto sv = SpectrumVector::sort_of(mu);
    if (dualpic::contains(sys, sv, cfg).first) {
        const auto w = dualpic::construct_dual_with_spectrum(sys, sv, cfg);
        CHECK(is_dual(w, sys, 1e-8));
        CHECK((spectrum(w).entries - sv.entries).cwiseAbs().maxCoeff() <= 1e-6);
    }
}

TEST_CASE("dual potential floor") {
    const auto cfg = test_config();
    // Tight: floor = d^3 / tau^2.
    const auto dup = ReconstructionSystem::make(
        Parameters::make({2, 2}, 2), {Mat::Identity(2, 2), Mat::Identity(2, 2)});
    CHECK(dualpic::dual_potential_floor(dup, cfg) ==
          doctest::Approx(8.0 / 16.0));  // d^3/tau^2 = 8/16

    Mat v(2, 2);
    v << 1, 0, 0, std::sqrt(2.0);  // S = diag(1, 2)
    const auto sys = ReconstructionSystem::make(Parameters::make({2}, 2), {v});
    CHECK(dualpic::dual_potential_floor(sys, cfg) == doctest::Approx(1.25));

    // Random duals respect the floor, with a gap away from the canonical dual.
    const auto sys2 = random_rs(Parameters::make({2, 2, 2}, 3), 37);
    const double floor = dualpic::dual_potential_floor(sys2, cfg);
    const auto vd = canonical_dual(sys2, cfg);
    Rng rng(41);
    for (int t = 0; t < 200; ++t) {
        const auto w = geom::random_dual(sys2, rng, 0.2 + rng.uniform(), cfg);
        const Mat sw = frame_operator(w);
        const double fp = (sw * sw).trace().real();
        CHECK(fp >= floor - 1e-9);
        const double dist = (synthesis(w) - synthesis(vd)).norm();
        if (dist > 1e-6) CHECK(fp > floor);
    }
}

TEST_CASE("Gram compatibility and trace decomposition for duals") {
    const auto cfg = test_config();
    const auto sys = random_rs(Parameters::make({2, 3}, 3), 43);
    const Mat gv = gram(sys);
    const auto vd = canonical_dual(sys, cfg);
    Rng rng(47);
    for (int t = 0; t < 50; ++t) {
        const auto w = geom::random_dual(sys, rng, 0.5, cfg);
        const Mat gw = gram(w);
        CHECK((gv * gw * gv - gv).norm() <= 1e-10 * std::max(1.0, gv.norm()));

        // tr S_W = tr S_{V#} + ||A||_2^2 with A = T_W^* - T_{V#}^*.
        const Mat a = synthesis(w) - synthesis(vd);
        const double lhs = frame_operator(w).trace().real();
        const double rhs = frame_operator(vd).trace().real() + a.squaredNorm();
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("dual-picture convexity probe") {
    const auto cfg = test_config();
    const auto sys = random_rs(Parameters::make({2, 2, 2}, 3), 53);
    CHECK(dualpic::convexity_probe(sys, 100, 11, batch::Exec::OpenMP, cfg));

    // Degenerate d = 1.
    Mat one(1, 1);
    one << 2.0;
    const auto tiny = ReconstructionSystem::make(Parameters::make({1, 1}, 1),
                                                 {one, one});
    CHECK(dualpic::convexity_probe(tiny, 20, 12, batch::Exec::Serial, cfg));

    // Near-boundary pairs in an n < 2d instance.
    const auto sys2 = random_rs(Parameters::make({2, 1}, 3), 59);
    CHECK(dualpic::convexity_probe(sys2, 100, 13, batch::Exec::OpenMP, cfg));
}

TEST_CASE("fan_pall_isometry: direct compressions") {
    const auto cfg = test_config();
    // Compress diag(5, 3, 1, 0) to spectrum (4, 2): interlacing holds.
    RVec a(4), target(2);
    a << 5, 3, 1, 0;
    target << 4, 2;
    const Mat c = dualpic::fan_pall_isometry(a, target, 1, cfg);
    CHECK((c.adjoint() * c - Mat::Identity(2, 2)).norm() <= 1e-12);
    const Mat m = c.adjoint() * a.asDiagonal().toDenseMatrix().cast<Cplx>() * c;
    CHECK((eigvals_desc(m) - target).cwiseAbs().maxCoeff() <= 1e-10);

    // Ties in the input spectrum.
    RVec at(4), tt(3);
    at << 2, 2, 2, 0;
    tt << 2, 2, 1;
    const Mat ct = dualpic::fan_pall_isometry(at, tt, 2, cfg);
    const Mat mt = ct.adjoint() * at.asDiagonal().toDenseMatrix().cast<Cplx>() * ct;
    CHECK((eigvals_desc(mt) - tt).cwiseAbs().maxCoeff() <= 1e-10);
}
