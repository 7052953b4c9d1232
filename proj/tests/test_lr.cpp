#include <doctest.h>

#include <filesystem>
#include <numeric>
#include <fstream>

#include "rs/core.hpp"
#include "rs/errors.hpp"
#include "rs/geometry.hpp"
#include "rs/lr.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace rs;
using rs_test::test_config;

TEST_CASE("partition_of") {
    CHECK(lr::partition_of({1, 2, 3}) == lr::Partition{});
    CHECK(lr::partition_of({2, 4}) == lr::Partition{2, 1});
    CHECK(lr::partition_of({5}) == lr::Partition{4});
    CHECK_THROWS_AS(lr::partition_of({2, 2}), ArgumentError);
    CHECK_THROWS_AS(lr::partition_of({}), ArgumentError);
}

TEST_CASE("lr_coefficient: pinned small values") {
    CHECK(lr::lr_coefficient({2, 1}, {{2, 1}}) == 1);  // c^lambda_lambda = 1
    CHECK(lr::lr_coefficient({2}, {{1}, {1}}) == 1);
    CHECK(lr::lr_coefficient({1, 1}, {{1}, {1}}) == 1);
    CHECK(lr::lr_coefficient({2, 1}, {{1}, {1}, {1}}) == 2);
    CHECK(lr::lr_coefficient({2}, {{1}}) == 0);        // size mismatch
    CHECK(lr::lr_coefficient({}, {}) == 1);
    // A classic multiplicity-2 case: c^{(3,2,1)}_{(2,1),(2,1)} = 2.
    CHECK(lr::lr_coefficient({3, 2, 1}, {{2, 1}, {2, 1}}) == 2);
}

TEST_CASE("lr_coefficient agrees with the Schur-polynomial oracle, |lambda| <= 5") {
    rs_test::SchurOracle oracle(5);
    const auto partitions = rs_test::partitions_up_to(5);
    for (const auto& mu : partitions) {
        for (const auto& nu : partitions) {
            const int total =
                std::accumulate(mu.begin(), mu.end(), 0) +
                std::accumulate(nu.begin(), nu.end(), 0);
            if (total > 5) continue;
            const auto expansion = oracle.product_in_schur_basis(mu, nu);
            for (const auto& lam : partitions) {
                if (std::accumulate(lam.begin(), lam.end(), 0) != total) continue;
                const auto it = expansion.find(lam);
                const long long want = (it == expansion.end()) ? 0 : it->second;
                CHECK(lr::lr_coefficient(lam, {mu, nu}) == want);
            }
        }
    }
}

TEST_CASE("lr_coefficient is symmetric under permuting inner partitions") {
    const std::vector<lr::Partition> inners = {{2, 1}, {1}, {2}};
    const lr::Partition outer{3, 2, 1};
    const auto c0 = lr::lr_coefficient(outer, inners);
    CHECK(c0 > 0);
    CHECK(lr::lr_coefficient(outer, {{1}, {2, 1}, {2}}) == c0);
    CHECK(lr::lr_coefficient(outer, {{2}, {1}, {2, 1}}) == c0);
    CHECK(lr::lr_coefficient(outer, {{2, 1}, {2}, {1}}) == c0);
}

TEST_CASE("enumerate_lr_tuples: scalar Horn condition for r = 1") {
    const auto cfg = test_config();
    // Two inner factors (three components): exactly the three tuples where
    // j_0 - 1 = (j_1 - 1) + (j_2 - 1).
    const auto t2 = lr::enumerate_lr_tuples(2, 1, 2, cfg);
    REQUIRE(t2.size() == 3);
    CHECK(t2[0].j == std::vector<lr::IndexTuple>{{1}, {1}, {1}});
    CHECK(t2[1].j == std::vector<lr::IndexTuple>{{2}, {1}, {2}});
    CHECK(t2[2].j == std::vector<lr::IndexTuple>{{2}, {2}, {1}});

    // One inner factor: the diagonal pairs only.
    const auto t1 = lr::enumerate_lr_tuples(2, 1, 1, cfg);
    REQUIRE(t1.size() == 2);
    CHECK(t1[0].j == std::vector<lr::IndexTuple>{{1}, {1}});
    CHECK(t1[1].j == std::vector<lr::IndexTuple>{{2}, {2}});

    // Brute-force cross-check for d = 3, r = 1, m = 2.
    const auto t3 = lr::enumerate_lr_tuples(3, 1, 2, cfg);
    int expected = 0;
    for (int j0 = 1; j0 <= 3; ++j0)
        for (int j1 = 1; j1 <= 3; ++j1)
            for (int j2 = 1; j2 <= 3; ++j2)
                if (j0 - 1 == (j1 - 1) + (j2 - 1)) ++expected;
    CHECK(static_cast<int>(t3.size()) == expected);
}

TEST_CASE("enumerate_lr_tuples: every tuple's coefficient is positive") {
    const auto cfg = test_config();
    for (int r = 1; r <= 3; ++r) {
        const auto tuples = lr::enumerate_lr_tuples(4, r, 3, cfg);
        CHECK(!tuples.empty());
        for (const auto& t : tuples) {
            std::vector<lr::Partition> inners;
            for (std::size_t i = 1; i < t.j.size(); ++i)
                inners.push_back(lr::partition_of(t.j[i]));
            CHECK(lr::lr_coefficient(lr::partition_of(t.j[0]), inners) > 0);
        }
        // Lexicographic ordering.
        for (std::size_t i = 0; i + 1 < tuples.size(); ++i)
            CHECK(tuples[i].j < tuples[i + 1].j);
    }
}

TEST_CASE("enumerate_lr_tuples: cap and cache") {
    auto cfg = test_config();
    CHECK_THROWS_AS(lr::enumerate_lr_tuples(6, 3, 6, cfg), CapError);

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "rs_lr_cache_probe";
    fs::remove_all(dir);
    cfg.cache_dir = dir.string();
    const auto fresh = lr::enumerate_lr_tuples(3, 2, 2, cfg);
    CHECK(fs::exists(dir / "d3_r2_m2.json"));
    const auto again = lr::enumerate_lr_tuples(3, 2, 2, cfg);
    REQUIRE(fresh.size() == again.size());
    for (std::size_t i = 0; i < fresh.size(); ++i) CHECK(fresh[i] == again[i]);
}

TEST_CASE("op_picture_contains: worked memberships") {
    const auto cfg = test_config();

    // Riesz parameters: the sorted squared-weight vector is a member.
    {
        const auto params = Parameters::make({2, 1}, 3);
        const auto w = Weights::make((RVec(2) << 1.2, 0.5).finished(), params);
        RVec mu(3);
        mu << 1.44, 1.44, 0.25;
        CHECK(lr::op_picture_contains(params, w, SpectrumVector::make(mu), cfg).first);
    }

    // (3,(3,2,2),4), v = 1: (2,2,3/2,3/2) in, (3,1,1,1) out (trace).
    {
        const auto params = Parameters::make({3, 2, 2}, 4);
        const auto w = Weights::make(RVec::Ones(3), params);
        RVec in(4);
        in << 2, 2, 1.5, 1.5;
        CHECK(lr::op_picture_contains(params, w, SpectrumVector::make(in), cfg).first);
        RVec out(4);
        out << 3, 1, 1, 1;
        const auto [member, cert] =
            lr::op_picture_contains(params, w, SpectrumVector::make(out), cfg);
        CHECK(!member);
        REQUIRE(cert.violated.has_value());
        CHECK(cert.violated->family == "trace");

        // A genuine Klyachko violation at the right trace: (3.5, 1.5, 1, 1).
        RVec kly(4);
        kly << 3.5, 1.5, 1.0, 1.0;
        const auto [m2, c2] =
            lr::op_picture_contains(params, w, SpectrumVector::make(kly), cfg);
        CHECK(!m2);
        REQUIRE(c2.violated.has_value());
        CHECK(c2.violated->family == "klyachko");
        CHECK(c2.violated->lhs > c2.violated->rhs);
    }

    // Scalar case d = 1: membership is the trace condition.
    {
        const auto params = Parameters::make({1, 1}, 1);
        const auto w = Weights::make(RVec::Ones(2), params);
        RVec mu(1);
        mu << 2.0;
        CHECK(lr::op_picture_contains(params, w, SpectrumVector::make(mu), cfg).first);
        mu << 1.5;
        CHECK(!lr::op_picture_contains(params, w, SpectrumVector::make(mu), cfg).first);
    }
}

TEST_CASE("op_picture_contains: boundary positivity and r=1 consequence") {
    const auto cfg = test_config();
    const auto params = Parameters::make({1, 1, 1}, 2);
    const auto w = Weights::make(RVec::Ones(3), params);

    // mu_d -> 0 is rejected (closure boundary).
    RVec mu(2);
    mu << 3.0 - 1e-12, 1e-12;
    const auto [member, cert] =
        lr::op_picture_contains(params, w, SpectrumVector::make(mu), cfg);
    CHECK(!member);
    REQUIRE(cert.violated.has_value());
    CHECK(cert.violated->family == "positivity");

    // r = 1 inequalities imply mu_1 <= sum v_i^2; check the implication on
    // members sampled from systems.
    for (std::uint64_t t = 0; t < 50; ++t) {
        const auto sys = geom::random_projective(params, w, 300 + t, cfg);
        const RVec lam = spectrum(sys).entries;
        CHECK(lam(0) <= w.v.array().square().sum() + 1e-9);
    }
}

TEST_CASE("sampled projective spectra are members (forward consistency)") {
    const auto cfg = test_config();
    const auto params = Parameters::make({2, 2}, 3);
    const auto w = Weights::make((RVec(2) << 1.0, 1.4).finished(), params);
    for (std::uint64_t t = 0; t < 200; ++t) {
        const auto sys = geom::random_projective(params, w, 7000 + t, cfg);
        const auto [member, cert] =
            lr::op_picture_contains(params, w, spectrum(sys), cfg);
        CHECK(member);
    }
}

TEST_CASE("op-picture convexity probe") {
    const auto cfg = test_config();
    const auto params = Parameters::make({3, 2, 2}, 4);
    const auto w = Weights::make(RVec::Ones(3), params);
    CHECK(lr::op_picture_convexity_probe(params, w, 100, 9, batch::Exec::OpenMP, cfg));

    // Riesz midpoint: spectra live in the same polytope; midpoints stay in.
    const auto params2 = Parameters::make({1, 1}, 2);
    const auto w2 = Weights::make((RVec(2) << 1.0, 0.6).finished(), params2);
    CHECK(lr::op_picture_convexity_probe(params2, w2, 50, 10, batch::Exec::Serial, cfg));
}
