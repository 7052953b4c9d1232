#include <doctest.h>

#include <stdexcept>

#include "rs/batch.hpp"
#include "rs/erasure.hpp"
#include "rs/rng.hpp"
#include "test_util.hpp"

using namespace rs;

TEST_CASE("map_indexed: serial and OpenMP produce bit-identical output") {
    auto work = [](std::size_t i) {
        Rng rng = Rng::substream(42, i);
        double acc = 0.0;
        for (int t = 0; t < 100; ++t) acc += rng.normal() * rng.uniform();
        return acc;
    };
    const auto serial = batch::map_indexed<double>(500, work, batch::Exec::Serial);
    const auto parallel = batch::map_indexed<double>(500, work, batch::Exec::OpenMP);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(serial[i] == parallel[i]);
}

TEST_CASE("map_indexed: exceptions from parallel items are rethrown") {
    auto bad = [](std::size_t i) -> int {
        if (i == 37) throw std::runtime_error("boom");
        return static_cast<int>(i);
    };
    CHECK_THROWS_AS(batch::map_indexed<int>(100, bad, batch::Exec::OpenMP),
                    std::runtime_error);
    CHECK_THROWS_AS(batch::map_indexed<int>(100, bad, batch::Exec::Serial),
                    std::runtime_error);
}

TEST_CASE("map_reduce: deterministic reduction order") {
    auto work = [](std::size_t i) { return static_cast<double>(i) * 1e-3; };
    const auto a = batch::map_reduce<double>(
        1000, work, 0.0, [](double acc, double x) { return acc + x; },
        batch::Exec::Serial);
    const auto b = batch::map_reduce<double>(
        1000, work, 0.0, [](double acc, double x) { return acc + x; },
        batch::Exec::OpenMP);
    CHECK(a == b);  // identical association order, hence bitwise equality
}

TEST_CASE("erasure scan agrees across execution modes on a larger system") {
    const auto cfg = rs_test::test_config();
    const auto sys = rs_test::random_rs(Parameters::make({1, 1, 1, 1, 1, 1, 1, 1}, 3), 5);
    const auto serial = erasure::scan(sys, erasure::Exec::Serial, cfg);
    const auto parallel = erasure::scan(sys, erasure::Exec::OpenMP, cfg);
    REQUIRE(serial.size() == parallel.size());
    CHECK(serial.size() == (1u << 8) - 2);
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].j == parallel[i].j);
        CHECK(serial[i].survives == parallel[i].survives);
        if (serial[i].bound_new)
            CHECK(serial[i].bound_new.value() == parallel[i].bound_new.value());
    }
}
