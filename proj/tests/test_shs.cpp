#include <cmath>

#include <doctest.h>

#include "aoi/shs.hpp"
#include "testutil.hpp"

using namespace aoi;
using testutil::rel_close;
using testutil::unit_config;

TEST_CASE("chain oracle reproduces the unit-system ages") {
    const SystemConfig config = unit_config();

    const ShsSolution preempting = shs_oracle_aoi(config, PreemptionPolicy::every(1), 0);
    CHECK(preempting.aoi == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(preempting.pi.pi0 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(preempting.pi.pi1 == doctest::Approx(0.5).epsilon(1e-12));

    const ShsSolution passive = shs_oracle_aoi(config, PreemptionPolicy::none(1), 0);
    CHECK(passive.aoi == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("oracle structure: dead coordinates vanish, the rest are nonnegative") {
    rng::Xoshiro256pp gen(0xD15EA5EULL);
    for (int trial = 0; trial < 200; ++trial) {
        const SystemConfig config = testutil::random_config(gen, 5, 5, 0.1, 10.0);
        const PreemptionPolicy policy = testutil::random_policy(gen, config.n_sensors);
        for (int j = 0; j < config.n_processes; ++j) {
            const ShsSolution solution = shs_oracle_aoi(config, policy, j);
            CHECK(std::fabs(solution.v_bar[1]) <= 1e-12);  // v01
            CHECK(std::fabs(solution.v_bar[5]) <= 1e-12);  // v21
            for (double v : solution.v_bar) CHECK(v >= -1e-12);
            CHECK(solution.aoi ==
                  doctest::Approx(solution.v_bar[0] + solution.v_bar[2] + solution.v_bar[4])
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("oracle equals the closed form within 1e-9 on random systems") {
    rng::Xoshiro256pp gen(0xACE0FBA5EULL);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const SystemConfig config = testutil::random_config(gen, 5, 5, 0.1, 10.0);
        const PreemptionPolicy policy = testutil::random_policy(gen, config.n_sensors);
        for (int j = 0; j < config.n_processes; ++j) {
            const double direct = aoi_process(config, policy, j);
            const double oracle = shs_oracle_aoi(config, policy, j).aoi;
            const double rel = std::fabs(direct - oracle) / direct;
            worst = std::fmax(worst, rel);
        }
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("rate-form expression is a third equal route") {
    rng::Xoshiro256pp gen(0x3F3F3FULL);
    for (int trial = 0; trial < 500; ++trial) {
        const SystemConfig config = testutil::random_config(gen, 5, 5, 0.1, 10.0);
        const PreemptionPolicy policy = testutil::random_policy(gen, config.n_sensors);
        const RateSummary rates = informative_rates(config, policy);
        for (int j = 0; j < config.n_processes; ++j) {
            const double direct = aoi_process(config, policy, j);
            const double via_rates = aoi_rate_form(rates, config.service_rate, j);
            CHECK(rel_close(direct, via_rates, 1e-12));
        }
    }
}

TEST_CASE("oracle matches the stationary closed form") {
    rng::Xoshiro256pp gen(0xC0FFEEULL);
    for (int trial = 0; trial < 200; ++trial) {
        const SystemConfig config = testutil::random_config(gen, 5, 5, 0.1, 10.0);
        const PreemptionPolicy policy = testutil::random_policy(gen, config.n_sensors);
        for (int j = 0; j < config.n_processes; ++j) {
            const ShsSolution solution = shs_oracle_aoi(config, policy, j);
            const StationaryDistribution closed = stationary_distribution(config, policy, j);
            CHECK(std::fabs(solution.pi.pi0 - closed.pi0) <= 1e-12);
            CHECK(std::fabs(solution.pi.pi1 - closed.pi1) <= 1e-12);
            CHECK(std::fabs(solution.pi.pi2 - closed.pi2) <= 1e-12);
        }
    }
}

TEST_CASE("oracle rejects uncovered processes") {
    SystemConfig config{1, 2, {1.0}, 1.0, {1.0, 0.0}};
    CHECK_THROWS_AS(shs_oracle_aoi(config, PreemptionPolicy::every(1), 1), UncoveredProcess);
}
