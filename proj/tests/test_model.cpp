#include <doctest.h>

#include "aoi/model.hpp"
#include "testutil.hpp"

using namespace aoi;
using testutil::rel_close;

TEST_CASE("validate_config accepts the reference two-sensor system") {
    SystemConfig config{2, 2, {1.0, 1.0}, 2.0, {1.0, 0.5, 0.5, 1.0}};
    CHECK_NOTHROW(validate_config(config));
}

TEST_CASE("validate_config rejects an uncovered process and names it") {
    SystemConfig config{1, 1, {1.0}, 1.0, {0.0}};
    try {
        validate_config(config);
        FAIL("expected UncoveredProcess");
    } catch (const UncoveredProcess& e) {
        CHECK(e.process == 0);
    }
    CHECK_NOTHROW(validate_config(config, {.allow_uncovered = true}));
}

TEST_CASE("validate_config rejects nonpositive rates") {
    SystemConfig config{2, 1, {1.0, -1.0}, 1.0, {1.0, 1.0}};
    CHECK_THROWS_AS(validate_config(config), NonPositiveRate);
    config.arrival_rates = {1.0, 1.0};
    config.service_rate = 0.0;
    CHECK_THROWS_AS(validate_config(config), NonPositiveRate);
}

TEST_CASE("validate_config rejects dimension and range violations") {
    SystemConfig config{2, 2, {1.0}, 1.0, {1.0, 0.5, 0.5, 1.0}};
    CHECK_THROWS_AS(validate_config(config), DimensionMismatch);
    config.arrival_rates = {1.0, 1.0};
    config.correlation = {1.0, 0.5, 0.5};
    CHECK_THROWS_AS(validate_config(config), DimensionMismatch);
    config.correlation = {1.0, 0.5, 0.5, 1.5};
    CHECK_THROWS_AS(validate_config(config), CorrelationOutOfRange);
}

TEST_CASE("informative_rates endpoint policies") {
    SystemConfig config{2, 2, {1.0, 1.0}, 2.0, {1.0, 0.5, 0.5, 1.0}};

    RateSummary all = informative_rates(config, PreemptionPolicy::every(2));
    CHECK(all.informative_preempting[0] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(all.informative_preempting[1] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(all.informative_nonpreempting[0] == 0.0);
    CHECK(all.informative_nonpreempting[1] == 0.0);
    CHECK(all.channel_total == doctest::Approx(2.0));
    CHECK(all.channel_nonpreempting == 0.0);

    config.arrival_rates = {1.0, 6.0};
    RateSummary none = informative_rates(config, PreemptionPolicy::none(2));
    CHECK(none.informative_nonpreempting[0] == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(none.informative_nonpreempting[1] == doctest::Approx(6.5).epsilon(1e-15));
    CHECK(none.informative_preempting[0] == 0.0);
    CHECK(none.informative_preempting[1] == 0.0);
    CHECK(none.channel_total == doctest::Approx(7.0));
    CHECK(none.channel_preempting == 0.0);
}

TEST_CASE("informative_rates mixed policy against a scalar-loop oracle") {
    SystemConfig config{2, 2, {2.0, 3.0}, 1.0, {1.0, 0.0, 0.0, 1.0}};
    PreemptionPolicy policy{{0.5, 0.2}};
    RateSummary rates = informative_rates(config, policy);

    // Independent elementwise evaluation.
    for (int j = 0; j < 2; ++j) {
        double preempting = 0.0, passive = 0.0;
        for (int i = 0; i < 2; ++i) {
            preempting += config.arrival_rates[i] * policy.probs[i] * config.corr(i, j);
            passive += config.arrival_rates[i] * (1.0 - policy.probs[i]) * config.corr(i, j);
        }
        CHECK(rates.informative_preempting[j] == doctest::Approx(preempting).epsilon(1e-15));
        CHECK(rates.informative_nonpreempting[j] == doctest::Approx(passive).epsilon(1e-15));
    }
    CHECK(rates.informative_preempting[0] == doctest::Approx(1.0));
    CHECK(rates.informative_preempting[1] == doctest::Approx(0.6));
    CHECK(rates.informative_nonpreempting[0] == doctest::Approx(1.0));
    CHECK(rates.informative_nonpreempting[1] == doctest::Approx(2.4));
    CHECK(rates.channel_preempting == doctest::Approx(1.6));
    CHECK(rates.channel_nonpreempting == doctest::Approx(3.4));
}

TEST_CASE("informative_rates rejects a mismatched policy") {
    SystemConfig config{2, 1, {1.0, 1.0}, 1.0, {1.0, 1.0}};
    CHECK_THROWS_AS(informative_rates(config, PreemptionPolicy{{0.5}}), DimensionMismatch);
    CHECK_THROWS_AS(informative_rates(config, PreemptionPolicy{{0.5, 1.5}}),
                    ProbabilityOutOfRange);
}

TEST_CASE("rate properties: linearity, conservation, channel bounds") {
    rng::Xoshiro256pp gen(0xA0A0A0A0ULL);
    for (int trial = 0; trial < 200; ++trial) {
        SystemConfig config = testutil::random_config(gen, 5, 5, 0.1, 10.0);
        PreemptionPolicy policy = testutil::random_policy(gen, config.n_sensors);
        RateSummary rates = informative_rates(config, policy);

        SystemConfig doubled = config;
        for (double& rate : doubled.arrival_rates) rate *= 2.0;
        RateSummary twice = informative_rates(doubled, policy);

        CHECK(rel_close(twice.channel_total, 2.0 * rates.channel_total, 1e-12));
        CHECK(rel_close(twice.channel_preempting, 2.0 * rates.channel_preempting, 1e-12));
        for (int j = 0; j < config.n_processes; ++j) {
            CHECK(rel_close(twice.informative_preempting[j],
                            2.0 * rates.informative_preempting[j], 1e-12));

            // Split rates conserve the policy-independent informative total.
            const double total = rates.informative_preempting[j] +
                                 rates.informative_nonpreempting[j];
            CHECK(rel_close(total, config.informative_rate(j), 1e-12));

            CHECK(rates.informative_preempting[j] <= rates.channel_preempting * (1 + 1e-12));
            CHECK(rates.informative_nonpreempting[j] <=
                  rates.channel_nonpreempting * (1 + 1e-12) + 1e-300);
        }
        CHECK(rel_close(rates.channel_total, config.channel_rate(), 1e-12));
    }
}
