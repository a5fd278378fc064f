#include <doctest.h>

#include "aoi/json_io.hpp"
#include "testutil.hpp"

using namespace aoi;

namespace {

const char* kTwoSensorConfig = R"({
  "sensors": 2,
  "processes": 2,
  "lambda": [0.5, 1.0],
  "mu": 2.0,
  "correlation": [[1.0, 0.5], [0.5, 1.0]],
  "preemption": [1.0, 1.0],
  "sim": {"horizon": 1000.0, "warmup": 10.0, "seed": 9, "replications": 2}
})";

} // namespace

TEST_CASE("parses a full config with sim block") {
    const ParsedConfig parsed = parse_config_json(kTwoSensorConfig);
    CHECK(parsed.system.n_sensors == 2);
    CHECK(parsed.system.n_processes == 2);
    CHECK(parsed.system.arrival_rates == std::vector<double>{0.5, 1.0});
    CHECK(parsed.system.service_rate == 2.0);
    CHECK(parsed.system.corr(0, 1) == 0.5);
    REQUIRE(parsed.policy.has_value());
    CHECK(parsed.policy->probs == std::vector<double>{1.0, 1.0});
    CHECK(parsed.has_sim);
    CHECK(parsed.sim.horizon == 1000.0);
    CHECK(parsed.sim.warmup == 10.0);
    CHECK(parsed.sim.seed == 9);
    CHECK(parsed.sim.replications == 2);
    CHECK_NOTHROW(validate_config(parsed.system));
}

TEST_CASE("rejects unknown keys, malformed JSON, and bad shapes") {
    CHECK_THROWS_AS(parse_config_json("{"), ConfigParseError);
    CHECK_THROWS_AS(parse_config_json(R"({"sensors": 1})"), ConfigParseError);
    CHECK_THROWS_AS(
        parse_config_json(
            R"({"sensors":1,"processes":1,"lambda":[1],"mu":1,"correlation":[[1]],"bogus":3})"),
        ConfigParseError);
    CHECK_THROWS_AS(
        parse_config_json(
            R"({"sensors":1,"processes":1,"lambda":[1],"mu":1,"correlation":[[1,2]]})"),
        ConfigParseError);
    CHECK_THROWS_AS(
        parse_config_json(
            R"({"sensors":2,"processes":1,"lambda":[1,1],"mu":1,"correlation":[[1]]})"),
        ConfigParseError);
    CHECK_THROWS_AS(
        parse_config_json(
            R"({"sensors":1,"processes":1,"lambda":["x"],"mu":1,"correlation":[[1]]})"),
        ConfigParseError);
    CHECK_THROWS_AS(
        parse_config_json(
            R"({"sensors":1,"processes":1,"lambda":[1],"mu":1,"correlation":[[1]],"sim":{"bad":1}})"),
        ConfigParseError);
}

TEST_CASE("config round-trips through its JSON form") {
    const ParsedConfig parsed = parse_config_json(kTwoSensorConfig);
    const nlohmann::json doc = config_to_json(parsed.system, parsed.policy);
    const ParsedConfig again = parse_config(doc);
    CHECK(again.system.arrival_rates == parsed.system.arrival_rates);
    CHECK(again.system.correlation == parsed.system.correlation);
    CHECK(again.policy->probs == parsed.policy->probs);
}

TEST_CASE("format_double round-trips exactly") {
    for (double value : {2.0 / 3.0, 1e-17, 123456.789, 0.1, 5.0}) {
        const std::string text = format_double(value);
        CHECK(std::stod(text) == value);
    }
}

TEST_CASE("result serializers carry the full payload") {
    const SystemConfig config = testutil::unit_config();
    const PreemptionPolicy policy = PreemptionPolicy::every(1);

    const AoiReport report = aoi_sum(config, policy);
    const nlohmann::json analysis = analysis_to_json(config, policy, report);
    CHECK(analysis["aoi"]["total"] == report.total);
    CHECK(analysis["pi"].size() == 1);

    const SimConfig sim{1e3, std::nullopt, 1, 2};
    const SimResult result = simulate(config, policy, sim);
    const nlohmann::json sim_doc = sim_result_to_json(result, sim);
    CHECK(sim_doc["aoi_mean"].size() == 1);
    CHECK(sim_doc["counts"]["arrivals"] == result.counts.arrivals);
    CHECK(sim_doc["replications"] == 2);

    const std::string csv = sim_result_to_csv(result);
    CHECK(csv.rfind("replication,process,aoi,pi0,pi1,pi2\n", 0) == 0);

    BnbResult bnb;
    bnb.p_star = {1.0};
    bnb.objective = 2.0;
    bnb.certified = true;
    const nlohmann::json bnb_doc = bnb_result_to_json(bnb, 8);
    CHECK(bnb_doc["theorem2_bound"] == 8);
    CHECK(bnb_doc["certified"] == true);
    CHECK(bnb_doc["p_star"][0] == 1.0);
}
