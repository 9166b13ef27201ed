#include <doctest.h>

#include <set>

#include <json.hpp>

#include "aac/errors.hpp"
#include "aac/scenario.hpp"

using namespace aac;

TEST_SUITE_BEGIN("scenario");

TEST_CASE("builtin library has the twelve named scenarios") {
    const auto all = builtin_scenarios();
    CHECK(all.size() == 12);
    std::set<std::string> names;
    for (const Scenario& scn : all) {
        names.insert(scn.name);
        scn.validate();
    }
    for (const char* want :
         {"fig1a", "fig1b", "fig1c", "fig1d", "fig1e", "fig1f", "fig1g",
          "fig1h", "fig4", "fig5a", "fig5b", "zero-sanity"})
        CHECK(names.count(want) == 1);
}

TEST_CASE("fig1e carries the design parameters") {
    const Scenario scn = builtin_scenario("fig1e");
    CHECK(scn.measurement.kind == MeasurementKind::additive_bias);
    CHECK(scn.measurement.bias == Vec{1.0, 0.0});
    CHECK(scn.measurement.t_on == 20.0);
    CHECK(scn.controller.gamma_diag == Vec(10, 2.0));
    CHECK(scn.controller.lambda_rate == 5.0);
    CHECK(scn.controller.w_theta == 0.5);
    CHECK(scn.controller.w_lambda == 0.2);
    CHECK(scn.controller.omega == 0.01);
    CHECK(scn.controller.robust_mode == "tanh");
    CHECK(scn.controller.centers.size() == 10);
    CHECK(scn.controller.centers.front() == Vec{-0.5, -0.5});
    CHECK(scn.controller.centers.back() == Vec{0.5, 0.5});
    CHECK(scn.controller.width == 0.3);
    CHECK(scn.x0[0] == 0.7853981633974483);
}

TEST_CASE("fig4 switches the unknown dynamics at t = 20") {
    const Scenario scn = builtin_scenario("fig4");
    REQUIRE(scn.plant.h_schedule.size() == 2);
    CHECK(scn.plant.h_schedule[1].first == 20.0);
    CHECK(scn.plant.h_schedule[1].second == "5*sin(x1)+cos(x2)+x1^2");
    CHECK(scn.measurement.kind == MeasurementKind::accurate);
}

TEST_CASE("fig5b is the multiplicative actuator fault") {
    const Scenario scn = builtin_scenario("fig5b");
    CHECK(scn.actuator.kind == ActuatorFaultKind::multiplicative);
    CHECK(scn.actuator.factor == 0.5);
}

TEST_CASE("unknown builtin name throws") {
    CHECK_THROWS_AS((void)builtin_scenario("fig9z"), InvalidParameter);
}

TEST_CASE("JSON round-trip is bit exact for every builtin") {
    for (const Scenario& scn : builtin_scenarios()) {
        const std::string text = scenario_to_json(scn);
        const Scenario back = scenario_from_json(text);
        CHECK(scenario_to_json(back) == text);

        // spot checks on the parsed values
        CHECK(back.name == scn.name);
        CHECK(back.x0 == scn.x0);
        CHECK(back.dt == scn.dt);
        CHECK(back.t_end == scn.t_end);
        CHECK(back.seed == scn.seed);
        CHECK(back.controller.gamma_diag == scn.controller.gamma_diag);
        CHECK(back.controller.centers == scn.controller.centers);
        CHECK(back.measurement.kind == scn.measurement.kind);
        CHECK(back.actuator.kind == scn.actuator.kind);
        CHECK(back.verify.ultimate_bound_x == scn.verify.ultimate_bound_x);
        CHECK(back.verify.tracking_band == scn.verify.tracking_band);
    }
}

TEST_CASE("unknown keys are rejected at every level") {
    const std::string good = scenario_to_json(builtin_scenario("fig1a"));

    auto with_extra = [&](const char* section, const char* key) {
        nlohmann::json j = nlohmann::json::parse(good);
        if (section)
            j[section][key] = 1;
        else
            j[key] = 1;
        return j.dump();
    };

    CHECK_THROWS_AS((void)scenario_from_json(with_extra(nullptr, "extra")),
                    ParseError);
    CHECK_THROWS_AS((void)scenario_from_json(with_extra("plant", "mass")),
                    ParseError);
    CHECK_THROWS_AS((void)scenario_from_json(with_extra("controller", "w_g")),
                    ParseError);
    CHECK_THROWS_AS((void)scenario_from_json(with_extra("measurement", "sig")),
                    ParseError);
    CHECK_THROWS_AS((void)scenario_from_json(with_extra("actuator", "gain")),
                    ParseError);
    CHECK_THROWS_AS((void)scenario_from_json(with_extra("verify", "slack2")),
                    ParseError);
}

TEST_CASE("grid invariants are enforced") {
    Scenario scn = builtin_scenario("fig1a");
    scn.dt = 0.0;
    CHECK_THROWS_AS(scn.validate(), InvalidParameter);

    scn = builtin_scenario("fig1a");
    scn.t_end = 40.0005;  // not a multiple of dt
    CHECK_THROWS_AS(scn.validate(), InvalidParameter);

    scn = builtin_scenario("fig1a");
    scn.log_every = 7;  // 40000 steps do not divide evenly
    CHECK_THROWS_AS(scn.validate(), InvalidParameter);

    scn = builtin_scenario("fig1e");
    scn.measurement.t_on = 20.0003;
    CHECK_THROWS_AS(scn.validate(), InvalidParameter);

    scn = builtin_scenario("fig4");
    scn.plant.h_schedule[1].first = 20.00051;
    CHECK_THROWS_AS(scn.validate(), InvalidParameter);

    scn = builtin_scenario("fig1a");
    scn.x0 = {0.0};
    CHECK_THROWS_AS(scn.validate(), DimensionMismatch);
}

TEST_CASE("malformed JSON reports a parse error") {
    CHECK_THROWS_AS((void)scenario_from_json("{"), ParseError);
    CHECK_THROWS_AS((void)scenario_from_json("[]"), ParseError);
}

TEST_SUITE_END();
