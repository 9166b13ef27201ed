#include <doctest.h>

#include <cmath>

#include "aac/errors.hpp"
#include "aac/plant.hpp"
#include "aac/rng.hpp"

using namespace aac;

namespace {

const double kPi4 = 0.7853981633974483;

PlantSpec arm_with_h(const std::string& h0, double t_switch = -1.0,
                     const std::string& h1 = "") {
    PlantSpec arm = robot_arm_spec(1.0, 2.0, 1.0, 9.8, 1.0);
    std::vector<HSegment> segs{{0.0, h0, dynamics_by_name(h0)}};
    if (t_switch >= 0.0) segs.push_back({t_switch, h1, dynamics_by_name(h1)});
    arm.h = HSchedule(segs);
    return arm;
}

}  // namespace

TEST_SUITE_BEGIN("plant");

TEST_CASE("arm derivative with the design parameters") {
    const PlantSpec arm = arm_with_h("5*sin(x1)");
    const Vec dx = plant_derivative(arm, {kPi4, 0.0}, 0.0, 0.0);
    CHECK(dx[0] == 0.0);
    // -9.8 sin(pi/4) - 2*0 + 0 + 5 sin(pi/4) = -4.8 sin(pi/4)
    CHECK(dx[1] == doctest::Approx(-3.394112549695428).epsilon(1e-14));
}

TEST_CASE("origin is an equilibrium when h(0) = 0") {
    const PlantSpec arm = arm_with_h("5*sin(x1)");
    const Vec dx = plant_derivative(arm, {0.0, 0.0}, 0.0, 3.0);
    CHECK(dx[0] == 0.0);
    CHECK(dx[1] == 0.0);
}

TEST_CASE("schedule segments are closed on the left") {
    const PlantSpec arm =
        arm_with_h("5*sin(x1)", 20.0, "5*sin(x1)+cos(x2)+x1^2");
    CHECK(arm.h.active(19.999).name == "5*sin(x1)");
    CHECK(arm.h.active(20.0).name == "5*sin(x1)+cos(x2)+x1^2");
    CHECK(arm.h.active(35.0).name == "5*sin(x1)+cos(x2)+x1^2");

    // the derivative jump across the switch is |cos(x2) + x1^2| pointwise
    const Vec x{0.3, -0.1};
    const Vec before = plant_derivative(arm, x, 0.7, 19.999999999);
    const Vec after = plant_derivative(arm, x, 0.7, 20.0);
    const double jump = std::abs(after[1] - before[1]);
    CHECK(jump == doctest::Approx(std::abs(std::cos(-0.1) + 0.09)).epsilon(1e-12));
    CHECK(after[0] == before[0]);
}

TEST_CASE("robot_arm_spec fields") {
    const PlantSpec arm = robot_arm_spec(1.0, 2.0, 1.0, 9.8, 1.0);
    CHECK(arm.n == 2);
    CHECK(arm.m == 1);
    CHECK(arm.g == 1.0);
    // f(x) = -9.8 sin(x1) - 2 x2
    CHECK(arm.f({kPi4, 0.5}, 0.0) ==
          doctest::Approx(-9.8 * std::sin(kPi4) - 1.0).epsilon(1e-14));
    CHECK(arm.f({0.0, 0.0}, 0.0) == 0.0);

    CHECK(robot_arm_spec(2.0, 2.0, 1.0, 9.8, 1.0).g == 0.5);
    CHECK_THROWS_AS(robot_arm_spec(0.0, 2.0, 1.0, 9.8, 1.0), InvalidParameter);
    CHECK_THROWS_AS(robot_arm_spec(-1.0, 2.0, 1.0, 9.8, 1.0), InvalidParameter);
}

TEST_CASE("f(0) = 0 for any parameters") {
    SplitMix64 rng(64);
    for (int rep = 0; rep < 50; ++rep) {
        const PlantSpec arm = robot_arm_spec(
            0.1 + 5.0 * rng.next_unit(), 5.0 * rng.next_unit(),
            5.0 * rng.next_unit(), 9.8, 0.1 + 2.0 * rng.next_unit());
        CHECK(arm.f({0.0, 0.0}, 0.0) == 0.0);
    }
}

TEST_CASE("companion structure: only the last row receives the input") {
    const PlantSpec arm = arm_with_h("5*sin(x1)");
    SplitMix64 rng(12);
    for (int rep = 0; rep < 100; ++rep) {
        const Vec x{-2.0 + 4.0 * rng.next_unit(), -2.0 + 4.0 * rng.next_unit()};
        const double u = -5.0 + 10.0 * rng.next_unit();
        const Vec dx = plant_derivative(arm, x, u, 1.0);
        CHECK(dx[0] == x[1]);  // shifted state, exactly
        const Vec dx0 = plant_derivative(arm, x, 0.0, 1.0);
        CHECK(dx[1] - dx0[1] == doctest::Approx(arm.g * u).epsilon(1e-12));
    }
}

TEST_CASE("schedule validation") {
    CHECK_THROWS_AS(HSchedule({{1.0, "zero", dynamics_by_name("zero")}}),
                    InvalidParameter);
    CHECK_THROWS_AS(HSchedule({{0.0, "zero", dynamics_by_name("zero")},
                               {0.0, "zero", dynamics_by_name("zero")}}),
                    InvalidParameter);
    CHECK_THROWS_AS(dynamics_by_name("sin(x3)"), InvalidParameter);
}

TEST_CASE("registry ships the named forms") {
    const auto& reg = dynamics_registry();
    CHECK(reg.count("zero") == 1);
    CHECK(reg.count("5*sin(x1)") == 1);
    CHECK(reg.count("5*sin(x1)+cos(x2)+x1^2") == 1);
    CHECK(dynamics_by_name("zero")({1.0, 2.0}, 3.0) == 0.0);
    CHECK(dynamics_by_name("5*sin(x1)")({kPi4, 0.0}, 0.0) ==
          doctest::Approx(5.0 * std::sin(kPi4)).epsilon(1e-15));
}

TEST_SUITE_END();
