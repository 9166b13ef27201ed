#include <doctest.h>

#include <cmath>

#include "aac/errors.hpp"
#include "aac/inaccuracy.hpp"
#include "aac/rng.hpp"

using namespace aac;

TEST_SUITE_BEGIN("inaccuracy");

TEST_CASE("accurate measurement is the identity") {
    const MeasurementModel model;  // accurate
    const Vec x{0.3, -0.7};
    CHECK(measure(model, x, 12.0, 12000) == x);
}

TEST_CASE("constant bias switches on at t_on") {
    MeasurementModel model;
    model.kind = MeasurementKind::additive_bias;
    model.bias = {1.0, 0.0};
    model.t_on = 20.0;
    const Vec x{-0.4, 0.2};
    CHECK(measure(model, x, 25.0, 25000) == Vec{0.6, 0.2});
    CHECK(measure(model, x, 19.999, 19999) == x);
    CHECK(measure(model, x, 20.0, 20000) == Vec{0.6, 0.2});  // closed left
}

TEST_CASE("fading measurement y = 0.5 x") {
    MeasurementModel model;
    model.kind = MeasurementKind::multiplicative;
    model.xi_diag = {0.5, 0.5};
    CHECK(measure(model, {0.8, -0.4}, 3.0, 3000) == Vec{0.4, -0.2});
}

TEST_CASE("bias norm is ||s|| after t_on and zero before") {
    MeasurementModel model;
    model.kind = MeasurementKind::additive_bias;
    model.bias = {1.0, 0.0};
    model.t_on = 20.0;
    SplitMix64 rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        const Vec x{-3.0 + 6.0 * rng.next_unit(), -3.0 + 6.0 * rng.next_unit()};
        const double t = 40.0 * rng.next_unit();
        const Vec y = measure(model, x, t, 77);
        const double snorm = std::hypot(y[0] - x[0], y[1] - x[1]);
        CHECK(snorm == (t >= 20.0 ? 1.0 : 0.0));
    }
}

TEST_CASE("noise draws are a pure function of (seed, step)") {
    MeasurementModel model;
    model.kind = MeasurementKind::additive_noise;
    model.variance = 0.01;
    model.seed = 99;
    const Vec x{0.0, 0.0};
    const Vec a = measure(model, x, 1.0, 1000);
    const Vec b = measure(model, x, 1.0, 1000);
    CHECK(a == b);
    CHECK(a != measure(model, x, 1.0, 1001));

    MeasurementModel other = model;
    other.seed = 100;
    CHECK(a != measure(other, x, 1.0, 1000));

    // the sample is held: freezing at the step start fixes the offset
    const FrozenMeasurement fm = freeze_measurement(model, 2, 1.0, 1000);
    CHECK(fm.apply({0.0, 0.0}) == a);
    CHECK(fm.apply({1.0, 1.0}) == Vec{1.0 + a[0], 1.0 + a[1]});
}

TEST_CASE("noise statistics over 1e5 draws") {
    MeasurementModel model;
    model.kind = MeasurementKind::additive_noise;
    model.variance = 0.01;
    model.seed = 2024;
    const std::size_t draws = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t step = 0; step < draws / 2; ++step) {
        const Vec y = measure(model, {0.0, 0.0}, 0.0, step);
        sum += y[0] + y[1];
        sum_sq += y[0] * y[0] + y[1] * y[1];
    }
    const double n = static_cast<double>(draws);
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    const double sigma = 0.1;
    CHECK(std::abs(mean) <= 4.0 * sigma / std::sqrt(n));
    CHECK(std::abs(var - 0.01) <= 0.05 * 0.01);
}

TEST_CASE("actuator faults") {
    ActuatorFaultModel none;
    CHECK(apply_actuator_fault(none, 0.7, 3.0) == 0.7);

    ActuatorFaultModel add;
    add.kind = ActuatorFaultKind::additive;
    add.factor = 0.5;
    add.t_on = 0.0;
    const double half_pi = 1.5707963267948966;
    CHECK(apply_actuator_fault(add, 0.7, half_pi) ==
          doctest::Approx(1.2).epsilon(1e-15));

    ActuatorFaultModel mult;
    mult.kind = ActuatorFaultKind::multiplicative;
    mult.factor = 0.5;
    mult.t_on = 0.0;
    CHECK(apply_actuator_fault(mult, 0.7, 1.0) == 0.35);

    // before t_on the signal is unchanged
    add.t_on = 20.0;
    mult.t_on = 20.0;
    CHECK(apply_actuator_fault(add, 0.7, 19.0) == 0.7);
    CHECK(apply_actuator_fault(mult, 0.7, 19.0) == 0.7);
    CHECK(apply_actuator_fault(mult, 0.7, 20.0) == 0.35);
}

TEST_CASE("model validation") {
    MeasurementModel bad;
    bad.kind = MeasurementKind::multiplicative;
    bad.xi_diag = {0.5, 0.0};
    CHECK_THROWS_AS(bad.validate(2), InvalidParameter);

    bad.kind = MeasurementKind::additive_bias;
    bad.bias = {1.0};
    CHECK_THROWS_AS(bad.validate(2), DimensionMismatch);

    ActuatorFaultModel fault;
    fault.kind = ActuatorFaultKind::multiplicative;
    fault.factor = 0.0;
    CHECK_THROWS_AS(fault.validate(), InvalidParameter);
}

TEST_SUITE_END();
