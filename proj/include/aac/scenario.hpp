#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aac/controller.hpp"
#include "aac/inaccuracy.hpp"
#include "aac/mat.hpp"
#include "aac/plant.hpp"

namespace aac {

struct PlantParams {
    std::string kind = "robot_arm";
    double J = 1.0, B_damp = 2.0, M = 1.0, grav = 9.8, l = 1.0;
    std::string f_override;  // registry name; empty keeps the parametric f
    std::vector<std::pair<double, std::string>> h_schedule;  // (t_start, fn)
};

struct ControllerParams {
    Mat K;
    Mat Q;
    std::vector<Vec> centers;
    double width = 0.3;
    Vec gamma_diag;
    double lambda_rate = 5.0;
    double w_theta = 0.0, w_lambda = 0.0, omega = 0.01;
    std::string robust_mode = "tanh";  // "tanh" | "sgn"
    std::string eta_bound = "zero";
    double adapt_cap = 1e6;
    Vec theta0;            // empty means all-zero
    double lambda0 = 0.0;
};

/// Pass/fail thresholds consumed by the verify checks. These live in the
/// scenario file, not in test logic.
struct VerifyThresholds {
    std::optional<double> ultimate_bound_x;
    std::optional<double> tracking_band;      // additive-bias scenarios
    std::optional<double> y_bound;            // additive-bias scenarios
    std::optional<double> theta_readapt_min;  // process-change scenarios
    std::optional<double> vc_slack;
};

/**
 * One reproducible closed-loop run: plant, controller, measurement and
 * actuator-fault models, initial state, integration grid, and seed.
 * Round-trips through JSON bit-exactly; unknown keys are rejected.
 */
struct Scenario {
    std::string name;
    PlantParams plant;
    ControllerParams controller;
    MeasurementModel measurement;
    ActuatorFaultModel actuator;
    Vec x0;
    double t_end = 40.0;
    double dt = 1e-3;
    std::uint64_t seed = 1;
    std::size_t log_every = 10;
    VerifyThresholds verify;

    std::size_t steps() const;
    void validate() const;
};

/// Instantiate the plant described by the scenario.
PlantSpec build_plant(const Scenario& scn);

/// Instantiate the controller; solves P from Q and validates the result.
ControllerConfig build_controller(const Scenario& scn, const PlantSpec& plant);

std::string scenario_to_json(const Scenario& scn);
Scenario scenario_from_json(const std::string& text);

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scn, const std::filesystem::path& path);

/// The named scenario library: accurate / noise / bias / fading at both
/// learning-rate settings (fig1a..fig1h), the process change (fig4), the two
/// actuator faults (fig5a, fig5b), and the all-zero sanity case.
std::vector<Scenario> builtin_scenarios();

/// Lookup by name; throws InvalidParameter if absent.
Scenario builtin_scenario(const std::string& name);

}  // namespace aac
