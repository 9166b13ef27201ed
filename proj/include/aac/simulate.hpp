#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aac/controller.hpp"
#include "aac/plant.hpp"
#include "aac/scenario.hpp"

namespace aac {

struct RunSample {
    double t = 0.0;
    Vec x;
    Vec y;
    double u = 0.0;   // applied pre-fault control u0 + uc
    double u0 = 0.0;
    double uc = 0.0;
    Vec theta;
    double lambda_hat = 0.0;
    double V = 0.0;
    double x_norm = 0.0;

    bool operator==(const RunSample&) const = default;
};

struct RunEvent {
    double t = 0.0;
    std::string name;

    bool operator==(const RunEvent&) const = default;
};

struct RunSummary {
    double terminal_x_norm = 0.0;
    double sup_x_last_quarter = 0.0;
    double sup_y_last_quarter = 0.0;
    Vec theta_terminal;
    double lambda_terminal = 0.0;
    double sup_theta_dist_last_quarter = 0.0;   // vs terminal theta
    double sup_lambda_dist_last_quarter = 0.0;  // vs terminal lambda
    double max_abs_u = 0.0;
};

/// Time series of one closed-loop run plus its summary statistics.
struct RunLog {
    std::size_t state_dim = 0;
    std::size_t weight_dim = 0;
    std::vector<RunSample> rows;
    std::vector<RunEvent> events;
    RunSummary summary;
};

/// Recompute summary statistics from rows (used by simulate and the CSV
/// parser, so a parsed log carries identical derived values).
RunSummary summarize(const std::vector<RunSample>& rows);

/**
 * Integrate the closed loop of plant + controller + measurement model +
 * actuator fault with fixed-step RK4 on the augmented state [x; theta; lambda].
 *
 * Per control step the stochastic and switched inputs are frozen (noise draw,
 * bias activation, fault signal, active h segment) and the measurement map is
 * applied to every RK4 substate; control and adaptation react to the same
 * measurement signal. Throws NonFinite or CapExceeded with the offending time
 * if the run diverges.
 */
RunLog simulate(const Scenario& scn);
RunLog simulate(const Scenario& scn, const PlantSpec& plant,
                const ControllerConfig& cfg);

/// CSV with header t,x1..,y1..,u1,u0_1,uc_1,theta_1..,lambda,V,x_norm;
/// shortest round-trip decimals; events as "# event t=<t> <name>" comment
/// lines ahead of the first row at or after <t>.
std::string to_csv(const RunLog& log);
void export_csv(const RunLog& log, const std::filesystem::path& path);

RunLog parse_csv(const std::string& text);
RunLog load_csv(const std::filesystem::path& path);

/// Standalone Python/matplotlib program that reads an exported CSV (path as
/// its argv[1]) and renders the run's panels.
std::string plot_script(const RunLog& log);
void emit_plot_script(const RunLog& log, const std::filesystem::path& path);

}  // namespace aac
