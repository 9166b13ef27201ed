#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aac/controller.hpp"
#include "aac/scenario.hpp"
#include "aac/simulate.hpp"

namespace aac {

/// Outcome of a single stability/tracking check.
struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;      // the measured quantity
    double threshold = 0.0;  // what it was compared against
    std::string detail;
};

/// Empirical bound report for one scenario run: the measured ultimate bounds
/// over the last quarter of the horizon plus the individual check outcomes.
struct BoundReport {
    std::string scenario;
    double ultimate_bound_x = 0.0;      // sup ||x|| over last 25%
    double ultimate_bound_theta = 0.0;  // sup ||theta - theta(T)|| over last 25%
    double ultimate_bound_lambda = 0.0;
    double tracking_error_y = 0.0;      // sup ||y|| over last 25%
    std::vector<CheckResult> checks;

    bool all_pass() const;
};

/// Terminal adaptation values of a converged, dt-refined reference run;
/// anchor for the augmented-Lyapunov descent check.
struct ReferenceAnchor {
    Vec theta_ref;
    double lambda_ref = 0.0;
};

/// Runs the scenario at dt/refine and takes the final adaptation sample.
ReferenceAnchor reference_anchor(const Scenario& scn, int refine = 2);

struct Lemma1Result {
    bool pass = false;
    double worst_margin = 0.0;  // min over samples of n*b*c - lhs
    std::size_t trials = 0;
};

/// Randomized check of ||a|| - a^T tanh(a/b) <= n*b*c with c = 0.2785:
/// a uniform in [-10,10]^n, b log-uniform in [1e-3, 10], n in 1..n_max.
/// Passes iff every sample satisfies the inequality (margin >= -1e-12).
Lemma1Result check_lemma1(std::size_t trials, std::size_t n_max,
                          std::uint64_t seed);

/// sup ||x|| over the last quarter <= threshold, and the full-horizon peak is
/// finite and at most 10x the initial transient peak (max of ||x0|| and the
/// first 10% of the horizon).
CheckResult check_ultimate_boundedness(const RunLog& log, double threshold);

/// Additive-bias scenarios: sup over the last quarter of ||x(t) + bias||
/// <= band (y -> 0 implies x -> -bias). Throws WrongScenarioKind if the log
/// has no bias to track (bias dimension mismatch).
CheckResult check_indirect_tracking(const RunLog& log, const Vec& bias,
                                    double band);

/// Descent-to-a-ball of the augmented Lyapunov function: sup of V_c over the
/// last quarter <= V_c at mid-horizon + slack. Local increases are fine.
CheckResult check_vc_descent(const RunLog& log, const ControllerConfig& cfg,
                             const ReferenceAnchor& anchor, double slack);

/// Runs the scenario and applies every check its verify block configures,
/// plus the Lyapunov-residual re-assertion of the controller design.
BoundReport verify_scenario(const Scenario& scn);

std::string report_table(const BoundReport& report);
std::string report_json(const BoundReport& report);

}  // namespace aac
