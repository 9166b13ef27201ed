#include "aac/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "aac/errors.hpp"
#include "aac/lyapunov.hpp"
#include "aac/rng.hpp"

namespace aac {

namespace {

constexpr double kLemma1C = 0.2785;  // solves c = exp(-(c+1))

}  // namespace

bool BoundReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

ReferenceAnchor reference_anchor(const Scenario& scn, int refine) {
    Scenario fine = scn;
    fine.dt = scn.dt / refine;
    fine.log_every = scn.log_every * static_cast<std::size_t>(refine);
    const RunLog log = simulate(fine);
    return {log.summary.theta_terminal, log.summary.lambda_terminal};
}

Lemma1Result check_lemma1(std::size_t trials, std::size_t n_max,
                          std::uint64_t seed) {
    SplitMix64 rng(seed);
    Lemma1Result result;
    result.trials = trials;
    result.worst_margin = std::numeric_limits<double>::infinity();
    const double log_lo = std::log(1e-3), log_hi = std::log(10.0);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 1 + rng.next() % n_max;
        const double b = std::exp(log_lo + (log_hi - log_lo) * rng.next_unit());
        double norm_sq = 0.0, inner = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = -10.0 + 20.0 * rng.next_unit();
            norm_sq += a * a;
            inner += a * std::tanh(a / b);
        }
        const double lhs = std::sqrt(norm_sq) - inner;
        const double margin = static_cast<double>(n) * b * kLemma1C - lhs;
        result.worst_margin = std::min(result.worst_margin, margin);
    }
    result.pass = result.worst_margin >= -1e-12;
    return result;
}

CheckResult check_ultimate_boundedness(const RunLog& log, double threshold) {
    CheckResult check;
    check.name = "ultimate_boundedness";
    check.threshold = threshold;
    if (log.rows.empty()) {
        check.detail = "empty log";
        return check;
    }
    const double t0 = log.rows.front().t;
    const double t_end = log.rows.back().t;
    const double transient_end = t0 + 0.1 * (t_end - t0);
    double transient_peak = log.rows.front().x_norm;
    double full_peak = 0.0;
    bool finite = true;
    for (const RunSample& r : log.rows) {
        if (!std::isfinite(r.x_norm)) finite = false;
        full_peak = std::max(full_peak, r.x_norm);
        if (r.t <= transient_end)
            transient_peak = std::max(transient_peak, r.x_norm);
    }
    check.value = log.summary.sup_x_last_quarter;
    const bool peak_ok =
        finite && (full_peak <= 10.0 * std::max(transient_peak, 1e-300));
    check.pass = peak_ok && check.value <= threshold;
    std::ostringstream detail;
    detail << "sup||x|| last 25% = " << check.value << " vs " << threshold
           << "; full peak " << full_peak << " vs 10x transient peak "
           << 10.0 * transient_peak;
    check.detail = detail.str();
    return check;
}

CheckResult check_indirect_tracking(const RunLog& log, const Vec& bias,
                                    double band) {
    if (log.rows.empty() || bias.size() != log.state_dim)
        throw WrongScenarioKind(
            "check_indirect_tracking: log has no matching bias to track");
    CheckResult check;
    check.name = "indirect_tracking";
    check.threshold = band;
    const double t0 = log.rows.front().t;
    const double t_end = log.rows.back().t;
    const double window = t0 + 0.75 * (t_end - t0);
    double sup = 0.0;
    for (const RunSample& r : log.rows) {
        if (r.t < window) continue;
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < bias.size(); ++i) {
            const double e = r.x[i] + bias[i];  // y = x + s -> 0 means x -> -s
            norm_sq += e * e;
        }
        sup = std::max(sup, std::sqrt(norm_sq));
    }
    check.value = sup;
    check.pass = sup <= band;
    std::ostringstream detail;
    detail << "sup||x + bias|| last 25% = " << sup << " vs band " << band;
    check.detail = detail.str();
    return check;
}

CheckResult check_vc_descent(const RunLog& log, const ControllerConfig& cfg,
                             const ReferenceAnchor& anchor, double slack) {
    CheckResult check;
    check.name = "vc_descent";
    if (log.rows.empty()) {
        check.detail = "empty log";
        return check;
    }
    const double t0 = log.rows.front().t;
    const double t_end = log.rows.back().t;
    const double mid = t0 + 0.5 * (t_end - t0);
    const double window = t0 + 0.75 * (t_end - t0);
    double vc_mid = 0.0;
    bool have_mid = false;
    double sup_tail = 0.0;
    for (const RunSample& r : log.rows) {
        const AdaptiveState adapt{r.theta, r.lambda_hat};
        if (!have_mid && r.t >= mid) {
            vc_mid = lyapunov_Vc(cfg, r.x, adapt, anchor.theta_ref,
                                 anchor.lambda_ref);
            have_mid = true;
        }
        if (r.t >= window) {
            sup_tail = std::max(sup_tail, lyapunov_Vc(cfg, r.x, adapt,
                                                      anchor.theta_ref,
                                                      anchor.lambda_ref));
        }
    }
    check.value = sup_tail;
    check.threshold = vc_mid + slack;
    check.pass = have_mid && sup_tail <= vc_mid + slack;
    std::ostringstream detail;
    detail << "sup V_c last 25% = " << sup_tail << " vs V_c(mid) + slack = "
           << vc_mid + slack;
    check.detail = detail.str();
    return check;
}

BoundReport verify_scenario(const Scenario& scn) {
    const PlantSpec plant = build_plant(scn);
    const ControllerConfig cfg = build_controller(scn, plant);
    const RunLog log = simulate(scn, plant, cfg);

    BoundReport report;
    report.scenario = scn.name;
    report.ultimate_bound_x = log.summary.sup_x_last_quarter;
    report.ultimate_bound_theta = log.summary.sup_theta_dist_last_quarter;
    report.ultimate_bound_lambda = log.summary.sup_lambda_dist_last_quarter;
    report.tracking_error_y = log.summary.sup_y_last_quarter;

    {
        CheckResult res;
        res.name = "lyapunov_residual";
        const Mat acl = sub(plant.A, mul(plant.B, cfg.K));
        res.value = lyapunov_residual(acl, cfg.P, cfg.Q);
        res.threshold = 1e-9 * inf_norm(cfg.Q);
        res.pass = res.value <= res.threshold;
        res.detail = "||Acl^T P + P Acl + Q||_inf";
        report.checks.push_back(res);
    }

    if (scn.verify.ultimate_bound_x)
        report.checks.push_back(
            check_ultimate_boundedness(log, *scn.verify.ultimate_bound_x));

    if (scn.verify.tracking_band) {
        if (scn.measurement.kind != MeasurementKind::additive_bias)
            throw WrongScenarioKind(
                "verify: tracking_band requires an additive-bias scenario");
        report.checks.push_back(check_indirect_tracking(
            log, scn.measurement.bias, *scn.verify.tracking_band));
    }

    if (scn.verify.y_bound) {
        CheckResult res;
        res.name = "measurement_tracking";
        res.value = log.summary.sup_y_last_quarter;
        res.threshold = *scn.verify.y_bound;
        res.pass = res.value <= res.threshold;
        res.detail = "sup||y|| last 25%";
        report.checks.push_back(res);
    }

    if (scn.verify.theta_readapt_min) {
        CheckResult res;
        res.name = "theta_readaptation";
        // distance between theta at the last process event and terminal theta
        double t_event = 0.0;
        for (const auto& [ts, fn] : scn.plant.h_schedule)
            t_event = std::max(t_event, ts);
        Vec theta_event;
        for (const RunSample& r : log.rows)
            if (r.t <= t_event) theta_event = r.theta;
        double dist = 0.0;
        if (!theta_event.empty()) {
            for (std::size_t i = 0; i < theta_event.size(); ++i) {
                const double d = log.summary.theta_terminal[i] - theta_event[i];
                dist += d * d;
            }
            dist = std::sqrt(dist);
        }
        res.value = dist;
        res.threshold = *scn.verify.theta_readapt_min;
        res.pass = dist > res.threshold;
        res.detail = "||theta(T) - theta(t_switch)||";
        report.checks.push_back(res);
    }

    if (scn.verify.vc_slack) {
        const ReferenceAnchor anchor = reference_anchor(scn);
        report.checks.push_back(
            check_vc_descent(log, cfg, anchor, *scn.verify.vc_slack));
    }

    return report;
}

std::string report_table(const BoundReport& report) {
    std::ostringstream out;
    out << "scenario " << report.scenario << "\n";
    out << "  sup||x|| last 25%        : " << report.ultimate_bound_x << "\n";
    out << "  sup||y|| last 25%        : " << report.tracking_error_y << "\n";
    out << "  adapt dist (theta) 25%   : " << report.ultimate_bound_theta
        << "\n";
    out << "  adapt dist (lambda) 25%  : " << report.ultimate_bound_lambda
        << "\n";
    for (const CheckResult& c : report.checks) {
        out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << ": "
            << c.detail << "\n";
    }
    return out.str();
}

std::string report_json(const BoundReport& report) {
    nlohmann::json j;
    j["scenario"] = report.scenario;
    j["ultimate_bound_x"] = report.ultimate_bound_x;
    j["ultimate_bound_theta"] = report.ultimate_bound_theta;
    j["ultimate_bound_lambda"] = report.ultimate_bound_lambda;
    j["tracking_error_y"] = report.tracking_error_y;
    j["all_pass"] = report.all_pass();
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"value", c.value},
                          {"threshold", c.threshold},
                          {"detail", c.detail}});
    }
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

}  // namespace aac
