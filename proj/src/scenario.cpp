#include "aac/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "aac/errors.hpp"
#include "aac/lyapunov.hpp"

namespace aac {

using nlohmann::json;

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& ctx) {
    if (!j.is_object()) throw ParseError(ctx + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) {
                known = true;
                break;
            }
        if (!known) throw ParseError(ctx + ": unknown key \"" + key + "\"");
    }
}

const json& require(const json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(ctx + ": missing key \"" + key + "\"");
    return *it;
}

Mat mat_from_json(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.empty())
        throw ParseError(ctx + ": expected a nonempty array of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw ParseError(ctx + ": ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
    }
    return m;
}

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

Vec vec_from_json(const json& j, const std::string& ctx) {
    if (!j.is_array()) throw ParseError(ctx + ": expected an array");
    Vec v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(e.get<double>());
    return v;
}

bool is_step_multiple(double t, double dt) {
    const double k = t / dt;
    return std::abs(k - std::round(k)) <= 1e-6 * std::max(1.0, std::abs(k));
}

}  // namespace

std::size_t Scenario::steps() const {
    return static_cast<std::size_t>(std::llround(t_end / dt));
}

void Scenario::validate() const {
    if (!(dt > 0.0)) throw InvalidParameter("scenario: dt must be > 0");
    const std::size_t nsteps = steps();
    if (nsteps < 1 || !is_step_multiple(t_end, dt))
        throw InvalidParameter(
            "scenario: t_end must be a positive multiple of dt");
    if (log_every < 1 || nsteps % log_every != 0)
        throw InvalidParameter(
            "scenario: steps must divide evenly into log_every");
    if (plant.kind != "robot_arm")
        throw InvalidParameter("scenario: unknown plant kind \"" + plant.kind +
                               "\"");
    if (x0.size() != 2)
        throw DimensionMismatch("scenario: x0 must match the plant dimension");
    if (measurement.kind == MeasurementKind::additive_bias &&
        !is_step_multiple(measurement.t_on, dt))
        throw InvalidParameter("scenario: measurement t_on must align with dt");
    if (actuator.kind != ActuatorFaultKind::none &&
        !is_step_multiple(actuator.t_on, dt))
        throw InvalidParameter("scenario: actuator t_on must align with dt");
    for (const auto& [t_start, fn] : plant.h_schedule) {
        if (!is_step_multiple(t_start, dt))
            throw InvalidParameter("scenario: h segment start must align with dt");
        dynamics_by_name(fn);  // must exist
    }
    measurement.validate(x0.size());
    actuator.validate();
    if (controller.robust_mode != "tanh" && controller.robust_mode != "sgn")
        throw InvalidParameter("scenario: robust_mode must be tanh or sgn");
}

PlantSpec build_plant(const Scenario& scn) {
    PlantSpec spec = robot_arm_spec(scn.plant.J, scn.plant.B_damp, scn.plant.M,
                                    scn.plant.grav, scn.plant.l);
    if (!scn.plant.f_override.empty()) {
        spec.f = dynamics_by_name(scn.plant.f_override);
        spec.f_name = scn.plant.f_override;
    }
    if (!scn.plant.h_schedule.empty()) {
        std::vector<HSegment> segments;
        for (const auto& [t_start, fn] : scn.plant.h_schedule)
            segments.push_back({t_start, fn, dynamics_by_name(fn)});
        spec.h = HSchedule(std::move(segments));
    }
    return spec;
}

ControllerConfig build_controller(const Scenario& scn, const PlantSpec& plant) {
    ControllerConfig cfg;
    cfg.K = scn.controller.K;
    cfg.Q = scn.controller.Q;
    const Mat acl = sub(plant.A, mul(plant.B, cfg.K));
    cfg.P = solve_lyapunov(acl, cfg.Q);
    cfg.B = plant.B;
    cfg.g = plant.g;
    if (scn.controller.eta_bound != "zero")
        cfg.eta_bound = [fn = dynamics_by_name(scn.controller.eta_bound)](
                            const Vec& x, double t) { return fn(x, t); };
    cfg.rbf = RbfLayout({scn.controller.centers.size()}, scn.controller.centers,
                        scn.controller.width);
    cfg.gamma_diag = scn.controller.gamma_diag;
    cfg.lambda_rate = scn.controller.lambda_rate;
    cfg.w_theta = scn.controller.w_theta;
    cfg.w_lambda = scn.controller.w_lambda;
    cfg.omega = scn.controller.omega;
    cfg.mode = scn.controller.robust_mode == "sgn" ? RobustMode::sgn
                                                   : RobustMode::tanh_smooth;
    cfg.adapt_cap = scn.controller.adapt_cap;
    cfg.validate(plant.A);
    return cfg;
}

std::string scenario_to_json(const Scenario& scn) {
    json j;
    j["name"] = scn.name;

    json plant;
    plant["kind"] = scn.plant.kind;
    plant["J"] = scn.plant.J;
    plant["B"] = scn.plant.B_damp;
    plant["M"] = scn.plant.M;
    plant["grav"] = scn.plant.grav;
    plant["l"] = scn.plant.l;
    if (!scn.plant.f_override.empty()) plant["f"] = scn.plant.f_override;
    json sched = json::array();
    for (const auto& [t_start, fn] : scn.plant.h_schedule)
        sched.push_back({{"t_start", t_start}, {"fn", fn}});
    plant["h_schedule"] = sched;
    j["plant"] = plant;

    json ctl;
    ctl["K"] = mat_to_json(scn.controller.K);
    ctl["Q"] = mat_to_json(scn.controller.Q);
    json centers = json::array();
    for (const Vec& c : scn.controller.centers) centers.push_back(c);
    ctl["rbf"] = {{"centers", centers}, {"width", scn.controller.width}};
    ctl["gamma_diag"] = scn.controller.gamma_diag;
    ctl["lambda_rate"] = scn.controller.lambda_rate;
    ctl["w_theta"] = scn.controller.w_theta;
    ctl["w_lambda"] = scn.controller.w_lambda;
    ctl["omega"] = scn.controller.omega;
    ctl["robust_mode"] = scn.controller.robust_mode;
    ctl["eta_bound"] = scn.controller.eta_bound;
    ctl["adapt_cap"] = scn.controller.adapt_cap;
    if (!scn.controller.theta0.empty()) ctl["theta0"] = scn.controller.theta0;
    if (scn.controller.lambda0 != 0.0) ctl["lambda0"] = scn.controller.lambda0;
    j["controller"] = ctl;

    json meas;
    switch (scn.measurement.kind) {
        case MeasurementKind::accurate:
            meas["kind"] = "accurate";
            break;
        case MeasurementKind::additive_noise:
            meas["kind"] = "additive_noise";
            meas["variance"] = scn.measurement.variance;
            break;
        case MeasurementKind::additive_bias:
            meas["kind"] = "additive_bias";
            meas["bias"] = scn.measurement.bias;
            meas["t_on"] = scn.measurement.t_on;
            break;
        case MeasurementKind::multiplicative:
            meas["kind"] = "multiplicative";
            meas["xi_diag"] = scn.measurement.xi_diag;
            break;
    }
    j["measurement"] = meas;

    json act;
    switch (scn.actuator.kind) {
        case ActuatorFaultKind::none:
            act["kind"] = "none";
            break;
        case ActuatorFaultKind::additive:
            act["kind"] = "additive";
            act["factor"] = scn.actuator.factor;
            act["t_on"] = scn.actuator.t_on;
            break;
        case ActuatorFaultKind::multiplicative:
            act["kind"] = "multiplicative";
            act["factor"] = scn.actuator.factor;
            act["t_on"] = scn.actuator.t_on;
            break;
    }
    j["actuator"] = act;

    j["x0"] = scn.x0;
    j["t_end"] = scn.t_end;
    j["dt"] = scn.dt;
    j["seed"] = scn.seed;
    j["log_every"] = scn.log_every;

    json ver;
    if (scn.verify.ultimate_bound_x)
        ver["ultimate_bound_x"] = *scn.verify.ultimate_bound_x;
    if (scn.verify.tracking_band)
        ver["tracking_band"] = *scn.verify.tracking_band;
    if (scn.verify.y_bound) ver["y_bound"] = *scn.verify.y_bound;
    if (scn.verify.theta_readapt_min)
        ver["theta_readapt_min"] = *scn.verify.theta_readapt_min;
    if (scn.verify.vc_slack) ver["vc_slack"] = *scn.verify.vc_slack;
    if (!ver.empty()) j["verify"] = ver;

    return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario: invalid JSON: ") + e.what());
    }
    require_keys(j,
                 {"name", "plant", "controller", "measurement", "actuator",
                  "x0", "t_end", "dt", "seed", "log_every", "verify"},
                 "scenario");

    Scenario scn;
    scn.name = require(j, "name", "scenario").get<std::string>();

    const json& plant = require(j, "plant", "scenario");
    require_keys(plant, {"kind", "J", "B", "M", "grav", "l", "f", "h_schedule"},
                 "plant");
    scn.plant.kind = require(plant, "kind", "plant").get<std::string>();
    scn.plant.J = require(plant, "J", "plant").get<double>();
    scn.plant.B_damp = require(plant, "B", "plant").get<double>();
    scn.plant.M = require(plant, "M", "plant").get<double>();
    scn.plant.grav = require(plant, "grav", "plant").get<double>();
    scn.plant.l = require(plant, "l", "plant").get<double>();
    if (plant.contains("f"))
        scn.plant.f_override = plant["f"].get<std::string>();
    for (const auto& seg : require(plant, "h_schedule", "plant")) {
        require_keys(seg, {"t_start", "fn"}, "h_schedule segment");
        scn.plant.h_schedule.emplace_back(
            require(seg, "t_start", "segment").get<double>(),
            require(seg, "fn", "segment").get<std::string>());
    }

    const json& ctl = require(j, "controller", "scenario");
    require_keys(ctl,
                 {"K", "Q", "rbf", "gamma_diag", "lambda_rate", "w_theta",
                  "w_lambda", "omega", "robust_mode", "eta_bound", "adapt_cap",
                  "theta0", "lambda0"},
                 "controller");
    scn.controller.K = mat_from_json(require(ctl, "K", "controller"), "K");
    scn.controller.Q = mat_from_json(require(ctl, "Q", "controller"), "Q");
    const json& rbf = require(ctl, "rbf", "controller");
    require_keys(rbf, {"centers", "width"}, "rbf");
    for (const auto& c : require(rbf, "centers", "rbf"))
        scn.controller.centers.push_back(vec_from_json(c, "center"));
    scn.controller.width = require(rbf, "width", "rbf").get<double>();
    scn.controller.gamma_diag =
        vec_from_json(require(ctl, "gamma_diag", "controller"), "gamma_diag");
    scn.controller.lambda_rate =
        require(ctl, "lambda_rate", "controller").get<double>();
    scn.controller.w_theta = require(ctl, "w_theta", "controller").get<double>();
    scn.controller.w_lambda =
        require(ctl, "w_lambda", "controller").get<double>();
    scn.controller.omega = require(ctl, "omega", "controller").get<double>();
    scn.controller.robust_mode =
        require(ctl, "robust_mode", "controller").get<std::string>();
    scn.controller.eta_bound =
        require(ctl, "eta_bound", "controller").get<std::string>();
    scn.controller.adapt_cap =
        require(ctl, "adapt_cap", "controller").get<double>();
    if (ctl.contains("theta0"))
        scn.controller.theta0 = vec_from_json(ctl["theta0"], "theta0");
    if (ctl.contains("lambda0"))
        scn.controller.lambda0 = ctl["lambda0"].get<double>();

    const json& meas = require(j, "measurement", "scenario");
    require_keys(meas, {"kind", "variance", "bias", "t_on", "xi_diag"},
                 "measurement");
    const std::string mkind = require(meas, "kind", "measurement").get<std::string>();
    if (mkind == "accurate") {
        scn.measurement.kind = MeasurementKind::accurate;
    } else if (mkind == "additive_noise") {
        scn.measurement.kind = MeasurementKind::additive_noise;
        scn.measurement.variance =
            require(meas, "variance", "measurement").get<double>();
    } else if (mkind == "additive_bias") {
        scn.measurement.kind = MeasurementKind::additive_bias;
        scn.measurement.bias =
            vec_from_json(require(meas, "bias", "measurement"), "bias");
        scn.measurement.t_on = require(meas, "t_on", "measurement").get<double>();
    } else if (mkind == "multiplicative") {
        scn.measurement.kind = MeasurementKind::multiplicative;
        scn.measurement.xi_diag =
            vec_from_json(require(meas, "xi_diag", "measurement"), "xi_diag");
    } else {
        throw ParseError("measurement: unknown kind \"" + mkind + "\"");
    }

    const json& act = require(j, "actuator", "scenario");
    require_keys(act, {"kind", "factor", "t_on"}, "actuator");
    const std::string akind = require(act, "kind", "actuator").get<std::string>();
    if (akind == "none") {
        scn.actuator.kind = ActuatorFaultKind::none;
    } else if (akind == "additive" || akind == "multiplicative") {
        scn.actuator.kind = akind == "additive" ? ActuatorFaultKind::additive
                                                : ActuatorFaultKind::multiplicative;
        scn.actuator.factor = require(act, "factor", "actuator").get<double>();
        scn.actuator.t_on = require(act, "t_on", "actuator").get<double>();
    } else {
        throw ParseError("actuator: unknown kind \"" + akind + "\"");
    }

    scn.x0 = vec_from_json(require(j, "x0", "scenario"), "x0");
    scn.t_end = require(j, "t_end", "scenario").get<double>();
    scn.dt = require(j, "dt", "scenario").get<double>();
    scn.seed = require(j, "seed", "scenario").get<std::uint64_t>();
    scn.log_every = require(j, "log_every", "scenario").get<std::size_t>();

    if (j.contains("verify")) {
        const json& ver = j["verify"];
        require_keys(ver,
                     {"ultimate_bound_x", "tracking_band", "y_bound",
                      "theta_readapt_min", "vc_slack"},
                     "verify");
        if (ver.contains("ultimate_bound_x"))
            scn.verify.ultimate_bound_x = ver["ultimate_bound_x"].get<double>();
        if (ver.contains("tracking_band"))
            scn.verify.tracking_band = ver["tracking_band"].get<double>();
        if (ver.contains("y_bound"))
            scn.verify.y_bound = ver["y_bound"].get<double>();
        if (ver.contains("theta_readapt_min"))
            scn.verify.theta_readapt_min = ver["theta_readapt_min"].get<double>();
        if (ver.contains("vc_slack"))
            scn.verify.vc_slack = ver["vc_slack"].get<double>();
    }

    scn.measurement.seed = scn.seed;
    scn.validate();
    return scn;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

void save_scenario(const Scenario& scn, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write scenario file " + path.string());
    out << scenario_to_json(scn);
    if (!out) throw IoError("failed writing scenario file " + path.string());
}

namespace {

ControllerParams section_v_controller(double gamma, double lambda) {
    ControllerParams ctl;
    ctl.K = Mat{{1.0, 2.0}};
    ctl.Q = Mat{{1.0, 1.0}, {1.0, 3.0}};
    // ten Gaussians on the diagonal of the state plane, uniform on [-0.5, 0.5]
    for (int i = 0; i < 10; ++i) {
        const double v = (2.0 * i - 9.0) / 18.0;
        ctl.centers.push_back({v, v});
    }
    ctl.width = 0.3;
    ctl.gamma_diag.assign(10, gamma);
    ctl.lambda_rate = lambda;
    ctl.w_theta = 0.5;
    ctl.w_lambda = 0.2;
    ctl.omega = 0.01;
    return ctl;
}

Scenario base_scenario(const std::string& name, double gamma, double lambda) {
    Scenario scn;
    scn.name = name;
    scn.plant.h_schedule = {{0.0, "5*sin(x1)"}};
    scn.controller = section_v_controller(gamma, lambda);
    scn.x0 = {0.7853981633974483, 0.0};  // pi/4
    scn.t_end = 40.0;
    scn.dt = 1e-3;
    scn.seed = 1;
    scn.log_every = 10;
    scn.measurement.seed = scn.seed;
    return scn;
}

}  // namespace

std::vector<Scenario> builtin_scenarios() {
    std::vector<Scenario> all;

    const double lo_gamma = 2.0, lo_lambda = 5.0;
    const double hi_gamma = 20.0, hi_lambda = 50.0;

    auto accurate = [&](const std::string& name, double ga, double la,
                        double bound) {
        Scenario scn = base_scenario(name, ga, la);
        scn.verify.ultimate_bound_x = bound;
        scn.verify.vc_slack = 1e-3;
        return scn;
    };
    all.push_back(accurate("fig1a", lo_gamma, lo_lambda, 0.05));
    all.push_back(accurate("fig1b", hi_gamma, hi_lambda, 0.05));

    auto noisy = [&](const std::string& name, double ga, double la,
                     double bound) {
        Scenario scn = base_scenario(name, ga, la);
        scn.measurement.kind = MeasurementKind::additive_noise;
        scn.measurement.variance = 0.01;  // both channels
        scn.verify.ultimate_bound_x = bound;
        return scn;
    };
    all.push_back(noisy("fig1c", lo_gamma, lo_lambda, 0.2));
    all.push_back(noisy("fig1d", hi_gamma, hi_lambda, 0.5));

    auto biased = [&](const std::string& name, double ga, double la) {
        Scenario scn = base_scenario(name, ga, la);
        scn.measurement.kind = MeasurementKind::additive_bias;
        scn.measurement.bias = {1.0, 0.0};
        scn.measurement.t_on = 20.0;
        scn.verify.tracking_band = 0.15;
        scn.verify.y_bound = 0.1;
        scn.verify.vc_slack = 1e-3;
        return scn;
    };
    all.push_back(biased("fig1e", lo_gamma, lo_lambda));
    all.push_back(biased("fig1f", hi_gamma, hi_lambda));

    auto fading = [&](const std::string& name, double ga, double la) {
        Scenario scn = base_scenario(name, ga, la);
        scn.measurement.kind = MeasurementKind::multiplicative;
        scn.measurement.xi_diag = {0.5, 0.5};
        scn.verify.ultimate_bound_x = 0.05;
        scn.verify.vc_slack = 1e-3;
        return scn;
    };
    all.push_back(fading("fig1g", lo_gamma, lo_lambda));
    all.push_back(fading("fig1h", hi_gamma, hi_lambda));

    Scenario fig4 = base_scenario("fig4", lo_gamma, lo_lambda);
    fig4.plant.h_schedule = {{0.0, "5*sin(x1)"},
                             {20.0, "5*sin(x1)+cos(x2)+x1^2"}};
    fig4.verify.ultimate_bound_x = 0.2;
    fig4.verify.theta_readapt_min = 0.01;
    fig4.verify.vc_slack = 1e-3;
    all.push_back(fig4);

    Scenario fig5a = base_scenario("fig5a", lo_gamma, lo_lambda);
    fig5a.actuator.kind = ActuatorFaultKind::additive;
    fig5a.actuator.factor = 0.5;  // u + 0.5 sin(t)
    fig5a.actuator.t_on = 0.0;
    fig5a.verify.ultimate_bound_x = 0.2;
    all.push_back(fig5a);

    Scenario fig5b = base_scenario("fig5b", lo_gamma, lo_lambda);
    fig5b.actuator.kind = ActuatorFaultKind::multiplicative;
    fig5b.actuator.factor = 0.5;  // u -> 0.5 u
    fig5b.actuator.t_on = 0.0;
    fig5b.verify.ultimate_bound_x = 0.2;
    all.push_back(fig5b);

    Scenario zero = base_scenario("zero-sanity", lo_gamma, lo_lambda);
    zero.plant.B_damp = 0.0;
    zero.plant.M = 0.0;
    zero.plant.f_override = "zero";
    zero.plant.h_schedule = {{0.0, "zero"}};
    zero.x0 = {0.0, 0.0};
    zero.verify.ultimate_bound_x = 1e-12;
    zero.verify.vc_slack = 1e-3;
    all.push_back(zero);

    return all;
}

Scenario builtin_scenario(const std::string& name) {
    for (Scenario& scn : builtin_scenarios())
        if (scn.name == name) return scn;
    throw InvalidParameter("no builtin scenario named \"" + name + "\"");
}

}  // namespace aac
