#include "aac/simulate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "aac/errors.hpp"
#include "aac/inaccuracy.hpp"
#include "aac/kernels.hpp"
#include "aac/ode.hpp"

namespace aac {

namespace {

std::vector<RunEvent> scenario_events(const Scenario& scn) {
    std::vector<RunEvent> events;
    if (scn.measurement.kind == MeasurementKind::additive_bias &&
        scn.measurement.t_on <= scn.t_end)
        events.push_back({scn.measurement.t_on, "bias_on"});
    if (scn.actuator.kind != ActuatorFaultKind::none &&
        scn.actuator.t_on <= scn.t_end)
        events.push_back({scn.actuator.t_on, "fault_on"});
    for (std::size_t i = 1; i < scn.plant.h_schedule.size(); ++i) {
        const double ts = scn.plant.h_schedule[i].first;
        if (ts <= scn.t_end) events.push_back({ts, "h_switch"});
    }
    std::sort(events.begin(), events.end(),
              [](const RunEvent& a, const RunEvent& b) { return a.t < b.t; });
    return events;
}

}  // namespace

RunSummary summarize(const std::vector<RunSample>& rows) {
    RunSummary s;
    if (rows.empty()) return s;
    const RunSample& last = rows.back();
    s.terminal_x_norm = last.x_norm;
    s.theta_terminal = last.theta;
    s.lambda_terminal = last.lambda_hat;
    const double t_window = rows.front().t + 0.75 * (last.t - rows.front().t);
    for (const RunSample& r : rows) {
        s.max_abs_u = std::max(s.max_abs_u, std::abs(r.u));
        if (r.t < t_window) continue;
        s.sup_x_last_quarter = std::max(s.sup_x_last_quarter, r.x_norm);
        s.sup_y_last_quarter = std::max(s.sup_y_last_quarter, euclid_norm(r.y));
        Vec dtheta(r.theta.size());
        kernels::add_scaled(1.0, r.theta.data(), -1.0, s.theta_terminal.data(),
                            dtheta.data(), r.theta.size());
        s.sup_theta_dist_last_quarter =
            std::max(s.sup_theta_dist_last_quarter, euclid_norm(dtheta));
        s.sup_lambda_dist_last_quarter =
            std::max(s.sup_lambda_dist_last_quarter,
                     std::abs(r.lambda_hat - s.lambda_terminal));
    }
    return s;
}

RunLog simulate(const Scenario& scn) {
    const PlantSpec plant = build_plant(scn);
    const ControllerConfig cfg = build_controller(scn, plant);
    return simulate(scn, plant, cfg);
}

RunLog simulate(const Scenario& scn, const PlantSpec& plant,
                const ControllerConfig& cfg) {
    scn.validate();
    const std::size_t n = plant.n;
    const std::size_t k = cfg.weight_dim();
    const std::size_t nsteps = scn.steps();

    Vec z(n + k + 1, 0.0);
    std::copy(scn.x0.begin(), scn.x0.end(), z.begin());
    if (!scn.controller.theta0.empty()) {
        if (scn.controller.theta0.size() != k)
            throw DimensionMismatch("simulate: theta0 length mismatch");
        std::copy(scn.controller.theta0.begin(), scn.controller.theta0.end(),
                  z.begin() + n);
    }
    z[n + k] = scn.controller.lambda0;

    RunLog log;
    log.state_dim = n;
    log.weight_dim = k;
    log.events = scenario_events(scn);
    log.rows.reserve(nsteps / scn.log_every + 1);

    // per-step frozen context (zero-order hold across RK4 sub-evaluations)
    FrozenMeasurement fm;
    FrozenFault ff;
    const DynamicsFn* h_frozen = nullptr;

    Vec x_buf(n), y_buf(n), dx_buf(n);
    AdaptiveState adapt;
    adapt.theta.resize(k);

    const DerivFn deriv = [&](double t, const Vec& zz, Vec& dz) {
        std::copy(zz.begin(), zz.begin() + n, x_buf.begin());
        std::copy(zz.begin() + n, zz.begin() + n + k, adapt.theta.begin());
        adapt.lambda_hat = zz[n + k];
        fm.apply_into(x_buf, y_buf);

        const double u = total_control(cfg, adapt, y_buf, t);
        const double u_applied = ff.mul * u + ff.add;
        plant_derivative_into(plant, x_buf, u_applied, t, *h_frozen, dx_buf);
        const AdaptDeriv ad = adaptation_derivatives(cfg, adapt, y_buf);

        dz.resize(zz.size());
        std::copy(dx_buf.begin(), dx_buf.end(), dz.begin());
        std::copy(ad.theta_dot.begin(), ad.theta_dot.end(), dz.begin() + n);
        dz[n + k] = ad.lambda_dot;
    };

    Rk4Stepper stepper(z.size());
    for (std::size_t step = 0; step <= nsteps; ++step) {
        const double t = static_cast<double>(step) * scn.dt;
        fm = freeze_measurement(scn.measurement, n, t, step);
        ff = freeze_fault(scn.actuator, t);
        h_frozen = &plant.h.active(t).fn;

        if (step % scn.log_every == 0) {
            RunSample row;
            row.t = t;
            row.x.assign(z.begin(), z.begin() + n);
            row.theta.assign(z.begin() + n, z.begin() + n + k);
            row.lambda_hat = z[n + k];
            row.y = fm.apply(row.x);
            AdaptiveState a{row.theta, row.lambda_hat};
            row.u0 = nominal_effort(cfg, row.y, t);
            row.uc = compensation_effort(cfg, a, row.y);
            row.u = row.u0 + row.uc;
            row.V = lyapunov_V(cfg, row.x);
            row.x_norm = euclid_norm(row.x);
            log.rows.push_back(std::move(row));
        }
        if (step == nsteps) break;

        stepper.step(deriv, t, z, scn.dt);

        if (!all_finite(z))
            throw NonFinite("simulate: state diverged (non-finite) at t=" +
                                std::to_string(t + scn.dt),
                            t + scn.dt);
        const double theta_norm =
            std::sqrt(kernels::dot(z.data() + n, z.data() + n, k));
        if (theta_norm > cfg.adapt_cap)
            throw CapExceeded("simulate: ||theta_hat|| = " +
                                  std::to_string(theta_norm) +
                                  " exceeded the adaptation cap at t=" +
                                  std::to_string(t + scn.dt),
                              t + scn.dt);
    }

    log.summary = summarize(log.rows);
    return log;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

void append_double(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

double parse_double(std::string_view token, const char* ctx) {
    double v = 0.0;
    const auto res =
        std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        throw ParseError(std::string("csv: bad number in ") + ctx + ": \"" +
                         std::string(token) + "\"");
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = line.find(sep, pos);
        if (next == std::string_view::npos) {
            out.push_back(line.substr(pos));
            break;
        }
        out.push_back(line.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

std::string csv_header(std::size_t n, std::size_t k) {
    std::string h = "t";
    for (std::size_t i = 1; i <= n; ++i) h += ",x" + std::to_string(i);
    for (std::size_t i = 1; i <= n; ++i) h += ",y" + std::to_string(i);
    h += ",u1,u0_1,uc_1";
    for (std::size_t i = 1; i <= k; ++i) h += ",theta_" + std::to_string(i);
    h += ",lambda,V,x_norm";
    return h;
}

}  // namespace

std::string to_csv(const RunLog& log) {
    std::string out = csv_header(log.state_dim, log.weight_dim);
    out += '\n';
    std::size_t next_event = 0;
    for (const RunSample& row : log.rows) {
        while (next_event < log.events.size() &&
               log.events[next_event].t <= row.t) {
            out += "# event t=";
            append_double(out, log.events[next_event].t);
            out += ' ';
            out += log.events[next_event].name;
            out += '\n';
            ++next_event;
        }
        append_double(out, row.t);
        for (double v : row.x) {
            out += ',';
            append_double(out, v);
        }
        for (double v : row.y) {
            out += ',';
            append_double(out, v);
        }
        out += ',';
        append_double(out, row.u);
        out += ',';
        append_double(out, row.u0);
        out += ',';
        append_double(out, row.uc);
        for (double v : row.theta) {
            out += ',';
            append_double(out, v);
        }
        out += ',';
        append_double(out, row.lambda_hat);
        out += ',';
        append_double(out, row.V);
        out += ',';
        append_double(out, row.x_norm);
        out += '\n';
    }
    // events past the final row (possible only when an event lands exactly
    // at t_end with no terminal row, which the row grid rules out)
    for (; next_event < log.events.size(); ++next_event) {
        out += "# event t=";
        append_double(out, log.events[next_event].t);
        out += ' ';
        out += log.events[next_event].name;
        out += '\n';
    }
    return out;
}

void export_csv(const RunLog& log, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write CSV file " + path.string());
    const std::string text = to_csv(log);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("failed writing CSV file " + path.string());
}

RunLog parse_csv(const std::string& text) {
    RunLog log;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("csv: empty input");

    const auto headers = split(line, ',');
    std::size_t n = 0, k = 0;
    for (const auto& h : headers) {
        if (h.size() > 1 && h[0] == 'x' && h != "x_norm" &&
            h.find('_') == std::string_view::npos)
            ++n;
        if (h.rfind("theta_", 0) == 0) ++k;
    }
    log.state_dim = n;
    log.weight_dim = k;
    if (csv_header(n, k) != line)
        throw ParseError("csv: unexpected header \"" + line + "\"");

    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            // "# event t=<t> <name>"
            const std::string prefix = "# event t=";
            if (line.rfind(prefix, 0) != 0)
                throw ParseError("csv: unrecognized comment \"" + line + "\"");
            const std::size_t space = line.find(' ', prefix.size());
            if (space == std::string::npos)
                throw ParseError("csv: malformed event line \"" + line + "\"");
            RunEvent ev;
            ev.t = parse_double(
                std::string_view(line).substr(prefix.size(),
                                              space - prefix.size()),
                "event time");
            ev.name = line.substr(space + 1);
            log.events.push_back(ev);
            continue;
        }
        const auto tokens = split(line, ',');
        if (tokens.size() != 1 + 2 * n + 3 + k + 3)
            throw ParseError("csv: wrong column count in row \"" + line + "\"");
        RunSample row;
        std::size_t c = 0;
        row.t = parse_double(tokens[c++], "t");
        row.x.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            row.x[i] = parse_double(tokens[c++], "x");
        row.y.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            row.y[i] = parse_double(tokens[c++], "y");
        row.u = parse_double(tokens[c++], "u");
        row.u0 = parse_double(tokens[c++], "u0");
        row.uc = parse_double(tokens[c++], "uc");
        row.theta.resize(k);
        for (std::size_t i = 0; i < k; ++i)
            row.theta[i] = parse_double(tokens[c++], "theta");
        row.lambda_hat = parse_double(tokens[c++], "lambda");
        row.V = parse_double(tokens[c++], "V");
        row.x_norm = parse_double(tokens[c++], "x_norm");
        log.rows.push_back(std::move(row));
    }
    log.summary = summarize(log.rows);
    return log;
}

RunLog load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open CSV file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

std::string plot_script(const RunLog& log) {
    std::ostringstream py;
    py << "#!/usr/bin/env python3\n"
          "\"\"\"Render the panels of a simulation CSV produced by aacsim.\n"
          "\n"
          "Usage: python3 plot.py <run.csv> [out.png]\n"
          "\"\"\"\n"
          "import csv\n"
          "import sys\n"
          "\n"
          "import matplotlib\n"
          "matplotlib.use(\"Agg\")\n"
          "import matplotlib.pyplot as plt\n"
          "\n"
          "N_STATE = "
       << log.state_dim
       << "\n"
          "N_THETA = "
       << log.weight_dim
       << "\n"
          "\n"
          "def main():\n"
          "    if len(sys.argv) < 2:\n"
          "        sys.exit(__doc__)\n"
          "    path = sys.argv[1]\n"
          "    out = sys.argv[2] if len(sys.argv) > 2 else path + \".png\"\n"
          "    events, rows = [], []\n"
          "    with open(path) as fh:\n"
          "        header = None\n"
          "        for line in fh:\n"
          "            line = line.strip()\n"
          "            if line.startswith(\"# event t=\"):\n"
          "                t_str, name = line[len(\"# event t=\"):].split(\" \", 1)\n"
          "                events.append((float(t_str), name))\n"
          "                continue\n"
          "            if header is None:\n"
          "                header = line.split(\",\")\n"
          "                continue\n"
          "            rows.append([float(v) for v in line.split(\",\")])\n"
          "    col = {name: i for i, name in enumerate(header)}\n"
          "    t = [r[col[\"t\"]] for r in rows]\n"
          "    fig, axes = plt.subplots(5, 1, figsize=(9, 13), sharex=True)\n"
          "    for i in range(1, N_STATE + 1):\n"
          "        axes[0].plot(t, [r[col[f\"x{i}\"]] for r in rows], label=f\"x{i}\")\n"
          "        axes[0].plot(t, [r[col[f\"y{i}\"]] for r in rows], \"--\",\n"
          "                     label=f\"y{i}\", alpha=0.6)\n"
          "    axes[0].set_ylabel(\"state / measurement\")\n"
          "    for name in (\"u1\", \"u0_1\", \"uc_1\"):\n"
          "        axes[1].plot(t, [r[col[name]] for r in rows], label=name)\n"
          "    axes[1].set_ylabel(\"control\")\n"
          "    for i in range(1, N_THETA + 1):\n"
          "        axes[2].plot(t, [r[col[f\"theta_{i}\"]] for r in rows], lw=0.8)\n"
          "    axes[2].set_ylabel(\"theta_hat\")\n"
          "    axes[3].plot(t, [r[col[\"lambda\"]] for r in rows])\n"
          "    axes[3].set_ylabel(\"lambda_hat\")\n"
          "    axes[4].plot(t, [r[col[\"x_norm\"]] for r in rows], label=\"|x|\")\n"
          "    axes[4].plot(t, [r[col[\"V\"]] for r in rows], label=\"V\")\n"
          "    axes[4].set_ylabel(\"|x|, V\")\n"
          "    axes[4].set_xlabel(\"t [s]\")\n"
          "    for ax in axes:\n"
          "        for (te, name) in events:\n"
          "            ax.axvline(te, color=\"k\", ls=\":\", lw=0.8)\n"
          "        if ax.get_legend_handles_labels()[0]:\n"
          "            ax.legend(loc=\"upper right\", fontsize=8)\n"
          "    if events:\n"
          "        for (te, name) in events:\n"
          "            axes[0].text(te, axes[0].get_ylim()[1], name,\n"
          "                         fontsize=8, va=\"bottom\")\n"
          "    fig.tight_layout()\n"
          "    fig.savefig(out, dpi=130)\n"
          "    print(out)\n"
          "\n"
          "\n"
          "if __name__ == \"__main__\":\n"
          "    main()\n";
    return py.str();
}

void emit_plot_script(const RunLog& log, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write plot script " + path.string());
    const std::string text = plot_script(log);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("failed writing plot script " + path.string());
}

}  // namespace aac
