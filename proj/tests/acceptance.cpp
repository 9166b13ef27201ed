// Acceptance suite: one test case per criterion, each printing a single
// PASS/FAIL line. Thresholds are pinned here; scenario definitions come from
// the builtin library.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>

#include "aac/lyapunov.hpp"
#include "aac/ode.hpp"
#include "aac/plant.hpp"
#include "aac/scenario.hpp"
#include "aac/simulate.hpp"
#include "aac/verify.hpp"

using namespace aac;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

const RunLog& cached_run(const std::string& name) {
    static std::map<std::string, RunLog> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, simulate(builtin_scenario(name))).first;
    return it->second;
}

void report(const char* tag, bool pass, const std::string& detail) {
    std::printf("[%s] %s - %s\n", tag, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
}

// first logged time with ||x|| <= bound
double time_to_reach(const RunLog& log, double bound) {
    for (const RunSample& r : log.rows)
        if (r.x_norm <= bound) return r.t;
    return std::numeric_limits<double>::infinity();
}

}  // namespace

TEST_CASE("c01 lyapunov synthesis on the published design") {
    const Mat acl{{0.0, 1.0}, {-1.0, -2.0}};
    const Mat q{{1.0, 1.0}, {1.0, 3.0}};

    const auto t0 = std::chrono::steady_clock::now();
    const Mat p = solve_lyapunov(acl, q);
    const double elapsed = seconds_since(t0);

    const double err = std::max(
        std::max(std::abs(p(0, 0) - 1.0), std::abs(p(0, 1) - 0.5)),
        std::max(std::abs(p(1, 0) - 0.5), std::abs(p(1, 1) - 1.0)));
    const bool pass = err <= 1e-9 && elapsed < 1e-3;
    report("c01", pass,
           "P entry error " + std::to_string(err) + ", solve time " +
               std::to_string(elapsed * 1e6) + " us (< 1 ms)");
    CHECK(err <= 1e-9);
    CHECK(elapsed < 1e-3);
}

TEST_CASE("c02 tanh-bound property suite") {
    const auto t0 = std::chrono::steady_clock::now();
    const Lemma1Result res = check_lemma1(10000, 10, 20240809);
    const double elapsed = seconds_since(t0);
    const bool pass = res.pass && res.worst_margin >= -1e-12 && elapsed < 1.0;
    report("c02", pass,
           "10^4 samples, worst margin " + std::to_string(res.worst_margin) +
               ", runtime " + std::to_string(elapsed) + " s (< 1 s)");
    CHECK(res.pass);
    CHECK(res.worst_margin >= -1e-12);
    CHECK(elapsed < 1.0);
}

TEST_CASE("c03 accurate-measurement convergence") {
    const auto t0 = std::chrono::steady_clock::now();
    const RunLog log = simulate(builtin_scenario("fig1a"));
    const double elapsed = seconds_since(t0);
    const double sup = log.summary.sup_x_last_quarter;
    const bool pass = sup <= 0.05 && elapsed < 5.0;
    report("c03", pass,
           "sup||x|| over [30,40] = " + std::to_string(sup) +
               " (<= 0.05), runtime " + std::to_string(elapsed) + " s (< 5 s)");
    CHECK(sup <= 0.05);
    CHECK(elapsed < 5.0);
}

TEST_CASE("c04 bias tracking of the shifted measurement") {
    const RunLog& log = cached_run("fig1e");
    double x1_dev = 0.0, sup_y = 0.0;
    for (const RunSample& r : log.rows) {
        if (r.t < 35.0) continue;
        x1_dev = std::max(x1_dev, std::abs(r.x[0] - (-1.0)));
        sup_y = std::max(sup_y, euclid_norm(r.y));
    }
    const bool pass = x1_dev <= 0.15 && sup_y <= 0.1;
    report("c04", pass,
           "sup|x1 + 1| over [35,40] = " + std::to_string(x1_dev) +
               " (<= 0.15), sup||y|| = " + std::to_string(sup_y) +
               " (<= 0.1)");
    CHECK(x1_dev <= 0.15);
    CHECK(sup_y <= 0.1);
}

TEST_CASE("c05 fading measurement keeps convergence") {
    const RunLog log = simulate(builtin_scenario("fig1g"));
    const double sup = log.summary.sup_x_last_quarter;
    report("c05", sup <= 0.05,
           "sup||x|| over [30,40] = " + std::to_string(sup) + " (<= 0.05)");
    CHECK(sup <= 0.05);
}

TEST_CASE("c06 learning-rate comparison") {
    const RunLog& lo = cached_run("fig1a");
    const RunLog& hi = cached_run("fig1b");
    const double t_lo = time_to_reach(lo, 0.1);
    const double t_hi = time_to_reach(hi, 0.1);
    const double u_lo = lo.summary.max_abs_u;
    const double u_hi = hi.summary.max_abs_u;
    const bool pass = t_hi < t_lo && u_hi > u_lo;
    report("c06", pass,
           "time to ||x||<=0.1: high rates " + std::to_string(t_hi) +
               " s vs low rates " + std::to_string(t_lo) +
               " s (must be smaller); max|u|: " + std::to_string(u_hi) +
               " vs " + std::to_string(u_lo) + " (must be larger)");
    CHECK(t_hi < t_lo);
    CHECK(u_hi > u_lo);
}

TEST_CASE("c07 process-dynamics change at t = 20 s") {
    const RunLog log = simulate(builtin_scenario("fig4"));
    const double sup = log.summary.sup_x_last_quarter;
    Vec theta20;
    for (const RunSample& r : log.rows)
        if (r.t <= 20.0) theta20 = r.theta;
    double readapt = 0.0;
    for (std::size_t i = 0; i < theta20.size(); ++i) {
        const double d = log.summary.theta_terminal[i] - theta20[i];
        readapt += d * d;
    }
    readapt = std::sqrt(readapt);
    const bool pass = sup <= 0.2 && readapt > 0.01;
    report("c07", pass,
           "sup||x|| over [30,40] = " + std::to_string(sup) +
               " (<= 0.2), ||theta(40) - theta(20)|| = " +
               std::to_string(readapt) + " (> 0.01)");
    CHECK(sup <= 0.2);
    CHECK(readapt > 0.01);
}

TEST_CASE("c08 actuator faults stay bounded") {
    const RunLog add = simulate(builtin_scenario("fig5a"));
    const RunLog mult = simulate(builtin_scenario("fig5b"));
    const double sup_add = add.summary.sup_x_last_quarter;
    const double sup_mult = mult.summary.sup_x_last_quarter;
    const bool pass = sup_add <= 0.2 && sup_mult <= 0.2;
    report("c08", pass,
           "additive fault sup||x|| = " + std::to_string(sup_add) +
               ", multiplicative fault sup||x|| = " + std::to_string(sup_mult) +
               " (both <= 0.2)");
    CHECK(sup_add <= 0.2);
    CHECK(sup_mult <= 0.2);
}

TEST_CASE("c09 seeded runs are byte-identical") {
    const std::string noise_a = to_csv(simulate(builtin_scenario("fig1c")));
    const std::string noise_b = to_csv(simulate(builtin_scenario("fig1c")));
    const std::string bias_a = to_csv(simulate(builtin_scenario("fig1e")));
    const std::string bias_b = to_csv(simulate(builtin_scenario("fig1e")));
    const bool pass = noise_a == noise_b && bias_a == bias_b;
    report("c09", pass,
           "repeated noisy and biased runs exported " +
               std::to_string(noise_a.size()) + " and " +
               std::to_string(bias_a.size()) + " identical bytes");
    CHECK(noise_a == noise_b);
    CHECK(bias_a == bias_b);
}

TEST_CASE("c10 integrator step-halving convergence") {
    const PlantSpec arm = robot_arm_spec(1.0, 2.0, 1.0, 9.8, 1.0);
    const DerivFn deriv = [&](double t, const Vec& z, Vec& dz) {
        dz = plant_derivative(arm, z, 0.0, t);  // u = 0, h = 0
    };
    auto integrate = [&](double dt) {
        Vec z{0.7853981633974483, 0.0};
        const auto steps = static_cast<std::size_t>(std::llround(1.0 / dt));
        Rk4Stepper stepper(2);
        for (std::size_t k = 0; k < steps; ++k)
            stepper.step(deriv, static_cast<double>(k) * dt, z, dt);
        return z;
    };
    const Vec coarse = integrate(1e-3);
    const Vec fine = integrate(1e-4);
    const double diff = std::max(std::abs(coarse[0] - fine[0]),
                                 std::abs(coarse[1] - fine[1]));
    report("c10", diff <= 1e-6,
           "terminal disagreement dt=1e-3 vs 1e-4 over 1 s: " +
               std::to_string(diff) + " (<= 1e-6)");
    CHECK(diff <= 1e-6);
}
