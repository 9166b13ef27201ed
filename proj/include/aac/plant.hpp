#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "aac/mat.hpp"

namespace aac {

/// Scalar dynamics term entering the input channel: value = fn(x, t).
using DynamicsFn = std::function<double(const Vec& x, double t)>;

/// Named dynamics shipped with the simulator. Scenario files refer to these
/// by name; there is no expression parser.
const std::map<std::string, DynamicsFn>& dynamics_registry();
const DynamicsFn& dynamics_by_name(const std::string& name);

/// Piecewise-in-time unknown dynamics h. Segments are closed on the left:
/// the segment with the largest t_start <= t is active.
struct HSegment {
    double t_start = 0.0;
    std::string name;
    DynamicsFn fn;
};

class HSchedule {
public:
    HSchedule();  // single "zero" segment from t = 0
    explicit HSchedule(std::vector<HSegment> segments);

    const std::vector<HSegment>& segments() const { return segments_; }
    const HSegment& active(double t) const;

private:
    std::vector<HSegment> segments_;
};

/**
 * Plant in companion form: x_dot = A x + B [ f(x) + g u + eta(x,t) + h(x,t) ]
 * with A the shift matrix and B = e_n, so the input channel is the last
 * state derivative. Structure is asserted on construction.
 */
struct PlantSpec {
    std::size_t n = 0;  // state dimension
    std::size_t m = 1;  // input dimension (single input)
    Mat A;
    Mat B;               // n x 1
    DynamicsFn f;        // known nominal nonlinearity
    std::string f_name;  // registry name or description
    double g = 1.0;      // input gain, nonzero
    DynamicsFn eta;      // modeled uncertainty; null means zero
    HSchedule h;

    void validate() const;
};

/// x_dot at (x, u_applied, t); the h segment is selected pointwise by t.
Vec plant_derivative(const PlantSpec& spec, const Vec& x, double u_applied,
                     double t);

/// Same, but with the h term pinned by the caller (the simulation loop
/// freezes the active segment across RK4 sub-evaluations).
Vec plant_derivative(const PlantSpec& spec, const Vec& x, double u_applied,
                     double t, const DynamicsFn& h_frozen);

void plant_derivative_into(const PlantSpec& spec, const Vec& x,
                           double u_applied, double t,
                           const DynamicsFn& h_frozen, Vec& out);

/**
 * Single-link arm: x1 angle, x2 angular velocity,
 *   x2_dot = -(M grav l / J) sin(x1) - (B_damp / J) x2 + u / J.
 * Throws InvalidParameter if J <= 0. h defaults to zero.
 */
PlantSpec robot_arm_spec(double J, double B_damp, double M, double grav,
                         double l);

}  // namespace aac
