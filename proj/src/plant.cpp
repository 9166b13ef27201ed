#include "aac/plant.hpp"

#include <cmath>
#include <string>

#include "aac/errors.hpp"

namespace aac {

const std::map<std::string, DynamicsFn>& dynamics_registry() {
    static const std::map<std::string, DynamicsFn> registry = {
        {"zero", [](const Vec&, double) { return 0.0; }},
        {"5*sin(x1)",
         [](const Vec& x, double) { return 5.0 * std::sin(x[0]); }},
        {"5*sin(x1)+cos(x2)+x1^2",
         [](const Vec& x, double) {
             return 5.0 * std::sin(x[0]) + std::cos(x[1]) + x[0] * x[0];
         }},
        {"0.5*sin(t)", [](const Vec&, double t) { return 0.5 * std::sin(t); }},
    };
    return registry;
}

const DynamicsFn& dynamics_by_name(const std::string& name) {
    const auto& reg = dynamics_registry();
    auto it = reg.find(name);
    if (it == reg.end())
        throw InvalidParameter("unknown dynamics \"" + name + "\"");
    return it->second;
}

HSchedule::HSchedule()
    : segments_{{0.0, "zero", dynamics_by_name("zero")}} {}

HSchedule::HSchedule(std::vector<HSegment> segments)
    : segments_(std::move(segments)) {
    if (segments_.empty())
        throw InvalidParameter("HSchedule: at least one segment required");
    if (segments_.front().t_start != 0.0)
        throw InvalidParameter("HSchedule: first segment must start at t=0");
    for (std::size_t i = 1; i < segments_.size(); ++i)
        if (!(segments_[i].t_start > segments_[i - 1].t_start))
            throw InvalidParameter(
                "HSchedule: segment starts must be strictly increasing");
}

const HSegment& HSchedule::active(double t) const {
    std::size_t idx = 0;
    for (std::size_t i = 1; i < segments_.size(); ++i) {
        if (t >= segments_[i].t_start) idx = i;
    }
    return segments_[idx];
}

void PlantSpec::validate() const {
    if (n < 1) throw InvalidParameter("PlantSpec: n must be >= 1");
    if (m != 1) throw InvalidParameter("PlantSpec: single-input plants only");
    if (A.rows() != n || A.cols() != n)
        throw DimensionMismatch("PlantSpec: A must be n x n");
    if (B.rows() != n || B.cols() != 1)
        throw DimensionMismatch("PlantSpec: B must be n x 1");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double want = (i + 1 < n && j == i + 1) ? 1.0 : 0.0;
            if (A(i, j) != want)
                throw InvalidParameter(
                    "PlantSpec: A is not the companion shift matrix");
        }
    for (std::size_t i = 0; i < n; ++i) {
        const double want = (i + 1 == n) ? 1.0 : 0.0;
        if (B(i, 0) != want)
            throw InvalidParameter("PlantSpec: B must be the last unit vector");
    }
    if (g == 0.0) throw InvalidParameter("PlantSpec: g must be nonzero");
    if (!f) throw InvalidParameter("PlantSpec: f not set");
}

void plant_derivative_into(const PlantSpec& spec, const Vec& x,
                           double u_applied, double t,
                           const DynamicsFn& h_frozen, Vec& out) {
    if (x.size() != spec.n)
        throw DimensionMismatch("plant_derivative: state of dimension " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(spec.n));
    out.resize(spec.n);
    // companion form: first n-1 rows are the shifted state
    for (std::size_t i = 0; i + 1 < spec.n; ++i) out[i] = x[i + 1];
    double channel = spec.f(x, t) + spec.g * u_applied + h_frozen(x, t);
    if (spec.eta) channel += spec.eta(x, t);
    out[spec.n - 1] = channel;
}

Vec plant_derivative(const PlantSpec& spec, const Vec& x, double u_applied,
                     double t, const DynamicsFn& h_frozen) {
    Vec out;
    plant_derivative_into(spec, x, u_applied, t, h_frozen, out);
    return out;
}

Vec plant_derivative(const PlantSpec& spec, const Vec& x, double u_applied,
                     double t) {
    return plant_derivative(spec, x, u_applied, t, spec.h.active(t).fn);
}

PlantSpec robot_arm_spec(double J, double B_damp, double M, double grav,
                         double l) {
    if (!(J > 0.0)) throw InvalidParameter("robot_arm_spec: J must be > 0");
    PlantSpec spec;
    spec.n = 2;
    spec.m = 1;
    spec.A = Mat{{0.0, 1.0}, {0.0, 0.0}};
    spec.B = Mat(2, 1);
    spec.B(1, 0) = 1.0;
    const double k_grav = M * grav * l / J;
    const double k_damp = B_damp / J;
    spec.f = [k_grav, k_damp](const Vec& x, double) {
        return -k_grav * std::sin(x[0]) - k_damp * x[1];
    };
    spec.f_name = "robot_arm";
    spec.g = 1.0 / J;
    spec.h = HSchedule();
    spec.validate();
    return spec;
}

}  // namespace aac
