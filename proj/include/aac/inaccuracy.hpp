#pragma once

#include <cstdint>

#include "aac/mat.hpp"

namespace aac {

enum class MeasurementKind {
    accurate,
    additive_noise,   // y = x + w, w ~ N(0, variance I) per control step
    additive_bias,    // y = x + bias for t >= t_on
    multiplicative,   // y = diag(xi) x
};

/// Measurement channel model. Deterministic given (seed, step): the noise
/// draw of a control step is a pure function of both, and is held for the
/// whole step (zero-order hold across RK4 sub-evaluations).
struct MeasurementModel {
    MeasurementKind kind = MeasurementKind::accurate;
    double variance = 0.0;      // additive_noise
    Vec bias;                   // additive_bias
    double t_on = 0.0;          // additive_bias activation time
    Vec xi_diag;                // multiplicative scaling, nonzero entries
    std::uint64_t seed = 0;

    void validate(std::size_t n) const;
};

/// Measurement y for state x at control step `step_index`.
Vec measure(const MeasurementModel& model, const Vec& x, double t,
            std::uint64_t step_index);

/// The measurement map of one control step with its stochastic/switched
/// content pinned: y(x) = diag(scale) x + offset. The simulation loop
/// freezes this at the step start and applies it to every RK4 substate.
struct FrozenMeasurement {
    Vec scale_diag;
    Vec offset;

    Vec apply(const Vec& x) const;
    void apply_into(const Vec& x, Vec& y) const;
};

FrozenMeasurement freeze_measurement(const MeasurementModel& model,
                                     std::size_t n, double t,
                                     std::uint64_t step_index);

enum class ActuatorFaultKind {
    none,
    additive,        // u + factor * sin(t) for t >= t_on
    multiplicative,  // factor * u for t >= t_on
};

struct ActuatorFaultModel {
    ActuatorFaultKind kind = ActuatorFaultKind::none;
    double factor = 0.0;
    double t_on = 0.0;

    void validate() const;
};

/// Post-fault control signal at time t; u is unchanged before t_on.
double apply_actuator_fault(const ActuatorFaultModel& model, double u,
                            double t);

/// Fault action of one control step with the time-dependent signal pinned:
/// u_applied = mul * u + add.
struct FrozenFault {
    double mul = 1.0;
    double add = 0.0;
};

FrozenFault freeze_fault(const ActuatorFaultModel& model, double t);

}  // namespace aac
