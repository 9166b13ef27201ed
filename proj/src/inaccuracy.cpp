#include "aac/inaccuracy.hpp"

#include <cmath>
#include <string>

#include "aac/errors.hpp"
#include "aac/rng.hpp"

namespace aac {

void MeasurementModel::validate(std::size_t n) const {
    switch (kind) {
        case MeasurementKind::accurate:
            break;
        case MeasurementKind::additive_noise:
            if (variance < 0.0)
                throw InvalidParameter("measurement: variance must be >= 0");
            break;
        case MeasurementKind::additive_bias:
            if (bias.size() != n)
                throw DimensionMismatch("measurement: bias of dimension " +
                                        std::to_string(bias.size()) +
                                        ", expected " + std::to_string(n));
            break;
        case MeasurementKind::multiplicative:
            if (xi_diag.size() != n)
                throw DimensionMismatch("measurement: xi_diag of dimension " +
                                        std::to_string(xi_diag.size()) +
                                        ", expected " + std::to_string(n));
            for (double v : xi_diag)
                if (v == 0.0)
                    throw InvalidParameter(
                        "measurement: xi_diag entries must be nonzero");
            break;
    }
}

FrozenMeasurement freeze_measurement(const MeasurementModel& model,
                                     std::size_t n, double t,
                                     std::uint64_t step_index) {
    FrozenMeasurement fm;
    fm.scale_diag.assign(n, 1.0);
    fm.offset.assign(n, 0.0);
    switch (model.kind) {
        case MeasurementKind::accurate:
            break;
        case MeasurementKind::additive_noise:
            gaussian_step_samples(model.seed, step_index,
                                  std::sqrt(model.variance), fm.offset.data(),
                                  n);
            break;
        case MeasurementKind::additive_bias:
            if (t >= model.t_on) fm.offset = model.bias;
            break;
        case MeasurementKind::multiplicative:
            fm.scale_diag = model.xi_diag;
            break;
    }
    return fm;
}

Vec FrozenMeasurement::apply(const Vec& x) const {
    Vec y(x.size());
    apply_into(x, y);
    return y;
}

void FrozenMeasurement::apply_into(const Vec& x, Vec& y) const {
    y.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        y[i] = scale_diag[i] * x[i] + offset[i];
}

Vec measure(const MeasurementModel& model, const Vec& x, double t,
            std::uint64_t step_index) {
    return freeze_measurement(model, x.size(), t, step_index).apply(x);
}

void ActuatorFaultModel::validate() const {
    if (kind == ActuatorFaultKind::multiplicative && factor == 0.0)
        throw InvalidParameter("actuator: multiplicative factor must be nonzero");
}

FrozenFault freeze_fault(const ActuatorFaultModel& model, double t) {
    FrozenFault ff;
    if (t < model.t_on) return ff;
    switch (model.kind) {
        case ActuatorFaultKind::none:
            break;
        case ActuatorFaultKind::additive:
            ff.add = model.factor * std::sin(t);
            break;
        case ActuatorFaultKind::multiplicative:
            ff.mul = model.factor;
            break;
    }
    return ff;
}

double apply_actuator_fault(const ActuatorFaultModel& model, double u,
                            double t) {
    const FrozenFault ff = freeze_fault(model, t);
    return ff.mul * u + ff.add;
}

}  // namespace aac
