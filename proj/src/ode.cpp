#include "aac/ode.hpp"

#include <string>

#include "aac/errors.hpp"
#include "aac/kernels.hpp"

namespace aac {

namespace {

void check_finite(const Vec& dz, double t) {
    if (!all_finite(dz))
        throw NonFiniteDerivative(
            "rk4_step: non-finite derivative at t=" + std::to_string(t), t);
}

}  // namespace

Rk4Stepper::Rk4Stepper(std::size_t dim)
    : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

void Rk4Stepper::step(const DerivFn& deriv, double t, Vec& z, double dt) {
    const std::size_t n = z.size();
    const double half = 0.5 * dt;

    deriv(t, z, k1_);
    check_finite(k1_, t);
    kernels::add_scaled(1.0, z.data(), half, k1_.data(), tmp_.data(), n);
    deriv(t + half, tmp_, k2_);
    check_finite(k2_, t + half);
    kernels::add_scaled(1.0, z.data(), half, k2_.data(), tmp_.data(), n);
    deriv(t + half, tmp_, k3_);
    check_finite(k3_, t + half);
    kernels::add_scaled(1.0, z.data(), dt, k3_.data(), tmp_.data(), n);
    deriv(t + dt, tmp_, k4_);
    check_finite(k4_, t + dt);

    kernels::rk4_combine(z.data(), k1_.data(), k2_.data(), k3_.data(),
                         k4_.data(), dt, z.data(), n);
}

OdeState rk4_step(const DerivFn& deriv, const OdeState& state, double dt) {
    if (!(dt > 0.0)) throw InvalidParameter("rk4_step: dt must be positive");
    OdeState out{state.t + dt, state.z};
    Rk4Stepper stepper(state.z.size());
    stepper.step(deriv, state.t, out.z, dt);
    return out;
}

}  // namespace aac
