#pragma once

#include <functional>

#include "aac/mat.hpp"

namespace aac {

/// Augmented ODE state: time plus the stacked real vector being integrated.
struct OdeState {
    double t = 0.0;
    Vec z;
};

/// Right-hand side: writes dz/dt at (t, z) into dz (same length as z).
using DerivFn = std::function<void(double t, const Vec& z, Vec& dz)>;

/**
 * One classical RK4 step. deriv is evaluated exactly four times with the
 * standard tableau; callers that carry stochastic or switched inputs must
 * freeze them across the four sub-evaluations (zero-order hold).
 *
 * Throws NonFiniteDerivative if any sub-evaluation produces NaN/Inf.
 */
OdeState rk4_step(const DerivFn& deriv, const OdeState& state, double dt);

/// Buffer-reusing form for tight loops; same semantics as rk4_step.
class Rk4Stepper {
public:
    explicit Rk4Stepper(std::size_t dim);

    /// Advances z (length dim) from t to t+dt in place.
    void step(const DerivFn& deriv, double t, Vec& z, double dt);

private:
    Vec k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace aac
