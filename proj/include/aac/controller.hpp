#pragma once

#include <functional>

#include "aac/mat.hpp"
#include "aac/rbf.hpp"

namespace aac {

/// Known bound on the modeled uncertainty, eta_bar(x, t) >= ||eta(x, t)||.
/// A null function means no modeled uncertainty (bound zero).
using EtaBoundFn = std::function<double(const Vec& x, double t)>;

enum class RobustMode { tanh_smooth, sgn };

/**
 * Configuration of the adaptive approximation-based controller.
 *
 * The control signal splits into a nominal effort
 *   u0(v) = ( -K v - sgn(B^T P v) eta_bar(v, t) ) / g
 * stabilizing the known dynamics, and a learned compensation effort
 *   uc(v) = -Pi(v) theta_hat - lambda_hat s(v),
 * with s(v) = tanh(p(v)/omega) (or sgn(p(v))) and p(v) = v^T P B g the
 * Lyapunov directional gain for V = 1/2 v^T P v. The adaptation laws are
 *   theta_hat_dot = Gamma Pi^T(v) p(v) - Gamma w_theta theta_hat
 *   lambda_hat_dot = Lambda p(v) s(v) - w_lambda lambda_hat.
 *
 * The same code path serves accurate and inaccurate measurement: v is
 * whatever signal the plant's sensors deliver, and nothing here branches on
 * how v was produced.
 */
struct ControllerConfig {
    Mat K;          // m x n state-feedback gain
    Mat Q;          // n x n decrease certificate
    Mat P;          // n x n, solves Acl^T P + P Acl = -Q
    Mat B;          // n x m input matrix of the plant
    double g = 1.0;            // scalar input gain, m = 1
    EtaBoundFn eta_bound;      // null -> 0
    RbfLayout rbf;
    Vec gamma_diag;            // diagonal of Gamma, length weight_dim
    double lambda_rate = 1.0;  // Lambda
    double w_theta = 0.0;
    double w_lambda = 0.0;
    double omega = 0.0;
    RobustMode mode = RobustMode::tanh_smooth;
    double adapt_cap = 1e6;    // hard cap on ||theta_hat||; divergence guard

    std::size_t state_dim() const { return P.rows(); }
    std::size_t weight_dim() const { return rbf.weight_dim(); }

    /// Checks the structural invariants, including the Lyapunov residual of
    /// (K, Q, P). Throws InvalidParameter / NotPositiveDefinite on violation.
    void validate(const Mat& plant_A) const;
};

/// The controller's adaptation variables.
struct AdaptiveState {
    Vec theta;               // theta_hat, length weight_dim
    double lambda_hat = 0.0;

    static AdaptiveState zeros(std::size_t weight_dim) {
        return {Vec(weight_dim, 0.0), 0.0};
    }
};

struct AdaptDeriv {
    Vec theta_dot;
    double lambda_dot = 0.0;
};

/// p(v) = v^T P B g (scalar, single input).
double p_of(const ControllerConfig& cfg, const Vec& v);

/// Nominal effort u0 at measurement v. sgn(0) = 0.
double nominal_effort(const ControllerConfig& cfg, const Vec& v, double t);

/// tanh(p/omega) in tanh mode, sgn(p) with sgn(0) = 0 in sgn mode.
double robust_signal(const ControllerConfig& cfg, double p);

/// uc = -Pi(v) theta_hat - lambda_hat s(v).
double compensation_effort(const ControllerConfig& cfg,
                           const AdaptiveState& adapt, const Vec& v);

/// Right-hand sides of the adaptation laws at measurement v.
AdaptDeriv adaptation_derivatives(const ControllerConfig& cfg,
                                  const AdaptiveState& adapt, const Vec& v);

/// u = u0(v) + uc(v).
double total_control(const ControllerConfig& cfg, const AdaptiveState& adapt,
                     const Vec& v, double t);

/// V(x) = 1/2 x^T P x.
double lyapunov_V(const ControllerConfig& cfg, const Vec& x);

/// V_c = V(x) + 1/2 (theta_hat - theta_ref)^T Gamma^-1 (theta_hat - theta_ref)
///       + (lambda_hat - lambda_ref)^2 / (2 Lambda).
double lyapunov_Vc(const ControllerConfig& cfg, const Vec& x,
                   const AdaptiveState& adapt, const Vec& theta_ref,
                   double lambda_ref);

}  // namespace aac
