#include "aac/controller.hpp"

#include <cmath>
#include <string>

#include "aac/errors.hpp"
#include "aac/kernels.hpp"
#include "aac/lyapunov.hpp"

namespace aac {

namespace {

inline double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

void ControllerConfig::validate(const Mat& plant_A) const {
    const std::size_t n = state_dim();
    if (K.rows() != 1 || K.cols() != n)
        throw DimensionMismatch("ControllerConfig: K must be 1 x n");
    if (Q.rows() != n || Q.cols() != n || !Q.is_symmetric())
        throw InvalidParameter("ControllerConfig: Q must be symmetric n x n");
    if (!is_positive_definite(Q))
        throw NotPositiveDefinite("ControllerConfig: Q is not positive definite");
    if (B.rows() != n || B.cols() != 1)
        throw DimensionMismatch("ControllerConfig: B must be n x 1");
    if (g == 0.0) throw SingularGain("ControllerConfig: g must be nonzero");
    if (gamma_diag.size() != weight_dim())
        throw DimensionMismatch("ControllerConfig: Gamma diagonal length " +
                                std::to_string(gamma_diag.size()) +
                                ", expected " + std::to_string(weight_dim()));
    for (double gi : gamma_diag)
        if (!(gi > 0.0))
            throw InvalidParameter("ControllerConfig: Gamma must be positive");
    if (!(lambda_rate > 0.0))
        throw InvalidParameter("ControllerConfig: Lambda must be positive");
    if (w_theta < 0.0 || w_lambda < 0.0)
        throw InvalidParameter("ControllerConfig: w_theta, w_lambda must be >= 0");
    if (mode == RobustMode::tanh_smooth && !(omega > 0.0))
        throw InvalidParameter("ControllerConfig: tanh mode requires omega > 0");
    if (mode == RobustMode::sgn && (w_theta != 0.0 || w_lambda != 0.0))
        throw InvalidParameter(
            "ControllerConfig: sgn mode requires w_theta = w_lambda = 0");
    if (rbf.input_dim() != n)
        throw DimensionMismatch("ControllerConfig: RBF input dimension " +
                                std::to_string(rbf.input_dim()) +
                                ", expected " + std::to_string(n));
    if (!(adapt_cap > 0.0))
        throw InvalidParameter("ControllerConfig: adapt_cap must be positive");

    // u0 divides by g, so the closed loop of the nominal design is A - B K
    const Mat acl = sub(plant_A, mul(B, K));
    const double res = lyapunov_residual(acl, P, Q);
    if (res > 1e-9 * inf_norm(Q))
        throw InvalidParameter(
            "ControllerConfig: P fails the Lyapunov residual bound (residual " +
            std::to_string(res) + ")");
    if (!is_positive_definite(P))
        throw NotPositiveDefinite("ControllerConfig: P is not positive definite");
}

double p_of(const ControllerConfig& cfg, const Vec& v) {
    if (v.size() != cfg.state_dim())
        throw DimensionMismatch("p_of: input of dimension " +
                                std::to_string(v.size()) + ", expected " +
                                std::to_string(cfg.state_dim()));
    const Vec pb = mul(cfg.P, cfg.B.entries());  // B is n x 1
    return kernels::dot(v.data(), pb.data(), v.size()) * cfg.g;
}

double nominal_effort(const ControllerConfig& cfg, const Vec& v, double t) {
    if (cfg.g == 0.0) throw SingularGain("nominal_effort: g is zero");
    const Vec kv = mul(cfg.K, v);
    double u0 = -kv[0];
    if (cfg.eta_bound) {
        // sgn(B^T P v); P symmetric, so B^T P v = (P B)^T v
        const Vec pb = mul(cfg.P, cfg.B.entries());
        const double bpv = kernels::dot(v.data(), pb.data(), v.size());
        u0 -= sgn(bpv) * cfg.eta_bound(v, t);
    }
    return u0 / cfg.g;
}

double robust_signal(const ControllerConfig& cfg, double p) {
    if (cfg.mode == RobustMode::tanh_smooth) return std::tanh(p / cfg.omega);
    return sgn(p);
}

double compensation_effort(const ControllerConfig& cfg,
                           const AdaptiveState& adapt, const Vec& v) {
    if (adapt.theta.size() != cfg.weight_dim())
        throw DimensionMismatch("compensation_effort: theta_hat length " +
                                std::to_string(adapt.theta.size()) +
                                ", expected " + std::to_string(cfg.weight_dim()));
    const Vec net = evaluate(cfg.rbf, adapt.theta, v);
    const double s = robust_signal(cfg, p_of(cfg, v));
    return -net[0] - adapt.lambda_hat * s;
}

AdaptDeriv adaptation_derivatives(const ControllerConfig& cfg,
                                  const AdaptiveState& adapt, const Vec& v) {
    const std::size_t k = cfg.weight_dim();
    if (adapt.theta.size() != k)
        throw DimensionMismatch("adaptation_derivatives: theta_hat length " +
                                std::to_string(adapt.theta.size()) +
                                ", expected " + std::to_string(k));
    const double p = p_of(cfg, v);
    const double s = robust_signal(cfg, p);

    AdaptDeriv out;
    out.theta_dot.resize(k);
    Vec pi(k);
    cfg.rbf.basis_values(v, pi.data());
    // Gamma (Pi^T p - w_theta theta_hat), Gamma diagonal
    kernels::add_scaled(p, pi.data(), -cfg.w_theta, adapt.theta.data(),
                        out.theta_dot.data(), k);
    kernels::emul(cfg.gamma_diag.data(), out.theta_dot.data(),
                  out.theta_dot.data(), k);
    out.lambda_dot = cfg.lambda_rate * p * s - cfg.w_lambda * adapt.lambda_hat;
    return out;
}

double total_control(const ControllerConfig& cfg, const AdaptiveState& adapt,
                     const Vec& v, double t) {
    return nominal_effort(cfg, v, t) + compensation_effort(cfg, adapt, v);
}

double lyapunov_V(const ControllerConfig& cfg, const Vec& x) {
    return 0.5 * quadratic_form(x, cfg.P);
}

double lyapunov_Vc(const ControllerConfig& cfg, const Vec& x,
                   const AdaptiveState& adapt, const Vec& theta_ref,
                   double lambda_ref) {
    if (theta_ref.size() != adapt.theta.size())
        throw DimensionMismatch("lyapunov_Vc: theta_ref length mismatch");
    double vc = lyapunov_V(cfg, x);
    for (std::size_t i = 0; i < adapt.theta.size(); ++i) {
        const double err = adapt.theta[i] - theta_ref[i];
        vc += 0.5 * err * err / cfg.gamma_diag[i];
    }
    const double lerr = adapt.lambda_hat - lambda_ref;
    vc += lerr * lerr / (2.0 * cfg.lambda_rate);
    return vc;
}

}  // namespace aac
