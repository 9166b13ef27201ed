#pragma once

#include <cstddef>

// Data-parallel inner loops of the simulator: dot products and fused vector
// updates over the augmented ODE state, and Gaussian basis-row evaluation.
// Scalar reference implementations plus AVX2 variants selected at runtime;
// both backends are exercised by the equivalence tests.

namespace aac::kernels {

enum class Backend { scalar, avx2 };

/// Backend selected for this process (auto-detected on first use).
Backend active();

/// Force a backend. Backend::avx2 on a CPU without AVX2 falls back to scalar.
void set_backend(Backend b);

/// Reset to auto-detection.
void reset_backend();

bool cpu_has_avx2();

double dot(const double* a, const double* b, std::size_t n);

/// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);

/// out = alpha * x
void scale(double alpha, const double* x, double* out, std::size_t n);

/// out = sa * a + sb * b
void add_scaled(double sa, const double* a, double sb, const double* b,
                double* out, std::size_t n);

/// out = a .* b
void emul(const double* a, const double* b, double* out, std::size_t n);

/// out = z0 + dt/6 * (k1 + 2 k2 + 2 k3 + k4)   (classical RK4 combine)
void rk4_combine(const double* z0, const double* k1, const double* k2,
                 const double* k3, const double* k4, double dt, double* out,
                 std::size_t n);

/// out[i] = exp(x[i]). The AVX2 variant flushes results below ~2.3e-308 to
/// zero instead of producing denormals.
void exp_v(const double* x, double* out, std::size_t n);

/// Gaussian RBF row: out[i] = exp(-sum_j (x[j] - c[j][i])^2 * inv_wsq) for
/// i in [0, count). centers_soa is dimension-major: centers_soa[j*count + i]
/// is coordinate j of center i.
void gaussian_row(const double* x, const double* centers_soa, std::size_t dim,
                  std::size_t count, double inv_wsq, double* out);

}  // namespace aac::kernels
