#include "aac/kernels.hpp"

#include <atomic>
#include <cmath>

namespace aac::kernels {

namespace detail {

// implemented in kernels_avx2.cpp (no-ops when the target lacks AVX2)
bool avx2_compiled();
double dot_avx2(const double*, const double*, std::size_t);
void axpy_avx2(double, const double*, double*, std::size_t);
void scale_avx2(double, const double*, double*, std::size_t);
void add_scaled_avx2(double, const double*, double, const double*, double*,
                     std::size_t);
void emul_avx2(const double*, const double*, double*, std::size_t);
void rk4_combine_avx2(const double*, const double*, const double*,
                      const double*, const double*, double, double*,
                      std::size_t);
void exp_v_avx2(const double*, double*, std::size_t);
void gaussian_row_avx2(const double*, const double*, std::size_t, std::size_t,
                       double, double*);

}  // namespace detail

namespace {

std::atomic<int> g_backend{-1};  // -1 auto, else static_cast<int>(Backend)

Backend detect() {
    return (detail::avx2_compiled() && cpu_has_avx2()) ? Backend::avx2
                                                       : Backend::scalar;
}

inline Backend pick() {
    int b = g_backend.load(std::memory_order_relaxed);
    return b < 0 ? detect() : static_cast<Backend>(b);
}

}  // namespace

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Backend active() { return pick(); }

void set_backend(Backend b) {
    if (b == Backend::avx2 && !(detail::avx2_compiled() && cpu_has_avx2()))
        b = Backend::scalar;
    g_backend.store(static_cast<int>(b), std::memory_order_relaxed);
}

void reset_backend() { g_backend.store(-1, std::memory_order_relaxed); }

// ---------------------------------------------------------------------------
// scalar reference kernels

namespace ref {

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = alpha * x[i];
}

void add_scaled(double sa, const double* a, double sb, const double* b,
                double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = sa * a[i] + sb * b[i];
}

void emul(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void rk4_combine(const double* z0, const double* k1, const double* k2,
                 const double* k3, const double* k4, double dt, double* out,
                 std::size_t n) {
    const double c = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i)
        out[i] = z0[i] + c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void exp_v(const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

void gaussian_row(const double* x, const double* centers_soa, std::size_t dim,
                  std::size_t count, double inv_wsq, double* out) {
    for (std::size_t i = 0; i < count; ++i) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const double diff = x[j] - centers_soa[j * count + i];
            d2 += diff * diff;
        }
        out[i] = std::exp(-d2 * inv_wsq);
    }
}

}  // namespace ref

// ---------------------------------------------------------------------------
// dispatch

double dot(const double* a, const double* b, std::size_t n) {
    if (pick() == Backend::avx2) return detail::dot_avx2(a, b, n);
    return ref::dot(a, b, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    if (pick() == Backend::avx2) return detail::axpy_avx2(alpha, x, y, n);
    ref::axpy(alpha, x, y, n);
}

void scale(double alpha, const double* x, double* out, std::size_t n) {
    if (pick() == Backend::avx2) return detail::scale_avx2(alpha, x, out, n);
    ref::scale(alpha, x, out, n);
}

void add_scaled(double sa, const double* a, double sb, const double* b,
                double* out, std::size_t n) {
    if (pick() == Backend::avx2)
        return detail::add_scaled_avx2(sa, a, sb, b, out, n);
    ref::add_scaled(sa, a, sb, b, out, n);
}

void emul(const double* a, const double* b, double* out, std::size_t n) {
    if (pick() == Backend::avx2) return detail::emul_avx2(a, b, out, n);
    ref::emul(a, b, out, n);
}

void rk4_combine(const double* z0, const double* k1, const double* k2,
                 const double* k3, const double* k4, double dt, double* out,
                 std::size_t n) {
    if (pick() == Backend::avx2)
        return detail::rk4_combine_avx2(z0, k1, k2, k3, k4, dt, out, n);
    ref::rk4_combine(z0, k1, k2, k3, k4, dt, out, n);
}

void exp_v(const double* x, double* out, std::size_t n) {
    if (pick() == Backend::avx2) return detail::exp_v_avx2(x, out, n);
    ref::exp_v(x, out, n);
}

void gaussian_row(const double* x, const double* centers_soa, std::size_t dim,
                  std::size_t count, double inv_wsq, double* out) {
    if (pick() == Backend::avx2)
        return detail::gaussian_row_avx2(x, centers_soa, dim, count, inv_wsq,
                                         out);
    ref::gaussian_row(x, centers_soa, dim, count, inv_wsq, out);
}

}  // namespace aac::kernels
