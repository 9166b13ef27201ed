// AVX2 variants of the data-parallel kernels. This translation unit is the
// only one compiled with -mavx2; entry is gated behind the runtime dispatch
// in kernels.cpp, so building it does not require an AVX2 host.

#include <cmath>
#include <cstddef>

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace aac::kernels::detail {

#if defined(__AVX2__)

bool avx2_compiled() { return true; }

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// exp on 4 lanes: argument reduction against two-part ln2, Cephes-style
// rational approximation on the reduced interval, exponent reassembly by
// bit manipulation. ~2 ulp. Inputs below -708.396 flush to +0 (the exact
// result would be denormal); inputs above 709.783 saturate to +inf.
inline __m256d exp4(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
    const __m256d upper = _mm256_set1_pd(709.782712893383973096);
    const __m256d lower = _mm256_set1_pd(-708.396418532264078749);

    const __m256d n = _mm256_round_pd(
        _mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_sub_pd(x, _mm256_mul_pd(n, ln2_hi));
    r = _mm256_sub_pd(r, _mm256_mul_pd(n, ln2_lo));
    const __m256d rr = _mm256_mul_pd(r, r);

    __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
    p = _mm256_add_pd(_mm256_mul_pd(p, rr),
                      _mm256_set1_pd(3.02994407707441961300e-2));
    p = _mm256_add_pd(_mm256_mul_pd(p, rr),
                      _mm256_set1_pd(9.99999999999999999910e-1));
    p = _mm256_mul_pd(r, p);

    __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
    q = _mm256_add_pd(_mm256_mul_pd(q, rr),
                      _mm256_set1_pd(2.52448340349684104192e-3));
    q = _mm256_add_pd(_mm256_mul_pd(q, rr),
                      _mm256_set1_pd(2.27265548208155028766e-1));
    q = _mm256_add_pd(_mm256_mul_pd(q, rr),
                      _mm256_set1_pd(2.00000000000000000005e0));

    const __m256d one = _mm256_set1_pd(1.0);
    __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    e = _mm256_add_pd(one, _mm256_add_pd(e, e));

    const __m128i n32 = _mm256_cvtpd_epi32(n);
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i pow2 =
        _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    e = _mm256_mul_pd(e, _mm256_castsi256_pd(pow2));

    e = _mm256_blendv_pd(e, _mm256_set1_pd(HUGE_VAL),
                         _mm256_cmp_pd(x, upper, _CMP_GT_OQ));
    e = _mm256_blendv_pd(e, _mm256_setzero_pd(),
                         _mm256_cmp_pd(x, lower, _CMP_LT_OQ));
    return e;
}

}  // namespace

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(
            acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_add_pd(
            _mm256_loadu_pd(y + i), _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(y + i, v);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_avx2(double alpha, const double* x, double* out, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = alpha * x[i];
}

void add_scaled_avx2(double sa, const double* a, double sb, const double* b,
                     double* out, std::size_t n) {
    const __m256d va = _mm256_set1_pd(sa);
    const __m256d vb = _mm256_set1_pd(sb);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v =
            _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(a + i)),
                          _mm256_mul_pd(vb, _mm256_loadu_pd(b + i)));
        _mm256_storeu_pd(out + i, v);
    }
    for (; i < n; ++i) out[i] = sa * a[i] + sb * b[i];
}

void emul_avx2(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                                _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

void rk4_combine_avx2(const double* z0, const double* k1, const double* k2,
                      const double* k3, const double* k4, double dt,
                      double* out, std::size_t n) {
    const double c = dt / 6.0;
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d acc = _mm256_loadu_pd(k1 + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(two, _mm256_loadu_pd(k2 + i)));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(two, _mm256_loadu_pd(k3 + i)));
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(k4 + i));
        acc = _mm256_add_pd(_mm256_loadu_pd(z0 + i), _mm256_mul_pd(vc, acc));
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i)
        out[i] = z0[i] + c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void exp_v_avx2(const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, exp4(_mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = std::exp(x[i]);
}

void gaussian_row_avx2(const double* x, const double* centers_soa,
                       std::size_t dim, std::size_t count, double inv_wsq,
                       double* out) {
    const __m256d viw = _mm256_set1_pd(-inv_wsq);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        __m256d d2 = _mm256_setzero_pd();
        for (std::size_t j = 0; j < dim; ++j) {
            const __m256d diff = _mm256_sub_pd(
                _mm256_set1_pd(x[j]), _mm256_loadu_pd(centers_soa + j * count + i));
            d2 = _mm256_add_pd(d2, _mm256_mul_pd(diff, diff));
        }
        _mm256_storeu_pd(out + i, exp4(_mm256_mul_pd(d2, viw)));
    }
    for (; i < count; ++i) {
        double d2 = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const double diff = x[j] - centers_soa[j * count + i];
            d2 += diff * diff;
        }
        out[i] = std::exp(-d2 * inv_wsq);
    }
}

#else  // !__AVX2__

bool avx2_compiled() { return false; }

double dot_avx2(const double*, const double*, std::size_t) { return 0.0; }
void axpy_avx2(double, const double*, double*, std::size_t) {}
void scale_avx2(double, const double*, double*, std::size_t) {}
void add_scaled_avx2(double, const double*, double, const double*, double*,
                     std::size_t) {}
void emul_avx2(const double*, const double*, double*, std::size_t) {}
void rk4_combine_avx2(const double*, const double*, const double*,
                      const double*, const double*, double, double*,
                      std::size_t) {}
void exp_v_avx2(const double*, double*, std::size_t) {}
void gaussian_row_avx2(const double*, const double*, std::size_t, std::size_t,
                       double, double*) {}

#endif

}  // namespace aac::kernels::detail
