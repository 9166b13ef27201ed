#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "aac/kernels.hpp"
#include "aac/rng.hpp"

using namespace aac;

namespace {

std::vector<double> random_vec(SplitMix64& rng, std::size_t n, double lo,
                               double hi) {
    std::vector<double> v(n);
    for (double& x : v) x = lo + (hi - lo) * rng.next_unit();
    return v;
}

struct BackendGuard {
    ~BackendGuard() { kernels::reset_backend(); }
};

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1e-300, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_SUITE_BEGIN("kernels");

TEST_CASE("scalar and avx2 backends agree on the vector primitives") {
    if (!kernels::cpu_has_avx2()) return;  // single-backend host
    BackendGuard guard;
    SplitMix64 rng(0xC0FFEE);

    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 13u, 16u, 40u}) {
        const auto a = random_vec(rng, n, -5.0, 5.0);
        const auto b = random_vec(rng, n, -5.0, 5.0);
        const auto z0 = random_vec(rng, n, -1.0, 1.0);
        const double alpha = -1.0 + 2.0 * rng.next_unit();
        const double beta = -2.0 + 4.0 * rng.next_unit();

        kernels::set_backend(kernels::Backend::scalar);
        const double dot_s = kernels::dot(a.data(), b.data(), n);
        std::vector<double> axpy_s = b, scale_s(n), addsc_s(n), emul_s(n),
                            comb_s(n);
        kernels::axpy(alpha, a.data(), axpy_s.data(), n);
        kernels::scale(alpha, a.data(), scale_s.data(), n);
        kernels::add_scaled(alpha, a.data(), beta, b.data(), addsc_s.data(), n);
        kernels::emul(a.data(), b.data(), emul_s.data(), n);
        kernels::rk4_combine(z0.data(), a.data(), b.data(), a.data(), b.data(),
                             1e-3, comb_s.data(), n);

        kernels::set_backend(kernels::Backend::avx2);
        const double dot_v = kernels::dot(a.data(), b.data(), n);
        std::vector<double> axpy_v = b, scale_v(n), addsc_v(n), emul_v(n),
                            comb_v(n);
        kernels::axpy(alpha, a.data(), axpy_v.data(), n);
        kernels::scale(alpha, a.data(), scale_v.data(), n);
        kernels::add_scaled(alpha, a.data(), beta, b.data(), addsc_v.data(), n);
        kernels::emul(a.data(), b.data(), emul_v.data(), n);
        kernels::rk4_combine(z0.data(), a.data(), b.data(), a.data(), b.data(),
                             1e-3, comb_v.data(), n);

        CHECK(close_rel(dot_s, dot_v, 1e-13));
        for (std::size_t i = 0; i < n; ++i) {
            // lane-wise ops have no reduction reordering: exact match
            CHECK(axpy_s[i] == axpy_v[i]);
            CHECK(scale_s[i] == scale_v[i]);
            CHECK(addsc_s[i] == addsc_v[i]);
            CHECK(emul_s[i] == emul_v[i]);
            CHECK(comb_s[i] == comb_v[i]);
        }
    }
}

TEST_CASE("vectorized exp matches std::exp over the working range") {
    if (!kernels::cpu_has_avx2()) return;
    BackendGuard guard;
    kernels::set_backend(kernels::Backend::avx2);

    std::vector<double> args;
    for (double x = -700.0; x <= 700.0; x += 0.37) args.push_back(x);
    SplitMix64 rng(7);
    for (int i = 0; i < 4000; ++i)
        args.push_back(-80.0 + 90.0 * rng.next_unit());
    args.insert(args.end(), {0.0, 1.0, -1.0, 1e-30, -1e-30, 709.0, -708.0});

    std::vector<double> got(args.size());
    kernels::exp_v(args.data(), got.data(), args.size());
    for (std::size_t i = 0; i < args.size(); ++i) {
        const double want = std::exp(args[i]);
        CHECK_MESSAGE(close_rel(got[i], want, 1e-14),
                      "exp(" << args[i] << ") = " << got[i] << " want "
                             << want);
    }
}

TEST_CASE("vectorized exp edge behavior") {
    if (!kernels::cpu_has_avx2()) return;
    BackendGuard guard;
    kernels::set_backend(kernels::Backend::avx2);

    const double args[4] = {-1000.0, 800.0, -720.0,
                            std::numeric_limits<double>::quiet_NaN()};
    double got[4];
    kernels::exp_v(args, got, 4);
    CHECK(got[0] == 0.0);
    CHECK(std::isinf(got[1]));
    // flush-to-zero region: std::exp gives a denormal, the kernel gives 0
    CHECK(got[2] >= 0.0);
    CHECK(got[2] <= std::numeric_limits<double>::min());
    CHECK(std::isnan(got[3]));
}

TEST_CASE("gaussian_row backends agree and values lie in (0, 1]") {
    BackendGuard guard;
    SplitMix64 rng(99);
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t dim = 1 + rng.next() % 3;
        const std::size_t count = 1 + rng.next() % 13;
        const auto soa = random_vec(rng, dim * count, -2.0, 2.0);
        const auto x = random_vec(rng, dim, -2.0, 2.0);
        const double inv_wsq = 0.5 + 10.0 * rng.next_unit();

        kernels::set_backend(kernels::Backend::scalar);
        std::vector<double> out_s(count);
        kernels::gaussian_row(x.data(), soa.data(), dim, count, inv_wsq,
                              out_s.data());
        for (double v : out_s) {
            CHECK(v > 0.0);
            CHECK(v <= 1.0);
        }
        if (!kernels::cpu_has_avx2()) continue;
        kernels::set_backend(kernels::Backend::avx2);
        std::vector<double> out_v(count);
        kernels::gaussian_row(x.data(), soa.data(), dim, count, inv_wsq,
                              out_v.data());
        for (std::size_t i = 0; i < count; ++i)
            CHECK(close_rel(out_s[i], out_v[i], 1e-13));
    }
}

TEST_CASE("rk4_combine reference semantics") {
    const double z0[3] = {1.0, -2.0, 0.5};
    const double k1[3] = {1.0, 0.0, 2.0};
    const double k2[3] = {2.0, 1.0, 0.0};
    const double k3[3] = {3.0, -1.0, 1.0};
    const double k4[3] = {4.0, 2.0, -2.0};
    double out[3];
    kernels::rk4_combine(z0, k1, k2, k3, k4, 0.6, out, 3);
    // z + 0.1 * (k1 + 2 k2 + 2 k3 + k4)
    CHECK(out[0] == doctest::Approx(1.0 + 0.1 * 15.0).epsilon(1e-15));
    CHECK(out[1] == doctest::Approx(-2.0 + 0.1 * 2.0).epsilon(1e-15));
    CHECK(out[2] == doctest::Approx(0.5 + 0.1 * 2.0).epsilon(1e-15));
}

TEST_SUITE_END();
