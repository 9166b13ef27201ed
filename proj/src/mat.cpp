#include "aac/mat.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "aac/errors.hpp"
#include "aac/kernels.hpp"

namespace aac {

namespace {

[[noreturn]] void dim_error(const char* op, std::size_t ar, std::size_t ac,
                            std::size_t br, std::size_t bc) {
    throw DimensionMismatch(std::string(op) + ": " + std::to_string(ar) + "x" +
                            std::to_string(ac) + " vs " + std::to_string(br) +
                            "x" + std::to_string(bc));
}

}  // namespace

Mat::Mat(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), e_(rows * cols, fill) {}

Mat::Mat(std::initializer_list<std::initializer_list<double>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (const auto& row : init) {
        if (row.size() != cols_)
            throw DimensionMismatch("Mat: ragged initializer list");
        e_.insert(e_.end(), row.begin(), row.end());
    }
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::diag(const Vec& d) {
    Mat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

bool Mat::is_symmetric(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j) {
            const double a = (*this)(i, j), b = (*this)(j, i);
            if (std::abs(a - b) > tol * std::max(1.0, std::abs(a))) return false;
        }
    return true;
}

Mat add(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        dim_error("add", a.rows(), a.cols(), b.rows(), b.cols());
    Mat out(a.rows(), a.cols());
    kernels::add_scaled(1.0, a.data(), 1.0, b.data(), out.data(),
                        a.rows() * a.cols());
    return out;
}

Mat sub(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        dim_error("sub", a.rows(), a.cols(), b.rows(), b.cols());
    Mat out(a.rows(), a.cols());
    kernels::add_scaled(1.0, a.data(), -1.0, b.data(), out.data(),
                        a.rows() * a.cols());
    return out;
}

Mat mul(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows())
        dim_error("mul", a.rows(), a.cols(), b.rows(), b.cols());
    Mat out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) += aik * b(k, j);
        }
    return out;
}

Vec mul(const Mat& a, const Vec& x) {
    if (a.cols() != x.size())
        dim_error("mul", a.rows(), a.cols(), x.size(), 1);
    Vec out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        out[i] = kernels::dot(a.data() + i * a.cols(), x.data(), a.cols());
    return out;
}

Mat transpose(const Mat& a) {
    Mat out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
    return out;
}

Mat scaled(double s, const Mat& a) {
    Mat out(a.rows(), a.cols());
    kernels::scale(s, a.data(), out.data(), a.rows() * a.cols());
    return out;
}

double quadratic_form(const Vec& x, const Mat& p) {
    if (p.rows() != x.size() || p.cols() != x.size())
        dim_error("quadratic_form", p.rows(), p.cols(), x.size(), 1);
    return dot(x, mul(p, x));
}

double inf_norm(const Mat& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

double inf_norm(const Vec& x) {
    double best = 0.0;
    for (double v : x) best = std::max(best, std::abs(v));
    return best;
}

double euclid_norm(const Vec& x) {
    return std::sqrt(kernels::dot(x.data(), x.data(), x.size()));
}

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) dim_error("dot", a.size(), 1, b.size(), 1);
    return kernels::dot(a.data(), b.data(), a.size());
}

bool all_finite(const Vec& x) {
    for (double v : x)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace aac
