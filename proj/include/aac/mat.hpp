#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace aac {

using Vec = std::vector<double>;

/**
 * Dense real matrix, row-major. Sized for control design at desk scale
 * (n <= 10 state dimensions, plus the n^2 x n^2 Kronecker system of the
 * Lyapunov solver); all arithmetic is plain double.
 */
class Mat {
public:
    Mat() = default;
    Mat(std::size_t rows, std::size_t cols, double fill = 0.0);
    Mat(std::initializer_list<std::initializer_list<double>> init);

    static Mat identity(std::size_t n);
    static Mat diag(const Vec& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) {
        return e_[i * cols_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const {
        return e_[i * cols_ + j];
    }

    const Vec& entries() const { return e_; }
    double* data() { return e_.data(); }
    const double* data() const { return e_.data(); }

    /// |M[i][j] - M[j][i]| <= tol * max(1, |M[i][j]|) for all i, j.
    bool is_symmetric(double tol = 1e-12) const;

    bool operator==(const Mat& other) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    Vec e_;
};

Mat add(const Mat& a, const Mat& b);
Mat sub(const Mat& a, const Mat& b);
Mat mul(const Mat& a, const Mat& b);
Vec mul(const Mat& a, const Vec& x);
Mat transpose(const Mat& a);
Mat scaled(double s, const Mat& a);

/// x^T P x
double quadratic_form(const Vec& x, const Mat& p);

/// Matrix infinity norm (max absolute row sum).
double inf_norm(const Mat& a);
/// Vector infinity norm.
double inf_norm(const Vec& x);

double euclid_norm(const Vec& x);
double dot(const Vec& a, const Vec& b);

inline Mat operator+(const Mat& a, const Mat& b) { return add(a, b); }
inline Mat operator-(const Mat& a, const Mat& b) { return sub(a, b); }
inline Mat operator*(const Mat& a, const Mat& b) { return mul(a, b); }
inline Vec operator*(const Mat& a, const Vec& x) { return mul(a, x); }
inline Mat operator*(double s, const Mat& a) { return scaled(s, a); }

bool all_finite(const Vec& x);

}  // namespace aac
