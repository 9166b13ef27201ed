#include "aac/lyapunov.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "aac/errors.hpp"

namespace aac {

namespace {

// Gaussian elimination with partial pivoting; solves in place, returns x.
// Throws SingularSystem when a pivot is negligible relative to the row scale.
Vec solve_dense(Mat a, Vec b) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    double scale = 0.0;
    for (double v : a.entries()) scale = std::max(scale, std::abs(v));
    const double tiny = 1e-13 * std::max(scale, 1.0);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best <= tiny)
            throw SingularSystem("solve_lyapunov: Kronecker system singular at pivot " +
                                 std::to_string(col));
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            std::swap(b[col], b[piv]);
        }
        const double inv = 1.0 / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(r, col) * inv;
            if (f == 0.0) continue;
            a(r, col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
            b[r] -= f * b[col];
        }
    }
    Vec x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

// determinant of the leading k x k block, by a private little LU
double leading_minor(const Mat& m, std::size_t k) {
    Mat a(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) a(i, j) = m(i, j);
    double det = 1.0;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (a(piv, col) == 0.0) return 0.0;
        if (piv != col) {
            for (std::size_t j = 0; j < k; ++j) std::swap(a(col, j), a(piv, j));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < k; ++r) {
            const double f = a(r, col) / a(col, col);
            for (std::size_t j = col; j < k; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

}  // namespace

bool is_positive_definite(const Mat& m, double tol) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t k = 1; k <= m.rows(); ++k)
        if (leading_minor(m, k) <= tol) return false;
    return true;
}

double lyapunov_residual(const Mat& acl, const Mat& p, const Mat& q) {
    const Mat at = transpose(acl);
    return inf_norm(add(add(mul(at, p), mul(p, acl)), q));
}

Mat solve_lyapunov(const Mat& acl, const Mat& q) {
    const std::size_t n = acl.rows();
    if (acl.cols() != n)
        throw DimensionMismatch("solve_lyapunov: Acl must be square");
    if (q.rows() != n || q.cols() != n)
        throw DimensionMismatch("solve_lyapunov: Q must match Acl");
    if (!q.is_symmetric())
        throw InvalidParameter("solve_lyapunov: Q not symmetric");

    // (I (x) Acl^T + Acl^T (x) I) vec(P) = -vec(Q), column-stacked vec
    const Mat at = transpose(acl);
    Mat sys(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // block (bi, bj) of I (x) Acl^T is delta(bi,bj) * Acl^T
            for (std::size_t bi = 0; bi < n; ++bi)
                sys(bi * n + i, bi * n + j) += at(i, j);
            // block structure of Acl^T (x) I: entry at^T[bi][bj] * I
            for (std::size_t d = 0; d < n; ++d)
                sys(i * n + d, j * n + d) += at(i, j);
        }
    Vec rhs(n * n);
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t row = 0; row < n; ++row)
            rhs[col * n + row] = -q(row, col);

    const Vec pvec = solve_dense(std::move(sys), std::move(rhs));
    Mat p(n, n);
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t row = 0; row < n; ++row) p(row, col) = pvec[col * n + row];

    // the exact solution is symmetric; strip rounding asymmetry
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double s = 0.5 * (p(i, j) + p(j, i));
            p(i, j) = s;
            p(j, i) = s;
        }

    const double res = lyapunov_residual(acl, p, q);
    if (res > 1e-9 * inf_norm(q))
        throw SingularSystem("solve_lyapunov: residual " + std::to_string(res) +
                             " exceeds bound; Acl likely not Hurwitz");
    if (!is_positive_definite(p))
        throw NotPositiveDefinite(
            "solve_lyapunov: P fails the leading-principal-minor test");
    return p;
}

}  // namespace aac
