#pragma once

// Small dense complex linear algebra: enough for the least-squares solves,
// Vandermonde systems and numerical ranks this library needs. Templated so the
// extended-precision scalar works everywhere.

#include <algorithm>
#include <cmath>
#include <vector>

#include "core.hpp"

namespace descff {

template <class C> class Matrix {
  public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols) : r_(rows), c_(cols), v_(rows * cols, C(0)) {}

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    C& operator()(size_t i, size_t j) { return v_[i * c_ + j]; }
    const C& operator()(size_t i, size_t j) const { return v_[i * c_ + j]; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix out(a.r_, b.c_);
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t k = 0; k < a.c_; ++k) {
                C aik = a(i, k);
                for (size_t j = 0; j < b.c_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = C(1);
        return m;
    }

  private:
    size_t r_ = 0, c_ = 0;
    std::vector<C> v_;
};

// Gaussian elimination with partial pivoting; A square.
template <class C>
std::vector<C> solve_linear(Matrix<C> A, std::vector<C> b) {
    const size_t n = A.rows();
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        auto best = abs(A(k, k));
        for (size_t i = k + 1; i < n; ++i)
            if (abs(A(i, k)) > best) {
                best = abs(A(i, k));
                piv = i;
            }
        if (!(best > decltype(best)(0))) throw numeric_error("singular linear system", 0);
        if (piv != k) {
            for (size_t j = 0; j < n; ++j) std::swap(A(k, j), A(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (size_t i = k + 1; i < n; ++i) {
            C f = A(i, k) / A(k, k);
            if (abs(f) == decltype(best)(0)) continue;
            for (size_t j = k; j < n; ++j) A(i, j) -= f * A(k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<C> x(n);
    for (size_t i = n; i-- > 0;) {
        C s = b[i];
        for (size_t j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
        x[i] = s / A(i, i);
    }
    return x;
}

// Householder QR least squares: min ||A x - b||, A is m x n with m >= n.
// Returns x; if residual_out is non-null stores ||A x - b||.
template <class C, class R = decltype(abs(C()))>
std::vector<C> least_squares(Matrix<C> A, std::vector<C> b, R* residual_out = nullptr) {
    const size_t m = A.rows(), n = A.cols();
    for (size_t k = 0; k < n; ++k) {
        R normx(0);
        for (size_t i = k; i < m; ++i) normx += norm(A(i, k));
        normx = sqrt(normx);
        if (!(normx > R(0))) continue;
        C akk = A(k, k);
        R aabs = abs(akk);
        C phase = aabs > R(0) ? akk / C(aabs) : C(1);
        C alpha = -phase * C(normx);
        // v = x - alpha e1, applied implicitly
        std::vector<C> v(m - k);
        v[0] = akk - alpha;
        for (size_t i = k + 1; i < m; ++i) v[i - k] = A(i, k);
        R vnorm2(0);
        for (auto& z : v) vnorm2 += norm(z);
        if (!(vnorm2 > R(0))) continue;
        for (size_t j = k; j < n; ++j) {
            C dot(0);
            for (size_t i = k; i < m; ++i) dot += conj(v[i - k]) * A(i, j);
            C f = dot * C(R(2) / vnorm2);
            for (size_t i = k; i < m; ++i) A(i, j) -= f * v[i - k];
        }
        C dot(0);
        for (size_t i = k; i < m; ++i) dot += conj(v[i - k]) * b[i];
        C f = dot * C(R(2) / vnorm2);
        for (size_t i = k; i < m; ++i) b[i] -= f * v[i - k];
    }
    std::vector<C> x(n);
    for (size_t i = n; i-- > 0;) {
        C s = b[i];
        for (size_t j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
        if (abs(A(i, i)) == R(0)) throw numeric_error("rank-deficient least squares", 0);
        x[i] = s / A(i, i);
    }
    if (residual_out) {
        R res(0);
        for (size_t i = n; i < m; ++i) res += norm(b[i]);
        *residual_out = sqrt(res);
    }
    return x;
}

// Singular values by one-sided Jacobi on the columns; m >= n assumed
// (transpose beforehand otherwise). Descending order.
template <class C, class R = decltype(abs(C()))>
std::vector<R> singular_values(Matrix<C> A) {
    if (A.rows() < A.cols()) {
        Matrix<C> T(A.cols(), A.rows());
        for (size_t i = 0; i < A.rows(); ++i)
            for (size_t j = 0; j < A.cols(); ++j) T(j, i) = conj(A(i, j));
        A = T;
    }
    const size_t m = A.rows(), n = A.cols();
    for (int sweep = 0; sweep < 60; ++sweep) {
        R off(0), diag(0);
        for (size_t p = 0; p < n; ++p)
            for (size_t q = p + 1; q < n; ++q) {
                C apq(0);
                R app(0), aqq(0);
                for (size_t i = 0; i < m; ++i) {
                    apq += conj(A(i, p)) * A(i, q);
                    app += norm(A(i, p));
                    aqq += norm(A(i, q));
                }
                off += abs(apq);
                diag += app + aqq;
                if (!(abs(apq) > R(1e-40) * sqrt(app * aqq)) || app == R(0) || aqq == R(0))
                    continue;
                // 2x2 hermitian eigenproblem for [[app, apq],[conj(apq), aqq]]
                R aabs = abs(apq);
                C phase = apq / C(aabs);
                R tau = (aqq - app) / (R(2) * aabs);
                R atau = tau < R(0) ? R(-tau) : tau;  // |tau| without int-abs pitfalls
                R t = (tau >= R(0) ? R(1) : R(-1)) / (atau + sqrt(R(1) + tau * tau));
                R cth = R(1) / sqrt(R(1) + t * t);
                R sth = cth * t;
                for (size_t i = 0; i < m; ++i) {
                    C ap = A(i, p), aq = A(i, q);
                    A(i, p) = C(cth) * ap - conj(phase) * C(sth) * aq;
                    A(i, q) = phase * C(sth) * ap + C(cth) * aq;
                }
            }
        if (!(off > R(1e-30) * (diag + R(1e-300)))) break;
    }
    std::vector<R> s(n);
    for (size_t j = 0; j < n; ++j) {
        R nrm(0);
        for (size_t i = 0; i < m; ++i) nrm += norm(A(i, j));
        s[j] = sqrt(nrm);
    }
    std::sort(s.begin(), s.end(), std::greater<R>());
    return s;
}

// Rank = number of singular values above tol * sigma_max.
template <class C, class R = decltype(abs(C()))>
int numerical_rank(const Matrix<C>& A, R tol) {
    auto s = singular_values(A);
    if (s.empty() || !(s[0] > R(0))) return 0;
    int r = 0;
    for (auto& v : s)
        if (v > tol * s[0]) ++r;
    return r;
}

}  // namespace descff
