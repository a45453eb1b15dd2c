// speclab: dense linear algebra templated on the scalar type.
//
// The solvers below must run on software multiprecision floats, which rules
// out the usual BLAS/LAPACK route; the matrices are modest (n <= ~600), so
// textbook algorithms with partial pivoting and implicit-shift QL are entirely
// adequate and keep every tier on one code path.
//
// MIT license; see LICENSE at the repository root.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "speclab/errors.hpp"

namespace speclab {

template <class Real> class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(std::size_t(rows) * cols, Real(0)) {
        if (rows < 0 || cols < 0) throw InvalidArgument("negative matrix dimension");
    }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Real& operator()(int i, int j) { return a_[std::size_t(i) * cols_ + j]; }
    const Real& operator()(int i, int j) const { return a_[std::size_t(i) * cols_ + j]; }
    const std::vector<Real>& data() const { return a_; }

private:
    int rows_, cols_;
    std::vector<Real> a_;
};

template <class Real> struct LuFactor {
    Matrix<Real> lu;      // L (unit diagonal, below) and U (on and above)
    std::vector<int> piv; // row swapped with k at step k
    int parity = 1;       // sign of the permutation
};

template <class Real> LuFactor<Real> lu_factor(Matrix<Real> a) {
    using std::abs;
    const int n = a.rows();
    if (n != a.cols()) throw InvalidArgument("lu_factor needs a square matrix");
    LuFactor<Real> f;
    f.piv.resize(n);
    f.parity = 1;
    for (int k = 0; k < n; ++k) {
        int p = k;
        Real best = abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            Real v = abs(a(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        f.piv[k] = p;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            f.parity = -f.parity;
        }
        if (a(k, k) == Real(0)) throw ConvergenceError("exactly singular matrix in LU factorization");
        const Real inv = Real(1) / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const Real lik = a(i, k) * inv;
            a(i, k) = lik;
            if (lik != Real(0))
                for (int j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
        }
    }
    f.lu = std::move(a);
    return f;
}

// Solve (LU) x = b in place. lu_factor swaps entire rows, multipliers
// included, so the stored L rows follow the final row order; the whole
// permutation must therefore be applied to b before the forward sweep, not
// interleaved with it.
template <class Real> void lu_solve(const LuFactor<Real>& f, std::vector<Real>& b) {
    const int n = f.lu.rows();
    if (int(b.size()) != n) throw InvalidArgument("rhs length mismatch in lu_solve");
    for (int k = 0; k < n; ++k) std::swap(b[k], b[f.piv[k]]);
    for (int k = 0; k < n; ++k) {
        if (b[k] == Real(0)) continue;
        for (int i = k + 1; i < n; ++i) b[i] -= f.lu(i, k) * b[k];
    }
    for (int i = n - 1; i >= 0; --i) {
        Real s = b[i];
        for (int j = i + 1; j < n; ++j) s -= f.lu(i, j) * b[j];
        b[i] = s / f.lu(i, i);
    }
}

template <class Real> Real lu_log_abs_det(const LuFactor<Real>& f) {
    using std::abs;
    using std::log;
    Real s(0);
    for (int i = 0; i < f.lu.rows(); ++i) s += log(abs(f.lu(i, i)));
    return s;
}

template <class Real> int lu_det_sign(const LuFactor<Real>& f) {
    int s = f.parity;
    for (int i = 0; i < f.lu.rows(); ++i)
        if (f.lu(i, i) < Real(0)) s = -s;
    return s;
}

namespace detail {

template <class Real> Real pythag(Real a, Real b) {
    using std::abs;
    using std::sqrt;
    a = abs(a);
    b = abs(b);
    if (a < b) std::swap(a, b);
    if (a == Real(0)) return Real(0);
    const Real r = b / a;
    return a * sqrt(Real(1) + r * r);
}

// Householder reduction of a symmetric matrix to tridiagonal form, values-only
// variant (no transform accumulation). On return d holds the diagonal and
// e[1..n-1] the sub-diagonal.
template <class Real>
void householder_tridiag(Matrix<Real>& a, std::vector<Real>& d, std::vector<Real>& e) {
    using std::abs;
    using std::sqrt;
    const int n = a.rows();
    d.assign(n, Real(0));
    e.assign(n, Real(0));
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        Real h(0), scale(0);
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += abs(a(i, k));
            if (scale == Real(0)) {
                e[i] = a(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    a(i, k) /= scale;
                    h += a(i, k) * a(i, k);
                }
                Real f = a(i, l);
                Real g = (f >= Real(0)) ? -sqrt(h) : sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a(i, l) = f - g;
                f = Real(0);
                for (int j = 0; j <= l; ++j) {
                    g = Real(0);
                    for (int k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
                    for (int k = j + 1; k <= l; ++k) g += a(k, j) * a(i, k);
                    e[j] = g / h;
                    f += e[j] * a(i, j);
                }
                const Real hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = a(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) a(j, k) -= (f * e[k] + g * a(i, k));
                }
            }
        } else {
            e[i] = a(i, l);
        }
        d[i] = h;
    }
    e[0] = Real(0);
    for (int i = 0; i < n; ++i) d[i] = a(i, i);
}

// Implicit-shift QL on a symmetric tridiagonal matrix; eigenvalues only.
template <class Real>
void tridiag_ql(std::vector<Real>& d, std::vector<Real>& e) {
    using std::abs;
    const int n = int(d.size());
    const Real eps = std::numeric_limits<Real>::epsilon();
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = Real(0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const Real dd = abs(d[m]) + abs(d[m + 1]);
                if (abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 80) throw ConvergenceError("tridiagonal QL exceeded 80 iterations");
                Real g = (d[l + 1] - d[l]) / (Real(2) * e[l]);
                Real r = pythag(g, Real(1));
                const Real denom = g + ((g >= Real(0)) ? abs(r) : -abs(r));
                g = d[m] - d[l] + e[l] / denom;
                Real s(1), c(1), p(0);
                int i = m - 1;
                for (; i >= l; --i) {
                    Real f = s * e[i];
                    const Real b = c * e[i];
                    r = pythag(f, g);
                    e[i + 1] = r;
                    if (r == Real(0)) {
                        d[i + 1] -= p;
                        e[m] = Real(0);
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + Real(2) * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (r == Real(0) && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = Real(0);
            }
        } while (m != l);
    }
}

} // namespace detail

// Eigenvalues of a symmetric matrix, ascending. The input is consumed.
template <class Real> std::vector<Real> symmetric_eigenvalues(Matrix<Real> a) {
    if (a.rows() != a.cols()) throw InvalidArgument("symmetric_eigenvalues needs a square matrix");
    if (a.rows() == 0) return {};
    std::vector<Real> d, e;
    detail::householder_tridiag(a, d, e);
    detail::tridiag_ql(d, e);
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace speclab
