// speclab: tier-templated discretization of the finite cosine kernel.
//
// Everything lives on the unit interval: the kernel on (0,a) is conjugated to
// 2a cos(2 pi a^2 t u) on (0,1), which keeps the node layout independent of a.
// The symmetrized matrix B_ij = sqrt(w_i w_j) 2a cos(2 pi a^2 t_i t_j) shares
// its spectrum with the kernel operator; LU factors of I +/- B serve both the
// determinants and the phi right-hand-side solves.
//
// MIT license; see LICENSE at the repository root.
#pragma once

#include <cmath>
#include <memory>
#include <mutex>
#include <vector>

#include "speclab/errors.hpp"
#include "speclab/linalg.hpp"
#include "speclab/precision.hpp"
#include "speclab/quadrature.hpp"

namespace speclab {

enum class Sign : int { plus = +1, minus = -1 };

inline int sign_value(Sign s) { return static_cast<int>(s); }
inline const char* sign_name(Sign s) { return s == Sign::plus ? "plus" : "minus"; }
inline Sign sign_from_name(const std::string& s) {
    if (s == "plus" || s == "+") return Sign::plus;
    if (s == "minus" || s == "-") return Sign::minus;
    throw InvalidArgument("sign must be plus or minus, got '" + s + "'");
}

// Default node budget: 128 resolves the kernel oscillation (c = 2 pi a^2 radians
// across the square) comfortably up to a = 2; beyond that the count grows with
// the oscillation, i.e. like a^2.
inline int effective_nodes(double a, int base) {
    if (base <= 0) base = 128;
    if (base < 8) throw InvalidArgument("node count must be >= 8");
    if (a <= 2.0) return base;
    return int(std::ceil(base * (a / 2.0) * (a / 2.0)));
}

namespace detail {

template <class Real> struct CosineEngine {
    using real_type = Real;
    using C = complex_of_t<Real>;

    double a_d;
    int n;
    Real a;
    std::vector<Real> t, w; // unit-interval Gauss-Legendre rule, ascending
    std::vector<Real> x;    // t scaled to (0,a)
    Matrix<Real> bsym;      // symmetrized kernel matrix

    CosineEngine(double a_in, int n_in) : a_d(a_in), n(n_in), a(a_in), bsym(n_in, n_in) {
        if (!(a_in > 0.0)) throw InvalidArgument("interval endpoint a must be positive");
        if (n_in < 8) throw InvalidArgument("node count must be >= 8");
        using std::cos;
        using std::sqrt;
        std::vector<Real> g, gw;
        gauss_legendre<Real>(n, g, gw);
        t.resize(n);
        w.resize(n);
        x.resize(n);
        for (int i = 0; i < n; ++i) {
            t[i] = (g[i] + Real(1)) / Real(2);
            w[i] = gw[i] / Real(2);
            x[i] = a * t[i];
        }
        const Real two_pi_a2 = Real(2) * pi_v<Real>() * a * a;
        std::vector<Real> sw(n);
        for (int i = 0; i < n; ++i) sw[i] = sqrt(w[i]);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= i; ++j) {
                const Real v = sw[i] * sw[j] * Real(2) * a * cos(two_pi_a2 * t[i] * t[j]);
                bsym(i, j) = v;
                bsym(j, i) = v;
            }
        }
    }

    const LuFactor<Real>& lu(Sign s) const {
        const int idx = (s == Sign::plus) ? 0 : 1;
        std::lock_guard<std::mutex> lock(mu_);
        if (!lu_[idx]) {
            Matrix<Real> m = bsym;
            const Real sg(sign_value(s));
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) m(i, j) = ((i == j) ? Real(1) : Real(0)) + sg * m(i, j);
            }
            lu_[idx] = std::make_unique<LuFactor<Real>>(lu_factor(std::move(m)));
        }
        return *lu_[idx];
    }

    const std::vector<Real>& eigenvalues() const {
        std::lock_guard<std::mutex> lock(mu_);
        if (!eig_) eig_ = std::make_unique<std::vector<Real>>(symmetric_eigenvalues(bsym));
        return *eig_;
    }

    Real spectral_radius() const {
        using std::abs;
        const auto& ev = eigenvalues();
        return std::max(abs(ev.front()), abs(ev.back()));
    }

    Real log_det_eigen(Sign s) const {
        using std::log;
        const Real sg(sign_value(s));
        Real acc(0);
        for (const Real& lam : eigenvalues()) acc += log(Real(1) + sg * lam);
        return acc;
    }

    Real log_det_lu(Sign s) const { return lu_log_abs_det(lu(s)); }

    // phi at the scaled nodes: (1 +/- C) phi = 2 cos(2 pi a x) solved through
    // the symmetrized system, then unscaled.
    std::vector<Real> solve_phi(Sign s) const {
        using std::cos;
        using std::sqrt;
        const Real two_pi_a2 = Real(2) * pi_v<Real>() * a * a;
        std::vector<Real> b(n);
        for (int i = 0; i < n; ++i) b[i] = sqrt(w[i]) * Real(2) * cos(two_pi_a2 * t[i]);
        lu_solve(lu(s), b);
        for (int i = 0; i < n; ++i) b[i] /= sqrt(w[i]);
        return b;
    }

private:
    mutable std::mutex mu_;
    mutable std::unique_ptr<LuFactor<Real>> lu_[2];
    mutable std::unique_ptr<std::vector<Real>> eig_;
};

} // namespace detail
} // namespace speclab
