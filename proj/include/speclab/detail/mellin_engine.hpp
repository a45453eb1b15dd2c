// speclab: tier-templated continuation of the finite Mellin integrals
// int_0^a phi_a^{+-}(x) x^{-s} dx and the solution pair j_hat / k_hat.
//
// The integration range is split at delta = a exp(-12). Below delta the
// solutions are replaced by their even power series (both sides of the
// resolvent equation expand in x^{2k}, so the coefficients come straight
// from the node values), and each term integrates to
// d_{2k} delta^{2k+1-s} / (2k+1-s). That sum is the analytic continuation
// of the left piece and carries the exact poles at s = 1, 3, 5, ...
// Above delta the integrand is smooth; composite Gauss-Legendre panels are
// graded so that the phase of cos(2 pi a x) x^{-i Im s} advances a bounded
// amount per panel, which keeps the rule accurate uniformly in |Im s| up
// to the grading budget. Per-s evaluation is then a dot product against
// exp(-s log x_j) plus the handful of series terms.
//
// For Re s > 1 the two pieces cancel near delta and the relative accuracy
// of the sum degrades like delta^{-(Re s - 1)}; callers cap Re s.
//
// MIT license; see LICENSE at the repository root.
#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "speclab/detail/phi_engine.hpp"
#include "speclab/quadrature.hpp"

namespace speclab {
namespace detail {

// Panel order per tier: panels carry at most ~10 radians of combined phase,
// and these orders push the resulting quadrature error below the tier's
// working precision.
inline int mellin_panel_order(Tier t) {
    switch (t) {
        case Tier::f64:
        case Tier::f128: return 24;
        case Tier::dec50: return 32;
        case Tier::dec100: return 40;
    }
    return 24;
}

template <class Real> struct MellinEngine {
    using real_type = Real;
    using C = complex_of_t<Real>;

    static constexpr int series_terms = 20;
    static constexpr double phase_budget = 5.0;

    std::shared_ptr<const CosineEngine<Real>> ker;
    std::shared_ptr<const PhiEngine<Real>> fp, fm; // the + and - solutions
    double tau_cap; // |Im s| the panel grading is built for

    MellinEngine(std::shared_ptr<const PhiEngine<Real>> plus,
                 std::shared_ptr<const PhiEngine<Real>> minus, double cap)
        : ker(plus->ker), fp(std::move(plus)), fm(std::move(minus)), tau_cap(cap) {
        if (fm->ker.get() != ker.get())
            throw InvalidArgument("phi solutions must share one discretization");
        if (fp->sign != Sign::plus || fm->sign != Sign::minus)
            throw InvalidArgument("MellinEngine wants the + solution first and the - solution second");
        if (!(tau_cap >= 3.0) || !std::isfinite(tau_cap) || tau_cap > 4096.0)
            throw InvalidArgument("tau cap must lie in [3, 4096], got " + std::to_string(tau_cap));
        delta_d_ = ker->a_d * std::exp(-12.0);
        la_ = log(ker->a);
        sqrt_a_ = sqrt(ker->a);
        build_panels();
        build_series();
    }

    // Continuation of int_0^a phi^{sg}(x) x^{-s} dx. Poles at s = 1, 3, 5, ...
    C transform(Sign sg, const C& s) const {
        using std::exp;
        const std::vector<Real>& av = (sg == Sign::plus) ? ap_ : am_;
        const std::vector<Real>& dv = (sg == Sign::plus) ? dp_ : dm_;
        C acc(Real(0), Real(0));
        for (std::size_t j = 0; j < lx_.size(); ++j) acc += av[j] * exp(-s * lx_[j]);
        for (int k = 0; k < series_terms; ++k) {
            const C expo = C(Real(2 * k + 1), Real(0)) - s;
            if (std::abs(to_cd(expo)) < 1e-8)
                throw PoleError("Mellin transform of phi has a pole at s = " + std::to_string(2 * k + 1));
            acc += dv[k] * exp(expo * ldelta_) / expo;
        }
        return acc;
    }

    // j_hat(s) = a^{1/2-s} - sqrt(a) int_0^a phi+ x^{-s} dx
    C j_hat(const C& s) const {
        using std::exp;
        return exp((C(Real(0.5), Real(0)) - s) * la_) - sqrt_a_ * transform(Sign::plus, s);
    }

    // k_hat(s) = i (a^{1/2-s} + sqrt(a) int_0^a phi- x^{-s} dx)
    C k_hat(const C& s) const {
        using std::exp;
        const C v = exp((C(Real(0.5), Real(0)) - s) * la_) + sqrt_a_ * transform(Sign::minus, s);
        return C(-v.imag(), v.real());
    }

    // Gamma-free Wronskian of the j/k pair,
    //   (j_hat(s) k_hat(1-s) + j_hat(1-s) k_hat(s)) / 2,
    // identically equal to i. The factors grow like exp(c) with the kernel
    // length while the combination stays O(1), so it has to be formed here,
    // before any narrowing, to survive the cancellation.
    C wronskian_pair(const C& s) const {
        const C r = C(Real(1), Real(0)) - s;
        const C v = j_hat(s) * k_hat(r) + j_hat(r) * k_hat(s);
        return v * C(Real(1) / Real(2), Real(0));
    }

    // sqrt(a) (a^{-s} + 1/2 int_a^inf (phi+ - phi-)(x) x^{-s} dx), Re s > 0.
    // Beyond a the difference oscillates at frequency a under an algebraic
    // envelope with no drift term, so half-period window sums alternate and
    // repeated averaging of their partial sums converges geometrically.
    C e_hat_tail(const C& s, double tol) const {
        using std::exp;
        using std::log;
        const Real h = Real(1) / (Real(2) * ker->a);
        std::vector<Real> gt, gw;
        gauss_legendre<Real>(12, gt, gw);
        const Real half = Real(1) / Real(2);
        const C base = exp(-s * la_);
        std::vector<C> win;
        double best_err = -1.0;
        for (int target : {48, 96, 192, 384}) {
            while (int(win.size()) < target) {
                const int k = int(win.size());
                const Real x0 = ker->a + Real(k) * h;
                C acc(Real(0), Real(0));
                for (std::size_t i = 0; i < gt.size(); ++i) {
                    const Real xi = x0 + (gt[i] + Real(1)) * half * h;
                    const Real wi = gw[i] * half * h;
                    const Real d = fp->eval(xi) - fm->eval(xi);
                    acc += (wi * d) * exp(-s * log(xi));
                }
                win.push_back(acc);
            }
            std::vector<C> t(win.size());
            C run(Real(0), Real(0));
            for (std::size_t i = 0; i < win.size(); ++i) {
                run += win[i];
                t[i] = run;
            }
            C prev = t[0];
            for (std::size_t lev = 1; lev < t.size(); ++lev) {
                for (std::size_t i = 0; i + lev < t.size(); ++i) t[i] = (t[i] + t[i + 1]) * half;
                if (lev + 1 == t.size()) break;
                prev = t[0];
            }
            const C result = sqrt_a_ * (base + half * t[0]);
            const double err = std::abs(to_cd(sqrt_a_ * half * (t[0] - prev)));
            best_err = err;
            if (err <= tol * std::max(std::abs(to_cd(result)), 1e-300)) return result;
        }
        throw ConvergenceError("tail route for E_hat stalled at estimated error " +
                               std::to_string(best_err) + " after 384 windows (tol " +
                               std::to_string(tol) + ")");
    }

private:
    double delta_d_ = 0.0;
    Real la_, sqrt_a_, ldelta_;
    std::vector<Real> lx_;       // log of the panel nodes on [delta, a]
    std::vector<Real> ap_, am_;  // panel weight times phi^{+-} at the node
    std::vector<Real> dp_, dm_;  // power-series coefficients of phi^{+-}

    void build_panels() {
        const double a_d = ker->a_d;
        const double rate0 = 2.0 * M_PI * a_d;  // from cos(2 pi a x)
        const double rate1 = tau_cap + 3.0;     // from x^{-i tau}, times 1/x
        std::vector<double> breaks;
        breaks.push_back(delta_d_);
        double x = delta_d_;
        while (true) {
            x += phase_budget / (rate0 + rate1 / x);
            if (!(x < a_d)) break;
            breaks.push_back(x);
        }
        breaks.push_back(a_d);
        PanelRule<Real> rule =
            composite_gl<Real>(breaks, mellin_panel_order(tier_of_real<Real>::value));
        const std::size_t m = rule.x.size();
        lx_.resize(m);
        ap_.resize(m);
        am_.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            lx_[j] = log(rule.x[j]);
            ap_[j] = rule.w[j] * fp->eval(rule.x[j]);
            am_[j] = rule.w[j] * fm->eval(rule.x[j]);
        }
    }

    // phi^{sg}(x) = sum_k c_{2k} x^{2k} with
    // c_{2k} = (-1)^k (2 pi)^{2k} / (2k)! (2 a^{2k} - sg m_{2k}),
    // m_{2k} = int_0^a 2 y^{2k} phi^{sg}(y) dy: expand both cosines in the
    // resolvent equation and match powers; the moments come from the solve
    // nodes. Truncation after series_terms is far below every tier's
    // roundoff because 2 pi a delta is tiny.
    void build_series() {
        ldelta_ = log(Real(delta_d_));
        const int n = ker->n;
        const Real two_pi = Real(2) * pi_v<Real>();
        dp_.assign(series_terms, Real(0));
        dm_.assign(series_terms, Real(0));
        std::vector<Real> ypow(n, Real(1)), ysq(n);
        for (int j = 0; j < n; ++j) ysq[j] = ker->x[j] * ker->x[j];
        Real pref(1), apow(1);
        for (int k = 0; k < series_terms; ++k) {
            Real mp(0), mm(0);
            for (int j = 0; j < n; ++j) {
                const Real base = Real(2) * fp->cw[j] * ypow[j];
                mp += base * fp->phi[j];
                mm += base * fm->phi[j];
            }
            dp_[k] = pref * (Real(2) * apow - mp);
            dm_[k] = pref * (Real(2) * apow + mm);
            pref *= -(two_pi * two_pi) / Real((2 * k + 1) * (2 * k + 2));
            apow *= ker->a * ker->a;
            for (int j = 0; j < n; ++j) ypow[j] *= ysq[j];
        }
    }
};

} // namespace detail
} // namespace speclab
