// speclab: tier-templated phi machinery: node values plus the analytic
// extension to arbitrary x.
//
// The extension formula phi(x) = 2 cos(2 pi a x) -/+ int_0^a 2 cos(2 pi x y)
// phi(y) dy is evaluated with the solve-node rule while the oscillation count
// x*a stays resolvable; past that a denser secondary rule (filled from the
// solve nodes, which is always legitimate for interior points) carries the
// same sum. Without the second stage, values beyond x ~ n/(4a) are garbage.
//
// MIT license; see LICENSE at the repository root.
#pragma once

#include <cmath>
#include <memory>
#include <mutex>
#include <vector>

#include "speclab/detail/cosine_engine.hpp"

namespace speclab {
namespace detail {

template <class Real> struct PhiEngine {
    using real_type = Real;
    std::shared_ptr<const CosineEngine<Real>> ker;
    Sign sign;
    std::vector<Real> phi; // at ker->x, ascending nodes
    std::vector<Real> cw;  // weights scaled to (0,a): a * w

    PhiEngine(std::shared_ptr<const CosineEngine<Real>> k, Sign s)
        : ker(std::move(k)), sign(s), phi(ker->solve_phi(s)), cw(ker->n) {
        for (int i = 0; i < ker->n; ++i) cw[i] = ker->a * ker->w[i];
    }

    // Construct from cached node values (validated by the caller).
    PhiEngine(std::shared_ptr<const CosineEngine<Real>> k, Sign s, std::vector<Real> values)
        : ker(std::move(k)), sign(s), phi(std::move(values)), cw(ker->n) {
        if (int(phi.size()) != ker->n) throw InvalidArgument("phi value count mismatch");
        for (int i = 0; i < ker->n; ++i) cw[i] = ker->a * ker->w[i];
    }

    Real rhs(const Real& x) const {
        using std::cos;
        return Real(2) * cos(Real(2) * pi_v<Real>() * ker->a * x);
    }

    // Largest |x| the solve-node rule extends to reliably.
    double direct_limit() const { return double(ker->n) / (5.0 * ker->a_d); }

    Real eval(Real x) const {
        using std::abs;
        x = abs(x); // the solutions are even
        if (to_double(x) <= direct_limit()) return eval_with(ker->x, cw, phi, x);
        const DenseGrid& g = dense_for(to_double(x));
        return eval_with(g.y, g.w, g.phi, x);
    }

    Real deriv(Real x) const {
        using std::abs;
        using std::sin;
        const bool neg = (x < Real(0));
        x = abs(x);
        const Real two_pi = Real(2) * pi_v<Real>();
        Real acc = -two_pi * Real(2) * ker->a * sin(two_pi * ker->a * x);
        const Real sg(sign_value(sign));
        if (to_double(x) <= direct_limit()) {
            for (int j = 0; j < ker->n; ++j)
                acc += sg * two_pi * Real(2) * cw[j] * ker->x[j] * sin(two_pi * x * ker->x[j]) * phi[j];
        } else {
            const DenseGrid& g = dense_for(to_double(x));
            for (std::size_t j = 0; j < g.y.size(); ++j)
                acc += sg * two_pi * Real(2) * g.w[j] * g.y[j] * sin(two_pi * x * g.y[j]) * g.phi[j];
        }
        return neg ? -acc : acc; // odd derivative of an even function
    }

    // Residual of the node system in the working tier, narrowed.
    double residual_inf() const {
        using std::abs;
        using std::cos;
        const Real two_pi = Real(2) * pi_v<Real>();
        const Real sg(sign_value(sign));
        Real worst(0);
        for (int i = 0; i < ker->n; ++i) {
            Real s = phi[i] - rhs(ker->x[i]);
            for (int j = 0; j < ker->n; ++j)
                s += sg * cw[j] * Real(2) * cos(two_pi * ker->x[i] * ker->x[j]) * phi[j];
            if (abs(s) > worst) worst = abs(s);
        }
        return to_double(worst);
    }

private:
    struct DenseGrid {
        double x_cap = 0.0;
        std::vector<Real> y, w, phi;
    };

    Real eval_with(const std::vector<Real>& y, const std::vector<Real>& w,
                   const std::vector<Real>& v, const Real& x) const {
        using std::cos;
        const Real two_pi = Real(2) * pi_v<Real>();
        Real acc = rhs(x);
        const Real sg(sign_value(sign));
        for (std::size_t j = 0; j < y.size(); ++j)
            acc -= sg * w[j] * Real(2) * cos(two_pi * x * y[j]) * v[j];
        return acc;
    }

    const DenseGrid& dense_for(double x_need) const {
        std::lock_guard<std::mutex> lock(mu_);
        if (!dense_ || dense_->x_cap < x_need) {
            auto g = std::make_unique<DenseGrid>();
            g->x_cap = std::max(2.0 * x_need, 4.0 * direct_limit());
            // Panel width keeps the per-panel phase of cos(2 pi x y) below ~4
            // radians for 16-point panels.
            const int panels = std::max(24, int(std::ceil(1.7 * ker->a_d * g->x_cap)));
            PanelRule<Real> rule = composite_gl<Real>(uniform_breaks(0.0, ker->a_d, panels), 16);
            g->y = std::move(rule.x);
            g->w = std::move(rule.w);
            g->phi.resize(g->y.size());
            for (std::size_t j = 0; j < g->y.size(); ++j)
                g->phi[j] = eval_with(ker->x, cw, phi, g->y[j]);
            dense_ = std::move(g);
        }
        return *dense_;
    }

    mutable std::mutex mu_;
    mutable std::unique_ptr<DenseGrid> dense_;
};

} // namespace detail
} // namespace speclab
