// speclab: Gauss-Legendre rules, templated on the scalar so multiprecision
// tiers get nodes consistent with their working precision.
// MIT license; see LICENSE at the repository root.
#pragma once

#include <cmath>
#include <vector>

#include "speclab/errors.hpp"
#include "speclab/precision.hpp"

namespace speclab {

// Nodes and weights of the n-point Gauss-Legendre rule on (-1,1), ascending.
// Newton iteration on the three-term Legendre recurrence; the double-precision
// Chebyshev seed converges quadratically, so a handful of steps reaches any
// tier. Iterates until the correction stalls at roundoff.
template <class Real>
void gauss_legendre(int n, std::vector<Real>& x, std::vector<Real>& w) {
    if (n < 1) throw InvalidArgument("Gauss-Legendre order must be >= 1");
    using std::abs;
    using std::cos;
    using std::sqrt;
    x.assign(n, Real(0));
    w.assign(n, Real(0));
    const Real one(1), two(2);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        Real z(cos(M_PI * (i + 0.75) / (n + 0.5)));
        Real pp(1);
        Real last_step(-1);
        for (int it = 0; it < 80; ++it) {
            Real p1(1), p2(0);
            for (int j = 0; j < n; ++j) {
                Real p3 = p2;
                p2 = p1;
                p1 = ((two * Real(j) + one) * z * p2 - Real(j) * p3) / Real(j + 1);
            }
            pp = Real(n) * (z * p1 - p2) / (z * z - one);
            Real dz = p1 / pp;
            z -= dz;
            Real step = abs(dz);
            if (step == Real(0) || (it > 0 && step >= last_step)) break;
            last_step = step;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        Real wi = two / ((one - z * z) * pp * pp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
}

// A concatenated quadrature rule (composite panels).
template <class Real> struct PanelRule {
    std::vector<Real> x, w;
    int size() const { return static_cast<int>(x.size()); }
};

// Composite Gauss-Legendre rule with `order` points on each consecutive pair
// of breakpoints. Breakpoints are taken in double; panel images are formed in
// Real, which is all the affine map needs.
template <class Real>
PanelRule<Real> composite_gl(const std::vector<double>& breaks, int order) {
    if (breaks.size() < 2) throw InvalidArgument("composite rule needs at least two breakpoints");
    std::vector<Real> t, w;
    gauss_legendre<Real>(order, t, w);
    PanelRule<Real> rule;
    rule.x.reserve((breaks.size() - 1) * order);
    rule.w.reserve((breaks.size() - 1) * order);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        if (!(breaks[p + 1] > breaks[p])) throw InvalidArgument("breakpoints must increase");
        Real c = (Real(breaks[p + 1]) + Real(breaks[p])) / Real(2);
        Real h = (Real(breaks[p + 1]) - Real(breaks[p])) / Real(2);
        for (int i = 0; i < order; ++i) {
            rule.x.push_back(c + h * t[i]);
            rule.w.push_back(h * w[i]);
        }
    }
    return rule;
}

inline std::vector<double> uniform_breaks(double lo, double hi, int panels) {
    if (panels < 1 || !(hi > lo)) throw InvalidArgument("bad uniform panel request");
    std::vector<double> b(panels + 1);
    for (int i = 0; i <= panels; ++i) b[i] = lo + (hi - lo) * double(i) / panels;
    b.back() = hi;
    return b;
}

} // namespace speclab
