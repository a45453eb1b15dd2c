// speclab: spectral analysis of the split system. See spectral.hpp for the
// contract; this file owns the zero scan, the norm routes, the Weyl
// coefficients, and the matched full-line solutions.
// MIT license; see LICENSE at the repository root.
#include "speclab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "speclab/errors.hpp"
#include "speclab/special_functions.hpp"

namespace speclab {

namespace {

std::string fmt_e(double E) {
    std::ostringstream os;
    os.precision(12);
    os << E;
    return os.str();
}

// Real part of cal_A on the critical line; the imaginary part is zero up to
// roundoff and carries no sign information for the scan.
double a_line(const StructureEvaluator& ev, double E) {
    return ev.cal_A(cd(0.5, E)).real();
}

double b_line(const StructureEvaluator& ev, double E) {
    return ev.cal_B(cd(0.5, E)).real();
}

// Scan step: 0.05 out to |E| = 20, then shrinking like 1/log(|E| a0^2 + e)
// so the node spacing keeps pace with the logarithmic zero density.
double scan_step(double E, double a0) {
    const double e1 = std::exp(1.0);
    const double mag = std::abs(E);
    if (mag <= 20.0) return 0.05;
    const double c = 0.05 * std::log(20.0 * a0 * a0 + e1);
    return c / std::log(mag * a0 * a0 + e1);
}

// Bisection of a sign-change bracket down to width 1e-9. The endpoints may
// arrive in either order.
double bisect(const StructureEvaluator& ev, double lo, double hi, double g_lo) {
    while (std::abs(hi - lo) >= 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double gm = a_line(ev, mid);
        if (gm == 0.0) return mid;
        if (std::signbit(gm) == std::signbit(g_lo)) {
            lo = mid;
            g_lo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// d(cal_A)/dE on the critical line by a five-point stencil. Deliberately a
// different scheme from the Richardson pair inside evaluator_norm_critical,
// so the norm comparison between the two stays a two-route check.
double d_a_line(const StructureEvaluator& ev, double E) {
    const double h = 5e-4 * (1.0 + std::abs(E));
    return (a_line(ev, E - 2.0 * h) - 8.0 * a_line(ev, E - h) + 8.0 * a_line(ev, E + h) -
            a_line(ev, E + 2.0 * h)) /
           (12.0 * h);
}

} // namespace

BoundStateSpectrum find_bound_states(const StructureEvaluator& ev, double E_max) {
    if (!ev.valid()) throw InvalidArgument("empty StructureEvaluator");
    if (!std::isfinite(E_max) || E_max <= 0.0) throw InvalidArgument("E_max must be positive");
    if (E_max > ev.e_cap() + 2.0)
        throw InvalidArgument("scan window exceeds the evaluator's calibrated band; "
                              "construct it with e_cap >= E_max");

    const double a0 = ev.a();

    // Node ladder on [0, E_max]; the negative half reuses the magnitudes so
    // the two scans sample mirror-image points exactly.
    std::vector<double> nodes{0.0};
    while (nodes.back() < E_max) {
        const double next = nodes.back() + scan_step(nodes.back(), a0);
        nodes.push_back(std::min(next, E_max));
    }

    struct Hit {
        double E;
        std::pair<double, double> bracket;
    };
    std::vector<Hit> hits;

    const double g0 = a_line(ev, 0.0);
    if (g0 == 0.0) hits.push_back({0.0, {0.0, 0.0}});

    for (int sign : {+1, -1}) {
        double prev = 0.0;
        double g_prev = g0;
        for (std::size_t k = 1; k < nodes.size(); ++k) {
            const double cur = sign * nodes[k];
            const double g_cur = a_line(ev, cur);
            if (g_cur == 0.0) {
                hits.push_back({cur, {cur, cur}});
            } else if (g_prev != 0.0 && std::signbit(g_cur) != std::signbit(g_prev)) {
                const double zero = bisect(ev, prev, cur, g_prev);
                hits.push_back({zero, {std::min(prev, cur), std::max(prev, cur)}});
            }
            prev = cur;
            g_prev = g_cur;
        }
    }

    std::sort(hits.begin(), hits.end(), [](const Hit& x, const Hit& y) { return x.E < y.E; });

    BoundStateSpectrum out;
    out.a0 = a0;
    out.e_max = E_max;
    for (const Hit& h : hits) {
        const double b = b_line(ev, h.E);
        if (!std::isfinite(b) || b == 0.0)
            throw CrossCheckError("zero of cal_A at E = " + fmt_e(h.E) +
                                  " fails the simplicity check: cal_B vanishes there");
        out.eigenvalues.push_back(h.E);
        out.norms.push_back(bound_state_norm(ev, h.E));
        out.brackets.push_back(h.bracket);
    }
    for (std::size_t k = 1; k < out.eigenvalues.size(); ++k) {
        const double gap = out.eigenvalues[k] - out.eigenvalues[k - 1];
        const double step = scan_step(std::max(std::abs(out.eigenvalues[k - 1]),
                                               std::abs(out.eigenvalues[k])),
                                      a0);
        if (gap < 2.0 * step)
            out.warnings.push_back("zeros at E = " + fmt_e(out.eigenvalues[k - 1]) + " and E = " +
                                   fmt_e(out.eigenvalues[k]) +
                                   " sit closer than twice the scan step; tighten the grid");
    }
    return out;
}

BoundStateSpectrum find_bound_states(double a0, double E_max, int n) {
    if (!std::isfinite(E_max) || E_max <= 0.0) throw InvalidArgument("E_max must be positive");
    return find_bound_states(StructureEvaluator(a0, n, std::max(E_max, 20.0)), E_max);
}

double bound_state_norm(const StructureEvaluator& ev, double En) {
    if (!ev.valid()) throw InvalidArgument("empty StructureEvaluator");
    if (!std::isfinite(En)) throw InvalidArgument("En must be finite");
    const double da = d_a_line(ev, En);
    const double residual = std::abs(a_line(ev, En));
    if (!(residual <= 1e-6 * (1.0 + std::abs(En)) * std::abs(da)))
        throw InvalidArgument("E = " + fmt_e(En) + " is not a zero of cal_A to working accuracy");
    const double norm = 2.0 * da * b_line(ev, En);
    if (!(norm > 0.0))
        throw CrossCheckError("state norm at E = " + fmt_e(En) +
                              " is not positive; the zero is suspect");
    return norm;
}

double bound_state_norm(double a0, double En, int n) {
    if (!std::isfinite(En)) throw InvalidArgument("En must be finite");
    return bound_state_norm(StructureEvaluator(a0, n, std::abs(En) + 5.0), En);
}

double bound_state_norm_integral(const StructureEvaluator& ev, double En,
                                 const PotentialTable& table, IntegratorSettings st) {
    if (!ev.valid()) throw InvalidArgument("empty StructureEvaluator");
    if (!std::isfinite(En)) throw InvalidArgument("En must be finite");
    if (!table.valid() || table.zero())
        throw InvalidArgument("the norm window needs a bounded potential table");
    const double u0 = std::log(ev.a());
    if (!(table.u_min() <= u0 && u0 < table.u_max()))
        throw RangeError("log(a0) must lie inside the table to open a norm window");

    const cd s(0.5, En);
    const TwoVector seed{2.0 * ev.cal_A(s), 2.0 * ev.cal_B(s)};
    const Trajectory t =
        integrate(u0, table.u_max(), cd(En, 0.0), seed, table, st, "norm-window");

    const auto& u = t.u();
    const auto& y = t.values();
    const double h = u.size() > 1 ? u[1] - u[0] : 0.0;
    std::vector<double> cum(u.size(), 0.0);
    for (std::size_t k = 1; k < u.size(); ++k) {
        const double f0 = 0.5 * (std::norm(y[k - 1].alpha) + std::norm(y[k - 1].beta));
        const double f1 = 0.5 * (std::norm(y[k].alpha) + std::norm(y[k].beta));
        cum[k] = cum[k - 1] + 0.5 * h * (f0 + f1);
    }

    // Slabs of width 0.1 in u; accept the window once the newest slab adds
    // less than 1e-4 of the running total.
    const std::size_t per = h > 0.0 ? static_cast<std::size_t>(std::lround(0.1 / h)) : 0;
    if (per == 0) throw InvalidArgument("base_step too coarse for the norm window");
    for (std::size_t j = 2; j * per < u.size(); ++j) {
        const double total = cum[j * per];
        const double slab = total - cum[(j - 1) * per];
        if (total > 0.0 && slab < 1e-4 * total) return total;
    }
    throw ConvergenceError("the table ended before the norm window tail settled at E = " +
                           fmt_e(En));
}

cd m_bound(const StructureEvaluator& ev, cd E) {
    if (!ev.valid()) throw InvalidArgument("empty StructureEvaluator");
    const cd s(0.5 - E.imag(), E.real());
    const cd a = ev.cal_A(s);
    if (a == cd(0.0, 0.0)) throw PoleError("m-function pole at E = " + fmt_e(E.real()));
    const cd m = -ev.cal_B(s) / a;
    if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
        throw PoleError("m-function pole at E near " + fmt_e(E.real()));
    return m;
}

cd m_bound(double a0, cd E, int n) {
    return m_bound(StructureEvaluator(a0, n, std::abs(E) + 5.0), E);
}

cd m_scattering(const StructureEvaluator& ev, cd E) {
    if (!ev.valid()) throw InvalidArgument("empty StructureEvaluator");
    const cd s(0.5 - E.imag(), E.real());
    const cd k = ev.k_hat(s);
    if (k == cd(0.0, 0.0)) throw PoleError("k_hat vanished at E = " + fmt_e(E.real()));
    const cd m = -ev.j_hat(s) / k;
    if (!std::isfinite(m.real()) || !std::isfinite(m.imag()))
        throw PoleError("scattering m-function overflow at E near " + fmt_e(E.real()));
    return m;
}

cd m_scattering(double a0, cd E, int n) {
    return m_scattering(StructureEvaluator(a0, n, std::abs(E) + 5.0), E);
}

ScatteringMeasure scattering_measure(const StructureEvaluator& ev, std::vector<double> E_grid) {
    if (!ev.valid()) throw InvalidArgument("empty StructureEvaluator");
    if (E_grid.empty()) throw InvalidArgument("empty E grid");
    ScatteringMeasure out;
    out.a0 = ev.a();
    out.density.reserve(E_grid.size());
    const double pi = 4.0 * std::atan(1.0);
    for (double E : E_grid) {
        if (!std::isfinite(E)) throw InvalidArgument("E grid must be finite");
        const double w = std::norm(ev.k_hat(cd(0.5, E)));
        const double d = 1.0 / (pi * w);
        if (!(d > 0.0) || !std::isfinite(d))
            throw CrossCheckError("scattering density failed positivity at E = " + fmt_e(E));
        out.density.push_back(d);
    }
    out.E_grid = std::move(E_grid);
    return out;
}

ScatteringMeasure scattering_measure(double a0, std::vector<double> E_grid, int n) {
    if (E_grid.empty()) throw InvalidArgument("empty E grid");
    double cap = 20.0;
    for (double E : E_grid) cap = std::max(cap, std::abs(E));
    return scattering_measure(StructureEvaluator(a0, n, cap), std::move(E_grid));
}

double MatchedEigensolution::delta0_pairing() const {
    return 0.5 * (coeff_left * left.front().alpha.real() +
                  coeff_right * right.front().alpha.real());
}

double MatchedEigensolution::delta1_pairing() const {
    return 0.5 *
           (coeff_left * left.front().beta.real() + coeff_right * right.front().beta.real());
}

MatchedEigensolution matched_eigensolution(double a0, double E, double coeff_left,
                                           double coeff_right, const PotentialTable& table,
                                           IntegratorSettings st) {
    if (!std::isfinite(a0) || a0 <= 0.0) throw InvalidArgument("a0 must be positive");
    if (!std::isfinite(E) || !std::isfinite(coeff_left) || !std::isfinite(coeff_right))
        throw InvalidArgument("matched eigensolution inputs must be finite");
    if (!table.valid() || table.zero())
        throw InvalidArgument("matched eigensolutions need a bounded potential table");
    const double u0 = std::log(a0);
    if (!(table.u_min() < u0 && u0 < table.u_max()))
        throw RangeError("log(a0) must be interior to the table");

    MatchedEigensolution out;
    out.E = E;
    out.coeff_left = coeff_left;
    out.coeff_right = coeff_right;
    out.left = integrate(u0, table.u_min(), cd(E, 0.0), TwoVector{cd(1.0, 0.0), cd(0.0, 0.0)},
                         table, st, "matched-left");
    out.right = integrate(u0, table.u_max(), cd(E, 0.0), TwoVector{cd(0.0, 0.0), cd(1.0, 0.0)},
                          table, st, "matched-right");
    return out;
}

CountingComparison counting_comparison(const BoundStateSpectrum& spectrum, double T) {
    if (!std::isfinite(T) || T <= 0.0) throw InvalidArgument("T must be positive");
    if (T > spectrum.e_max)
        throw InvalidArgument("T exceeds the scanned window of the spectrum");
    CountingComparison out;
    for (double E : spectrum.eigenvalues)
        if (E > 0.0 && E <= T) ++out.count;
    out.rvm_ratio = out.count / rvm_count(T);
    return out;
}

} // namespace speclab
