// speclab: quadrature realization of the two isometric expansions. See
// expansion.hpp for the contract.
// MIT license; see LICENSE at the repository root.
#include "speclab/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "speclab/errors.hpp"
#include "speclab/special_functions.hpp"

namespace speclab {

namespace {

void require_increasing(const std::vector<double>& g, const char* what) {
    if (g.empty()) throw InvalidArgument(std::string(what) + " grid is empty");
    for (double v : g)
        if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " grid must be finite");
    for (std::size_t k = 1; k < g.size(); ++k)
        if (g[k] <= g[k - 1])
            throw InvalidArgument(std::string(what) + " grid must be strictly increasing");
}

// Trapezoid weights of an arbitrary increasing grid.
std::vector<double> trapezoid_weights(const std::vector<double>& g) {
    std::vector<double> w(g.size(), 0.0);
    for (std::size_t k = 1; k < g.size(); ++k) {
        const double h = 0.5 * (g[k] - g[k - 1]);
        w[k - 1] += h;
        w[k] += h;
    }
    return w;
}

// Value of a trajectory component at an off-grid u by a local cubic through
// the four nearest uniform nodes; exact at the nodes themselves.
double sample(const std::vector<double>& u, const std::vector<TwoVector>& y, bool first,
              double at) {
    const double h = u[1] - u[0];
    const double t = (at - u.front()) / h;
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(std::floor(t));
    i = std::clamp<std::ptrdiff_t>(i, 1, static_cast<std::ptrdiff_t>(u.size()) - 3);
    double out = 0.0;
    for (std::ptrdiff_t m = i - 1; m <= i + 2; ++m) {
        double lm = 1.0;
        for (std::ptrdiff_t r = i - 1; r <= i + 2; ++r)
            if (r != m) lm *= (t - r) / static_cast<double>(m - r);
        const TwoVector& v = y[static_cast<std::size_t>(m)];
        out += lm * (first ? v.alpha.real() : v.beta.real());
    }
    return out;
}

} // namespace

struct ExpansionBasis::Impl {
    std::vector<double> u;
    std::vector<double> E;
    std::vector<double> wu;      // trapezoid du
    std::vector<double> wE;      // trapezoid dE / (2 pi |gamma_factor|^2)
    std::vector<double> a, b;    // row-major [e * u.size() + j]
};

ExpansionBasis::ExpansionBasis(std::vector<double> u_grid, std::vector<double> E_grid,
                               const StructureEvaluator& anchor, const PotentialTable& table,
                               IntegratorSettings st) {
    require_increasing(u_grid, "u");
    require_increasing(E_grid, "E");
    if (!anchor.valid()) throw InvalidArgument("empty anchor StructureEvaluator");
    if (!table.valid()) throw InvalidArgument("empty PotentialTable");
    const double u_top = std::log(anchor.a());
    if (u_grid.back() > u_top + 1e-12)
        throw RangeError("u grid extends past the anchor endpoint");
    if (!table.zero() && (u_grid.front() < table.u_min() || u_top > table.u_max()))
        throw RangeError("expansion grid leaves the potential table");

    auto impl = std::make_shared<Impl>();
    impl->u = std::move(u_grid);
    impl->E = std::move(E_grid);
    impl->wu = trapezoid_weights(impl->u);
    impl->wE = trapezoid_weights(impl->E);

    const double two_pi = 8.0 * std::atan(1.0);
    const std::size_t nu = impl->u.size(), ne = impl->E.size();
    impl->a.assign(ne * nu, 0.0);
    impl->b.assign(ne * nu, 0.0);
    for (std::size_t e = 0; e < ne; ++e) {
        const double Ee = impl->E[e];
        impl->wE[e] /= two_pi * std::norm(gamma_factor(cd(0.5, Ee)));
        const cd s(0.5, Ee);
        const TwoVector seed{2.0 * anchor.cal_A(s), 2.0 * anchor.cal_B(s)};
        const Trajectory t =
            integrate(u_top, impl->u.front(), cd(Ee, 0.0), seed, table, st, "expansion-row");
        // the run went downward; flip to ascending for the sampler
        std::vector<double> uu(t.u().rbegin(), t.u().rend());
        std::vector<TwoVector> yy(t.values().rbegin(), t.values().rend());
        for (std::size_t j = 0; j < nu; ++j) {
            impl->a[e * nu + j] = sample(uu, yy, true, impl->u[j]);
            impl->b[e * nu + j] = sample(uu, yy, false, impl->u[j]);
        }
    }
    impl_ = std::move(impl);
}

namespace {
template <class P> const auto& impl_of(const P& p) {
    if (!p) throw InvalidArgument("empty ExpansionBasis");
    return *p;
}
} // namespace

const std::vector<double>& ExpansionBasis::u_grid() const { return impl_of(impl_).u; }
const std::vector<double>& ExpansionBasis::E_grid() const { return impl_of(impl_).E; }

double ExpansionBasis::pair_a(std::size_t e, std::size_t j) const {
    const auto& d = impl_of(impl_);
    if (e >= d.E.size() || j >= d.u.size()) throw InvalidArgument("basis index out of range");
    return d.a[e * d.u.size() + j];
}

double ExpansionBasis::pair_b(std::size_t e, std::size_t j) const {
    const auto& d = impl_of(impl_);
    if (e >= d.E.size() || j >= d.u.size()) throw InvalidArgument("basis index out of range");
    return d.b[e * d.u.size() + j];
}

UExpansion ExpansionBasis::forward(const std::vector<cd>& F) const {
    const auto& d = impl_of(impl_);
    if (F.size() != d.E.size()) throw InvalidArgument("F must be sampled on the E grid");
    const std::size_t nu = d.u.size();
    UExpansion out;
    out.u = d.u;
    out.alpha.assign(nu, cd(0.0, 0.0));
    out.beta.assign(nu, cd(0.0, 0.0));
    for (std::size_t e = 0; e < d.E.size(); ++e) {
        const cd c = d.wE[e] * F[e];
        for (std::size_t j = 0; j < nu; ++j) {
            out.alpha[j] += c * d.a[e * nu + j];
            out.beta[j] += c * d.b[e * nu + j];
        }
    }
    return out;
}

std::vector<cd> ExpansionBasis::inverse(const UExpansion& x) const {
    const auto& d = impl_of(impl_);
    if (x.u != d.u) throw InvalidArgument("u samples must live on the basis grid");
    if (x.alpha.size() != d.u.size() || x.beta.size() != d.u.size())
        throw InvalidArgument("component count must match the u grid");
    const std::size_t nu = d.u.size();
    std::vector<cd> F(d.E.size(), cd(0.0, 0.0));
    for (std::size_t e = 0; e < d.E.size(); ++e) {
        cd acc(0.0, 0.0);
        for (std::size_t j = 0; j < nu; ++j)
            acc += d.wu[j] * (x.alpha[j] * d.a[e * nu + j] + x.beta[j] * d.b[e * nu + j]);
        F[e] = 0.5 * acc;
    }
    return F;
}

double ExpansionBasis::e_norm(const std::vector<cd>& F) const {
    const auto& d = impl_of(impl_);
    if (F.size() != d.E.size()) throw InvalidArgument("F must be sampled on the E grid");
    double s = 0.0;
    for (std::size_t e = 0; e < d.E.size(); ++e) s += d.wE[e] * std::norm(F[e]);
    return s;
}

double ExpansionBasis::u_norm(const UExpansion& x) const {
    const auto& d = impl_of(impl_);
    if (x.alpha.size() != d.u.size() || x.beta.size() != d.u.size())
        throw InvalidArgument("component count must match the u grid");
    double s = 0.0;
    for (std::size_t j = 0; j < d.u.size(); ++j)
        s += 0.5 * d.wu[j] * (std::norm(x.alpha[j]) + std::norm(x.beta[j]));
    return s;
}

double ExpansionBasis::parseval_defect(const std::vector<cd>& F) const {
    const double en = e_norm(F);
    if (en <= 0.0) throw InvalidArgument("F vanishes on the grid");
    return std::abs(u_norm(forward(F)) - en) / en;
}

UExpansion isometric_forward(const ExpansionBasis& basis, const std::vector<cd>& F) {
    return basis.forward(F);
}

std::vector<cd> isometric_inverse(const ExpansionBasis& basis, const UExpansion& x) {
    return basis.inverse(x);
}

ScatteringTransform scattering_transform(const UExpansion& T, const StructureEvaluator& anchor,
                                         std::vector<double> E_grid,
                                         const PotentialTable& table, IntegratorSettings st) {
    require_increasing(T.u, "u");
    require_increasing(E_grid, "E");
    if (T.alpha.size() != T.u.size() || T.beta.size() != T.u.size())
        throw InvalidArgument("component count must match the u grid");
    if (!anchor.valid()) throw InvalidArgument("empty anchor StructureEvaluator");
    const double u0 = std::log(anchor.a());
    if (std::abs(T.u.back() - u0) > 1e-12)
        throw RangeError("the data grid must end at u0 = log(anchor.a())");
    if (!table.valid()) throw InvalidArgument("empty PotentialTable");
    if (!table.zero() && T.u.front() < table.u_min())
        throw RangeError("data grid leaves the potential table");

    const std::vector<double> wu = trapezoid_weights(T.u);
    ScatteringTransform out;
    out.a0 = anchor.a();
    out.values.reserve(E_grid.size());
    out.weight.reserve(E_grid.size());
    for (double Ee : E_grid) {
        const Trajectory psi = integrate(u0, T.u.front(), cd(Ee, 0.0),
                                         TwoVector{cd(1.0, 0.0), cd(0.0, 0.0)}, table, st,
                                         "left-state");
        std::vector<double> uu(psi.u().rbegin(), psi.u().rend());
        std::vector<TwoVector> yy(psi.values().rbegin(), psi.values().rend());
        cd acc(0.0, 0.0);
        for (std::size_t j = 0; j < T.u.size(); ++j)
            acc += wu[j] * (T.alpha[j] * sample(uu, yy, true, T.u[j]) +
                            T.beta[j] * sample(uu, yy, false, T.u[j]));
        out.values.push_back(acc);
        out.weight.push_back(1.0 / std::norm(anchor.k_hat(cd(0.5, Ee))));
    }
    out.E_grid = std::move(E_grid);
    return out;
}

double plancherel_defect(const UExpansion& T, const ScatteringTransform& tr) {
    if (T.alpha.size() != T.u.size() || T.beta.size() != T.u.size())
        throw InvalidArgument("component count must match the u grid");
    if (tr.values.size() != tr.E_grid.size() || tr.weight.size() != tr.E_grid.size())
        throw InvalidArgument("transform columns disagree");
    const std::vector<double> wu = trapezoid_weights(T.u);
    double lhs = 0.0;
    for (std::size_t j = 0; j < T.u.size(); ++j)
        lhs += 0.5 * wu[j] * (std::norm(T.alpha[j]) + std::norm(T.beta[j]));
    const std::vector<double> wE = trapezoid_weights(tr.E_grid);
    const double two_pi = 8.0 * std::atan(1.0);
    double rhs = 0.0;
    for (std::size_t e = 0; e < tr.E_grid.size(); ++e)
        rhs += wE[e] * std::norm(tr.values[e]) * tr.weight[e] / two_pi;
    if (lhs <= 0.0) throw InvalidArgument("data vanishes on the grid");
    return std::abs(lhs - rhs) / lhs;
}

} // namespace speclab
