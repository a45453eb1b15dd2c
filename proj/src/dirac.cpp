// speclab: Runge-Kutta integration of the two-component system and the
// Wronskian identities tying trajectories back to the transform picture.
// MIT license; see LICENSE at the repository root.
#include "speclab/dirac.hpp"

#include <cmath>
#include <utility>

#include "speclab/errors.hpp"
#include "speclab/special_functions.hpp"

namespace speclab {

namespace {

double vmax(const TwoVector& y) { return std::max(std::abs(y.alpha), std::abs(y.beta)); }

bool finite(const cd& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

TwoVector add(const TwoVector& a, double c, const TwoVector& b) {
    return {a.alpha + c * b.alpha, a.beta + c * b.beta};
}

struct System {
    cd E;
    const PotentialTable* table;
    bool zero;

    TwoVector operator()(double u, const TwoVector& y) const {
        const double m = zero ? 0.0 : table->mu_at(u);
        return {-m * y.alpha - E * y.beta, m * y.beta + E * y.alpha};
    }
};

TwoVector rk4(const System& f, double u, double h, const TwoVector& y) {
    const TwoVector k1 = f(u, y);
    const TwoVector k2 = f(u + 0.5 * h, add(y, 0.5 * h, k1));
    const TwoVector k3 = f(u + 0.5 * h, add(y, 0.5 * h, k2));
    const TwoVector k4 = f(u + h, add(y, h, k3));
    const TwoVector sum{k1.alpha + 2.0 * (k2.alpha + k3.alpha) + k4.alpha,
                        k1.beta + 2.0 * (k2.beta + k3.beta) + k4.beta};
    return add(y, h / 6.0, sum);
}

double cap_for(double im) { return std::max(40.0, std::abs(im) + 8.0); }

// E such that the propagated pair solves the system at parameter s: the
// critical line s = 1/2 + iE maps to real E.
cd system_E(cd s) { return cd(s.imag(), 0.5 - s.real()); }

} // namespace

struct Trajectory::Impl {
    cd E;
    std::vector<double> u;
    std::vector<TwoVector> values;
    std::string boundary;
    IntegratorSettings settings;
    double max_err = 0.0;
};

namespace {

template <class T> const T& deref(const std::shared_ptr<const T>& p) {
    if (!p) throw InvalidArgument("empty Trajectory");
    return *p;
}

} // namespace

cd Trajectory::E() const { return deref(impl_).E; }
const std::vector<double>& Trajectory::u() const { return deref(impl_).u; }
const std::vector<TwoVector>& Trajectory::values() const { return deref(impl_).values; }
const TwoVector& Trajectory::front() const { return deref(impl_).values.front(); }
const TwoVector& Trajectory::back() const { return deref(impl_).values.back(); }
const std::string& Trajectory::boundary() const { return deref(impl_).boundary; }
const IntegratorSettings& Trajectory::settings() const { return deref(impl_).settings; }
double Trajectory::max_local_error() const { return deref(impl_).max_err; }

Trajectory integrate(double u0, double u1, cd E, TwoVector init, const PotentialTable& table,
                     IntegratorSettings st, std::string boundary) {
    if (!table.valid()) throw InvalidArgument("integrate needs a built potential table");
    if (!std::isfinite(u0) || !std::isfinite(u1) || u0 == u1)
        throw InvalidArgument("integration range must be finite with u0 != u1");
    if (!finite(E)) throw InvalidArgument("system parameter E must be finite");
    if (!finite(init.alpha) || !finite(init.beta))
        throw InvalidArgument("initial vector must be finite");
    if (!std::isfinite(st.base_step) || !(st.base_step > 0.0))
        throw InvalidArgument("base step must be positive");
    if (!(st.tol > 0.0)) throw InvalidArgument("local tolerance must be positive");
    if (!table.zero()) {
        const double lo = std::min(u0, u1), hi = std::max(u0, u1);
        if (lo < table.u_min() || hi > table.u_max())
            throw RangeError("integration range [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "] leaves the table [" +
                             std::to_string(table.u_min()) + ", " +
                             std::to_string(table.u_max()) + "]");
    }

    const System f{E, &table, table.zero()};
    const long long N = std::max(1ll, llround(std::abs(u1 - u0) / st.base_step));
    const double h = (u1 - u0) / double(N);

    auto impl = std::make_shared<Trajectory::Impl>();
    impl->E = E;
    impl->boundary = std::move(boundary);
    impl->settings = st;
    impl->u.reserve(std::size_t(N) + 1);
    impl->values.reserve(std::size_t(N) + 1);
    impl->u.push_back(u0);
    impl->values.push_back(init);

    TwoVector y = init;
    long long m = 1;
    for (long long k = 0; k < N; ++k) {
        const double ta = u0 + double(k) * h;
        const double tb = (k + 1 == N) ? u1 : u0 + double(k + 1) * h;
        for (;;) {
            const double hs = (tb - ta) / double(m);
            TwoVector yt = y;
            double bad = 0.0;
            for (long long j = 0; j < m; ++j) {
                const double us = ta + double(j) * hs;
                const TwoVector whole = rk4(f, us, hs, yt);
                const TwoVector half =
                    rk4(f, us + 0.5 * hs, 0.5 * hs, rk4(f, us, 0.5 * hs, yt));
                const double err = std::max(std::abs(whole.alpha - half.alpha),
                                            std::abs(whole.beta - half.beta)) /
                                   15.0;
                yt = half; // keep the half-step value: global order stays 4
                bad = std::max(bad, err / std::max(1.0, vmax(half)));
                if (bad > st.tol) break;
            }
            if (bad <= st.tol) {
                y = yt;
                impl->max_err = std::max(impl->max_err, bad);
                if (m > 1) m /= 2;
                break;
            }
            m *= 2;
            if (m > (1ll << 20))
                throw ConvergenceError("sub-step count underflowed the error target near u = " +
                                       std::to_string(ta));
        }
        impl->u.push_back(tb);
        impl->values.push_back(y);
    }

    Trajectory t;
    t.impl_ = std::move(impl);
    return t;
}

std::pair<Trajectory, Trajectory> canonical_psi_phi(double u0, double u1, cd E,
                                                    const PotentialTable& table,
                                                    IntegratorSettings st) {
    return {integrate(u0, u1, E, TwoVector{cd(1.0, 0.0), cd(0.0, 0.0)}, table, st, "psi"),
            integrate(u0, u1, E, TwoVector{cd(0.0, 0.0), cd(1.0, 0.0)}, table, st, "phi")};
}

Trajectory ab_trajectory(const StructureEvaluator& ev, double a1, cd s,
                         const PotentialTable& table, IntegratorSettings st) {
    if (!std::isfinite(a1) || !(a1 > 0.0))
        throw InvalidArgument("target interval length must be positive");
    return integrate(std::log(ev.a()), std::log(a1), system_E(s),
                     TwoVector{ev.cal_A(s), ev.cal_B(s)}, table, st, "ab");
}

Trajectory ab_trajectory(double a0, double a1, cd s, const PotentialTable& table,
                         IntegratorSettings st, int n) {
    return ab_trajectory(StructureEvaluator(a0, n, cap_for(s.imag())), a1, s, table, st);
}

Trajectory jk_trajectory(const StructureEvaluator& ev, double a1, cd s,
                         const PotentialTable& table, IntegratorSettings st) {
    if (!std::isfinite(a1) || !(a1 > 0.0))
        throw InvalidArgument("target interval length must be positive");
    return integrate(std::log(ev.a()), std::log(a1), system_E(s),
                     TwoVector{ev.j_hat(s), ev.k_hat(s)}, table, st, "jk");
}

Trajectory jk_trajectory(double a0, double a1, cd s, const PotentialTable& table,
                         IntegratorSettings st, int n) {
    return jk_trajectory(StructureEvaluator(a0, n, cap_for(s.imag())), a1, s, table, st);
}

cd wronskian_AJ(const StructureEvaluator& ev, cd s) {
    const cd one_minus(1.0 - s.real(), -s.imag());
    return gamma_factor(one_minus) * ev.wronskian_pair(s);
}

cd wronskian_AJ(double a, cd s, int n) {
    return wronskian_AJ(StructureEvaluator(a, n, cap_for(s.imag())), s);
}

double w1_identity(const StructureEvaluator& ev, double E) {
    return ev.wronskian_pair(cd(0.5, E)).imag();
}

double w1_identity(double a, double E, int n) {
    return w1_identity(StructureEvaluator(a, n, cap_for(E)), E);
}

double trajectory_residual(const Trajectory& t, const PotentialTable& table) {
    if (!t.valid()) throw InvalidArgument("residual of an empty trajectory");
    if (!table.valid()) throw InvalidArgument("residual needs a built potential table");
    const auto& u = t.u();
    const auto& v = t.values();
    if (u.size() < 3) throw InvalidArgument("residual needs at least three grid points");
    const System f{t.E(), &table, table.zero()};
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < u.size(); ++i) {
        const double den = u[i + 1] - u[i - 1];
        const cd da = (v[i + 1].alpha - v[i - 1].alpha) / den;
        const cd db = (v[i + 1].beta - v[i - 1].beta) / den;
        const TwoVector r = f(u[i], v[i]);
        const double res = std::max(std::abs(da - r.alpha), std::abs(db - r.beta)) /
                           std::max(1.0, vmax(v[i]));
        worst = std::max(worst, res);
    }
    return worst;
}

} // namespace speclab
