// speclab: public face of the Mellin-side structure functions.
// MIT license; see LICENSE at the repository root.
#include "speclab/structure.hpp"

#include <cmath>
#include <string>
#include <utility>
#include <variant>

#include "speclab/detail/kernel_impl.hpp"
#include "speclab/detail/mellin_engine.hpp"
#include "speclab/detail/phi_impl.hpp"
#include "speclab/detail/tier_gamma.hpp"

namespace speclab {

namespace {

constexpr double k_re_span = 6.0;          // admitted |Re s - 1/2|
constexpr double k_im_margin = 3.0;        // admitted |Im s| beyond e_cap
constexpr double k_pole_collision = 1e-6;  // cal_A / cal_B blow-up radius

template <class T> const T& deref(const std::shared_ptr<const T>& p) {
    if (!p) throw InvalidArgument("empty StructureEvaluator");
    return *p;
}

std::string fmt_cd(cd s) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", s.real(), s.imag());
    return buf;
}

void check_s(cd s, double e_cap) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw InvalidArgument("s must be finite, got " + fmt_cd(s));
    if (std::abs(s.real() - 0.5) > k_re_span)
        throw InvalidArgument("s = " + fmt_cd(s) + " outside the supported band |Re s - 1/2| <= " +
                              std::to_string(k_re_span));
    if (std::abs(s.imag()) > e_cap + k_im_margin)
        throw InvalidArgument("|Im s| = " + std::to_string(std::abs(s.imag())) +
                              " exceeds e_cap + 3 = " + std::to_string(e_cap + k_im_margin) +
                              "; rebuild the evaluator with a larger e_cap");
}

// Points where both terms of the cal_A / cal_B combinations are singular.
// The analytic cancellation is not resolvable at working precision, so
// evaluation this close is refused outright.
void check_collision(cd s) {
    static constexpr double pts[] = {1.0, 3.0, 5.0, 0.0, -2.0, -4.0};
    for (double p : pts) {
        if (std::abs(s - cd(p, 0.0)) < k_pole_collision)
            throw PoleError("cal_A / cal_B combination is singular at s = " + fmt_cd(s) +
                            " (within 1e-6 of " + std::to_string(int(p)) + ")");
    }
}

// E_hat / F_hat divide by gamma_factor(s), which has poles of its own at the
// non-positive even integers.
void check_gamma_pole(cd s) {
    if (std::abs(s.imag()) > 1e-13) return;
    const double half = 0.5 * s.real();
    const double r = std::round(half);
    if (r <= 0.0 && std::abs(half - r) <= 1e-13)
        throw PoleError("gamma factor pole at s = " + fmt_cd(s));
}

} // namespace

struct StructureEvaluator::Impl {
    Tier tier = Tier::f64;
    double e_cap = 0.0;
    PhiSolution plus, minus; // public views over the same engines
    std::variant<std::shared_ptr<const detail::MellinEngine<double>>,
                 std::shared_ptr<const detail::MellinEngine<f128>>,
                 std::shared_ptr<const detail::MellinEngine<bf50>>,
                 std::shared_ptr<const detail::MellinEngine<bf100>>>
        eng;
};

StructureEvaluator::StructureEvaluator(double a, int n, double e_cap)
    : StructureEvaluator(build_discretization(a, n), e_cap) {}

StructureEvaluator::StructureEvaluator(const KernelOperator& op, double e_cap) {
    if (!std::isfinite(e_cap) || !(e_cap >= 0.0) || e_cap > 4000.0)
        throw InvalidArgument("e_cap must lie in [0, 4000], got " + std::to_string(e_cap));
    auto impl = std::make_shared<Impl>();
    impl->tier = op.tier();
    impl->e_cap = e_cap;
    const auto& kimpl = detail::KernelAccess::impl(op);
    std::visit(
        [&](const auto& keng) {
            using Real = typename std::decay_t<decltype(*keng)>::real_type;
            auto plus = std::make_shared<const detail::PhiEngine<Real>>(keng, Sign::plus);
            auto minus = std::make_shared<const detail::PhiEngine<Real>>(keng, Sign::minus);
            impl->plus = detail::wrap_phi_engine<Real>(plus);
            impl->minus = detail::wrap_phi_engine<Real>(minus);
            impl->eng = std::make_shared<const detail::MellinEngine<Real>>(
                std::move(plus), std::move(minus), e_cap + 6.0);
        },
        kimpl.eng);
    impl_ = std::move(impl);
}

double StructureEvaluator::a() const { return deref(impl_).plus.a(); }
int StructureEvaluator::n() const { return deref(impl_).plus.n(); }
Tier StructureEvaluator::tier() const { return deref(impl_).tier; }
double StructureEvaluator::e_cap() const { return deref(impl_).e_cap; }
const PhiSolution& StructureEvaluator::phi_plus() const { return deref(impl_).plus; }
const PhiSolution& StructureEvaluator::phi_minus() const { return deref(impl_).minus; }

cd StructureEvaluator::j_hat(cd s) const {
    const auto& d = deref(impl_);
    check_s(s, d.e_cap);
    return std::visit(
        [&](const auto& eng) {
            using Real = typename std::decay_t<decltype(*eng)>::real_type;
            return to_cd(eng->j_hat(to_tier_complex<Real>(s)));
        },
        d.eng);
}

cd StructureEvaluator::k_hat(cd s) const {
    const auto& d = deref(impl_);
    check_s(s, d.e_cap);
    return std::visit(
        [&](const auto& eng) {
            using Real = typename std::decay_t<decltype(*eng)>::real_type;
            return to_cd(eng->k_hat(to_tier_complex<Real>(s)));
        },
        d.eng);
}

// The gamma-weighted combinations cancel down from exp(c)-sized terms, so the
// weights are formed at the tier scalar and the sum is narrowed only at the
// end. Assembling from the narrowed transforms instead caps the result at
// ~1e-16 times the term size, which is already fatal at a = 1.3.
cd StructureEvaluator::cal_A(cd s) const {
    const auto& d = deref(impl_);
    check_s(s, d.e_cap);
    check_collision(s);
    return std::visit(
        [&](const auto& eng) {
            using Real = typename std::decay_t<decltype(*eng)>::real_type;
            using C = complex_of_t<Real>;
            const C zs = to_tier_complex<Real>(s);
            const C zr = C(Real(1), Real(0)) - zs;
            const C v = detail::tier_gamma_factor<Real>(zs) * eng->j_hat(zs) +
                        detail::tier_gamma_factor<Real>(zr) * eng->j_hat(zr);
            return to_cd(v * Real(0.5));
        },
        d.eng);
}

cd StructureEvaluator::cal_B(cd s) const {
    const auto& d = deref(impl_);
    check_s(s, d.e_cap);
    check_collision(s);
    return std::visit(
        [&](const auto& eng) {
            using Real = typename std::decay_t<decltype(*eng)>::real_type;
            using C = complex_of_t<Real>;
            const C zs = to_tier_complex<Real>(s);
            const C zr = C(Real(1), Real(0)) - zs;
            const C v = detail::tier_gamma_factor<Real>(zs) * eng->k_hat(zs) -
                        detail::tier_gamma_factor<Real>(zr) * eng->k_hat(zr);
            return to_cd(v * Real(0.5));
        },
        d.eng);
}

// (cal_A -+ i cal_B) / gamma_factor(s) = ((j -+ i k) + r (j' +- i k')) / 2
// with r = gamma_factor(1-s) / gamma_factor(s) and primes at 1-s.
cd StructureEvaluator::E_hat(cd s) const {
    const auto& d = deref(impl_);
    check_s(s, d.e_cap);
    check_collision(s);
    check_gamma_pole(s);
    return std::visit(
        [&](const auto& eng) {
            using Real = typename std::decay_t<decltype(*eng)>::real_type;
            using C = complex_of_t<Real>;
            const C i(Real(0), Real(1));
            const C zs = to_tier_complex<Real>(s);
            const C zr = C(Real(1), Real(0)) - zs;
            const C r = detail::tier_gamma_factor<Real>(zr) / detail::tier_gamma_factor<Real>(zs);
            const C v = (eng->j_hat(zs) - i * eng->k_hat(zs)) +
                        r * (eng->j_hat(zr) + i * eng->k_hat(zr));
            return to_cd(v * Real(0.5));
        },
        d.eng);
}

cd StructureEvaluator::F_hat(cd s) const {
    const auto& d = deref(impl_);
    check_s(s, d.e_cap);
    check_collision(s);
    check_gamma_pole(s);
    return std::visit(
        [&](const auto& eng) {
            using Real = typename std::decay_t<decltype(*eng)>::real_type;
            using C = complex_of_t<Real>;
            const C i(Real(0), Real(1));
            const C zs = to_tier_complex<Real>(s);
            const C zr = C(Real(1), Real(0)) - zs;
            const C r = detail::tier_gamma_factor<Real>(zr) / detail::tier_gamma_factor<Real>(zs);
            const C v = (eng->j_hat(zs) + i * eng->k_hat(zs)) +
                        r * (eng->j_hat(zr) - i * eng->k_hat(zr));
            return to_cd(v * Real(0.5));
        },
        d.eng);
}

cd StructureEvaluator::evaluator_inner(cd z, cd w) const {
    auto direct = [&](cd zz, cd ww) {
        return (E_hat(zz) * E_hat(ww) - F_hat(zz) * F_hat(ww)) / (zz + ww - 1.0);
    };
    if (std::abs(z + w - 1.0) >= 1e-6) return direct(z, w);
    // Removable point: the symmetric average over z +- h converges to the
    // limit with an h^2 error; one Richardson step removes that term.
    auto probe = [&](double h) { return (direct(z + h, w) + direct(z - h, w)) / 2.0; };
    const cd c1 = probe(1e-3);
    const cd c2 = probe(5e-4);
    return (4.0 * c2 - c1) / 3.0;
}

double StructureEvaluator::evaluator_norm_critical(double E) const {
    if (!std::isfinite(E)) throw InvalidArgument("E must be finite");
    auto a_of = [&](double e) { return cal_A(cd(0.5, e)).real(); };
    auto b_of = [&](double e) { return cal_B(cd(0.5, e)).real(); };
    const double h1 = 1e-4 * (1.0 + std::abs(E));
    const double h2 = h1 / 2.0;
    const double da1 = (a_of(E + h1) - a_of(E - h1)) / (2.0 * h1);
    const double da2 = (a_of(E + h2) - a_of(E - h2)) / (2.0 * h2);
    const double db1 = (b_of(E + h1) - b_of(E - h1)) / (2.0 * h1);
    const double db2 = (b_of(E + h2) - b_of(E - h2)) / (2.0 * h2);
    const double da = (4.0 * da2 - da1) / 3.0;
    const double db = (4.0 * db2 - db1) / 3.0;
    const double norm = -2.0 * a_of(E) * db + 2.0 * b_of(E) * da;
    if (!std::isfinite(norm))
        throw ConvergenceError("derivative steps for the evaluator norm collapsed at E = " +
                               std::to_string(E));
    return norm;
}

cd StructureEvaluator::wronskian_pair(cd s) const {
    const auto& d = deref(impl_);
    check_s(s, d.e_cap);
    return std::visit(
        [&](const auto& eng) {
            using Real = typename std::decay_t<decltype(*eng)>::real_type;
            return to_cd(eng->wronskian_pair(to_tier_complex<Real>(s)));
        },
        d.eng);
}

cd StructureEvaluator::E_hat_tail(cd s, double tol) const {
    const auto& d = deref(impl_);
    check_s(s, d.e_cap);
    if (!(s.real() > 0.0))
        throw InvalidArgument("tail route needs Re s > 0, got s = " + fmt_cd(s));
    if (!std::isfinite(tol) || !(tol > 0.0))
        throw InvalidArgument("tolerance must be positive, got " + std::to_string(tol));
    return std::visit(
        [&](const auto& eng) {
            using Real = typename std::decay_t<decltype(*eng)>::real_type;
            return to_cd(eng->e_hat_tail(to_tier_complex<Real>(s), tol));
        },
        d.eng);
}

namespace {
double cap_for(double im) { return std::max(40.0, std::abs(im) + 8.0); }
} // namespace

cd j_hat(double a, cd s, int n) { return StructureEvaluator(a, n, cap_for(s.imag())).j_hat(s); }
cd k_hat(double a, cd s, int n) { return StructureEvaluator(a, n, cap_for(s.imag())).k_hat(s); }
cd cal_A(double a, cd s, int n) { return StructureEvaluator(a, n, cap_for(s.imag())).cal_A(s); }
cd cal_B(double a, cd s, int n) { return StructureEvaluator(a, n, cap_for(s.imag())).cal_B(s); }
cd E_hat(double a, cd s, int n) { return StructureEvaluator(a, n, cap_for(s.imag())).E_hat(s); }
cd wronskian_pair(double a, cd s, int n) {
    return StructureEvaluator(a, n, cap_for(s.imag())).wronskian_pair(s);
}

cd evaluator_inner(double a, cd z, cd w, int n) {
    const double im = std::max(std::abs(z.imag()), std::abs(w.imag()));
    return StructureEvaluator(a, n, cap_for(im)).evaluator_inner(z, w);
}

double evaluator_norm_critical(double a, double E, int n) {
    return StructureEvaluator(a, n, cap_for(E)).evaluator_norm_critical(E);
}

} // namespace speclab
