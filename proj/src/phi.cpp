// speclab: public face of the resolvent-equation solutions phi_a^{+-}.
// MIT license; see LICENSE at the repository root.
#include "speclab/phi.hpp"

#include "speclab/detail/kernel_impl.hpp"
#include "speclab/detail/phi_impl.hpp"

namespace speclab {

double PhiSolution::a() const {
    return detail::visit_phi(*this, [](const auto& e) { return e->ker->a_d; });
}

Sign PhiSolution::sign() const {
    return detail::visit_phi(*this, [](const auto& e) { return e->sign; });
}

int PhiSolution::n() const {
    return detail::visit_phi(*this, [](const auto& e) { return e->ker->n; });
}

Tier PhiSolution::tier() const { return detail::PhiAccess::impl(*this).tier; }

const std::vector<double>& PhiSolution::nodes_x() const {
    return detail::PhiAccess::impl(*this).nodes_d;
}

const std::vector<double>& PhiSolution::values() const {
    return detail::PhiAccess::impl(*this).values_d;
}

double PhiSolution::operator()(double x) const {
    return detail::visit_phi(*this, [&](const auto& e) {
        using Real = typename std::decay_t<decltype(*e)>::real_type;
        return to_double(e->eval(Real(x)));
    });
}

double PhiSolution::deriv(double x) const {
    return detail::visit_phi(*this, [&](const auto& e) {
        using Real = typename std::decay_t<decltype(*e)>::real_type;
        return to_double(e->deriv(Real(x)));
    });
}

double PhiSolution::at_endpoint() const {
    return detail::visit_phi(*this, [](const auto& e) { return to_double(e->eval(e->ker->a)); });
}

double PhiSolution::residual_inf() const {
    return detail::visit_phi(*this, [](const auto& e) { return e->residual_inf(); });
}

PhiSolution solve_phi(const KernelOperator& ker, Sign sign) {
    const auto& kimpl = detail::KernelAccess::impl(ker);
    return std::visit(
        [&](const auto& eng) {
            using Real = typename std::decay_t<decltype(*eng)>::real_type;
            auto phi = std::make_shared<const detail::PhiEngine<Real>>(eng, sign);
            return detail::wrap_phi_engine<Real>(std::move(phi));
        },
        kimpl.eng);
}

PhiSolution solve_phi(double a, Sign sign, int n) {
    return solve_phi(build_discretization(a, n), sign);
}

} // namespace speclab
