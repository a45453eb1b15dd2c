// speclab: public face of the finite-cosine-kernel discretization.
// MIT license; see LICENSE at the repository root.
#include "speclab/kernel.hpp"

#include "speclab/detail/kernel_impl.hpp"

namespace speclab {

KernelOperator::KernelOperator(double a, int n) {
    const Tier t = tier_for_interval(a);
    const int n_eff = effective_nodes(a, n);
    auto impl = std::make_shared<Impl>();
    impl->tier = t;
    dispatch_tier(t, [&](auto tag) {
        using Real = typename decltype(tag)::real;
        impl->eng = std::make_shared<const detail::CosineEngine<Real>>(a, n_eff);
    });
    impl_ = std::move(impl);
}

double KernelOperator::a() const {
    return detail::visit_kernel(*this, [](const auto& e) { return e->a_d; });
}

int KernelOperator::n() const {
    return detail::visit_kernel(*this, [](const auto& e) { return e->n; });
}

Tier KernelOperator::tier() const { return detail::KernelAccess::impl(*this).tier; }

std::vector<double> KernelOperator::nodes() const {
    return detail::visit_kernel(*this, [](const auto& e) {
        std::vector<double> out(e->n);
        for (int i = 0; i < e->n; ++i) out[i] = to_double(e->t[i]);
        return out;
    });
}

std::vector<double> KernelOperator::weights() const {
    return detail::visit_kernel(*this, [](const auto& e) {
        std::vector<double> out(e->n);
        for (int i = 0; i < e->n; ++i) out[i] = to_double(e->w[i]);
        return out;
    });
}

std::vector<double> KernelOperator::matrix() const {
    return detail::visit_kernel(*this, [](const auto& e) {
        std::vector<double> out;
        out.reserve(std::size_t(e->n) * e->n);
        for (int i = 0; i < e->n; ++i)
            for (int j = 0; j < e->n; ++j) out.push_back(to_double(e->bsym(i, j)));
        return out;
    });
}

std::vector<double> KernelOperator::eigenvalues() const {
    return detail::visit_kernel(*this, [](const auto& e) {
        const auto& ev = e->eigenvalues();
        std::vector<double> out(ev.size());
        for (std::size_t i = 0; i < ev.size(); ++i) out[i] = to_double(ev[i]);
        return out;
    });
}

double KernelOperator::spectral_radius() const {
    return detail::visit_kernel(*this, [](const auto& e) { return to_double(e->spectral_radius()); });
}

double KernelOperator::log_det(Sign sign) const {
    return detail::visit_kernel(*this,
                                [&](const auto& e) { return to_double(e->log_det_eigen(sign)); });
}

double KernelOperator::log_det_lu(Sign sign) const {
    return detail::visit_kernel(*this,
                                [&](const auto& e) { return to_double(e->log_det_lu(sign)); });
}

KernelOperator build_discretization(double a, int n) { return KernelOperator(a, n); }

double log_det(double a, Sign sign, int n) { return KernelOperator(a, n).log_det(sign); }

} // namespace speclab
