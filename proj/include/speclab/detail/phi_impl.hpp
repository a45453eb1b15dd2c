// speclab: shared definition of PhiSolution's tier-erased innards.
// MIT license; see LICENSE at the repository root.
#pragma once

#include <variant>

#include "speclab/detail/phi_engine.hpp"
#include "speclab/phi.hpp"

namespace speclab {

struct PhiSolution::Impl {
    Tier tier;
    std::variant<std::shared_ptr<const detail::PhiEngine<double>>,
                 std::shared_ptr<const detail::PhiEngine<f128>>,
                 std::shared_ptr<const detail::PhiEngine<bf50>>,
                 std::shared_ptr<const detail::PhiEngine<bf100>>>
        eng;
    std::vector<double> nodes_d;  // scaled nodes, narrowed once
    std::vector<double> values_d; // phi at nodes, narrowed once
};

namespace detail {

struct PhiAccess {
    static const PhiSolution::Impl& impl(const PhiSolution& p) {
        if (!p.impl_) throw InvalidArgument("empty PhiSolution");
        return *p.impl_;
    }
    static PhiSolution wrap(std::shared_ptr<const PhiSolution::Impl> impl) {
        PhiSolution p;
        p.impl_ = std::move(impl);
        return p;
    }
    // Build the double views and wrap an engine into the public type.
    template <class Real> static PhiSolution wrap_engine(std::shared_ptr<const PhiEngine<Real>> eng) {
        auto impl = std::make_shared<PhiSolution::Impl>();
        impl->tier = tier_of_real<Real>::value;
        impl->nodes_d.reserve(eng->ker->n);
        impl->values_d.reserve(eng->ker->n);
        for (int i = 0; i < eng->ker->n; ++i) {
            impl->nodes_d.push_back(to_double(eng->ker->x[i]));
            impl->values_d.push_back(to_double(eng->phi[i]));
        }
        impl->eng = std::move(eng);
        return wrap(std::move(impl));
    }
};

template <class F> decltype(auto) visit_phi(const PhiSolution& p, F&& f) {
    return std::visit(std::forward<F>(f), PhiAccess::impl(p).eng);
}

template <class Real>
PhiSolution wrap_phi_engine(std::shared_ptr<const PhiEngine<Real>> eng) {
    return PhiAccess::wrap_engine<Real>(std::move(eng));
}

} // namespace detail
} // namespace speclab
