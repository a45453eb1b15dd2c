// speclab: shared definition of KernelOperator's tier-erased innards, for the
// translation units that need to reach the templated engine.
// MIT license; see LICENSE at the repository root.
#pragma once

#include <variant>

#include "speclab/detail/cosine_engine.hpp"
#include "speclab/kernel.hpp"

namespace speclab {

struct KernelOperator::Impl {
    Tier tier;
    std::variant<std::shared_ptr<const detail::CosineEngine<double>>,
                 std::shared_ptr<const detail::CosineEngine<f128>>,
                 std::shared_ptr<const detail::CosineEngine<bf50>>,
                 std::shared_ptr<const detail::CosineEngine<bf100>>>
        eng;
};

namespace detail {

struct KernelAccess {
    static const KernelOperator::Impl& impl(const KernelOperator& k) {
        if (!k.impl_) throw InvalidArgument("empty KernelOperator");
        return *k.impl_;
    }
    static KernelOperator wrap(std::shared_ptr<const KernelOperator::Impl> impl) {
        KernelOperator k;
        k.impl_ = std::move(impl);
        return k;
    }
};

template <class F> decltype(auto) visit_kernel(const KernelOperator& k, F&& f) {
    return std::visit(std::forward<F>(f), KernelAccess::impl(k).eng);
}

} // namespace detail
} // namespace speclab
