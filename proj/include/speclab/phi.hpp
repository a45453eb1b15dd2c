// speclab: solutions of the second-kind equations (1 +/- C_a) phi = 2 cos(2 pi a x).
// MIT license; see LICENSE at the repository root.
#pragma once

#include <memory>
#include <vector>

#include "speclab/kernel.hpp"

namespace speclab {

namespace detail {
struct PhiAccess;
}

// One solution, sampled on the scaled nodes in (0,a), with its analytic
// extension to any real x. Evaluation is even in x and reproduces the node
// values exactly at the nodes (same quadrature on both sides). Public views
// are doubles; the internal scalar follows the tier for `a`.
class PhiSolution {
public:
    PhiSolution() = default;

    bool valid() const { return impl_ != nullptr; }
    double a() const;
    Sign sign() const;
    int n() const;
    Tier tier() const;

    const std::vector<double>& nodes_x() const; // nodes scaled to (0,a)
    const std::vector<double>& values() const;  // phi at those nodes

    double operator()(double x) const; // extension to arbitrary x
    double deriv(double x) const;
    double at_endpoint() const; // phi(a), evaluated in the working tier

    // max |(1 +/- C) phi - rhs| over the nodes, in the working tier.
    double residual_inf() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    friend struct detail::PhiAccess;
};

PhiSolution solve_phi(double a, Sign sign, int n = 0);
PhiSolution solve_phi(const KernelOperator& op, Sign sign);

} // namespace speclab
