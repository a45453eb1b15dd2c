// speclab: public face of the finite-cosine-kernel discretization.
// MIT license; see LICENSE at the repository root.
#pragma once

#include <memory>
#include <vector>

#include "speclab/detail/cosine_engine.hpp" // Sign, effective_nodes
#include "speclab/precision.hpp"

namespace speclab {

namespace detail {
struct KernelAccess;
}

// Immutable discretized kernel operator on (0,a): unit-interval Gauss-Legendre
// nodes, the symmetrized matrix, eigenvalues, and both determinant routes.
// Heavy factorizations are computed lazily and shared; the working scalar is
// selected from `a` (see precision.hpp) and all public views are doubles.
class KernelOperator {
public:
    KernelOperator() = default;
    explicit KernelOperator(double a, int n = 0); // n = 0 picks the default budget

    bool valid() const { return impl_ != nullptr; }
    double a() const;
    int n() const;
    Tier tier() const;

    std::vector<double> nodes() const;   // unit-interval abscissae, ascending
    std::vector<double> weights() const; // positive, sum to 1
    std::vector<double> matrix() const;  // row-major symmetrized kernel matrix

    std::vector<double> eigenvalues() const; // ascending; all in (-1,1)
    double spectral_radius() const;

    // log det(1 +/- C_a): product over discretized eigenvalues.
    double log_det(Sign sign) const;
    // Same quantity from the pivoted LU of I +/- B; the two routes are
    // equivalence-tested, and this one shares its factorization with phi.
    double log_det_lu(Sign sign) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    friend struct detail::KernelAccess;
};

KernelOperator build_discretization(double a, int n = 0);

// One-shot determinant (eigenvalue route).
double log_det(double a, Sign sign, int n = 0);

} // namespace speclab
