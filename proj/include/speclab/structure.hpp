// speclab: structure functions of the finite cosine kernel on the Mellin
// side: the solution pair j_hat / k_hat, the entire combinations cal_A and
// cal_B, the E_hat transform, and evaluator inner products and norms.
// MIT license; see LICENSE at the repository root.
#pragma once

#include <complex>
#include <memory>

#include "speclab/kernel.hpp"
#include "speclab/phi.hpp"
#include "speclab/special_functions.hpp"

namespace speclab {

// Immutable bundle of everything needed at one interval endpoint a: the two
// resolvent solutions plus the continuation of their finite Mellin
// integrals. Construction performs the Fredholm solves and the quadrature
// precomputation; evaluations are cheap, pure, and safe to call from
// several threads at once.
//
// Admissible arguments: |Im s| <= e_cap + 3 (the quadrature grading is built
// for the requested cap) and |Re s - 1/2| <= 6. Within that box the poles at
// s = 1, 3, 5, ... are represented exactly; accuracy falls off like
// 10^(5.2 (Re s - 1)) as Re s passes 1, which is the price of the analytic
// split at the lower end of the integrals.
class StructureEvaluator {
public:
    StructureEvaluator() = default;
    explicit StructureEvaluator(double a, int n = 0, double e_cap = 40.0);
    StructureEvaluator(const KernelOperator& op, double e_cap = 40.0);

    bool valid() const { return impl_ != nullptr; }
    double a() const;
    int n() const;
    Tier tier() const;
    double e_cap() const;
    const PhiSolution& phi_plus() const;
    const PhiSolution& phi_minus() const;

    // j_hat(s) = a^(1/2-s) - sqrt(a) int_0^a phi+(x) x^(-s) dx
    // k_hat(s) = i (a^(1/2-s) + sqrt(a) int_0^a phi-(x) x^(-s) dx)
    // Both continue meromorphically with poles at s = 1, 3, 5, ...; the
    // coefficients are real, so j_hat(conj s) = conj(j_hat(s)) and
    // k_hat(conj s) = -conj(k_hat(s)).
    cd j_hat(cd s) const;
    cd k_hat(cd s) const;

    // 2 cal_A(s) = gamma_factor(s) j_hat(s) + gamma_factor(1-s) j_hat(1-s)
    // 2 cal_B(s) = gamma_factor(s) k_hat(s) - gamma_factor(1-s) k_hat(1-s)
    // Entire (the poles of the two terms cancel); real on the critical
    // line; cal_A is even and cal_B odd under s -> 1-s. Near the points
    // where both terms blow up (s within 1e-6 of 1, 3, 5 or 0, -2, -4) the
    // cancellation cannot be resolved and a PoleError is raised.
    cd cal_A(cd s) const;
    cd cal_B(cd s) const;

    // E_hat = (cal_A - i cal_B) / gamma_factor(s); F_hat flips the sign of
    // the cal_B term. Defining F_hat this way keeps the transform pair
    // exact instead of introducing a second quadrature.
    cd E_hat(cd s) const;
    cd F_hat(cd s) const;

    // (E_hat(z) E_hat(w) - F_hat(z) F_hat(w)) / (z + w - 1), symmetric in
    // (z, w). The point z + w = 1 is removable and is crossed with a
    // Richardson limit when |z + w - 1| < 1e-6.
    cd evaluator_inner(cd z, cd w) const;

    // -2 cal_A dB/dE + 2 cal_B dA/dE at s = 1/2 + iE (derivatives along the
    // critical line, central differences plus one Richardson step). Equals
    // |gamma_factor(1/2+iE)|^2 times the z = conj(w) limit of
    // evaluator_inner; the proportionality constant is exactly 1.
    double evaluator_norm_critical(double E) const;

    // Gamma-free Wronskian of the j/k pair,
    // (j_hat(s) k_hat(1-s) + j_hat(1-s) k_hat(s)) / 2, formed inside the
    // working precision and narrowed only at the end. Identically i. The
    // Wronskian cal_A k_hat - cal_B j_hat equals gamma_factor(1-s) times
    // this value, and on the critical line its imaginary part equals the
    // unimodularity product Im(-j_hat(s) conj(k_hat(s))). Assembling the
    // same combination from the narrowed values returned by j_hat and
    // k_hat loses the cancellation once their moduli pass ~1e7, so large-a
    // Wronskian checks must go through here.
    cd wronskian_pair(cd s) const;

    // Tail route for E_hat: sqrt(a)(a^(-s) + 1/2 int_a^inf (phi+ - phi-)(x)
    // x^(-s) dx), absolutely convergent for Re s > 0. Fully independent of
    // the combination route, so it serves as a cross-check of E_hat.
    cd E_hat_tail(cd s, double tol = 1e-8) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

// One-shot conveniences. Each call builds a throwaway evaluator sized for
// the requested s, so prefer the class when evaluating repeatedly at one a.
cd j_hat(double a, cd s, int n = 0);
cd k_hat(double a, cd s, int n = 0);
cd cal_A(double a, cd s, int n = 0);
cd cal_B(double a, cd s, int n = 0);
cd E_hat(double a, cd s, int n = 0);
cd wronskian_pair(double a, cd s, int n = 0);
cd evaluator_inner(double a, cd z, cd w, int n = 0);
double evaluator_norm_critical(double a, double E, int n = 0);

} // namespace speclab
