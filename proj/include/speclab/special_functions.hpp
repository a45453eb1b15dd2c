// speclab: complex gamma machinery and the zero-density comparator.
// MIT license; see LICENSE at the repository root.
#pragma once

#include <complex>

#include "speclab/errors.hpp"

namespace speclab {

using cd = std::complex<double>;

// log Gamma with exp(log_gamma(s)) = Gamma(s). Continuous (principal) on
// Re s >= 1/2; on the reflected half-plane the imaginary part is reduced to
// the principal sheet, so identities should be tested multiplicatively.
// Throws PoleError at the non-positive integers.
cd log_gamma(cd s);

// Gamma itself, via exp(log_gamma).
cd gamma_fn(cd s);

// chi(s) = pi^(s-1/2) * Gamma((1-s)/2) / Gamma(s/2).
// Multiplier of the functional equation s <-> 1-s; modulus one on Re s = 1/2.
// Poles at s = 1, 3, 5, ...; exact zeros at s = 0, -2, -4, ...
cd chi(cd s);

// gamma_factor(s) = pi^(-s/2) * Gamma(s/2), the completed-transform factor.
// Satisfies gamma_factor(s) * chi(s) = gamma_factor(1-s).
cd gamma_factor(cd s);

// Smoothed main term of the zero-counting comparator:
// (T/2pi) ln(T/2pi) - T/2pi + 7/8. Positive and increasing for T > 2*pi*e.
// Throws for T <= 0.
double rvm_count(double T);

} // namespace speclab
