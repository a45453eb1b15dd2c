// speclab: precision-tier plumbing.
//
// The Fredholm problem for the finite cosine kernel degrades fast as the
// interval grows: the gap 1 - max|lambda_i(a)| closes like exp(-4*pi*a^2), and
// the linear solves for phi lose exactly that many digits. Everything heavy is
// therefore templated on the scalar type and dispatched to a widening ladder
// of types chosen from the interval endpoint alone.
//
// MIT license; see LICENSE at the repository root.
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/float128.hpp>
#include <boost/multiprecision/complex128.hpp>
#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <complex>
#include <string>

#include "speclab/errors.hpp"

namespace speclab {

using f128 = boost::multiprecision::float128;
using bf50 = boost::multiprecision::cpp_bin_float_50;
using bf100 = boost::multiprecision::cpp_bin_float_100;

enum class Tier { f64, f128, dec50, dec100 };

inline const char* tier_name(Tier t) {
    switch (t) {
        case Tier::f64: return "f64";
        case Tier::f128: return "f128";
        case Tier::dec50: return "dec50";
        case Tier::dec100: return "dec100";
    }
    return "?";
}

inline Tier tier_from_name(const std::string& s) {
    if (s == "f64") return Tier::f64;
    if (s == "f128") return Tier::f128;
    if (s == "dec50") return Tier::dec50;
    if (s == "dec100") return Tier::dec100;
    throw InvalidArgument("unknown precision tier '" + s + "'");
}

// Decimal digits carried by each tier (used for cache round-trips).
inline int tier_digits(Tier t) {
    switch (t) {
        case Tier::f64: return 17;
        case Tier::f128: return 36;
        case Tier::dec50: return 52;
        case Tier::dec100: return 102;
    }
    return 17;
}

// Thresholds follow the measured loss: at a = 1.2 a double solve still keeps
// ~9 digits, by a = 1.5 it keeps ~2. Each step of the ladder buys enough
// mantissa to keep endpoint evaluations of phi at >= 10 correct digits.
inline Tier tier_for_interval(double a) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw InvalidArgument("interval endpoint a must be finite and positive, got " + std::to_string(a));
    if (a <= 1.2) return Tier::f64;
    if (a <= 2.1) return Tier::f128;
    if (a <= 2.8) return Tier::dec50;
    if (a <= 3.9) return Tier::dec100;
    throw RangeError("interval endpoint a = " + std::to_string(a) +
                     " exceeds the supported range (conditioning ~ exp(-4*pi*a^2); max a = 3.9)");
}

template <class Real> struct complex_of;
template <> struct complex_of<double> { using type = std::complex<double>; };
template <> struct complex_of<f128> { using type = boost::multiprecision::complex128; };
template <> struct complex_of<bf50> { using type = boost::multiprecision::cpp_complex_50; };
template <> struct complex_of<bf100> { using type = boost::multiprecision::cpp_complex_100; };
template <class Real> using complex_of_t = typename complex_of<Real>::type;

template <class Real> struct tier_of_real;
template <> struct tier_of_real<double> { static constexpr Tier value = Tier::f64; };
template <> struct tier_of_real<f128> { static constexpr Tier value = Tier::f128; };
template <> struct tier_of_real<bf50> { static constexpr Tier value = Tier::dec50; };
template <> struct tier_of_real<bf100> { static constexpr Tier value = Tier::dec100; };

template <class Real> struct tier_tag { using real = Real; using cplx = complex_of_t<Real>; };

// Invoke f with the tag for the tier chosen at runtime. f must be callable on
// every tier tag and all instantiations must share a return type.
template <class F> decltype(auto) dispatch_tier(Tier t, F&& f) {
    switch (t) {
        case Tier::f64: return f(tier_tag<double>{});
        case Tier::f128: return f(tier_tag<f128>{});
        case Tier::dec50: return f(tier_tag<bf50>{});
        case Tier::dec100: return f(tier_tag<bf100>{});
    }
    throw InvalidArgument("bad tier enum");
}

template <class Real> Real pi_v() { return boost::math::constants::pi<Real>(); }

inline double to_double(double x) { return x; }
template <class Real> double to_double(const Real& x) { return static_cast<double>(x); }

template <class C> std::complex<double> to_cd(const C& z) {
    return {to_double(z.real()), to_double(z.imag())};
}
inline std::complex<double> to_cd(const std::complex<double>& z) { return z; }

template <class Real> complex_of_t<Real> to_tier_complex(const std::complex<double>& z) {
    return complex_of_t<Real>(Real(z.real()), Real(z.imag()));
}

// Round-trippable decimal serialization for cache files.
inline std::string to_decimal(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", x);
    return buf;
}
template <class Real> std::string to_decimal(const Real& x) {
    return x.str(0, std::ios_base::scientific);
}

template <class Real> Real real_from_decimal(const std::string& s) { return Real(s); }
template <> inline double real_from_decimal<double>(const std::string& s) { return std::stod(s); }

} // namespace speclab
