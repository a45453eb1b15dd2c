// speclab: the archimedean gamma factor at the working precision tier.
//
// The even and odd transforms reach exp(c)-sized moduli while their
// gamma-weighted combinations stay small, so the weights have to carry the
// same precision as the transforms: forming Gamma(s/2) at double precision
// and multiplying afterwards caps the combination at ~1e-16 times the term
// size, which is pure noise once the terms pass 1e11. This header evaluates
// log Gamma by the Stirling series after shifting the argument to
// Re z >= 40, where thirty terms leave a remainder below 1e-65.
//
// MIT license; see LICENSE at the repository root.
#pragma once

#include <array>
#include <cmath>

#include "speclab/errors.hpp"
#include "speclab/precision.hpp"

namespace speclab::detail {

// B_{2k} / (2k (2k-1)) for k = 1..30, 72 significant digits, rounded to the
// target scalar on first use.
template <class Real> const std::array<Real, 30>& stirling_coefficients() {
    static const std::array<Real, 30> table = [] {
        static const char* const digits[30] = {
            "0.0833333333333333333333333333333333333333333333333333333333333333333333333",
            "-0.00277777777777777777777777777777777777777777777777777777777777777777777778",
            "0.000793650793650793650793650793650793650793650793650793650793650793650793651",
            "-0.000595238095238095238095238095238095238095238095238095238095238095238095238",
            "0.000841750841750841750841750841750841750841750841750841750841750841750841751",
            "-0.00191752691752691752691752691752691752691752691752691752691752691752691753",
            "0.00641025641025641025641025641025641025641025641025641025641025641025641026",
            "-0.0295506535947712418300653594771241830065359477124183006535947712418300654",
            "0.179644372368830573164938490015889396694350254721771749635526725310007044",
            "-1.39243221690590111642743221690590111642743221690590111642743221690590112",
            "13.4028640441683919944789510006901311249137336093857832988267770876466529",
            "-156.848284626002017306365132452088973828104262886871582523756436799915061",
            "2193.10333333333333333333333333333333333333333333333333333333333333333333",
            "-36108.7712537249893571732652192422307364836100468284376330353341847594721",
            "691472.268851313067108395250775673467553334071687798050423189466571001610",
            "-15238221.5394074161922833649588867805186590765338393421884882985452245414",
            "382900751.391414141414141414141414141414141414141414141414141414141414141",
            "-10882266035.7843910890151491655251053747294348798108196604437205940965339",
            "347320283765.002252252252252252252252252252252252252252252252252252252252",
            "-12369602142269.2744542517103492713248810809786419542517103492713248810810",
            "488788064793079.335075815162518022902108470538905673821807036295327357640",
            "-21320333960919373.8969750589821368385574654533198517020559487698011459387",
            "1021775296525700077.56528762805358550039401103230890464933018124507486210",
            "-53575472173300203610.8277091919692044848490405436588164998678140104923584",
            "3061578263704883415043.15105132962275819418676561533704390847247990105133",
            "-189999174263992040502937.142930694290294734245899617708718707608829695400",
            "12763374033828834149234951.3776978259765416336088299014482397468163770713",
            "-925284717612041630723024234.834762277951933124346917450365726227795193312",
            "72188225951856102978360501873.0163792248984042025968876994746753890375657",
            "-6045183405995856967743148238754.54728606614439596719620740630160809601335",
        };
        std::array<Real, 30> out{};
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] = real_from_decimal<Real>(digits[k]);
        return out;
    }();
    return table;
}

// log Gamma(z), correct up to an integer multiple of 2 pi i (callers
// exponentiate, which removes the ambiguity). Precondition: z is bounded away
// from the poles at 0, -1, -2, ...; the public wrappers in structure.cpp
// check that before dispatching.
template <class Real> complex_of_t<Real> tier_log_gamma(complex_of_t<Real> z) {
    using C = complex_of_t<Real>;
    using std::log;

    C shift(Real(0), Real(0));
    int steps = 0;
    while (z.real() < Real(40)) {
        shift += log(z);
        z += C(Real(1), Real(0));
        if (++steps > 200)
            throw InvalidArgument("tier_log_gamma: argument too far left of the strip");
    }

    const C zi = C(Real(1), Real(0)) / z;
    const C zi2 = zi * zi;
    C series(Real(0), Real(0));
    C power = zi;
    for (const Real& ck : stirling_coefficients<Real>()) {
        series += ck * power;
        power *= zi2;
    }

    static const Real log_two_pi_half = [] {
        using std::log;
        return log(Real(2) * pi_v<Real>()) / Real(2);
    }();

    return (z - C(Real(0.5), Real(0))) * log(z) - z + C(log_two_pi_half, Real(0)) + series -
           shift;
}

// pi^{-s/2} Gamma(s/2) with every operation at the tier scalar.
template <class Real> complex_of_t<Real> tier_gamma_factor(const complex_of_t<Real>& s) {
    using C = complex_of_t<Real>;
    using std::exp;
    using std::log;
    static const Real log_pi = [] {
        using std::log;
        return log(pi_v<Real>());
    }();
    const C half_s = s * Real(0.5);
    return exp(C(-log_pi, Real(0)) * half_s + tier_log_gamma<Real>(half_s));
}

} // namespace speclab::detail
