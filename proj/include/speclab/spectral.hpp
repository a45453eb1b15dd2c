// speclab: spectral data of the two-component system split at u0 = log a0.
// The right half-line with boundary [0;*] carries a discrete spectrum at the
// real zeros of cal_A; the left half-line with boundary [*;0] carries an
// absolutely continuous one weighted by 1/|k_hat|^2. Both Weyl coefficients,
// the eigenvalue search, the state norms, and the matched full-line
// eigensolutions of the rank-two boundary coupling live here.
// MIT license; see LICENSE at the repository root.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "speclab/dirac.hpp"

namespace speclab {

// Zeros E_n of E -> cal_A(1/2 + iE) over a symmetric window, each labelling
// a square-integrable right-half-line state, with the Hilbert norms taken
// in the du/2 convention.
struct BoundStateSpectrum {
    double a0 = 0.0;
    double e_max = 0.0;                              // window was [-e_max, e_max]
    std::vector<double> eigenvalues;                 // increasing
    std::vector<double> norms;                       // positive, same order
    std::vector<std::pair<double, double>> brackets; // sign-change intervals fed to bisection
    std::vector<std::string> warnings;               // scan-resolution notes
};

// Sign-scan of cal_A(1/2 + iE) over [-E_max, E_max] followed by bisection of
// each bracket to width < 1e-9. The scan step is 0.05 up to |E| = 20 and
// shrinks like 1/log(|E| a0^2 + e) beyond, tracking the logarithmic growth
// of the zero density. Each zero is checked simple through a nonzero cal_B;
// a warning is recorded when two zeros land within twice the local step.
// Throws CrossCheckError when a zero fails the simplicity or positivity
// checks, InvalidArgument for a bad window.
BoundStateSpectrum find_bound_states(const StructureEvaluator& ev, double E_max);
BoundStateSpectrum find_bound_states(double a0, double E_max, int n = 0);

// Hilbert norm of the state at a verified zero En: 2 cal_B(1/2+iEn) times
// the derivative of cal_A along the critical line, the derivative taken by
// a five-point stencil (independent of the Richardson pair inside
// evaluator_norm_critical, so the two stay honest cross-checks). Throws
// InvalidArgument when En is not a zero to ~1e-6, CrossCheckError when the
// result fails to come out positive.
double bound_state_norm(const StructureEvaluator& ev, double En);
double bound_state_norm(double a0, double En, int n = 0);

// Quadrature route to the same norm: integrate the decaying solution
// [2 cal_A; 2 cal_B] from u0 rightward and accumulate |y|^2 du/2, extending
// the window until the last 0.1-wide slab contributes less than 1e-4 of the
// running total. Throws ConvergenceError when the table ends before the
// tail settles.
double bound_state_norm_integral(const StructureEvaluator& ev, double En,
                                 const PotentialTable& table, IntegratorSettings st = {});

// Weyl coefficient of the right half-line problem, -cal_B(s)/cal_A(s) at
// s = 1/2 + iE. Herglotz in E (upper half-plane to itself), real on the
// real axis, simple poles exactly at the bound states. Throws PoleError on
// a vanishing cal_A.
cd m_bound(const StructureEvaluator& ev, cd E);
cd m_bound(double a0, cd E, int n = 0);

// Weyl coefficient of the left half-line problem, -j_hat(s)/k_hat(s) at
// s = 1/2 + iE. Herglotz in E; on the real axis its imaginary part is
// 1/|k_hat|^2 by the unimodularity identity, so the spectral measure there
// is purely absolutely continuous.
cd m_scattering(const StructureEvaluator& ev, cd E);
cd m_scattering(double a0, cd E, int n = 0);

// Density 1/(pi |k_hat(1/2+iE)|^2) sampled over a grid. k_hat does not
// vanish on the critical line, so every sample is strictly positive.
struct ScatteringMeasure {
    double a0 = 0.0;
    std::vector<double> E_grid;
    std::vector<double> density;
};
ScatteringMeasure scattering_measure(const StructureEvaluator& ev, std::vector<double> E_grid);
ScatteringMeasure scattering_measure(double a0, std::vector<double> E_grid, int n = 0);

// Full-line eigensolution of the boundary-coupled operator at a real E:
// coeff_left times the solution seeded [1;0] at u0 on the left of u0, glued
// to coeff_right times the solution seeded [0;1] on the right. The seeds
// make the matching conditions (second component zero from the left, first
// component zero from the right) hold exactly, and the delta pairings are
// the half-sums of the one-sided limits at u0.
struct MatchedEigensolution {
    double E = 0.0;
    double coeff_left = 0.0;
    double coeff_right = 0.0;
    Trajectory left;  // runs from u0 down to the table's left edge
    Trajectory right; // runs from u0 up to the table's right edge

    double delta0_pairing() const; // coeff_left / 2, read off the stored seeds
    double delta1_pairing() const; // coeff_right / 2
};

// Builds both pieces over the span of the table. Throws RangeError when
// log(a0) is not interior to the table, InvalidArgument for non-finite
// inputs.
MatchedEigensolution matched_eigensolution(double a0, double E, double coeff_left,
                                           double coeff_right, const PotentialTable& table,
                                           IntegratorSettings st = {});

// Staircase count N(T) = #{E_n in (0, T]} against the smooth zero-counting
// comparator rvm_count(T).
struct CountingComparison {
    int count = 0;
    double rvm_ratio = 0.0;
};
CountingComparison counting_comparison(const BoundStateSpectrum& spectrum, double T);

} // namespace speclab
