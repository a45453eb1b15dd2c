// speclab: the first-order two-component system on the u = log a axis,
//   alpha' + mu alpha = -E beta,   beta' - mu beta = E alpha,
// integrated against a tabulated potential. Canonical boundary solutions,
// Mellin-initialized propagation, and the Wronskian identities that tie the
// integrated picture back to the transform picture live here.
// MIT license; see LICENSE at the repository root.
#pragma once

#include <complex>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "speclab/potential.hpp"
#include "speclab/structure.hpp"

namespace speclab {

struct TwoVector {
    cd alpha{0.0, 0.0};
    cd beta{0.0, 0.0};
};

// Classical fourth-order Runge-Kutta. Each base interval is taken whole and
// as two halves; the 15-fold Richardson gap is the local error estimate and
// a failing interval doubles its sub-step count until the estimate fits.
// The accepted value is the two-half-step one, never the extrapolated sum,
// so the global order stays exactly four (halving base_step cuts endpoint
// error ~16x, which the tests pin).
struct IntegratorSettings {
    double base_step = 1e-3;
    double tol = 1e-10; // local error target, relative to max(1, |y|)
};

// One integrated solution. The grid is uniform from u0 to u1 (direction
// preserved, spacing (u1-u0)/N with N = round(|u1-u0|/base_step)), each
// point computed as u0 + k*h so sample locations are reproducible exactly.
class Trajectory {
public:
    Trajectory() = default;

    bool valid() const { return impl_ != nullptr; }
    cd E() const;
    const std::vector<double>& u() const;
    const std::vector<TwoVector>& values() const;
    const TwoVector& front() const;
    const TwoVector& back() const;

    // Provenance: which boundary condition seeded the run, and the settings
    // plus the worst accepted per-interval error estimate.
    const std::string& boundary() const;
    const IntegratorSettings& settings() const;
    double max_local_error() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    friend Trajectory integrate(double, double, cd, TwoVector, const PotentialTable&,
                                IntegratorSettings, std::string);
};

// Integrate from u0 to u1 (either direction) with the given initial vector.
// Throws InvalidArgument for empty input, RangeError when [u0,u1] leaves the
// table, ConvergenceError if the sub-step count underflows the error target.
Trajectory integrate(double u0, double u1, cd E, TwoVector init, const PotentialTable& table,
                     IntegratorSettings st = {}, std::string boundary = "custom");

// The two canonical boundary solutions at u0: first [1;0], second [0;1].
std::pair<Trajectory, Trajectory> canonical_psi_phi(double u0, double u1, cd E,
                                                    const PotentialTable& table,
                                                    IntegratorSettings st = {});

// Propagate [cal_A; cal_B] from the evaluator's interval length to a1. The
// system parameter is E = -i(s - 1/2), so the critical line is real E. The
// endpoint must reproduce a direct evaluation at a1: that cross-check is the
// point of the routine.
Trajectory ab_trajectory(const StructureEvaluator& ev, double a1, cd s,
                         const PotentialTable& table, IntegratorSettings st = {});
Trajectory ab_trajectory(double a0, double a1, cd s, const PotentialTable& table,
                         IntegratorSettings st = {}, int n = 0);

// Same propagation for the transform pair [j_hat; k_hat].
Trajectory jk_trajectory(const StructureEvaluator& ev, double a1, cd s,
                         const PotentialTable& table, IntegratorSettings st = {});
Trajectory jk_trajectory(double a0, double a1, cd s, const PotentialTable& table,
                         IntegratorSettings st = {}, int n = 0);

// cal_A k_hat - cal_B j_hat, which is u-independent and equals
// i gamma_factor(1-s). Assembled through the in-tier pair form (the raw
// double products lose the cancellation once the factors reach ~1e7, see
// StructureEvaluator::wronskian_pair); the small-a tests re-derive it from
// narrowed values to confirm the two assemblies agree.
cd wronskian_AJ(const StructureEvaluator& ev, cd s);
cd wronskian_AJ(double a, cd s, int n = 0);

// Im(-j_hat conj(k_hat)) at s = 1/2 + iE; identically 1. Same in-tier form.
double w1_identity(const StructureEvaluator& ev, double E);
double w1_identity(double a, double E, int n = 0);

// Max over interior grid points of |central difference - system right side|
// scaled by max(1, |y|). Second-order in the grid spacing; with the default
// base step this sits near 1e-6 (1 + |mu| + |E|)^3.
double trajectory_residual(const Trajectory& t, const PotentialTable& table);

} // namespace speclab
