// speclab: the Dirac potential mu(u) on the log-interval axis u = log a, and
// the tabulated form the integrator consumes.
// MIT license; see LICENSE at the repository root.
#pragma once

#include <filesystem>
#include <memory>
#include <vector>

#include "speclab/kernel.hpp"

namespace speclab {

// Both computations of mu at one point: the resolvent-diagonal identity
// a*(phi+(a) + phi-(a)) and a central log-determinant derivative in u
// (step 1e-2, one Richardson pass).
struct MuRoutes {
    double resolvent;
    double finite_difference;
};

MuRoutes mu_routes(double u, int n = 0);

// mu(u) by the resolvent route, gated: throws CrossCheckError when the two
// routes disagree beyond 1e-6 relative.
double mu(double u, int n = 0);

// Uniform grid of (u, mu, log det(1 +/- C)) with a cubic interpolant for
// mu. The interpolation runs on mu(u)*exp(-2u), which stays O(1) across the
// range; the raw potential grows like 4*pi*exp(2u) on the right.
class PotentialTable {
public:
    PotentialTable() = default;

    bool valid() const { return d_ != nullptr; }
    bool zero() const; // identically-zero table (free Dirac system)

    double u_min() const;
    double u_max() const;
    const std::vector<double>& u_grid() const;
    const std::vector<double>& mu_values() const;
    const std::vector<double>& logdet_plus() const;
    const std::vector<double>& logdet_minus() const;

    // Interpolated potential. Throws RangeError outside the grid; the zero
    // table accepts any u.
    double mu_at(double u) const;

    struct Data; // defined in potential.cpp

private:
    std::shared_ptr<const Data> d_;
    friend PotentialTable build_potential_table(double, double, int, int,
                                                const std::filesystem::path&);
    friend PotentialTable zero_potential();
};

// Build (or load from cache_root/potential when given) a table over
// [u_min, u_max] with `steps` uniform steps. Verifies positivity, the
// monotone left tail, and the dual-route agreement on sampled points.
PotentialTable build_potential_table(double u_min, double u_max, int steps, int n = 0,
                                     const std::filesystem::path& cache_root = {});

// The free system: mu identically zero, any u admissible.
PotentialTable zero_potential();

} // namespace speclab
