// speclab: the unitary identification between square-integrable data on the
// critical line (weighted by 1/(2 pi |gamma_factor|^2)) and two-component
// data on the u-axis (weighted by du/2), realized by quadrature against the
// pair [2 cal_A; 2 cal_B](u, 1/2+iE), plus the left-half-line expansion
// against the [1;0]-seeded states with weight 1/(2 pi |k_hat|^2).
// MIT license; see LICENSE at the repository root.
#pragma once

#include <memory>
#include <vector>

#include "speclab/dirac.hpp"

namespace speclab {

// Two-component samples on a u-grid.
struct UExpansion {
    std::vector<double> u;
    std::vector<cd> alpha;
    std::vector<cd> beta;
};

// Samples of the expansion pair over a u-grid x E-grid rectangle. One
// downward integration per grid E, seeded at the anchor evaluator's
// endpoint where the pair is still directly computable, then sampled onto
// the u-grid by local cubics. Rows are real: the pair is real on the
// critical line.
class ExpansionBasis {
public:
    ExpansionBasis() = default;
    // anchor.a() must satisfy log(anchor.a()) >= u_grid.back(), sit inside
    // the table, and cover max|E| with its calibrated band. Both grids must
    // be strictly increasing; the E-grid and u-grid carry the trapezoid
    // weights of all quadratures below.
    ExpansionBasis(std::vector<double> u_grid, std::vector<double> E_grid,
                   const StructureEvaluator& anchor, const PotentialTable& table,
                   IntegratorSettings st = {});

    bool valid() const { return impl_ != nullptr; }
    const std::vector<double>& u_grid() const;
    const std::vector<double>& E_grid() const;
    // pair values at (u index j, E index e)
    double pair_a(std::size_t e, std::size_t j) const;
    double pair_b(std::size_t e, std::size_t j) const;

    // F samples on the E-grid -> (alpha, beta) on the u-grid.
    UExpansion forward(const std::vector<cd>& F) const;
    // (alpha, beta) on the u-grid -> F samples on the E-grid.
    std::vector<cd> inverse(const UExpansion& x) const;

    // The two norms the identification equates, and their mismatch for a
    // given F relative to the E-side norm. A defect well above the grid
    // truncation level means the grids under-resolve F.
    double e_norm(const std::vector<cd>& F) const;
    double u_norm(const UExpansion& x) const;
    double parseval_defect(const std::vector<cd>& F) const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

UExpansion isometric_forward(const ExpansionBasis& basis, const std::vector<cd>& F);
std::vector<cd> isometric_inverse(const ExpansionBasis& basis, const UExpansion& x);

// Expansion of left-half-line data against the [1;0]-seeded solutions:
// tilde T(E) = int (alpha psi_0 + beta psi_1) du over the grid of T, which
// must end at u0 = log(anchor.a()). The stored weight column is
// 1/|k_hat(1/2+iE)|^2; against the du/2 convention the matching measure is
// weight * dE/(2 pi), the constant calibrated once on the free system.
struct ScatteringTransform {
    double a0 = 0.0;
    std::vector<double> E_grid;
    std::vector<cd> values;
    std::vector<double> weight;
};

ScatteringTransform scattering_transform(const UExpansion& T, const StructureEvaluator& anchor,
                                         std::vector<double> E_grid,
                                         const PotentialTable& table, IntegratorSettings st = {});

// |u-side norm - E-side norm| / u-side norm for the transform above.
double plancherel_defect(const UExpansion& T, const ScatteringTransform& tr);

} // namespace speclab
