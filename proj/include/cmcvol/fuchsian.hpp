#pragma once

#include <array>
#include <vector>

#include "cmcvol/laurent.hpp"

namespace cmcvol {

/// Meromorphic sl(2)-valued potential with simple poles:
///   scale · Σ_k residues[k](λ) dz/(z - punctures[k]).
struct FuchsianPotential {
    std::vector<cplx> punctures;
    std::vector<MatLoop> residues;
    double scale{1.0};

    /// Coefficient matrix of dz at (z, λ).
    Mat2 eval(cplx z, cplx lambda) const;
};

/// The three meromorphic coordinate functions of the symmetric four-pole
/// family, scalar loops in λ with simple poles at λ=0, plus the pole scale.
struct LawsonAnsatz {
    double phi{0.0};
    ScalarLoop x1, x2, x3;
    double s{0.0};

    std::array<cplx, 3> eval(cplx lambda) const {
        return {x1.eval(lambda), x2.eval(lambda), x3.eval(lambda)};
    }
};

/// Punctures e^{iφ}, -e^{-iφ}, -e^{iφ}, e^{-iφ}.
std::array<cplx, 4> lawson_punctures(double phi);

/// Residue matrices A_1..A_4 assembled from (x1,x2,x3) with the alternating
/// sign pattern; Σ A_k = 0 coefficient-wise by construction.
std::array<MatLoop, 4> lawson_residues(const ScalarLoop& x1, const ScalarLoop& x2,
                                       const ScalarLoop& x3);

/// Build the four-pole potential from an ansatz. Requires the λ⁻¹ residue
/// vector to be isotropic (r·r = 0, i.e. the λ⁻¹ part of each A_k is
/// nilpotent); rejects beyond 1e-12 otherwise.
FuchsianPotential build_lawson_potential(const LawsonAnsatz& ansatz);

/// x1(λ)² + x2(λ)² + x3(λ)² - 1 at a point.
cplx quadric_residual(const LawsonAnsatz& ansatz, cplx lambda);

/// Same residual as a loop (coefficient-wise exact).
ScalarLoop quadric_residual_loop(const LawsonAnsatz& ansatz);

/// The conjugation matrices (C1 = Id, C2, C3, C4) relating the four residues.
std::array<Mat2, 4> symmetry_matrices();

/// The four potentials with residues C_m A_k C_m⁻¹.
std::array<FuchsianPotential, 4> symmetry_orbit(const LawsonAnsatz& ansatz);

}  // namespace cmcvol
