#pragma once

#include <optional>
#include <vector>

#include "cmcvol/fuchsian.hpp"

namespace cmcvol {
namespace msolver {

struct SolverConfig {
    int degree{3};             // truncation degree D of the coefficient loops
    int samples{8};            // unit-circle collocation count N_s
    double tol{1e-6};          // residual target; the degree-D truncation floor
                               // is ~s^{D-1}, so tighter targets need higher D
    int max_iter{15};
    double damping_floor{1.0 / 64.0};
    double ode_tol{1e-12};     // transport tolerance per unit arclength
    double fd_step{1e-6};      // central-difference step for the Jacobian
};

struct SolvedFamily {
    LawsonAnsatz ansatz;
    double theta{0.0};
    double s{0.0};
    double residual_norm{0.0};
    int iterations{0};
    int jacobian_rank{0};
    bool converged{false};
};

/// Collocated residual of the Monodromy Problem: quadric residual (re/im) and
/// Im tr(M₁M₂), Im tr(M₂M₃), Im tr(M₁M₃) at N_s circle samples, plus re/im of
/// all off-diagonal entries of M₁..M₄ at λ = e^{±iθ}. The λ⁻¹ coefficients of
/// the ansatz are not varied here; they enter through the ansatz itself.
std::vector<double> residual_vector(const LawsonAnsatz& ansatz, double theta, double s,
                                    const SolverConfig& config);

/// Damped Gauss-Newton with finite-difference Jacobian and min-norm QR
/// solve. Unknowns: the λ-coefficients of x₁,x₂,x₃ in degrees 0..D (re/im),
/// one real scale ρ on the frozen λ⁻¹ residue direction, and θ. The init
/// defaults to the second-order Taylor prediction. Throws only on malformed
/// input; non-convergence is reported in the result, never silently.
SolvedFamily solve(double phi, double s, const SolverConfig& config,
                   const std::optional<SolvedFamily>& init = std::nullopt);

/// Distance between two ansätze in the packed coefficient metric (used for
/// the Taylor-prediction scaling checks).
double coefficient_distance(const LawsonAnsatz& a, const LawsonAnsatz& b, int degree);

}  // namespace msolver
}  // namespace cmcvol
