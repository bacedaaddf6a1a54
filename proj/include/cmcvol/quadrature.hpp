#pragma once

#include <functional>

#include "cmcvol/complex_mat.hpp"

namespace cmcvol {

struct QuadResult {
    cplx value{0.0};
    double error{0.0};
    int panels{0};
};

/// Adaptive Gauss7/Kronrod15 integration of a complex-valued function over a
/// real interval. Nodes are interior, so the endpoints are never evaluated
/// (removable endpoint singularities stay unsampled). `min_depth` forces
/// initial bisection levels, used by the node-doubling robustness checks.
QuadResult integrate(const std::function<cplx(double)>& f, double a, double b, double tol,
                     int min_depth = 0);

/// ∫ f(λ) dλ along the positively-oriented unit-circle arc λ = e^{iτ},
/// τ ∈ [tau_a, tau_b].
QuadResult integrate_arc(const std::function<cplx(cplx)>& f, double tau_a, double tau_b,
                         double tol, int min_depth = 0);

}  // namespace cmcvol
