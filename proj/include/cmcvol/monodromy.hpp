#pragma once

#include <string>

#include "cmcvol/fuchsian.hpp"
#include "cmcvol/path.hpp"

namespace cmcvol {

/// Parallel transport of dΦ = Φη along the path: returns Φ(end) for the
/// solution with Φ(start) = Id, by adaptive embedded Runge-Kutta 4(5) with
/// local error ≤ tol per unit arclength. Transport composes left to right:
/// T(γ₁γ₂) = T(γ₁)·T(γ₂).
Mat2 transport(const FuchsianPotential& pot, const PlanePath& path, cplx lambda, double tol);

/// Out-circle-back loop around puncture k, based at `base`. The circle
/// radius is half the minimum distance from p_k to the other punctures and
/// the base point.
PlanePath puncture_loop(const FuchsianPotential& pot, int k, cplx base = 0.0);

Mat2 monodromy_around(const FuchsianPotential& pot, int k, cplx lambda, double tol,
                      cplx base = 0.0);

/// Monodromies of all punctures at one λ, with the composition convention
/// recorded. "left,ccw-angular" means continuation along γ maps Φ to M(γ)·Φ
/// and the product of the loops taken in counterclockwise angular order of
/// the punctures around the base is Id.
struct MonodromyRep {
    cplx base{0.0};
    cplx lambda{0.0};
    std::vector<Mat2> monodromies;
    std::vector<int> angular_order;
    std::string convention{"left,ccw-angular"};
    double tol{0.0};
};

MonodromyRep monodromies(const FuchsianPotential& pot, cplx lambda, double tol,
                         cplx base = 0.0);

struct MonodromyDiagnostics {
    std::vector<double> det_drift;          // |det M_k - 1|
    std::vector<double> trace_deviation;    // |tr M_k - 2 cos 2πs|
    std::vector<double> offdiag_norm;       // max(|(M_k)12|, |(M_k)21|) per k
    double im_tr_12{0.0}, im_tr_23{0.0}, im_tr_13{0.0};  // unitarizability surrogate
    double product_deviation{0.0};          // ‖ordered product - Id‖
};

/// The unitarizability entries report Im tr(M_j M_k), a surrogate for the
/// existence of a common unitarizer; it is necessary, not sufficient.
MonodromyDiagnostics monodromy_diagnostics(const MonodromyRep& rep, double s);

}  // namespace cmcvol
