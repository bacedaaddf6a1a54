#pragma once

#include "cmcvol/holonomy.hpp"

namespace cmcvol {
namespace closedform {

/// Pole data of the two-pole round-sphere potential [[0,λ⁻¹],[λ,0]] dz/z
/// (a branched double cover of the round sphere) with its regularizing
/// gauges at 0 and ∞, plus the constant gauge h for Sym points e^{∓iα}.
struct SpherePipeline {
    std::vector<PoleGaugeData> poles;
    Mat2 h;
    SymData sym;
};
SpherePipeline sphere_pipeline(double alpha);

/// Closed-form invariants of the totally umbilic sphere with Sym points
/// e^{∓iα}: W = 4π, H = -cot α, V = π(2α - sin 2α) mod 2π², log Hol = 0.
InvariantReport sphere_case(double alpha);

struct TorusCase {
    double r{0.0}, s{0.0};  // r² + s² = 1
};

/// Homogeneous-torus invariants: H = (1-2s²)/(2rs), λ₂ = (r+is)²/(r-is)²,
/// W = π²/(rs), log Hol = (π/4rs)·log λ₂ - iπ, V = 2π²s².
InvariantReport torus_case(const TorusCase& c);

cplx torus_lambda2(const TorusCase& c);

struct TorusTransportReport {
    cplx x_xi2{0.0};           // parallel transport across the ξ-arc
    cplx x_xi2_closed{0.0};    // exp((π/4rs) log λ₂)
    double area{0.0};          // ∫ dx∧dy over the fundamental domain
    cplx theta_factor{-1.0};   // the cocycle value of the trivializing gauge
    cplx hol{0.0};             // assembled holonomy
    double quad_error{0.0};
};

/// Reproduces the torus holonomy by quadrature of tr(A∧A') = 2π²i/(r²s²ξ)
/// dx∧dy over the fundamental domain and the ξ-arc.
TorusTransportReport torus_transport_check(const TorusCase& c, double quad_tol);

}  // namespace closedform
}  // namespace cmcvol
