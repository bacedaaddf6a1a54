#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "cmcvol/laurent.hpp"

namespace cmcvol {

/// The two unit-circle spectral points where the family trivializes, their
/// lifted angles (tau2 > tau1) and the mean curvature they determine.
struct SymData {
    cplx lambda1{1.0}, lambda2{-1.0};
    double tau1{0.0}, tau2{kPi};
    double H{0.0};
};

/// i(λ₁+λ₂)/(λ₁-λ₂); throws if the reality check fails (|Im| > 1e-10).
double mean_curvature(cplx lambda1, cplx lambda2);

SymData make_sym(double tau1, double tau2);

/// Symmetric Sym points e^{∓iθ}.
inline SymData make_sym_theta(double theta) { return make_sym(-theta, theta); }

/// Representative of x mod 2πi with imaginary part in (-π, π].
cplx mod_2pi_i(cplx x);

/// |reduced difference| of two logs compared mod 2πi.
double dist_mod_2pi_i(cplx x, cplx y);

/// (i/4π)(τ₂-τ₁-sin(τ₂-τ₁))·W - (i/π)·V, reduced mod 2πi.
cplx hol_from_invariants(double W, double tau1, double tau2, double V);

/// Single-cover inversion: V = ((Δτ-sinΔτ)/4)·W + iπ·logHol, representative
/// in [0, 2π²). Enforces reality of the result.
double volume_from_invariants(double W, double tau1, double tau2, cplx log_hol);

/// Double-cover form: V = ((2θ-sin2θ)/4)·W - (π/2i)·logHol mod π². The
/// representative nearest `anchor` is returned when anchor is finite, else
/// the one in [0, π²).
double volume_from_log_hol(cplx log_hol, double theta, double W,
                           double anchor = std::nan(""));

/// Local regularizing gauge G(z,λ) = N(λ)·diag(z^{-k}, z^{k}). N is carried
/// as a matrix Laurent loop P with a normalization mode:
///   AsIs:    N = P                       (det P must be 1 on the arc)
///   Ratio:   N = P / den                 (den a scalar loop)
///   DetSqrt: N = P / sqrt(det P)         (branch fixed up to sign; a sign
///            flip shifts -2k·log a by 2πik, invisible mod 2πi)
struct RegularizingGauge {
    enum class Mode { AsIs, Ratio, DetSqrt };
    int k{1};
    MatLoop P;
    ScalarLoop den{ScalarLoop::constant(1.0)};
    Mode mode{Mode::AsIs};
};

/// One simple pole of the potential: its full residue loop Res_p η (covering
/// multiplicities included by the caller) and its regularizing gauge.
struct PoleGaugeData {
    MatLoop residue;
    RegularizingGauge gauge;
};

/// log Hol along the unit-circle arc between the Sym points by the
/// regularizing-gauge formula: Σ_j [ ∫ tr(Res_j η · N_j' N_j⁻¹) dλ
/// - 2 k_j log a_j ], a_j = (N_j(λ₁)⁻¹ h N_j(λ₂))₁₁. Endpoint-degenerate
/// gauges (N ~ 0/0 at a Sym point) are evaluated by the analytic-limit
/// policy. Validity checks (first gauge column an eigenvector of the
/// residue with eigenvalue k_j; N(λ₁)⁻¹hN(λ₂) upper triangular; h conjugates
/// the residues λ₁→λ₂) must pass within validity_tol.
cplx hol_regularizing(const std::vector<PoleGaugeData>& poles, const Mat2& h,
                      const SymData& sym, double quad_tol, double validity_tol = 1e-10);

/// Willmore energy from the gauge residues: 4π Σ_j tr(R_j^{(-1)} N_{j,1} N_{j,0}⁻¹)
/// with R_j^{(-1)} the λ⁻¹ coefficient of the residue loop and N_{j,0},
/// N_{j,1} the first λ-Taylor coefficients of N_j. Gauges must be
/// holomorphic at λ=0 (DetSqrt mode is rejected).
double willmore_residue(const std::vector<PoleGaugeData>& poles);

/// log Hol for the symmetric four-pole family:
///   4 log[(x₂'-i x₃')/(x₂'+i x₃')](λ₂) + 4i ∫ (x₂x₃'-x₃x₂')/(1-x₁) dλ
/// over the arc e^{-iθ} → e^{iθ}. The integrand's removable singularity at
/// λ₂ is never sampled (interior quadrature nodes); throws when the log
/// argument degenerates.
cplx hol_lawson_lev(const ScalarLoop& x1, const ScalarLoop& x2, const ScalarLoop& x3,
                    double theta, double quad_tol);

/// ∫ num/den dλ over the unit-circle arc [e^{iτa}, e^{iτb}], with matching
/// (near-)zeros of num and den at degenerate arc endpoints divided out
/// analytically before quadrature (the analytic-limit policy shared by the
/// holonomy integrands).
cplx arc_ratio_integral(const ScalarLoop& num, const ScalarLoop& den, double tau_a,
                        double tau_b, double quad_tol);

/// λ-pointwise 1/sqrt(K) projection onto the moduli quadric Σxᵢ² = 1 as a
/// loop operation: x ↦ x·(1 - Q/2 + 3Q²/8). A residual of size ε becomes
/// O(ε³).
std::array<ScalarLoop, 3> project_to_quadric(const ScalarLoop& x1, const ScalarLoop& x2,
                                             const ScalarLoop& x3);

/// Darboux coordinates u = -(x₂+ix₁x₃)²/(ix₁x₂-x₃)²,
/// r = 2x₂(-ix₁x₂+x₃)²/((x₂²+x₃²)(x₂+ix₁x₃)). Throws a chart error naming
/// the vanishing denominator.
std::pair<cplx, cplx> darboux_coords(cplx x1, cplx x2, cplx x3);

/// Moduli-coordinate form of the connection integral over a sub-arc
/// [e^{iτa}, e^{iτb}]:
///   ∫ [-2x₂(x₁-ix₂x₃)/(x₁(x₂²-1))·x₂' - (2ix₂/x₁)·x₃'] dλ.
/// This is the single-cover normalization (half the doubled convention used
/// by the other two formulas). Throws on x₁=0 / x₂²=1 crossings, reporting λ.
cplx hol_darboux(const ScalarLoop& x1, const ScalarLoop& x2, const ScalarLoop& x3,
                 double tau_a, double tau_b, double quad_tol);

/// Same sub-arc integral computed as -½∫ r du through the Darboux
/// coordinates; regular where the (x₂,x₃)-chart form is not (and vice
/// versa). Used as the independent cross-check and to cross the x₁=0 locus.
cplx hol_darboux_rdu(const ScalarLoop& x1, const ScalarLoop& x2, const ScalarLoop& x3,
                     double tau_a, double tau_b, double quad_tol);

struct InvariantReport {
    double W{0.0};
    cplx log_hol{0.0};
    double V{0.0};
    double H{0.0};
    std::string normalization;
};

}  // namespace cmcvol
