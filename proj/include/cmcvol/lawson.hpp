#pragma once

#include <array>

#include "cmcvol/fuchsian.hpp"
#include "cmcvol/holonomy.hpp"

namespace cmcvol {
namespace lawson {

/// μ = cos²φ log cosφ + sin²φ log sinφ (≤ 0), ν = sin 2φ log tanφ, ν(π/4)=0.
struct ShapeConstants {
    double mu{0.0};
    double nu{0.0};
};
ShapeConstants shape_constants(double phi);

/// Deformation-family data at a fixed angle: central loops, first and
/// second t-derivative loops (degree span within [-1, 3]), the θ series
/// coefficients (π/2, 2ν, 0) and the second-derivative scale term K̈.
struct Family {
    double phi{0.0};
    double mu{0.0}, nu{0.0};
    double kddot{0.0};
    std::array<ScalarLoop, 3> x0;     // central values, θ = π/2
    std::array<ScalarLoop, 3> xdot;   // first t-derivatives
    std::array<ScalarLoop, 3> xddot;  // second t-derivatives (kddot included)
};

/// Central loops x₁ = (i/2)(λ⁻¹-λ), x₂ = -(sinφ/2)(λ⁻¹+λ),
/// x₃ = -(cosφ/2)(λ⁻¹+λ).
std::array<ScalarLoop, 3> central_x(double phi);

std::array<ScalarLoop, 3> xdot(double phi);

std::array<ScalarLoop, 3> xddot(double phi, double kddot);

/// The unique K̈ making Σᵢ(x⁰ᵢ ẍᵢ + ẋᵢ²) ≡ 0; the residual is proportional
/// to the central quadric so the solve is scalar. λ-independence is asserted
/// at 8 circle samples (a transcription check on the derivative tables).
double resolve_kddot(double phi);

Family make_family(double phi, double kddot);
inline Family make_family(double phi) { return make_family(phi, resolve_kddot(phi)); }

/// θ(t) = π/2 + 2ν t (θ̈ = 0).
double theta_series(const Family& fam, double t);

/// x(t) = x⁰ + t ẋ + (t²/2) ẍ truncated at `order` ≤ 2; the s-field of the
/// ansatz is set to t.
LawsonAnsatz taylor_x(const Family& fam, double t, int order = 2);

/// The 1/sqrt(K) normalization applied λ-pointwise as a loop operation:
/// x ↦ x·(1 - Q/2 + 3Q²/8) with Q the quadric residual loop. Maps data with
/// residual ε onto the quadric up to O(ε³).
LawsonAnsatz quadric_normalize(const LawsonAnsatz& ansatz);

/// Series invariants (θ, W) = (π/2 + 2νs, 8π + 16πμs), O(s³) class.
std::pair<double, double> series_invariants(double phi, double s);

/// Second-order volume series 2π² - 4πφ + 16πν s + 16πμν s², s = 1/(2g+2).
double volume_expansion(double phi, int genus);

/// The λ=0-regular gauges (one per pole, exponent 1), usable for both the
/// Willmore residue formula and the holonomy formula.
std::vector<PoleGaugeData> true_gauges(const LawsonAnsatz& ansatz, double residue_scale = 1.0);

/// The arc-only gauges with the 1/sqrt(2(1-x₁)) normalizer; holonomy only.
std::vector<PoleGaugeData> fake_gauges(const LawsonAnsatz& ansatz, double residue_scale = 1.0);

/// h = [[0,-1],[1,0]], the constant gauge between η^{λ₁} and η^{λ₂}.
Mat2 lawson_h();

/// log Hol on order-`order` Taylor data at deformation parameter t.
cplx log_hol_lev(const Family& fam, double t, double quad_tol, int order = 2);

/// Willmore energy of the genus-g family member from the residue formula on
/// Taylor data (residues A_k/2: the value for the surface itself, not its
/// double cover).
double willmore_taylor(const Family& fam, double t, int order = 2);

/// Closed-form checks of the first-order derivative cascade.
struct FirstOrderReport {
    double max_x2dotx3p_err{0.0};   // ẋ₂x₃' + x₂ẋ₃' - ẋ₃x₂' - x₃ẋ₂' vs -(λ²+1)²/λ²·μ
    double max_dgdt_err{0.0};       // ∂g/∂t vs 2iλ⁻¹(λ+i)²μ
    double arc_integral_err{0.0};   // ∫∂g/∂t dλ vs (-8i+2π)μ
    double dloghol_err{0.0};        // FD d/dt log Hol vs 8πiμ (relative)
    double dloghol_re{0.0};         // |Re FD d/dt log Hol|
    double vdot_err{0.0};           // FD V̇ vs 16πν (relative)
};
FirstOrderReport first_order_identities(double phi, double quad_tol);

/// Closed-form checks of the second-order tables at circle samples.
struct SecondOrderReport {
    double max_xddot_wronsk_err{0.0};   // ẍ₂x₃'-ẍ₃x₂' vs -2(λ²-1)(λ²-3)/λ·μν
    double max_x_xddot_wronsk_err{0.0}; // x₂ẍ₃'-x₃ẍ₂' vs 6(λ⁴-1)/λ·μν
    double max_xdot_wronsk_err{0.0};    // ẋ₂ẋ₃'-ẋ₃ẋ₂' vs -8λ·μν
    double max_d2g_err{0.0};            // ∂²g/∂t² vs -16(λ+i)μν
    double arc_integral_err{0.0};       // ∫∂²g/∂t² dλ vs 32μν
    double comb_xddot_err{0.0};         // -cosφ·ẍ₂'+sinφ·ẍ₃' vs 24μν at λ=i
    double comb_xdot2_err{0.0};         // -cosφ·ẋ₂''+sinφ·ẋ₃'' vs 4μ at λ=i
};
SecondOrderReport second_order_identities(double phi, double quad_tol);

}  // namespace lawson
}  // namespace cmcvol
