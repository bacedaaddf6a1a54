#include "cmcvol/closedform.hpp"

#include <cmath>
#include <stdexcept>

#include "cmcvol/quadrature.hpp"

namespace cmcvol {
namespace closedform {

SpherePipeline sphere_pipeline(double alpha) {
    if (!(alpha > 0.0 && alpha < kPi)) throw std::invalid_argument("sphere_pipeline: alpha outside (0, pi)");
    SpherePipeline pipe;
    // Residue at z=0 of [[0,λ⁻¹],[λ,0]] dz/z; at w=1/z the form picks up a sign.
    MatLoop residue0 = mat_loop(ScalarLoop(), ScalarLoop::monomial(-1, 1.0),
                                ScalarLoop::monomial(1, 1.0), ScalarLoop());
    MatLoop residue_inf = -residue0;

    PoleGaugeData p0;
    p0.residue = residue0;
    p0.gauge.k = 1;
    p0.gauge.P = mat_loop(ScalarLoop::constant(1.0), ScalarLoop(),
                          ScalarLoop::monomial(1, 1.0), ScalarLoop::constant(1.0));
    PoleGaugeData pinf;
    pinf.residue = residue_inf;
    pinf.gauge.k = 1;
    pinf.gauge.P = mat_loop(ScalarLoop::constant(1.0), ScalarLoop(),
                            ScalarLoop::monomial(1, -1.0), ScalarLoop::constant(1.0));
    pipe.poles = {p0, pinf};
    cplx d = std::exp(cplx(0.0, alpha));
    pipe.h = Mat2::diag(d, 1.0 / d);
    pipe.sym = make_sym(-alpha, alpha);
    return pipe;
}

InvariantReport sphere_case(double alpha) {
    if (!(alpha > 0.0 && alpha < kPi)) throw std::invalid_argument("sphere_case: alpha outside (0, pi)");
    InvariantReport rep;
    rep.W = 4.0 * kPi;
    rep.H = mean_curvature(std::exp(cplx(0.0, -alpha)), std::exp(cplx(0.0, alpha)));
    rep.log_hol = 0.0;
    rep.V = volume_from_invariants(rep.W, -alpha, alpha, rep.log_hol);
    rep.normalization = "single cover, representative in [0, 2pi^2)";
    return rep;
}

cplx torus_lambda2(const TorusCase& c) {
    cplx z(c.r, c.s);
    cplx zbar(c.r, -c.s);
    return (z * z) / (zbar * zbar);
}

// Lifted angle of λ₂ = e^{iτ₂}, continuous from τ₂(s→0) = 0.
static double torus_tau2(const TorusCase& c) { return 4.0 * std::atan2(c.s, c.r); }

InvariantReport torus_case(const TorusCase& c) {
    if (std::abs(c.r * c.r + c.s * c.s - 1.0) > 1e-14)
        throw std::invalid_argument("torus_case: r^2 + s^2 must be 1");
    InvariantReport rep;
    double rs = c.r * c.s;
    rep.W = kPi * kPi / rs;
    rep.H = (1.0 - 2.0 * c.s * c.s) / (2.0 * rs);
    rep.log_hol = mod_2pi_i(kPi / (4.0 * rs) * kI * torus_tau2(c) - kI * kPi);
    rep.V = 2.0 * kPi * kPi * c.s * c.s;
    rep.normalization = "single cover, closed form";
    return rep;
}

TorusTransportReport torus_transport_check(const TorusCase& c, double quad_tol) {
    if (std::abs(c.r * c.r + c.s * c.s - 1.0) > 1e-14)
        throw std::invalid_argument("torus_transport_check: r^2 + s^2 must be 1");
    TorusTransportReport rep;
    double rs = c.r * c.s;

    // Fundamental-domain area by composite midpoint rule (the integrand of
    // the (x,y) factor is constant, the quadrature is a consistency check).
    const int n = 32;
    double area = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) area += (c.r / n) * (c.s / n);
    rep.area = area;

    // ∫ tr(A∧A') over Σ = 2π²i/(r²s²ξ) · area; transport across the ξ-arc.
    double xi_angle = 2.0 * std::atan2(c.s, c.r);
    auto integrand = [&](cplx xi) {
        return 2.0 * kPi * kPi * kI / (c.r * c.r * c.s * c.s * xi) * rep.area;
    };
    QuadResult q = integrate_arc(integrand, 0.0, xi_angle, quad_tol);
    rep.quad_error = q.error;
    rep.x_xi2 = std::exp(-kI / (4.0 * kPi) * q.value);
    rep.x_xi2_closed = std::exp(kPi / (4.0 * rs) * kI * torus_tau2(c));
    rep.theta_factor = -1.0;
    rep.hol = rep.x_xi2 * rep.theta_factor;
    return rep;
}

}  // namespace closedform
}  // namespace cmcvol
