#include "cmcvol/closedform.hpp"
#include "cmcvol/quadrature.hpp"
#include "doctest.h"

using namespace cmcvol;
using namespace cmcvol::closedform;

TEST_CASE("sphere case") {
    double alpha = 0.65, theta = 2.0 * alpha;
    InvariantReport rep = sphere_case(alpha);
    CHECK(rep.W == 4.0 * kPi);
    CHECK(std::abs(rep.H + 1.0 / std::tan(alpha)) < 1e-12);
    CHECK(std::abs(rep.log_hol) == 0.0);
    CHECK(std::abs(rep.V - kPi * (theta - std::sin(theta))) < 1e-12);

    // spherical-cap oracle: V = 4π ∫₀^{θ/2} sin² r dr
    auto cap = integrate([](double r) { return cplx(std::sin(r) * std::sin(r)); }, 0.0,
                         theta / 2.0, 1e-13);
    CHECK(std::abs(rep.V - 4.0 * kPi * cap.value.real()) < 1e-10);

    // the generic regularizing pipeline reproduces the trivial holonomy
    auto pipe = sphere_pipeline(alpha);
    cplx log_hol = hol_regularizing(pipe.poles, pipe.h, pipe.sym, 1e-12);
    CHECK(std::abs(mod_2pi_i(log_hol)) < 1e-9);
    // and the doubled Willmore energy through the residue formula
    CHECK(std::abs(willmore_residue(pipe.poles) - 8.0 * kPi) < 1e-9);
}

TEST_CASE("torus case") {
    double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    InvariantReport clifford = torus_case({inv_sqrt2, inv_sqrt2});
    CHECK(std::abs(clifford.H) < 1e-14);
    CHECK(std::abs(clifford.W - 2.0 * kPi * kPi) < 1e-12);
    CHECK(std::abs(clifford.V - kPi * kPi) < 1e-12);
    CHECK(std::abs(torus_lambda2({inv_sqrt2, inv_sqrt2}) + 1.0) < 1e-14);

    TorusCase general{0.8, 0.6};
    InvariantReport rep = torus_case(general);
    double tau2 = 4.0 * std::atan2(general.s, general.r);
    // sin τ₂ = 4rs(r²-s²)
    CHECK(std::abs(std::sin(tau2) -
                   4.0 * general.r * general.s *
                       (general.r * general.r - general.s * general.s)) < 1e-14);
    // the holonomy round trip recovers the enclosed volume
    cplx round_trip = hol_from_invariants(rep.W, 0.0, tau2, rep.V);
    CHECK(dist_mod_2pi_i(round_trip, rep.log_hol) < 1e-12);
    CHECK(std::abs(volume_from_invariants(rep.W, 0.0, tau2, rep.log_hol) -
                   2.0 * kPi * kPi * general.s * general.s) < 1e-12);

    CHECK_THROWS_AS(torus_case({0.8, 0.7}), std::invalid_argument);
}

TEST_CASE("torus transport check") {
    double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    auto rep = torus_transport_check({inv_sqrt2, inv_sqrt2}, 1e-12);
    CHECK(std::abs(rep.area - 0.5) < 1e-14);
    CHECK(std::abs(rep.theta_factor + 1.0) == 0.0);
    CHECK(std::abs(rep.x_xi2 - std::exp(kI * kPi * kPi / 2.0)) < 1e-11);
    CHECK(std::abs(rep.x_xi2 - rep.x_xi2_closed) < 1e-11);

    auto general = torus_transport_check({0.8, 0.6}, 1e-12);
    CHECK(std::abs(general.area - 0.48) < 1e-14);
    CHECK(std::abs(general.x_xi2 - general.x_xi2_closed) < 1e-11);
    // assembled holonomy matches the closed form
    InvariantReport closed = torus_case({0.8, 0.6});
    CHECK(dist_mod_2pi_i(std::log(general.hol), closed.log_hol) < 1e-11);
}
