#include "cmcvol/lawson.hpp"
#include "cmcvol/quadrature.hpp"
#include "doctest.h"

using namespace cmcvol;
using namespace cmcvol::lawson;

TEST_CASE("shape constants") {
    auto c4 = shape_constants(kPi / 4.0);
    CHECK(std::abs(c4.mu - (-std::log(2.0) / 2.0)) < 1e-15);
    CHECK(std::abs(c4.nu) < 1e-15);

    auto c3 = shape_constants(kPi / 3.0);
    double nu_oracle = std::sqrt(3.0) / 2.0 * std::log(std::sqrt(3.0));
    CHECK(std::abs(c3.nu - nu_oracle) < 1e-12);
    CHECK(std::abs(c3.nu - 0.4757133) < 1e-6);
    double mu_oracle = 0.25 * std::log(0.5) + 0.75 * std::log(std::sqrt(3.0) / 2.0);
    CHECK(std::abs(c3.mu - mu_oracle) < 1e-12);
    CHECK(std::abs(c3.mu - (-0.2811677)) < 1e-6);

    for (double phi : {0.2, 0.7, 1.2, 1.5}) CHECK(shape_constants(phi).mu <= 0.0);
}

TEST_CASE("central values") {
    double phi = 1.0;
    auto x = central_x(phi);
    CHECK(std::abs(x[0].eval(kI) - 1.0) < 1e-15);
    CHECK(std::abs(x[1].eval(kI)) < 1e-15);
    CHECK(std::abs(x[2].eval(kI)) < 1e-15);
    CHECK(std::abs(x[0].eval(-kI) + 1.0) < 1e-15);
    CHECK(std::abs(x[1].eval(-kI)) < 1e-15);

    // quadric ≡ 1 identically
    LawsonAnsatz ansatz{phi, x[0], x[1], x[2], 0.01};
    ScalarLoop residual = quadric_residual_loop(ansatz);
    for (int k = residual.min_degree(); k <= residual.max_degree(); ++k)
        CHECK(std::abs(residual.coef(k)) < 1e-15);
}

TEST_CASE("first-order derivative loops") {
    double phi = 0.9;
    auto xd = xdot(phi);
    auto sc = shape_constants(phi);

    // ẋ₁ = i(λ²+1)·sin2φ·log tanφ vanishes at λ = i
    CHECK(std::abs(xd[0].eval(kI)) < 1e-14);

    // -cosφ ẋ₂' + sinφ ẋ₃' = 4iμ at λ = i (the -8μ chain of the first
    // derivative of the boundary term)
    cplx comb = -std::cos(phi) * xd[1].derivative().eval(kI) +
                std::sin(phi) * xd[2].derivative().eval(kI);
    CHECK(std::abs(comb - 4.0 * kI * sc.mu) < 1e-13);
    cplx chain = 2.0 * kI * comb;  // equals the t-derivative of the boundary log at λ=i
    CHECK(std::abs(chain - (-8.0 * sc.mu)) < 1e-12);

    // first-order quadric: Σ x⁰ᵢ ẋᵢ ≡ 0
    auto x0 = central_x(phi);
    ScalarLoop first = x0[0] * xd[0] + x0[1] * xd[1] + x0[2] * xd[2];
    for (int k = first.min_degree(); k <= first.max_degree(); ++k)
        CHECK(std::abs(first.coef(k)) < 1e-13);

    // the printed simplification at a 16-sample sweep
    Family fam = make_family(phi);
    ScalarLoop dx2 = fam.x0[1].derivative(), dx3 = fam.x0[2].derivative();
    ScalarLoop lhs = fam.xdot[1] * dx3 + fam.x0[1] * fam.xdot[2].derivative() -
                     fam.xdot[2] * dx2 - fam.x0[2] * fam.xdot[1].derivative();
    cplx probe = std::exp(cplx(0.0, kPi / 7.0));
    cplx expect = -std::pow(probe * probe + 1.0, 2) / (probe * probe) * sc.mu;
    CHECK(std::abs(lhs.eval(probe) - expect) < 1e-12);
}

TEST_CASE("second-order derivative loops") {
    double phi = 0.8;
    auto sc = shape_constants(phi);
    double mn = sc.mu * sc.nu;
    Family fam = make_family(phi);

    // -cosφ ẍ₂' + sinφ ẍ₃' = 24 μν at λ=i; the kddot terms cancel here
    for (double kd : {fam.kddot, 0.0, -3.0}) {
        auto xdd = xddot(phi, kd);
        cplx comb = -std::cos(phi) * xdd[1].derivative().eval(kI) +
                    std::sin(phi) * xdd[2].derivative().eval(kI);
        CHECK(std::abs(comb - 24.0 * mn) < 1e-12);
    }

    // kddot direction is central: ẍ(k1) - ẍ(k2) = -((k1-k2)/2)·x⁰
    auto d1 = xddot(phi, 1.3), d2 = xddot(phi, -0.4);
    auto x0 = central_x(phi);
    for (int i = 0; i < 3; ++i) {
        ScalarLoop diff = d1[i] - d2[i] + cplx(0.5 * (1.3 - (-0.4))) * x0[i];
        for (int k = diff.min_degree(); k <= diff.max_degree(); ++k)
            CHECK(std::abs(diff.coef(k)) < 1e-14);
    }

    // ẍ₂x₃' - ẍ₃x₂' = -2(λ²-1)(λ²-3)/λ·μν at λ = e^{iπ/5}
    cplx probe = std::exp(cplx(0.0, kPi / 5.0));
    ScalarLoop w = fam.xddot[1] * fam.x0[2].derivative() - fam.xddot[2] * fam.x0[1].derivative();
    cplx p2 = probe * probe;
    CHECK(std::abs(w.eval(probe) - (-2.0 * (p2 - 1.0) * (p2 - 3.0) / probe * mn)) < 1e-12);

    // full 16-sample identity suite
    auto rep = second_order_identities(phi, 1e-12);
    CHECK(rep.max_xddot_wronsk_err < 1e-12);
    CHECK(rep.max_x_xddot_wronsk_err < 1e-12);
    CHECK(rep.max_xdot_wronsk_err < 1e-12);
    CHECK(rep.max_d2g_err < 1e-12);
    CHECK(rep.arc_integral_err < 1e-10);
    CHECK(rep.comb_xddot_err < 1e-12);
    CHECK(rep.comb_xdot2_err < 1e-12);
}

TEST_CASE("resolve_kddot") {
    double phi = kPi / 4.0;
    double kd = resolve_kddot(phi);

    // defining property: residual vanishes at a point not used in the solve
    auto x0 = central_x(phi);
    auto xd = xdot(phi);
    auto xdd = xddot(phi, kd);
    cplx probe = std::exp(cplx(0.0, kPi / 3.0));
    cplx residual = 0.0;
    for (int i = 0; i < 3; ++i)
        residual += x0[i].eval(probe) * xdd[i].eval(probe) + std::pow(xd[i].eval(probe), 2);
    CHECK(std::abs(residual) < 1e-10);
}

TEST_CASE("taylor ansatz") {
    double phi = kPi / 3.0;
    Family fam = make_family(phi);

    LawsonAnsatz at0 = taylor_x(fam, 0.0);
    auto x0 = central_x(phi);
    for (int k = -1; k <= 3; ++k) CHECK(std::abs(at0.x1.coef(k) - x0[0].coef(k)) < 1e-16);

    // order-2 quadric residual is O(t³): below 5e-6 at t=0.01 and shrinking
    // by ~8x when t halves
    auto residual_norm = [&](double t) {
        LawsonAnsatz a = taylor_x(fam, t, 2);
        double worst = 0.0;
        for (int i = 0; i < 12; ++i) {
            cplx lam = std::exp(cplx(0.0, 0.1 + 2.0 * kPi * i / 12.0));
            worst = std::max(worst, std::abs(quadric_residual(a, lam)));
        }
        return worst;
    };
    double r1 = residual_norm(0.01), r2 = residual_norm(0.005);
    CHECK(r1 < 5e-6);
    double ratio = r1 / r2;
    CHECK(ratio > 6.0);
    CHECK(ratio < 10.0);

    // order-1 diagonality: x₂(t, e^{iθ(t)}) = O(t²)
    auto offdiag = [&](double t) {
        LawsonAnsatz a = taylor_x(fam, t, 1);
        return std::abs(a.x2.eval(std::exp(cplx(0.0, theta_series(fam, t)))));
    };
    double o1 = offdiag(1e-3), o2 = offdiag(5e-4);
    CHECK(o1 / o2 > 3.0);
    CHECK(o1 / o2 < 5.0);
    CHECK(o1 < 1e-4);
}

TEST_CASE("series invariants and volume expansion") {
    auto [theta4, w4] = series_invariants(kPi / 4.0, 0.037);
    CHECK(theta4 == kPi / 2.0);
    CHECK(std::abs(w4 - (8.0 * kPi - 8.0 * kPi * std::log(2.0) * 0.037)) < 1e-12);

    auto [theta0, w0] = series_invariants(0.8, 0.0);
    CHECK(theta0 == kPi / 2.0);
    CHECK(w0 == 8.0 * kPi);

    auto sc3 = shape_constants(kPi / 3.0);
    auto [theta3, w3] = series_invariants(kPi / 3.0, 0.05);
    CHECK(std::abs(theta3 - 1.618366) < 1e-5);
    CHECK(std::abs(w3 - (8.0 * kPi + 16.0 * kPi * sc3.mu * 0.05)) < 1e-12);

    for (int g : {2, 7, 19, 100}) CHECK(std::abs(volume_expansion(kPi / 4.0, g) - kPi * kPi) < 1e-12);

    double v = volume_expansion(kPi / 3.0, 9);
    double s = 1.0 / 20.0;
    double oracle = 2.0 * kPi * kPi - 4.0 * kPi * kPi / 3.0 + 16.0 * kPi * sc3.nu * s +
                    16.0 * kPi * sc3.mu * sc3.nu * s * s;
    CHECK(std::abs(v - oracle) < 1e-12);

    // wedge-complement limit for g → ∞
    CHECK(std::abs(volume_expansion(0.6, 100000) - (2.0 * kPi * kPi - 4.0 * kPi * 0.6)) < 1e-3);
}

TEST_CASE("quadric normalization") {
    Family fam = make_family(kPi / 3.0);
    LawsonAnsatz raw = taylor_x(fam, 0.01, 2);
    LawsonAnsatz norm = quadric_normalize(raw);
    double before = 0.0, after = 0.0;
    for (int i = 0; i < 12; ++i) {
        cplx lam = std::exp(cplx(0.0, 0.2 + 2.0 * kPi * i / 12.0));
        before = std::max(before, std::abs(quadric_residual(raw, lam)));
        after = std::max(after, std::abs(quadric_residual(norm, lam)));
    }
    CHECK(before > 1e-7);            // the truncated data misses the quadric at O(t³)
    CHECK(after < 1e-13);            // projection lands on it to O(t⁹)
    // and the data barely moves
    CHECK(std::abs(norm.x2.eval(kI) - raw.x2.eval(kI)) < 2.0 * before);
}

TEST_CASE("first-order identity report") {
    auto rep = first_order_identities(kPi / 5.0, 1e-12);
    CHECK(rep.max_x2dotx3p_err < 1e-12);
    CHECK(rep.max_dgdt_err < 1e-12);
    CHECK(rep.arc_integral_err < 1e-10);
    CHECK(rep.dloghol_err < 1e-5);
    CHECK(rep.dloghol_re < 1e-8);
    CHECK(rep.vdot_err < 1e-4);
}
