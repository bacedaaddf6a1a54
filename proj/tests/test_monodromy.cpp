#include "cmcvol/lawson.hpp"
#include "cmcvol/monodromy.hpp"
#include "doctest.h"

using namespace cmcvol;

namespace {

FuchsianPotential single_pole(const MatLoop& residue) {
    FuchsianPotential pot;
    pot.punctures = {0.0};
    pot.residues = {residue};
    return pot;
}

FuchsianPotential central_potential(double phi, double s) {
    auto x = lawson::central_x(phi);
    return build_lawson_potential({phi, x[0], x[1], x[2], s});
}

}  // namespace

TEST_CASE("closed-form monodromies around one pole") {
    cplx a(0.31, 0.17);
    FuchsianPotential abelian = single_pole(
        mat_loop(ScalarLoop::constant(a), ScalarLoop(), ScalarLoop(), ScalarLoop::constant(-a)));
    Mat2 m = monodromy_around(abelian, 0, 1.0, 1e-12, 2.0);
    cplx e = std::exp(2.0 * kPi * kI * a);
    CHECK((m - Mat2::diag(e, 1.0 / e)).norm() < 1e-10);

    FuchsianPotential nilpotent = single_pole(
        mat_loop(ScalarLoop(), ScalarLoop::constant(1.0), ScalarLoop(), ScalarLoop()));
    m = monodromy_around(nilpotent, 0, 1.0, 1e-12, 2.0);
    CHECK((m - Mat2{1.0, 2.0 * kPi * kI, 0.0, 1.0}).norm() < 1e-10);

    // [[0,λ⁻¹],[λ,0]] dz/z: residue squares to Id, so the monodromy is
    // exp(2πi A) — compare against the matrix-exponential oracle.
    FuchsianPotential sphere = single_pole(mat_loop(
        ScalarLoop(), ScalarLoop::monomial(-1, 1.0), ScalarLoop::monomial(1, 1.0), ScalarLoop()));
    cplx lambda(0.4, 0.6);
    m = monodromy_around(sphere, 0, lambda, 1e-12, 2.0);
    Mat2 oracle = mat2_exp(2.0 * kPi * kI * sphere.residues[0].eval(lambda));
    CHECK((m - oracle).norm() < 1e-10);
    CHECK((m - Mat2::identity()).norm() < 1e-10);
}

TEST_CASE("central Lawson monodromies") {
    const double phi = kPi / 4.0, s = 0.02, tol = 1e-12;
    FuchsianPotential pot = central_potential(phi, s);

    // diagonal at λ = e^{iπ/2} (the θ = π/2 condition)
    Mat2 m1 = monodromy_around(pot, 0, kI, tol);
    CHECK(std::abs(m1.b) < 1e-10);
    CHECK(std::abs(m1.c) < 1e-10);

    // eigenvalues e^{±2πis} anywhere on the circle
    cplx lambda = std::exp(cplx(0.0, 0.83));
    Mat2 m = monodromy_around(pot, 0, lambda, tol);
    auto [e1, e2] = eig2(m);
    cplx target = std::exp(2.0 * kPi * kI * s);
    double err = std::min(std::abs(e1 - target), std::abs(e1 - 1.0 / target));
    CHECK(err < 1e-8);
    CHECK(std::abs(e1 * e2 - 1.0) < 1e-9);

    // det drift within 10·tol of 1
    CHECK(std::abs(m.det() - 1.0) < 1e-10);
}

TEST_CASE("homotopy invariance of the puncture loop") {
    const double phi = kPi / 3.0, s = 0.02, tol = 1e-12;
    FuchsianPotential pot = central_potential(phi, s);
    cplx lambda = std::exp(cplx(0.0, 1.1));
    Mat2 reference = monodromy_around(pot, 0, lambda, tol);

    // same loop with half the circle radius
    PlanePath path = puncture_loop(pot, 0);
    const Segment& circle = path.segments[1];
    double r = circle.radius / 2.0;
    cplx pk = circle.center;
    double approach = circle.angle0;
    cplx entry = pk + r * std::exp(cplx(0.0, approach));
    PlanePath half;
    half.segments.push_back(Segment::line(0.0, entry));
    half.segments.push_back(Segment::arc(pk, r, approach, approach + 2.0 * kPi));
    half.segments.push_back(Segment::line(entry, 0.0));
    Mat2 halved = transport(pot, half, lambda, tol);
    CHECK((reference - halved).norm() < 1e-8);

    // a path through a puncture is rejected
    PlanePath bad;
    bad.segments.push_back(Segment::line(0.0, 2.0 * pk));
    CHECK_THROWS(transport(pot, bad, lambda, tol));
}

TEST_CASE("four-loop product and trace constancy") {
    const double phi = 0.6, s = 0.02, tol = 1e-12;
    FuchsianPotential pot = central_potential(phi, s);

    cplx tr_ref;
    for (int i = 0; i < 8; ++i) {
        cplx lambda = std::exp(cplx(0.0, 0.11 + 2.0 * kPi * i / 8.0));
        MonodromyRep rep = monodromies(pot, lambda, tol);
        auto diag = monodromy_diagnostics(rep, s);
        CHECK(diag.product_deviation < 1e-8);
        for (double d : diag.det_drift) CHECK(d < 1e-10);
        cplx tr = rep.monodromies[0].trace();
        if (i == 0)
            tr_ref = tr;
        else
            CHECK(std::abs(tr - tr_ref) < 1e-7);
        // constant eigenvalues: tr = 2cos(2πs)
        CHECK(std::abs(tr - 2.0 * std::cos(2.0 * kPi * s)) < 1e-8);
    }
}

TEST_CASE("diagnostics of the central representation") {
    const double phi = kPi / 3.0, s = 0.02, tol = 1e-12;
    FuchsianPotential pot = central_potential(phi, s);

    MonodromyRep rep = monodromies(pot, kI, tol);
    auto diag = monodromy_diagnostics(rep, s);
    for (double offdiag : diag.offdiag_norm) CHECK(offdiag < 1e-9);
    CHECK(diag.product_deviation < 1e-8);

    // The central family solves the unitarizability condition in the s→0
    // limit: the trace-reality surrogate decays cubically along the family.
    cplx lambda = std::exp(cplx(0.0, kPi / 3.0));
    auto im_tr = [&](double scale) {
        FuchsianPotential p = central_potential(phi, scale);
        auto d = monodromy_diagnostics(monodromies(p, lambda, tol), scale);
        return std::max({d.im_tr_12, d.im_tr_23, d.im_tr_13});
    };
    double coarse = im_tr(0.02), fine = im_tr(0.01);
    CHECK(coarse < 1e-3);
    CHECK(coarse / fine > 6.0);
    CHECK(coarse / fine < 10.0);
    CHECK(im_tr(1e-5) < 1e-9);
}

TEST_CASE("symmetry orbit preserves monodromy traces") {
    const double phi = kPi / 3.0, s = 0.03, tol = 1e-11;
    auto x = lawson::central_x(phi);
    auto orbit = symmetry_orbit({phi, x[0], x[1], x[2], s});
    cplx lambda = std::exp(cplx(0.0, 0.45));
    MonodromyRep base = monodromies(orbit[0], lambda, tol);
    for (int m = 1; m < 4; ++m) {
        MonodromyRep conj = monodromies(orbit[m], lambda, tol);
        for (int k = 0; k < 4; ++k)
            CHECK(std::abs(base.monodromies[k].trace() - conj.monodromies[k].trace()) < 1e-8);
        cplx t12 = (base.monodromies[0] * base.monodromies[1]).trace();
        cplx c12 = (conj.monodromies[0] * conj.monodromies[1]).trace();
        CHECK(std::abs(t12 - c12) < 1e-8);
    }
}
