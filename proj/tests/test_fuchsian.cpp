#include "cmcvol/fuchsian.hpp"
#include "cmcvol/lawson.hpp"
#include "doctest.h"

using namespace cmcvol;

namespace {

LawsonAnsatz central_ansatz(double phi, double s) {
    auto x = lawson::central_x(phi);
    return {phi, x[0], x[1], x[2], s};
}

}  // namespace

TEST_CASE("central residues at λ=i") {
    LawsonAnsatz ansatz = central_ansatz(kPi / 4.0, 0.02);
    FuchsianPotential pot = build_lawson_potential(ansatz);
    // substituting (x1,x2,x3)=(1,0,0): A1 = diag(1,-1)
    CHECK((pot.residues[0].eval(kI) - Mat2::diag(1.0, -1.0)).norm() < 1e-14);

    // Σ A_k = 0 coefficient-wise
    MatLoop sum = pot.residues[0] + pot.residues[1] + pot.residues[2] + pot.residues[3];
    for (int k = sum.min_degree(); k <= sum.max_degree(); ++k)
        CHECK(sum.coef(k).norm() == 0.0);

    // det A1(λ) = -(x1²+x2²+x3²) = -1 on the central quadric
    cplx lambda = std::exp(cplx(0.0, kPi / 5.0));
    auto [x1, x2, x3] = ansatz.eval(lambda);
    cplx oracle = -(x1 * x1 + x2 * x2 + x3 * x3);
    CHECK(std::abs(pot.residues[0].eval(lambda).det() - oracle) < 1e-13);
    CHECK(std::abs(oracle + 1.0) < 1e-13);
}

TEST_CASE("nilpotent λ⁻¹ residue part") {
    LawsonAnsatz ansatz = central_ansatz(0.9, 0.02);
    FuchsianPotential pot = build_lawson_potential(ansatz);
    for (const auto& res : pot.residues) {
        Mat2 head = res.coef(-1);
        CHECK(std::abs(head.det()) < 1e-16);
        CHECK(std::abs(head.trace()) < 1e-16);
    }

    // the build rejects a non-isotropic residue vector
    LawsonAnsatz bad = ansatz;
    bad.x2 = bad.x2 + ScalarLoop::monomial(-1, 0.25);
    CHECK_THROWS_AS(build_lawson_potential(bad), std::invalid_argument);
}

TEST_CASE("potential evaluation") {
    double phi = kPi / 4.0, s = 0.02;
    LawsonAnsatz ansatz = central_ansatz(phi, s);
    FuchsianPotential pot = build_lawson_potential(ansatz);

    // direct summation oracle at z=0
    Mat2 oracle = Mat2::zero();
    for (int k = 0; k < 4; ++k)
        oracle += (-1.0 / pot.punctures[k]) * pot.residues[k].eval(kI);
    oracle = s * oracle;
    CHECK((pot.eval(0.0, kI) - oracle).norm() < 1e-14);

    // ΣA_k = 0 makes η = O(z⁻²) at infinity
    cplx lambda(0.3, 0.8);
    double bound3 = (1e3 * 1e3 * pot.eval(1e3, lambda)).norm();
    double bound4 = (1e4 * 1e4 * pot.eval(1e4, lambda)).norm();
    CHECK(bound3 < 10.0);
    CHECK(bound4 < 10.0);
    CHECK(std::abs(bound3 - bound4) / bound3 < 2e-3);  // both approximate the same z⁻² coefficient

    // simple pole: (z-p1)·η → s·A1 along four approach directions
    for (cplx dir : {cplx(1.0), cplx(0.0, 1.0), cplx(-0.6, 0.8), cplx(0.3, -0.95)}) {
        cplx z = pot.punctures[0] + 1e-6 * dir;
        Mat2 limit = (z - pot.punctures[0]) * pot.eval(z, lambda);
        CHECK((limit - s * pot.residues[0].eval(lambda)).norm() < 1e-6);
    }
    CHECK_THROWS_AS(pot.eval(pot.punctures[1], lambda), std::domain_error);
}

TEST_CASE("quadric residual") {
    double phi = 1.1;
    LawsonAnsatz ansatz = central_ansatz(phi, 0.02);
    for (int i = 0; i < 16; ++i) {
        cplx lambda = std::exp(cplx(0.0, 0.05 + 2.0 * kPi * i / 16.0));
        CHECK(std::abs(quadric_residual(ansatz, lambda)) < 1e-14);
    }

    // constant section x = (1,0,0)
    LawsonAnsatz constant{phi, ScalarLoop::constant(1.0), ScalarLoop(), ScalarLoop(), 0.02};
    CHECK(std::abs(quadric_residual(constant, cplx(0.4, 0.7))) < 1e-16);

    // perturbation x2 → x2 + ε gives residual 2εx2 + ε² (algebraic expansion)
    double eps = 1e-3;
    LawsonAnsatz perturbed = ansatz;
    perturbed.x2 = perturbed.x2 + ScalarLoop::constant(eps);
    cplx lambda = std::exp(cplx(0.0, 0.4));
    cplx x2 = ansatz.x2.eval(lambda);
    CHECK(std::abs(quadric_residual(perturbed, lambda) - (2.0 * eps * x2 + eps * eps)) < 1e-15);

    // det A_k + quadric + 1 = 0 at 16 samples, for an off-quadric ansatz too
    LawsonAnsatz off = ansatz;
    off.x3 = off.x3 + ScalarLoop::monomial(1, cplx(0.05, 0.02));
    FuchsianPotential pot = build_lawson_potential(off);
    for (int i = 0; i < 16; ++i) {
        cplx lam = std::exp(cplx(0.0, 0.21 + 2.0 * kPi * i / 16.0));
        for (const auto& res : pot.residues) {
            cplx relation = res.eval(lam).det() + quadric_residual(off, lam) + 1.0;
            CHECK(std::abs(relation) < 1e-12);
        }
    }
}

TEST_CASE("symmetry orbit") {
    double phi = kPi / 3.0;
    LawsonAnsatz ansatz = central_ansatz(phi, 0.02);
    auto orbit = symmetry_orbit(ansatz);
    auto cs = symmetry_matrices();

    // C3 conjugation flips the off-diagonal sign of A1 (x2,x3 → -x2,-x3)
    cplx lambda = std::exp(cplx(0.0, 0.77));
    Mat2 a1 = orbit[0].residues[0].eval(lambda);
    Mat2 a1_c3 = orbit[2].residues[0].eval(lambda);
    CHECK(std::abs(a1_c3.a - a1.a) < 1e-14);
    CHECK(std::abs(a1_c3.b + a1.b) < 1e-14);
    CHECK(std::abs(a1_c3.c + a1.c) < 1e-14);

    // direct conjugation oracle
    Mat2 oracle = cs[2] * a1 * inverse(cs[2]);
    CHECK((a1_c3 - oracle).norm() < 1e-14);

    // at λ=i the central A1 is diagonal, fixed by the diagonal C3
    Mat2 at_i = orbit[0].residues[0].eval(kI);
    Mat2 at_i_c3 = orbit[2].residues[0].eval(kI);
    CHECK((at_i - at_i_c3).norm() < 1e-14);
}
