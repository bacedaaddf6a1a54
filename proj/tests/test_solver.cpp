#include "cmcvol/lawson.hpp"
#include "cmcvol/monodromy.hpp"
#include "cmcvol/solver.hpp"
#include "doctest.h"

using namespace cmcvol;
using namespace cmcvol::msolver;

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("residual of the central ansatz in the small-scale limit") {
    double phi = kPi / 4.0;
    auto x = lawson::central_x(phi);
    LawsonAnsatz central{phi, x[0], x[1], x[2], 0.0};
    SolverConfig cfg;
    auto r = residual_vector(central, kPi / 2.0, 1e-6, cfg);
    CHECK(norm2(r) < 1e-8);
}

TEST_CASE("quadric violation feeds through to the residual") {
    double phi = kPi / 4.0;
    auto x = lawson::central_x(phi);
    LawsonAnsatz bumped{phi, x[0], x[1] + ScalarLoop::constant(1e-3), x[2], 0.0};
    SolverConfig cfg;
    auto r = residual_vector(bumped, kPi / 2.0, 1e-6, cfg);
    CHECK(norm2(r) >= 1e-3);
}

TEST_CASE("Taylor-data residual scales as s^3") {
    double phi = kPi / 3.0;
    lawson::Family fam = lawson::make_family(phi);
    SolverConfig cfg;
    auto rnorm = [&](double s) {
        LawsonAnsatz a = lawson::taylor_x(fam, s, 2);
        return norm2(residual_vector(a, lawson::theta_series(fam, s), s, cfg));
    };
    double r1 = rnorm(0.01), r2 = rnorm(0.005);
    double ratio = r1 / r2;
    CHECK(ratio > 6.0);
    CHECK(ratio < 10.0);
}

TEST_CASE("solve converges from the Taylor init and respects the symmetry orbit") {
    const double phi = kPi / 4.0;
    const int genus = 50;
    const double s = 1.0 / (2.0 * genus + 2.0);
    SolverConfig cfg;
    cfg.degree = 4;
    cfg.samples = 10;
    cfg.tol = 5e-8;  // the degree-4 truncation floor sits just below this

    SolvedFamily solved = solve(phi, s, cfg);
    CHECK(solved.residual_norm < 5e-8);
    CHECK(solved.iterations <= 15);
    CHECK(std::abs(solved.theta - kPi / 2.0) < 1e-6);

    // distance to the Taylor prediction is O(s³)
    lawson::Family fam = lawson::make_family(phi);
    LawsonAnsatz taylor = lawson::taylor_x(fam, s, 2);
    double dist = coefficient_distance(solved.ansatz, taylor, cfg.degree);
    CHECK(dist < 100.0 * s * s * s);
    CHECK(dist > 0.0);

    // generalization: diagnostics at a held-out circle sample
    FuchsianPotential pot = build_lawson_potential(solved.ansatz);
    cplx held_out = std::exp(cplx(0.0, 1.234567));
    MonodromyRep rep = monodromies(pot, held_out, cfg.ode_tol);
    auto diag = monodromy_diagnostics(rep, s);
    CHECK(diag.im_tr_12 < 1e-6);
    CHECK(diag.product_deviation < 1e-8);
    CHECK(std::abs(rep.monodromies[0].trace() - 2.0 * std::cos(2.0 * kPi * s)) < 1e-6);

    // solving from the C3-conjugated init lands on the conjugated solution
    SolvedFamily init_c3;
    init_c3.ansatz = taylor;
    init_c3.ansatz.x2 = -taylor.x2;
    init_c3.ansatz.x3 = -taylor.x3;
    init_c3.theta = lawson::theta_series(fam, s);
    init_c3.s = s;
    SolvedFamily solved_c3 = solve(phi, s, cfg, init_c3);
    CHECK(solved_c3.residual_norm < 5e-8);
    CHECK(std::abs(solved_c3.theta - solved.theta) < 1e-7);
    LawsonAnsatz flipped = solved_c3.ansatz;
    flipped.x2 = -flipped.x2;
    flipped.x3 = -flipped.x3;
    CHECK(coefficient_distance(flipped, solved.ansatz, cfg.degree) < 1e-6);
}
