#include "cmcvol/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "cmcvol/closedform.hpp"
#include "cmcvol/lawson.hpp"
#include "cmcvol/monodromy.hpp"
#include "cmcvol/quadrature.hpp"
#include "cmcvol/solver.hpp"

namespace cmcvol {
namespace acceptance {

namespace {

struct Check {
    double worst{0.0};
    std::ostringstream detail;

    void record(const std::string& label, double err) {
        worst = std::max(worst, err);
        if (detail.tellp() > 0) detail << "; ";
        detail << label << "=" << err;
    }
};

// -------- criterion 1: sphere holonomy through the regularizing-gauge formula
CriterionResult c1() {
    Check chk;
    for (double alpha : {0.6, 1.1}) {
        auto pipe = closedform::sphere_pipeline(alpha);
        cplx log_hol = hol_regularizing(pipe.poles, pipe.h, pipe.sym, 1e-12);
        chk.record("alpha=" + std::to_string(alpha), std::abs(mod_2pi_i(log_hol)));
    }
    return {1, "sphere holonomy (regularizing gauges)", chk.worst < 1e-9, chk.worst, 1e-9, 0.0,
            chk.detail.str()};
}

// -------- criterion 2: sphere volume π(θ - sin θ)
CriterionResult c2() {
    Check chk;
    for (double theta : {0.5, 1.0, 2.0}) {
        auto pipe = closedform::sphere_pipeline(theta / 2.0);
        cplx log_hol = hol_regularizing(pipe.poles, pipe.h, pipe.sym, 1e-12);
        double v = volume_from_invariants(4.0 * kPi, 0.0, theta, mod_2pi_i(log_hol));
        double expect = kPi * (theta - std::sin(theta));
        chk.record("theta=" + std::to_string(theta), std::abs(v - expect));
    }
    return {2, "sphere volume", chk.worst < 1e-8, chk.worst, 1e-8, 0.0, chk.detail.str()};
}

// -------- criterion 3: torus closed forms and the holonomy round trip
CriterionResult c3() {
    Check chk;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (auto [r, s] : {std::pair{inv_sqrt2, inv_sqrt2}, std::pair{0.8, 0.6}}) {
        closedform::TorusCase c{r, s};
        auto rep = closedform::torus_case(c);
        chk.record("W", std::abs(rep.W - kPi * kPi / (r * s)));
        double tau2 = 4.0 * std::atan2(s, r);
        cplx round_trip = hol_from_invariants(rep.W, 0.0, tau2, rep.V);
        chk.record("roundtrip", dist_mod_2pi_i(round_trip, rep.log_hol));
        double v = volume_from_invariants(rep.W, 0.0, tau2, rep.log_hol);
        chk.record("V", std::abs(v - 2.0 * kPi * kPi * s * s));
    }
    auto rep = closedform::torus_case({inv_sqrt2, inv_sqrt2});
    chk.record("clifford V=pi^2", std::abs(rep.V - kPi * kPi));
    return {3, "torus invariants", chk.worst < 1e-8, chk.worst, 1e-8, 0.0, chk.detail.str()};
}

// -------- criterion 4: central holonomy 8iφ and volume 2π² - 4πφ
CriterionResult c4() {
    Check chk;
    for (double phi : {kPi / 6.0, kPi / 4.0, kPi / 3.0}) {
        auto x = lawson::central_x(phi);
        cplx log_hol = hol_lawson_lev(x[0], x[1], x[2], kPi / 2.0, 1e-12);
        chk.record("loghol", dist_mod_2pi_i(log_hol, cplx(0.0, 8.0 * phi)));
        double v = volume_from_log_hol(log_hol, kPi / 2.0, 8.0 * kPi,
                                       2.0 * kPi * kPi - 4.0 * kPi * phi);
        chk.record("V", std::abs(v - (2.0 * kPi * kPi - 4.0 * kPi * phi)));
    }
    return {4, "central family holonomy", chk.worst < 1e-9, chk.worst, 1e-9, 0.0,
            chk.detail.str()};
}

// -------- criterion 5: volume series at φ = π/4 is π² for every genus
CriterionResult c5() {
    Check chk;
    for (int g : {2, 3, 10, 100, 100000}) {
        double v = lawson::volume_expansion(kPi / 4.0, g);
        chk.record("g=" + std::to_string(g), std::abs(v - kPi * kPi));
    }
    return {5, "symmetric-angle volume is pi^2", chk.worst < 1e-12, chk.worst, 1e-12, 0.0,
            chk.detail.str()};
}

// -------- criterion 6: derivative cascade
CriterionResult c6() {
    Check chk;
    bool pass = true;
    for (double phi : {kPi / 6.0, kPi / 3.0}) {
        auto fo = lawson::first_order_identities(phi, 1e-13);
        auto so = lawson::second_order_identities(phi, 1e-13);
        auto sc = lawson::shape_constants(phi);
        lawson::Family fam = lawson::make_family(phi);

        double closed_worst = std::max({fo.max_x2dotx3p_err, fo.max_dgdt_err,
                                        fo.arc_integral_err, so.max_xddot_wronsk_err,
                                        so.max_x_xddot_wronsk_err, so.max_xdot_wronsk_err,
                                        so.max_d2g_err, so.arc_integral_err, so.comb_xddot_err,
                                        so.comb_xdot2_err});
        chk.record("closed-forms", closed_worst);
        pass = pass && closed_worst < 1e-10;

        chk.record("d1 rel", fo.dloghol_err);
        pass = pass && fo.dloghol_err < 1e-5;
        chk.record("Re d1", fo.dloghol_re);
        pass = pass && fo.dloghol_re < 1e-7;

        const double h = 4e-3;
        auto lh = [&](double t) { return lawson::log_hol_lev(fam, t, 3e-14); };
        auto d2 = [&](double step) {
            return (lh(step) - 2.0 * lh(0.0) + lh(-step)) / (step * step);
        };
        cplx d2r = (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
        cplx expect = 64.0 * kI * sc.mu * sc.nu;
        double rel = std::abs(d2r - expect) / std::abs(expect);
        chk.record("d2 rel", rel);
        pass = pass && rel < 1e-4;
        chk.record("Re d2", std::abs(d2r.real()));
        pass = pass && std::abs(d2r.real()) < 1e-7;
    }
    return {6, "derivative cascade", pass, chk.worst, 1e-4, 0.0, chk.detail.str()};
}

// -------- criterion 7: volume derivatives from the assembled pipeline
CriterionResult c7() {
    Check chk;
    bool pass = true;
    for (double phi : {kPi / 6.0, kPi / 3.0}) {
        auto sc = lawson::shape_constants(phi);
        lawson::Family fam = lawson::make_family(phi);
        auto volume = [&](double t) {
            double theta = lawson::theta_series(fam, t);
            double w = lawson::willmore_taylor(fam, t);
            cplx log_hol = lawson::log_hol_lev(fam, t, 1e-12);
            cplx v = (2.0 * theta - std::sin(2.0 * theta)) / 4.0 * w + kI * kPi / 2.0 * log_hol;
            return v.real();
        };
        const double h = 1e-2;
        auto d1 = [&](double step) { return (volume(step) - volume(-step)) / (2.0 * step); };
        double v1 = (4.0 * d1(h / 2.0) - d1(h)) / 3.0;
        double expect1 = 16.0 * kPi * sc.nu;
        double rel1 = std::abs(v1 - expect1) / std::abs(expect1);
        chk.record("Vdot rel", rel1);
        pass = pass && rel1 < 1e-4;

        auto d2 = [&](double step) {
            return (volume(step) - 2.0 * volume(0.0) + volume(-step)) / (step * step);
        };
        double v2 = (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
        double expect2 = 32.0 * kPi * sc.mu * sc.nu;
        double rel2 = std::abs(v2 - expect2) / std::abs(expect2);
        chk.record("Vddot rel", rel2);
        pass = pass && rel2 < 1e-4;
    }
    return {7, "assembled volume series", pass, chk.worst, 1e-4, 0.0, chk.detail.str()};
}

// -------- criterion 8: K̈ independence of the second holonomy derivative
CriterionResult c8() {
    Check chk;
    const double phi = kPi / 3.0;
    const double h = 4e-3;
    double resolved = lawson::resolve_kddot(phi);
    std::vector<cplx> values;
    for (double kd : {resolved, 0.0, -3.0}) {
        lawson::Family fam = lawson::make_family(phi, kd);
        auto lh = [&](double t) { return lawson::log_hol_lev(fam, t, 3e-14); };
        auto d2 = [&](double step) {
            return (lh(step) - 2.0 * lh(0.0) + lh(-step)) / (step * step);
        };
        values.push_back((4.0 * d2(h / 2.0) - d2(h)) / 3.0);
    }
    chk.record("resolved-vs-0", std::abs(values[0] - values[1]));
    chk.record("resolved-vs-m3", std::abs(values[0] - values[2]));
    return {8, "Kddot independence", chk.worst < 1e-7, chk.worst, 1e-7, 0.0, chk.detail.str()};
}

// -------- criterion 9: cross-formula agreement on Taylor data
CriterionResult c9() {
    Check chk;
    const double phi = kPi / 3.0;
    const double s = 0.01;
    lawson::Family fam = lawson::make_family(phi);
    LawsonAnsatz ansatz = lawson::taylor_x(fam, s, 2);
    double theta = lawson::theta_series(fam, s);

    cplx lev = hol_lawson_lev(ansatz.x1, ansatz.x2, ansatz.x3, theta, 1e-12);

    double vtol = std::max(1e-10, 100.0 * s * s * s);
    cplx reg = hol_regularizing(lawson::fake_gauges(ansatz), lawson::lawson_h(),
                                make_sym_theta(theta), 1e-12, vtol);

    // The moduli-coordinate route is single-cover; the x₁=0 chart point near
    // λ=1 is crossed with the r·du form.
    const double cut = 0.45;
    cplx darboux = hol_darboux(ansatz.x1, ansatz.x2, ansatz.x3, -theta, -cut, 1e-12) +
                   hol_darboux_rdu(ansatz.x1, ansatz.x2, ansatz.x3, -cut, cut, 1e-12) +
                   hol_darboux(ansatz.x1, ansatz.x2, ansatz.x3, cut, theta, 1e-12);
    cplx darboux_doubled = 2.0 * darboux;

    // The two potential-side formulas compare at full complex precision. The
    // moduli-chart route is real-free by construction, so it is compared on
    // the unitary (imaginary mod 2π) parts; the real parts of the others
    // measure the O(s³) non-unitarity of the truncated data and are bounded
    // as that discrepancy class.
    chk.record("lev-vs-regularizing", dist_mod_2pi_i(lev, reg));
    double im_lev_dbx = std::abs(mod_2pi_i(lev - darboux_doubled).imag());
    double im_reg_dbx = std::abs(mod_2pi_i(reg - darboux_doubled).imag());
    chk.record("lev-vs-darboux (unitary part)", im_lev_dbx);
    chk.record("regularizing-vs-darboux (unitary part)", im_reg_dbx);
    double agree_worst = chk.worst;
    bool pass = agree_worst < 1e-6;
    double re_class = std::max(std::abs(lev.real()), std::abs(reg.real()));
    chk.record("Re discrepancy class (< 10 s^3)", re_class);
    pass = pass && re_class < 10.0 * s * s * s;
    return {9, "cross-formula agreement", pass, agree_worst, 1e-6, 0.0, chk.detail.str()};
}

// -------- criterion 10: monodromy engine oracles
CriterionResult c10() {
    Check chk;
    // Abelian and nilpotent closed forms around z = 0.
    FuchsianPotential abelian;
    abelian.punctures = {0.0};
    cplx a(0.31, 0.17);
    abelian.residues = {mat_loop(ScalarLoop::constant(a), ScalarLoop(), ScalarLoop(),
                                 ScalarLoop::constant(-a))};
    Mat2 m = monodromy_around(abelian, 0, 1.0, 1e-12, 2.0);
    cplx expect = std::exp(2.0 * kPi * kI * a);
    chk.record("abelian", (m - Mat2::diag(expect, 1.0 / expect)).norm());

    FuchsianPotential nilpotent;
    nilpotent.punctures = {0.0};
    nilpotent.residues = {mat_loop(ScalarLoop(), ScalarLoop::constant(1.0), ScalarLoop(),
                                   ScalarLoop())};
    m = monodromy_around(nilpotent, 0, 1.0, 1e-12, 2.0);
    chk.record("nilpotent", (m - Mat2{1.0, 2.0 * kPi * kI, 0.0, 1.0}).norm());

    FuchsianPotential sphere;
    sphere.punctures = {0.0};
    sphere.residues = {mat_loop(ScalarLoop(), ScalarLoop::monomial(-1, 1.0),
                                ScalarLoop::monomial(1, 1.0), ScalarLoop())};
    m = monodromy_around(sphere, 0, cplx(0.4, 0.6), 1e-12, 2.0);
    chk.record("sphere-exp", (m - Mat2::identity()).norm());
    bool closed_ok = chk.worst < 1e-10;

    // Lawson central potential at a small pole scale.
    const double phi = kPi / 3.0, s = 0.02;
    auto x = lawson::central_x(phi);
    LawsonAnsatz ansatz{phi, x[0], x[1], x[2], s};
    FuchsianPotential pot = build_lawson_potential(ansatz);
    double det_worst = 0.0, prod_worst = 0.0, tr_worst = 0.0;
    cplx tr_ref{0.0};
    for (int i = 0; i < 8; ++i) {
        cplx lambda = std::exp(cplx(0.0, 0.23 + 2.0 * kPi * i / 8.0));
        MonodromyRep rep = monodromies(pot, lambda, 1e-12);
        auto diag = monodromy_diagnostics(rep, s);
        for (double d : diag.det_drift) det_worst = std::max(det_worst, d);
        prod_worst = std::max(prod_worst, diag.product_deviation);
        cplx tr = rep.monodromies[0].trace();
        if (i == 0) tr_ref = tr;
        tr_worst = std::max(tr_worst, std::abs(tr - tr_ref));
    }
    chk.record("det-drift", det_worst);
    chk.record("product-Id", prod_worst);
    chk.record("trace-const", tr_worst);
    bool pass = closed_ok && det_worst < 1e-9 && prod_worst < 1e-8 && tr_worst < 1e-7;
    return {10, "monodromy engine", pass, chk.worst, 1e-7, 0.0, chk.detail.str()};
}

// -------- criterion 11: solver behaviour at φ = π/4
CriterionResult c11() {
    Check chk;
    msolver::SolverConfig cfg;
    cfg.degree = 6;       // truncation floor well below the residual target
    cfg.samples = 16;
    cfg.tol = 1e-10;
    cfg.ode_tol = 1e-12;
    const double phi = kPi / 4.0;
    lawson::Family fam = lawson::make_family(phi);

    double dist[2] = {0.0, 0.0};
    double worst_residual = 0.0;
    bool pass = true;
    int idx = 0;
    for (int g : {50, 100}) {
        double s = 1.0 / (2.0 * g + 2.0);
        auto solved = msolver::solve(phi, s, cfg);
        chk.detail << (idx ? "; " : "") << "residual g=" << g << "=" << solved.residual_norm
                   << " iters=" << solved.iterations << " rank=" << solved.jacobian_rank;
        worst_residual = std::max(worst_residual, solved.residual_norm);
        pass = pass && solved.converged && solved.iterations <= 15;
        LawsonAnsatz taylor = lawson::taylor_x(fam, s, 2);
        dist[idx] = msolver::coefficient_distance(solved.ansatz, taylor, cfg.degree);
        if (g == 50) {
            chk.detail << "; theta-err=" << std::abs(solved.theta - kPi / 2.0);
            pass = pass && std::abs(solved.theta - kPi / 2.0) < 1e-6;
        }
        ++idx;
    }
    double ratio = dist[0] / dist[1];
    chk.detail << "; s^3-ratio=" << ratio << " (must lie in [6,10])";
    pass = pass && ratio > 6.0 && ratio < 10.0;
    return {11, "monodromy solver", pass, worst_residual, 1e-10, 0.0, chk.detail.str()};
}

// -------- criterion 12: Willmore residue formula
CriterionResult c12() {
    Check chk;
    bool pass = true;
    auto pipe = closedform::sphere_pipeline(0.8);
    double w_sphere = willmore_residue(pipe.poles);
    double err = std::abs(w_sphere - 8.0 * kPi);
    chk.record("sphere 8pi", err);
    pass = pass && err < 1e-9;

    const double phi = kPi / 4.0;
    lawson::Family fam = lawson::make_family(phi);
    double w0 = lawson::willmore_taylor(fam, 0.0);
    err = std::abs(w0 - 8.0 * kPi);
    chk.record("central 8pi", err);
    pass = pass && err < 1e-6;

    auto sc = lawson::shape_constants(phi);
    const double h = 1e-3;
    auto d1 = [&](double step) {
        return (lawson::willmore_taylor(fam, step) - lawson::willmore_taylor(fam, -step)) /
               (2.0 * step);
    };
    double slope = (4.0 * d1(h / 2.0) - d1(h)) / 3.0;
    double expect = 16.0 * kPi * sc.mu;
    double rel = std::abs(slope - expect) / std::abs(expect);
    chk.record("slope 16*pi*mu rel", rel);
    pass = pass && rel < 1e-3;
    return {12, "Willmore residue", pass, chk.worst, 1e-3, 0.0, chk.detail.str()};
}

}  // namespace

CriterionResult run_criterion(int id) {
    using Clock = std::chrono::steady_clock;
    auto t0 = Clock::now();
    CriterionResult res;
    switch (id) {
        case 1: res = c1(); break;
        case 2: res = c2(); break;
        case 3: res = c3(); break;
        case 4: res = c4(); break;
        case 5: res = c5(); break;
        case 6: res = c6(); break;
        case 7: res = c7(); break;
        case 8: res = c8(); break;
        case 9: res = c9(); break;
        case 10: res = c10(); break;
        case 11: res = c11(); break;
        case 12: res = c12(); break;
        default: throw std::invalid_argument("run_criterion: id must be 1..12");
    }
    res.runtime_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    // Stated runtime limits.
    if (id == 1 && res.runtime_ms > 1000.0) res.pass = false;
    if (id == 6 && res.runtime_ms > 30000.0) res.pass = false;
    if (id == 11 && res.runtime_ms > 300000.0) res.pass = false;
    return res;
}

std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 12; ++id) out.push_back(run_criterion(id));
    return out;
}

}  // namespace acceptance
}  // namespace cmcvol
