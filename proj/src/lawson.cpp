#include "cmcvol/lawson.hpp"

#include <cmath>
#include <stdexcept>

#include "cmcvol/quadrature.hpp"

namespace cmcvol {
namespace lawson {

namespace {

void check_phi(double phi) {
    if (!(phi > 0.0 && phi < kPi / 2.0))
        throw std::invalid_argument("lawson: phi outside (0, pi/2)");
}

ScalarLoop loop3(cplx cm1, cplx c0, cplx c1, cplx c2, cplx c3) {
    return ScalarLoop(-1, {cm1, c0, c1, c2, c3});
}

}  // namespace

ShapeConstants shape_constants(double phi) {
    check_phi(phi);
    double cs = std::cos(phi), sn = std::sin(phi);
    ShapeConstants c;
    c.mu = cs * cs * std::log(cs) + sn * sn * std::log(sn);
    c.nu = std::sin(2.0 * phi) * std::log(std::tan(phi));
    return c;
}

std::array<ScalarLoop, 3> central_x(double phi) {
    check_phi(phi);
    double cs = std::cos(phi), sn = std::sin(phi);
    cplx ih = kI * 0.5;
    ScalarLoop x1 = loop3(ih, 0.0, -ih, 0.0, 0.0);
    ScalarLoop x2 = loop3(-sn / 2.0, 0.0, -sn / 2.0, 0.0, 0.0);
    ScalarLoop x3 = loop3(-cs / 2.0, 0.0, -cs / 2.0, 0.0, 0.0);
    return {x1, x2, x3};
}

std::array<ScalarLoop, 3> xdot(double phi) {
    check_phi(phi);
    double cs = std::cos(phi), sn = std::sin(phi);
    double a = std::log(cs), b = std::log(sn);
    double c2 = std::cos(2.0 * phi), s2 = std::sin(2.0 * phi);
    double T = b - a;  // log tan
    cplx d1 = kI * (s2 * T);
    ScalarLoop x1dot = loop3(0.0, d1, 0.0, d1, 0.0);
    ScalarLoop x2dot = loop3(0.0, -2.0 * sn * s2 * b - 2.0 * cs * c2 * a, 0.0, -2.0 * cs * a, 0.0);
    ScalarLoop x3dot = loop3(0.0, -2.0 * sn * c2 * b + 2.0 * cs * s2 * a, 0.0, 2.0 * sn * b, 0.0);
    return {x1dot, x2dot, x3dot};
}

std::array<ScalarLoop, 3> xddot(double phi, double kddot) {
    check_phi(phi);
    double cs = std::cos(phi), sn = std::sin(phi);
    double a = std::log(cs), b = std::log(sn);
    double c2 = std::cos(2.0 * phi);
    double T = b - a;
    double cc = cs * cs, ss = sn * sn;

    cplx x1_d1 = kI * (8.0 * T * (cc * a * (4.0 * c2 - 1.0) + ss * b * (4.0 * c2 + 1.0)));
    cplx x1_d3 = kI * (8.0 * T * (cc * a - ss * b));
    double x2_d1 = 4.0 * sn * a * (6.0 * cc * a - b * (3.0 * c2 + 1.0));
    double x2_d3 = 4.0 * sn * a * (-2.0 * cc * a + b * (c2 + 3.0));
    double x3_d1 = 4.0 * cs * b * (6.0 * ss * b + a * (3.0 * c2 - 1.0));
    double x3_d3 = 4.0 * cs * b * (-2.0 * ss * b + a * (3.0 - c2));

    // Scale-correction terms: -(kddot/2)·x⁰ componentwise.
    cplx k1m1 = -kI * 0.25 * kddot, k1p1 = kI * 0.25 * kddot;
    double k2 = sn * 0.25 * kddot;
    double k3 = cs * 0.25 * kddot;

    ScalarLoop x1dd = loop3(k1m1, 0.0, x1_d1 + k1p1, 0.0, x1_d3);
    ScalarLoop x2dd = loop3(k2, 0.0, x2_d1 + k2, 0.0, x2_d3);
    ScalarLoop x3dd = loop3(k3, 0.0, x3_d1 + k3, 0.0, x3_d3);
    return {x1dd, x2dd, x3dd};
}

double resolve_kddot(double phi) {
    auto x0 = central_x(phi);
    auto xd = xdot(phi);
    auto xdd0 = xddot(phi, 0.0);
    ScalarLoop s = x0[0] * xdd0[0] + x0[1] * xdd0[1] + x0[2] * xdd0[2] +
                   xd[0] * xd[0] + xd[1] * xd[1] + xd[2] * xd[2];
    cplx ref = s.eval(std::exp(cplx(0.0, kPi / 6.0)));
    for (int i = 0; i < 8; ++i) {
        cplx lam = std::exp(cplx(0.0, 0.2 + 2.0 * kPi * i / 8.0));
        if (std::abs(s.eval(lam) - ref) > 1e-10 * std::max(1.0, std::abs(ref)))
            throw std::runtime_error(
                "resolve_kddot: quadric second-order residual is lambda-dependent "
                "(derivative-table transcription error)");
    }
    // residual(kddot) = S - kddot/2 on the quadric, so kddot = 2S.
    cplx kd = 2.0 * ref;
    if (std::abs(kd.imag()) > 1e-10 * std::max(1.0, std::abs(kd)))
        throw std::runtime_error("resolve_kddot: non-real solution");
    return kd.real();
}

Family make_family(double phi, double kddot) {
    Family fam;
    fam.phi = phi;
    auto sc = shape_constants(phi);
    fam.mu = sc.mu;
    fam.nu = sc.nu;
    fam.kddot = kddot;
    fam.x0 = central_x(phi);
    fam.xdot = xdot(phi);
    fam.xddot = xddot(phi, kddot);
    return fam;
}

double theta_series(const Family& fam, double t) { return kPi / 2.0 + 2.0 * fam.nu * t; }

LawsonAnsatz taylor_x(const Family& fam, double t, int order) {
    if (order < 0 || order > 2) throw std::invalid_argument("taylor_x: order must be 0, 1 or 2");
    LawsonAnsatz ansatz;
    ansatz.phi = fam.phi;
    ansatz.s = t;
    std::array<ScalarLoop, 3> x = fam.x0;
    if (order >= 1)
        for (int i = 0; i < 3; ++i) x[i] = x[i] + cplx(t) * fam.xdot[i];
    if (order >= 2)
        for (int i = 0; i < 3; ++i) x[i] = x[i] + cplx(0.5 * t * t) * fam.xddot[i];
    ansatz.x1 = x[0];
    ansatz.x2 = x[1];
    ansatz.x3 = x[2];
    return ansatz;
}

LawsonAnsatz quadric_normalize(const LawsonAnsatz& ansatz) {
    auto projected = project_to_quadric(ansatz.x1, ansatz.x2, ansatz.x3);
    LawsonAnsatz out = ansatz;
    out.x1 = projected[0];
    out.x2 = projected[1];
    out.x3 = projected[2];
    return out;
}

std::pair<double, double> series_invariants(double phi, double s) {
    auto sc = shape_constants(phi);
    return {kPi / 2.0 + 2.0 * sc.nu * s, 8.0 * kPi + 16.0 * kPi * sc.mu * s};
}

double volume_expansion(double phi, int genus) {
    check_phi(phi);
    if (genus < 2) throw std::invalid_argument("volume_expansion: genus must be >= 2");
    auto sc = shape_constants(phi);
    double s = 1.0 / (2.0 * genus + 2.0);
    return 2.0 * kPi * kPi - 4.0 * kPi * phi + 16.0 * kPi * sc.nu * s +
           16.0 * kPi * sc.mu * sc.nu * s * s;
}

Mat2 lawson_h() { return {0.0, -1.0, 1.0, 0.0}; }

namespace {

// Conjugated copies C_k P C_k⁻¹ are not what we need here: the gauge at p_k
// is N_k = C_k N_1, so the loop is C_k·P only.
MatLoop left_multiply(const Mat2& c, const MatLoop& p) {
    std::vector<Mat2> out;
    for (int k = p.min_degree(); k <= p.max_degree(); ++k) out.push_back(c * p.coef(k));
    return MatLoop(p.min_degree(), std::move(out));
}

std::vector<PoleGaugeData> assemble_gauges(const LawsonAnsatz& ansatz, const MatLoop& p1,
                                           const ScalarLoop& den,
                                           RegularizingGauge::Mode mode, double residue_scale) {
    auto residues = lawson_residues(ansatz.x1, ansatz.x2, ansatz.x3);
    auto cs = symmetry_matrices();
    std::vector<PoleGaugeData> out;
    for (int k = 0; k < 4; ++k) {
        PoleGaugeData pg;
        pg.residue = cplx(residue_scale) * residues[static_cast<size_t>(k)];
        pg.gauge.k = 1;
        pg.gauge.P = left_multiply(cs[static_cast<size_t>(k)], p1);
        pg.gauge.den = den;
        pg.gauge.mode = mode;
        out.push_back(std::move(pg));
    }
    return out;
}

}  // namespace

std::vector<PoleGaugeData> true_gauges(const LawsonAnsatz& ansatz, double residue_scale) {
    cplx eiphi = std::exp(cplx(0.0, ansatz.phi));
    ScalarLoop one = ScalarLoop::constant(1.0);
    ScalarLoop p = ansatz.x2 + kI * ansatz.x3;
    ScalarLoop delta = one - ansatz.x1 + eiphi * p;
    // N = [[x2+ix3, -Δ], [1-x1, e^{iφ}Δ]] / Δ  (unimodular: det = Δ²/Δ² = 1)
    MatLoop num = mat_loop(p, -delta, one - ansatz.x1, eiphi * delta);
    return assemble_gauges(ansatz, num, delta, RegularizingGauge::Mode::Ratio, residue_scale);
}

std::vector<PoleGaugeData> fake_gauges(const LawsonAnsatz& ansatz, double residue_scale) {
    ScalarLoop one = ScalarLoop::constant(1.0);
    ScalarLoop p = ansatz.x2 + kI * ansatz.x3;
    ScalarLoop m = ansatz.x2 - kI * ansatz.x3;
    MatLoop num = mat_loop(p, ansatz.x1 - one, one - ansatz.x1, m);
    return assemble_gauges(ansatz, num, ScalarLoop(), RegularizingGauge::Mode::DetSqrt,
                           residue_scale);
}

cplx log_hol_lev(const Family& fam, double t, double quad_tol, int order) {
    LawsonAnsatz ansatz = taylor_x(fam, t, order);
    double theta = theta_series(fam, t);
    return hol_lawson_lev(ansatz.x1, ansatz.x2, ansatz.x3, theta, quad_tol);
}

double willmore_taylor(const Family& fam, double t, int order) {
    LawsonAnsatz ansatz = taylor_x(fam, t, order);
    return willmore_residue(true_gauges(ansatz, 0.5));
}

FirstOrderReport first_order_identities(double phi, double quad_tol) {
    auto sc = shape_constants(phi);
    Family fam = make_family(phi);
    FirstOrderReport rep;

    ScalarLoop dx2 = fam.x0[1].derivative(), dx3 = fam.x0[2].derivative();
    ScalarLoop lhs = fam.xdot[1] * dx3 + fam.x0[1] * fam.xdot[2].derivative() -
                     fam.xdot[2] * dx2 - fam.x0[2] * fam.xdot[1].derivative();
    ScalarLoop one_minus_x1 = ScalarLoop::constant(1.0) - fam.x0[0];
    for (int i = 0; i < 16; ++i) {
        cplx lam = std::exp(cplx(0.0, 0.1 + 2.0 * kPi * i / 16.0));
        cplx expect = -std::pow(lam * lam + 1.0, 2) / (lam * lam) * sc.mu;
        rep.max_x2dotx3p_err = std::max(rep.max_x2dotx3p_err, std::abs(lhs.eval(lam) - expect));
        cplx dgdt = lhs.eval(lam) / one_minus_x1.eval(lam);
        cplx dgdt_expect = 2.0 * kI / lam * std::pow(lam + kI, 2) * sc.mu;
        rep.max_dgdt_err = std::max(rep.max_dgdt_err, std::abs(dgdt - dgdt_expect));
    }

    // ∂g/∂t has removable double zeros over (1-x₁)'s at both λ = ±i.
    cplx arc = arc_ratio_integral(lhs, one_minus_x1, -kPi / 2.0, kPi / 2.0, quad_tol);
    rep.arc_integral_err = std::abs(arc - cplx(2.0 * kPi, -8.0) * sc.mu);

    // Richardson-extrapolated central differences of the assembled log Hol.
    const double h = 1e-3;
    auto lh = [&](double t) { return log_hol_lev(fam, t, quad_tol); };
    auto d1 = [&](double step) { return (lh(step) - lh(-step)) / (2.0 * step); };
    cplx d1r = (4.0 * d1(h / 2.0) - d1(h)) / 3.0;
    cplx expect_d1 = 8.0 * kPi * kI * sc.mu;
    rep.dloghol_err = std::abs(d1r - expect_d1) / std::abs(expect_d1);
    rep.dloghol_re = std::abs(d1r.real());

    // V̇ from eq. the volume relation with the series W and θ.
    auto vol = [&](double t) {
        double theta = theta_series(fam, t);
        double w = 8.0 * kPi + 16.0 * kPi * sc.mu * t;
        cplx v = (2.0 * theta - std::sin(2.0 * theta)) / 4.0 * w + kI * kPi / 2.0 * lh(t);
        return v.real();
    };
    auto vdot = [&](double step) { return (vol(step) - vol(-step)) / (2.0 * step); };
    double vdr = (4.0 * vdot(h / 2.0) - vdot(h)) / 3.0;
    double expect_vdot = 16.0 * kPi * sc.nu;
    double scale = std::max(std::abs(expect_vdot), 1.0);
    rep.vdot_err = std::abs(vdr - expect_vdot) / scale;
    return rep;
}

SecondOrderReport second_order_identities(double phi, double quad_tol) {
    auto sc = shape_constants(phi);
    double mn = sc.mu * sc.nu;
    Family fam = make_family(phi);
    SecondOrderReport rep;

    ScalarLoop dx2 = fam.x0[1].derivative(), dx3 = fam.x0[2].derivative();
    ScalarLoop w1 = fam.xddot[1] * dx3 - fam.xddot[2] * dx2;
    ScalarLoop w2 = fam.x0[1] * fam.xddot[2].derivative() - fam.x0[2] * fam.xddot[1].derivative();
    ScalarLoop w3 = fam.xdot[1] * fam.xdot[2].derivative() - fam.xdot[2] * fam.xdot[1].derivative();

    ScalarLoop one_minus_x1 = ScalarLoop::constant(1.0) - fam.x0[0];
    ScalarLoop g_t_num = fam.xdot[1] * dx3 + fam.x0[1] * fam.xdot[2].derivative() -
                         fam.xdot[2] * dx2 - fam.x0[2] * fam.xdot[1].derivative();
    ScalarLoop g_tt_num = w1 + w2 + 2.0 * w3;

    for (int i = 0; i < 16; ++i) {
        cplx lam = std::exp(cplx(0.0, 0.15 + 2.0 * kPi * i / 16.0));
        cplx l2 = lam * lam;
        rep.max_xddot_wronsk_err =
            std::max(rep.max_xddot_wronsk_err,
                     std::abs(w1.eval(lam) - (-2.0 * (l2 - 1.0) * (l2 - 3.0) / lam * mn)));
        rep.max_x_xddot_wronsk_err =
            std::max(rep.max_x_xddot_wronsk_err,
                     std::abs(w2.eval(lam) - 6.0 * (l2 * l2 - 1.0) / lam * mn));
        rep.max_xdot_wronsk_err =
            std::max(rep.max_xdot_wronsk_err, std::abs(w3.eval(lam) - (-8.0 * lam * mn)));
        cplx omx = one_minus_x1.eval(lam);
        cplx d2g = g_tt_num.eval(lam) / omx +
                   2.0 * fam.xdot[0].eval(lam) * g_t_num.eval(lam) / (omx * omx);
        rep.max_d2g_err = std::max(rep.max_d2g_err, std::abs(d2g - (-16.0 * (lam + kI) * mn)));
    }

    // ∂²g/∂t² assembled over the common denominator (1-x₁)², whose quadruple
    // endpoint zeros cancel against the combined numerator.
    ScalarLoop d2g_num = g_tt_num * one_minus_x1 + 2.0 * (fam.xdot[0] * g_t_num);
    ScalarLoop d2g_den = one_minus_x1 * one_minus_x1;
    cplx arc = arc_ratio_integral(d2g_num, d2g_den, -kPi / 2.0, kPi / 2.0, quad_tol);
    rep.arc_integral_err = std::abs(arc - 32.0 * mn);

    cplx lam_i = kI;
    double cs = std::cos(phi), sn = std::sin(phi);
    cplx comb1 = -cs * fam.xddot[1].derivative().eval(lam_i) +
                 sn * fam.xddot[2].derivative().eval(lam_i);
    rep.comb_xddot_err = std::abs(comb1 - 24.0 * mn);
    cplx comb2 = -cs * fam.xdot[1].derivative().derivative().eval(lam_i) +
                 sn * fam.xdot[2].derivative().derivative().eval(lam_i);
    rep.comb_xdot2_err = std::abs(comb2 - 4.0 * sc.mu);
    return rep;
}

}  // namespace lawson
}  // namespace cmcvol
