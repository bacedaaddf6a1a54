#include "cmcvol/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cmcvol {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
                 kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

Mat2 segment_transport(const FuchsianPotential& pot, const Segment& seg, cplx lambda,
                       double tol_per_len) {
    const double seg_len = seg.length();
    if (seg_len == 0.0) return Mat2::identity();
    auto rhs = [&](double t, const Mat2& y) {
        return y * (pot.eval(seg.point(t), lambda) * seg.velocity(t));
    };
    Mat2 y = Mat2::identity();
    double t = 0.0;
    double h = 0.1;
    const double atol = tol_per_len * seg_len;
    Mat2 k1 = rhs(t, y);
    int rejected_in_a_row = 0;
    while (t < 1.0) {
        h = std::min(h, 1.0 - t);
        if (h < 1e-14)
            throw std::runtime_error("transport: step size underflow (path too close to a pole?)");
        Mat2 k2 = rhs(t + kA21 * h, y + (h * kA21) * k1);
        Mat2 k3 = rhs(t + 0.3 * h, y + (h * kA31) * k1 + (h * kA32) * k2);
        Mat2 k4 = rhs(t + 0.8 * h, y + (h * kA41) * k1 + (h * kA42) * k2 + (h * kA43) * k3);
        Mat2 k5 = rhs(t + 8.0 / 9.0 * h,
                      y + (h * kA51) * k1 + (h * kA52) * k2 + (h * kA53) * k3 + (h * kA54) * k4);
        Mat2 k6 = rhs(t + h, y + (h * kA61) * k1 + (h * kA62) * k2 + (h * kA63) * k3 +
                                 (h * kA64) * k4 + (h * kA65) * k5);
        Mat2 y5 = y + (h * kB1) * k1 + (h * kB3) * k3 + (h * kB4) * k4 + (h * kB5) * k5 +
                  (h * kB6) * k6;
        Mat2 k7 = rhs(t + h, y5);
        Mat2 errm = (h * kE1) * k1 + (h * kE3) * k3 + (h * kE4) * k4 + (h * kE5) * k5 +
                    (h * kE6) * k6 + (h * kE7) * k7;
        double err = errm.norm();
        double step_tol = atol * h;  // error per unit arclength
        if (!std::isfinite(err)) throw std::runtime_error("transport: non-finite values");
        if (err <= step_tol) {
            t += h;
            y = y5;
            k1 = k7;  // FSAL
            rejected_in_a_row = 0;
        } else if (++rejected_in_a_row > 60) {
            throw std::runtime_error("transport: repeated step rejection");
        }
        double scale = (err > 0.0) ? 0.9 * std::pow(step_tol / err, 0.2) : 5.0;
        h *= std::clamp(scale, 0.2, 5.0);
    }
    return y;
}

}  // namespace

Mat2 transport(const FuchsianPotential& pot, const PlanePath& path, cplx lambda, double tol) {
    if (lambda == cplx(0.0)) throw std::domain_error("transport: lambda = 0");
    for (cplx p : pot.punctures) {
        double d = path.distance_to(p);
        if (!(d > 0.0) || (path.clearance > 0.0 && d < path.clearance))
            throw std::runtime_error("transport: path violates puncture clearance");
    }
    Mat2 y = Mat2::identity();
    for (const auto& seg : path.segments) y = y * segment_transport(pot, seg, lambda, tol);
    return y;
}

PlanePath puncture_loop(const FuchsianPotential& pot, int k, cplx base) {
    const cplx pk = pot.punctures[static_cast<size_t>(k)];
    double min_dist = std::abs(base - pk);
    for (size_t j = 0; j < pot.punctures.size(); ++j)
        if (static_cast<int>(j) != k) min_dist = std::min(min_dist, std::abs(pot.punctures[j] - pk));
    const double radius = 0.5 * min_dist;
    const double approach_angle = std::arg(base - pk);
    const cplx entry = pk + radius * std::exp(cplx(0.0, approach_angle));

    PlanePath path;
    path.segments.push_back(Segment::line(base, entry));
    path.segments.push_back(
        Segment::arc(pk, radius, approach_angle, approach_angle + 2.0 * kPi));
    path.segments.push_back(Segment::line(entry, base));
    path.clearance = 0.25 * radius;

    // The straight connector must clear the other punctures; nudge the
    // approach sideways if it does not.
    for (int attempt = 0; attempt < 8; ++attempt) {
        bool ok = true;
        for (size_t j = 0; j < pot.punctures.size(); ++j) {
            if (static_cast<int>(j) == k) continue;
            if (path.distance_to(pot.punctures[j]) < path.clearance) ok = false;
        }
        if (ok) return path;
        double bend = 0.3 * (attempt + 1);
        cplx waypoint = 0.5 * (base + entry) + bend * radius * std::exp(cplx(0.0, approach_angle + kPi / 2.0));
        path.segments.clear();
        path.segments.push_back(Segment::line(base, waypoint));
        path.segments.push_back(Segment::line(waypoint, entry));
        path.segments.push_back(
            Segment::arc(pk, radius, approach_angle, approach_angle + 2.0 * kPi));
        path.segments.push_back(Segment::line(entry, waypoint));
        path.segments.push_back(Segment::line(waypoint, base));
    }
    throw std::runtime_error("puncture_loop: could not find a clear connector");
}

Mat2 monodromy_around(const FuchsianPotential& pot, int k, cplx lambda, double tol, cplx base) {
    return transport(pot, puncture_loop(pot, k, base), lambda, tol);
}

MonodromyRep monodromies(const FuchsianPotential& pot, cplx lambda, double tol, cplx base) {
    MonodromyRep rep;
    rep.base = base;
    rep.lambda = lambda;
    rep.tol = tol;
    rep.monodromies.reserve(pot.punctures.size());
    for (size_t k = 0; k < pot.punctures.size(); ++k)
        rep.monodromies.push_back(monodromy_around(pot, static_cast<int>(k), lambda, tol, base));
    rep.angular_order.resize(pot.punctures.size());
    std::iota(rep.angular_order.begin(), rep.angular_order.end(), 0);
    std::sort(rep.angular_order.begin(), rep.angular_order.end(), [&](int i, int j) {
        return std::arg(pot.punctures[static_cast<size_t>(i)] - base) <
               std::arg(pot.punctures[static_cast<size_t>(j)] - base);
    });
    return rep;
}

MonodromyDiagnostics monodromy_diagnostics(const MonodromyRep& rep, double s) {
    MonodromyDiagnostics diag;
    const double target_tr = 2.0 * std::cos(2.0 * kPi * s);
    Mat2 product = Mat2::identity();
    for (int k : rep.angular_order) product = product * rep.monodromies[static_cast<size_t>(k)];
    diag.product_deviation = (product - Mat2::identity()).norm();
    for (const Mat2& m : rep.monodromies) {
        diag.det_drift.push_back(std::abs(m.det() - 1.0));
        diag.trace_deviation.push_back(std::abs(m.trace() - target_tr));
        diag.offdiag_norm.push_back(std::max(std::abs(m.b), std::abs(m.c)));
    }
    if (rep.monodromies.size() >= 3) {
        const Mat2 &m1 = rep.monodromies[0], &m2 = rep.monodromies[1], &m3 = rep.monodromies[2];
        diag.im_tr_12 = std::abs((m1 * m2).trace().imag());
        diag.im_tr_23 = std::abs((m2 * m3).trace().imag());
        diag.im_tr_13 = std::abs((m1 * m3).trace().imag());
    }
    return diag;
}

}  // namespace cmcvol
