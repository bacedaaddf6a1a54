#include "cmcvol/path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cmcvol {

cplx Segment::point(double t) const {
    if (kind == Kind::Line) return z0 + t * (z1 - z0);
    double a = angle0 + t * (angle1 - angle0);
    return center + radius * std::exp(cplx(0.0, a));
}

cplx Segment::velocity(double t) const {
    if (kind == Kind::Line) return z1 - z0;
    double a = angle0 + t * (angle1 - angle0);
    return cplx(0.0, angle1 - angle0) * radius * std::exp(cplx(0.0, a));
}

double Segment::length() const {
    if (kind == Kind::Line) return std::abs(z1 - z0);
    return radius * std::abs(angle1 - angle0);
}

double Segment::distance_to(cplx p) const {
    if (kind == Kind::Line) {
        cplx d = z1 - z0;
        double len2 = std::norm(d);
        if (len2 == 0.0) return std::abs(p - z0);
        double t = std::clamp(((p - z0) * std::conj(d)).real() / len2, 0.0, 1.0);
        return std::abs(p - (z0 + t * d));
    }
    // Distance to a circular arc: radial distance if the angle of p lies in
    // the swept range, else distance to the nearer arc endpoint.
    cplx rel = p - center;
    double ang = std::arg(rel);
    double lo = std::min(angle0, angle1), hi = std::max(angle0, angle1);
    for (double k = -2.0; k <= 2.0; k += 1.0) {
        double a = ang + 2.0 * kPi * k;
        if (a >= lo && a <= hi) return std::abs(std::abs(rel) - radius);
    }
    return std::min(std::abs(p - point(0.0)), std::abs(p - point(1.0)));
}

double PlanePath::total_length() const {
    double sum = 0.0;
    for (const auto& s : segments) sum += s.length();
    return sum;
}

double PlanePath::distance_to(cplx p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& s : segments) d = std::min(d, s.distance_to(p));
    return d;
}

}  // namespace cmcvol
