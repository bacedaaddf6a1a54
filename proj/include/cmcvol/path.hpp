#pragma once

#include <vector>

#include "cmcvol/complex_mat.hpp"

namespace cmcvol {

/// One path piece in the z-plane: a straight segment or a circular arc.
struct Segment {
    enum class Kind { Line, Arc };
    Kind kind{Kind::Line};
    // Line: from z0 to z1.
    cplx z0{0.0}, z1{0.0};
    // Arc: center, radius, angles (radians); positively oriented when
    // angle1 > angle0.
    cplx center{0.0};
    double radius{0.0}, angle0{0.0}, angle1{0.0};

    static Segment line(cplx from, cplx to) {
        Segment s;
        s.kind = Kind::Line;
        s.z0 = from;
        s.z1 = to;
        return s;
    }
    static Segment arc(cplx center, double radius, double a0, double a1) {
        Segment s;
        s.kind = Kind::Arc;
        s.center = center;
        s.radius = radius;
        s.angle0 = a0;
        s.angle1 = a1;
        return s;
    }

    cplx point(double t) const;     // position at parameter t in [0,1]
    cplx velocity(double t) const;  // dz/dt at parameter t
    double length() const;
    double distance_to(cplx p) const;
};

/// Ordered run of segments; consecutive endpoints must coincide.
struct PlanePath {
    std::vector<Segment> segments;
    double clearance{0.0};  // declared minimum distance to every puncture

    cplx start() const { return segments.front().point(0.0); }
    cplx end() const { return segments.back().point(1.0); }
    double total_length() const;
    double distance_to(cplx p) const;
};

}  // namespace cmcvol
