#include "cmcvol/quadrature.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace cmcvol {

namespace {

// G7/K15 nodes and weights on [-1,1]; row = {abscissa, Gauss weight, Kronrod weight}.
constexpr double kNodes[8][3] = {
    {0.000000000000000000, 0.417959183673469388, 0.209482141084727828},
    {0.405845151377397167, 0.381830050505118945, 0.190350578064785410},
    {0.741531185599394440, 0.279705391489276668, 0.140653259715525919},
    {0.949107912342758525, 0.129484966168869693, 0.063092092629978553},
    {0.207784955007898468, 0.0, 0.204432940075298892},
    {0.586087235467691130, 0.0, 0.169004726639267903},
    {0.864864423359769073, 0.0, 0.104790010322250184},
    {0.991455371120812639, 0.0, 0.022935322010529225},
};

struct PanelEstimate {
    cplx k15;
    double err;
    double resabs;  // K15 estimate of ∫|f|: sets the roundoff floor
};

PanelEstimate g7k15(const std::function<cplx(double)>& f, double a, double b) {
    double mid = 0.5 * (a + b);
    double half = 0.5 * (b - a);
    cplx f0 = f(mid);
    cplx g7 = kNodes[0][1] * f0;
    cplx k15 = kNodes[0][2] * f0;
    double resabs = kNodes[0][2] * std::abs(f0);
    for (int i = 1; i < 8; ++i) {
        double dx = half * kNodes[i][0];
        cplx fp = f(mid + dx), fm = f(mid - dx);
        cplx fi = fp + fm;
        g7 += kNodes[i][1] * fi;
        k15 += kNodes[i][2] * fi;
        resabs += kNodes[i][2] * (std::abs(fp) + std::abs(fm));
    }
    g7 *= half;
    k15 *= half;
    resabs *= std::abs(half);
    double diff = std::abs(g7 - k15);
    // QUADPACK-style sharpened estimate: (200·diff)^{3/2}, capped by diff.
    double err = std::min(diff, std::pow(200.0 * diff, 1.5));
    return {k15, err, resabs};
}

}  // namespace

QuadResult integrate(const std::function<cplx(double)>& f, double a, double b, double tol,
                     int min_depth) {
    if (!(tol > 0.0)) throw std::invalid_argument("integrate: tolerance must be positive");
    struct Panel {
        double a, b;
        cplx value;
        double err;
        int depth;
        bool operator<(const Panel& o) const { return err < o.err; }
    };

    // Globally adaptive: always refine the worst panel until the error sum
    // meets the tolerance. A per-panel roundoff floor (resabs-based) retires
    // panels whose difference estimate is pure cancellation noise.
    const int max_depth = 48;
    const int max_panels = 20000;
    std::priority_queue<Panel> active;
    QuadResult done;  // retired panels (roundoff floor or depth cap)
    cplx active_value = 0.0;
    double active_err = 0.0;
    int active_count = 0;

    auto push = [&](double lo, double hi, int depth) {
        PanelEstimate est = g7k15(f, lo, hi);
        double floor = 50.0 * 1e-16 * est.resabs;
        if (est.err <= floor || depth >= max_depth) {
            done.value += est.k15;
            done.error += est.err;
            ++done.panels;
        } else {
            active.push({lo, hi, est.k15, est.err, depth});
            active_value += est.k15;
            active_err += est.err;
            ++active_count;
        }
    };

    int initial = 1 << std::max(min_depth, 0);
    for (int i = 0; i < initial; ++i)
        push(a + (b - a) * i / initial, a + (b - a) * (i + 1) / initial, min_depth);

    while (!active.empty() && done.error + active_err > tol &&
           done.panels + active_count < max_panels) {
        Panel worst = active.top();
        active.pop();
        active_value -= worst.value;
        active_err -= worst.err;
        --active_count;
        double mid = 0.5 * (worst.a + worst.b);
        push(worst.a, mid, worst.depth + 1);
        push(mid, worst.b, worst.depth + 1);
    }

    QuadResult out;
    out.value = done.value + active_value;
    out.error = done.error + active_err;
    out.panels = done.panels + active_count;
    return out;
}

QuadResult integrate_arc(const std::function<cplx(cplx)>& f, double tau_a, double tau_b,
                         double tol, int min_depth) {
    auto g = [&f](double tau) {
        cplx lambda = std::exp(cplx(0.0, tau));
        return f(lambda) * kI * lambda;
    };
    return integrate(g, tau_a, tau_b, tol, min_depth);
}

}  // namespace cmcvol
