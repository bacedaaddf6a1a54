#include "cmcvol/quadrature.hpp"
#include "doctest.h"

using namespace cmcvol;

TEST_CASE("arc integral of dλ/λ") {
    double alpha = 0.9;
    auto f = [](cplx lambda) { return 1.0 / lambda; };
    QuadResult q = integrate_arc(f, -alpha, alpha, 1e-12);
    CHECK(std::abs(q.value - 2.0 * kI * alpha) < 1e-12);
}

TEST_CASE("removable endpoint singularity is never sampled") {
    // sin(x)/x on [0,1]: the endpoint x=0 is removable and interior GK nodes
    // avoid 0 exactly.
    auto f = [](double x) { return cplx(std::sin(x) / x); };
    QuadResult q = integrate(f, 0.0, 1.0, 1e-13);
    CHECK(std::abs(q.value - 0.946083070367183) < 1e-12);
}

TEST_CASE("node doubling changes the result below tolerance") {
    auto f = [](cplx lambda) { return std::exp(lambda) / (lambda - cplx(1.2, 0.1)); };
    QuadResult base = integrate_arc(f, -1.2, 1.4, 1e-11);
    QuadResult refined = integrate_arc(f, -1.2, 1.4, 1e-11, 3);
    CHECK(std::abs(base.value - refined.value) < 1e-11);
    CHECK(refined.panels >= 8);  // the forced initial subdivision persists
}

TEST_CASE("oscillatory integrand") {
    auto f = [](double x) { return cplx(std::cos(20.0 * x)); };
    QuadResult q = integrate(f, 0.0, kPi, 1e-12);
    CHECK(std::abs(q.value - std::sin(20.0 * kPi) / 20.0) < 1e-11);
}
