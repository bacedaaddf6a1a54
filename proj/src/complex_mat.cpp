#include "cmcvol/complex_mat.hpp"

namespace cmcvol {

Mat2 inverse(const Mat2& m) {
    cplx det = m.det();
    cplx inv = 1.0 / det;
    return {inv * m.d, -inv * m.b, -inv * m.c, inv * m.a};
}

namespace {

// cosh(sqrt(mu)) and sinh(sqrt(mu))/sqrt(mu) as entire functions of mu.
std::pair<cplx, cplx> cosh_sinhc(cplx mu) {
    if (std::abs(mu) < 1e-8) {
        cplx ch = 1.0 + mu / 2.0 + mu * mu / 24.0;
        cplx sc = 1.0 + mu / 6.0 + mu * mu / 120.0;
        return {ch, sc};
    }
    cplx w = std::sqrt(mu);
    return {std::cosh(w), std::sinh(w) / w};
}

}  // namespace

Mat2 mat2_exp(const Mat2& m) {
    cplx half_tr = 0.5 * m.trace();
    Mat2 traceless = m - Mat2::diag(half_tr, half_tr);
    cplx mu = -traceless.det();  // traceless B satisfies B² = mu·Id
    auto [ch, sc] = cosh_sinhc(mu);
    Mat2 r = Mat2::diag(ch, ch) + sc * traceless;
    return std::exp(half_tr) * r;
}

std::pair<cplx, cplx> eig2(const Mat2& m) {
    cplx q = 0.5 * m.trace();
    cplx disc = std::sqrt(q * q - m.det());
    // Take the root farther from zero first; recover the other from det
    // when possible to avoid cancellation.
    cplx r1 = (std::abs(q + disc) >= std::abs(q - disc)) ? q + disc : q - disc;
    cplx r2 = (std::abs(r1) > 0.0) ? m.det() / r1 : q - disc;
    return {r1, r2};
}

}  // namespace cmcvol
