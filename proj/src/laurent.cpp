#include "cmcvol/laurent.hpp"

namespace cmcvol {

std::pair<ScalarLoop, cplx> deflate_once(const ScalarLoop& p, cplx root) {
    if (p.is_zero()) return {ScalarLoop(), cplx(0.0)};
    // Canonical quotient (p - p(root))/(λ - root): a function of p and root
    // alone, insensitive to how the coefficient span represents p. (Dumping
    // the division remainder on the span's bottom monomial instead makes two
    // roundoff-equal representations deflate to visibly different quotients.)
    cplx rho = p.eval(root);
    ScalarLoop shifted = p - ScalarLoop::constant(rho);
    if (shifted.is_zero()) return {ScalarLoop(), rho};
    int lo = shifted.min_degree(), hi = shifted.max_degree();
    int n = hi - lo;
    if (n == 0) return {ScalarLoop(), rho};
    std::vector<cplx> b(static_cast<size_t>(n) + 1);
    b[static_cast<size_t>(n)] = shifted.coef(hi);
    for (int j = n - 1; j >= 0; --j)
        b[static_cast<size_t>(j)] = shifted.coef(lo + j) + root * b[static_cast<size_t>(j) + 1];
    // b[0] = (p - rho)(root) vanishes up to roundoff and is dropped.
    std::vector<cplx> quot(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) quot[static_cast<size_t>(j)] = b[static_cast<size_t>(j) + 1];
    return {ScalarLoop(lo, std::move(quot)), rho};
}

MatLoop adj_loop(const MatLoop& p) {
    std::vector<Mat2> out;
    for (int k = p.min_degree(); k <= p.max_degree(); ++k) out.push_back(p.coef(k).adjugate());
    return MatLoop(p.min_degree(), std::move(out));
}

std::pair<Mat2, Mat2> rational_taylor01(const MatLoop& num, const ScalarLoop& den) {
    if (den.is_zero()) throw std::domain_error("rational_taylor01: zero denominator");
    int t = den.min_degree();
    cplx d0 = den.coef(t);
    cplx d1 = den.coef(t + 1);
    if (num.min_degree() < t)
        throw std::domain_error("rational_taylor01: ratio has a pole at lambda=0");
    Mat2 n0 = num.coef(t);
    Mat2 n1 = num.coef(t + 1);
    cplx e0 = 1.0 / d0;
    Mat2 f0 = e0 * n0;
    Mat2 f1 = e0 * (n1 - (d1 * e0) * n0);
    return {f0, f1};
}

}  // namespace cmcvol
