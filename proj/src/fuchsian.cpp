#include "cmcvol/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmcvol {

Mat2 FuchsianPotential::eval(cplx z, cplx lambda) const {
    Mat2 sum = Mat2::zero();
    for (size_t k = 0; k < punctures.size(); ++k) {
        cplx dz = z - punctures[k];
        if (dz == cplx(0.0))
            throw std::domain_error("FuchsianPotential: evaluation at a puncture");
        sum += (1.0 / dz) * residues[k].eval(lambda);
    }
    return scale * sum;
}

std::array<cplx, 4> lawson_punctures(double phi) {
    cplx e = std::exp(cplx(0.0, phi));
    cplx ec = std::exp(cplx(0.0, -phi));
    return {e, -ec, -e, ec};
}

std::array<MatLoop, 4> lawson_residues(const ScalarLoop& x1, const ScalarLoop& x2,
                                       const ScalarLoop& x3) {
    ScalarLoop p = x2 + kI * x3;   // x2 + i x3
    ScalarLoop m = x2 - kI * x3;   // x2 - i x3
    MatLoop a1 = mat_loop(x1, p, m, -x1);
    MatLoop a2 = mat_loop(-x1, -m, -p, x1);
    MatLoop a3 = mat_loop(x1, -p, -m, -x1);
    MatLoop a4 = mat_loop(-x1, m, p, x1);
    return {a1, a2, a3, a4};
}

FuchsianPotential build_lawson_potential(const LawsonAnsatz& ansatz) {
    cplx r1 = ansatz.x1.coef(-1), r2 = ansatz.x2.coef(-1), r3 = ansatz.x3.coef(-1);
    cplx iso = r1 * r1 + r2 * r2 + r3 * r3;
    double scale = std::max({std::abs(r1), std::abs(r2), std::abs(r3), 1.0});
    if (std::abs(iso) > 1e-12 * scale * scale)
        throw std::invalid_argument(
            "build_lawson_potential: lambda^-1 residue vector is not isotropic "
            "(Res eta at lambda=0 would not be nilpotent)");
    FuchsianPotential pot;
    auto ps = lawson_punctures(ansatz.phi);
    pot.punctures.assign(ps.begin(), ps.end());
    auto as = lawson_residues(ansatz.x1, ansatz.x2, ansatz.x3);
    pot.residues.assign(as.begin(), as.end());
    pot.scale = ansatz.s;
    return pot;
}

cplx quadric_residual(const LawsonAnsatz& ansatz, cplx lambda) {
    if (lambda == cplx(0.0)) throw std::domain_error("quadric_residual: lambda = 0");
    auto [x1, x2, x3] = ansatz.eval(lambda);
    return x1 * x1 + x2 * x2 + x3 * x3 - 1.0;
}

ScalarLoop quadric_residual_loop(const LawsonAnsatz& ansatz) {
    return ansatz.x1 * ansatz.x1 + ansatz.x2 * ansatz.x2 + ansatz.x3 * ansatz.x3 -
           ScalarLoop::constant(1.0);
}

std::array<Mat2, 4> symmetry_matrices() {
    Mat2 c1 = Mat2::identity();
    Mat2 c2{0.0, -1.0, 1.0, 0.0};
    Mat2 c3{kI, 0.0, 0.0, -kI};
    Mat2 c4{0.0, kI, kI, 0.0};
    return {c1, c2, c3, c4};
}

std::array<FuchsianPotential, 4> symmetry_orbit(const LawsonAnsatz& ansatz) {
    FuchsianPotential base = build_lawson_potential(ansatz);
    auto cs = symmetry_matrices();
    std::array<FuchsianPotential, 4> out;
    for (int m = 0; m < 4; ++m) {
        FuchsianPotential pot = base;
        Mat2 c = cs[m];
        Mat2 cinv = inverse(c);
        for (auto& res : pot.residues) {
            std::vector<Mat2> conj;
            for (int k = res.min_degree(); k <= res.max_degree(); ++k)
                conj.push_back(c * res.coef(k) * cinv);
            res = MatLoop(res.min_degree(), std::move(conj));
        }
        out[m] = pot;
    }
    return out;
}

}  // namespace cmcvol
