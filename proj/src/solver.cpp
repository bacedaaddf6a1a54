#include "cmcvol/solver.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>
#include <thread>

#include "cmcvol/lawson.hpp"
#include "cmcvol/monodromy.hpp"

namespace cmcvol {
namespace msolver {

namespace {

// Packed unknowns: [re/im of coef k=0..D for x1,x2,x3] + [rho] + [theta].
struct Packing {
    double phi{0.0};
    double s{0.0};
    int degree{3};
    std::array<cplx, 3> residue_dir;  // frozen lambda^-1 direction

    int size() const { return 6 * (degree + 1) + 2; }

    std::vector<double> pack(const LawsonAnsatz& ansatz, double theta) const {
        std::vector<double> u;
        u.reserve(static_cast<size_t>(size()));
        const ScalarLoop* xs[3] = {&ansatz.x1, &ansatz.x2, &ansatz.x3};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k <= degree; ++k) {
                cplx c = xs[i]->coef(k);
                u.push_back(c.real());
                u.push_back(c.imag());
            }
        u.push_back(1.0);  // rho: the init defines the unit residue scale
        u.push_back(theta);
        return u;
    }

    LawsonAnsatz unpack(const std::vector<double>& u, double* theta) const {
        LawsonAnsatz ansatz;
        ansatz.phi = phi;
        ansatz.s = s;
        double rho = u[static_cast<size_t>(size()) - 2];
        *theta = u[static_cast<size_t>(size()) - 1];
        ScalarLoop* xs[3] = {&ansatz.x1, &ansatz.x2, &ansatz.x3};
        size_t idx = 0;
        for (int i = 0; i < 3; ++i) {
            std::vector<cplx> coefs(static_cast<size_t>(degree) + 2);
            coefs[0] = rho * residue_dir[static_cast<size_t>(i)];
            for (int k = 0; k <= degree; ++k) {
                coefs[static_cast<size_t>(k) + 1] = cplx(u[idx], u[idx + 1]);
                idx += 2;
            }
            *xs[i] = ScalarLoop(-1, std::move(coefs));
        }
        return ansatz;
    }
};

// Householder QR least squares; returns the min-norm-style solution of
// min ||A x + r|| and the numerical rank.
std::pair<std::vector<double>, int> solve_lstsq(std::vector<double> a, std::vector<double> rhs,
                                                int m, int n) {
    std::vector<double> beta(static_cast<size_t>(n), 0.0);
    auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
    for (int j = 0; j < n; ++j) {
        double norm = 0.0;
        for (int i = j; i < m; ++i) norm += at(i, j) * at(i, j);
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        if (at(j, j) > 0.0) norm = -norm;
        for (int i = j; i < m; ++i) at(i, j) /= -norm;
        at(j, j) += 1.0;
        // apply to remaining columns and rhs
        for (int col = j + 1; col < n; ++col) {
            double dot = 0.0;
            for (int i = j; i < m; ++i) dot += at(i, j) * at(i, col);
            dot /= at(j, j);
            for (int i = j; i < m; ++i) at(i, col) -= dot * at(i, j);
        }
        double dot = 0.0;
        for (int i = j; i < m; ++i) dot += at(i, j) * rhs[static_cast<size_t>(i)];
        dot /= at(j, j);
        for (int i = j; i < m; ++i) rhs[static_cast<size_t>(i)] -= dot * at(i, j);
        beta[static_cast<size_t>(j)] = norm;  // R_jj (the reflection maps the column to norm·e_j)
    }
    double rmax = 0.0;
    for (int j = 0; j < n; ++j) rmax = std::max(rmax, std::abs(beta[static_cast<size_t>(j)]));
    double threshold = rmax * 1e-12;
    int rank = 0;
    std::vector<double> x(static_cast<size_t>(n), 0.0);
    for (int j = n - 1; j >= 0; --j) {
        double rjj = beta[static_cast<size_t>(j)];
        if (std::abs(rjj) <= threshold) {
            x[static_cast<size_t>(j)] = 0.0;  // drop rank-deficient direction
            continue;
        }
        ++rank;
        double sum = rhs[static_cast<size_t>(j)];
        for (int col = j + 1; col < n; ++col) sum -= at(j, col) * x[static_cast<size_t>(col)];
        x[static_cast<size_t>(j)] = sum / rjj;
    }
    return {x, rank};
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

std::vector<double> residual_vector(const LawsonAnsatz& ansatz, double theta, double s,
                                    const SolverConfig& config) {
    LawsonAnsatz scaled = ansatz;
    scaled.s = s;
    FuchsianPotential pot = build_lawson_potential(scaled);
    std::vector<double> r;
    r.reserve(static_cast<size_t>(5 * config.samples + 32));
    const double offset = 0.37;  // keep samples off e^{±iθ} and ±1
    for (int m = 0; m < config.samples; ++m) {
        cplx lambda = std::exp(cplx(0.0, offset + 2.0 * kPi * m / config.samples));
        cplx q = quadric_residual(scaled, lambda);
        r.push_back(q.real());
        r.push_back(q.imag());
        Mat2 m1 = monodromy_around(pot, 0, lambda, config.ode_tol);
        Mat2 m2 = monodromy_around(pot, 1, lambda, config.ode_tol);
        Mat2 m3 = monodromy_around(pot, 2, lambda, config.ode_tol);
        r.push_back((m1 * m2).trace().imag());
        r.push_back((m2 * m3).trace().imag());
        r.push_back((m1 * m3).trace().imag());
    }
    for (double sign : {1.0, -1.0}) {
        cplx lambda = std::exp(cplx(0.0, sign * theta));
        for (int k = 0; k < 4; ++k) {
            Mat2 mk = monodromy_around(pot, k, lambda, config.ode_tol);
            r.push_back(mk.b.real());
            r.push_back(mk.b.imag());
            r.push_back(mk.c.real());
            r.push_back(mk.c.imag());
        }
    }
    return r;
}

double coefficient_distance(const LawsonAnsatz& a, const LawsonAnsatz& b, int degree) {
    double sum = 0.0;
    const ScalarLoop* xa[3] = {&a.x1, &a.x2, &a.x3};
    const ScalarLoop* xb[3] = {&b.x1, &b.x2, &b.x3};
    for (int i = 0; i < 3; ++i)
        for (int k = -1; k <= degree; ++k) sum += std::norm(xa[i]->coef(k) - xb[i]->coef(k));
    return std::sqrt(sum);
}

SolvedFamily solve(double phi, double s, const SolverConfig& config,
                   const std::optional<SolvedFamily>& init) {
    if (!(s > 0.0 && s < 0.25)) throw std::invalid_argument("solve: s outside (0, 1/4)");
    LawsonAnsatz start;
    double theta0;
    if (init) {
        start = init->ansatz;
        theta0 = init->theta;
    } else {
        lawson::Family fam = lawson::make_family(phi);
        start = lawson::taylor_x(fam, s, 2);
        theta0 = lawson::theta_series(fam, s);
    }

    Packing packing;
    packing.phi = phi;
    packing.s = s;
    packing.degree = config.degree;
    packing.residue_dir = {start.x1.coef(-1), start.x2.coef(-1), start.x3.coef(-1)};

    const int n = packing.size();
    std::vector<double> u = packing.pack(start, theta0);

    auto eval_residual = [&](const std::vector<double>& uu) {
        double theta;
        LawsonAnsatz ansatz = packing.unpack(uu, &theta);
        return residual_vector(ansatz, theta, s, config);
    };

    std::vector<double> r = eval_residual(u);
    const int m = static_cast<int>(r.size());
    if (m < n)
        throw std::invalid_argument("solve: residual count below unknown count; raise samples");
    double rn = norm2(r);

    SolvedFamily result;
    result.s = s;
    result.iterations = 0;
    result.jacobian_rank = 0;

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    for (int iter = 0; iter < config.max_iter && rn >= config.tol; ++iter) {
        // central-difference Jacobian, columns in parallel
        std::vector<double> jac(static_cast<size_t>(m) * n, 0.0);
        std::vector<std::future<void>> jobs;
        std::atomic<int> next{0};
        auto worker = [&]() {
            for (;;) {
                int j = next.fetch_add(1);
                if (j >= n) return;
                std::vector<double> up = u, um = u;
                up[static_cast<size_t>(j)] += config.fd_step;
                um[static_cast<size_t>(j)] -= config.fd_step;
                std::vector<double> rp = eval_residual(up);
                std::vector<double> rm = eval_residual(um);
                for (int i = 0; i < m; ++i)
                    jac[static_cast<size_t>(i) * n + j] =
                        (rp[static_cast<size_t>(i)] - rm[static_cast<size_t>(i)]) /
                        (2.0 * config.fd_step);
            }
        };
        for (unsigned t = 0; t < hw; ++t)
            jobs.push_back(std::async(std::launch::async, worker));
        for (auto& job : jobs) job.get();

        std::vector<double> neg_r(r.size());
        for (size_t i = 0; i < r.size(); ++i) neg_r[i] = -r[i];
        auto [step, rank] = solve_lstsq(jac, neg_r, m, n);
        result.jacobian_rank = rank;

        // full step first, halve on residual increase
        double alpha = 1.0;
        bool accepted = false;
        while (alpha >= config.damping_floor) {
            std::vector<double> u_try = u;
            for (int j = 0; j < n; ++j) u_try[static_cast<size_t>(j)] += alpha * step[static_cast<size_t>(j)];
            std::vector<double> r_try = eval_residual(u_try);
            double rn_try = norm2(r_try);
            if (rn_try < rn) {
                u = std::move(u_try);
                r = std::move(r_try);
                rn = rn_try;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        ++result.iterations;
        if (!accepted) break;  // stalled; report diagnostics as they stand
    }

    double theta;
    result.ansatz = packing.unpack(u, &theta);
    result.theta = theta;
    result.residual_norm = rn;
    result.converged = rn < config.tol;
    return result;
}

}  // namespace msolver
}  // namespace cmcvol
