#pragma once

#include <stdexcept>
#include <vector>

#include "cmcvol/complex_mat.hpp"

namespace cmcvol {

namespace detail {
inline bool is_zero_coef(const cplx& c) { return c == cplx(0.0); }
inline bool is_zero_coef(const Mat2& m) { return m.norm() == 0.0; }
inline double coef_norm(const cplx& c) { return std::abs(c); }
inline double coef_norm(const Mat2& m) { return m.norm(); }
}  // namespace detail

/// Laurent polynomial in the spectral parameter: sum of coef[k-dmin]·λᵏ for
/// k in [dmin, dmax]. Coefficients are dense over the degree span; T is
/// cplx (scalar loops) or Mat2 (matrix loops). Degree bounds are kept tight:
/// exactly-zero leading/trailing coefficients are trimmed, the zero loop is
/// stored as a single zero coefficient of degree 0.
template <class T>
class LaurentLoop {
  public:
    LaurentLoop() : dmin_(0), coef_(1, T{}) {}

    LaurentLoop(int dmin, std::vector<T> coef) : dmin_(dmin), coef_(std::move(coef)) {
        if (coef_.empty()) {
            dmin_ = 0;
            coef_.assign(1, T{});
        }
        trim();
    }

    static LaurentLoop constant(const T& c) { return LaurentLoop(0, {c}); }

    /// Single-term loop c·λᵏ.
    static LaurentLoop monomial(int k, const T& c) { return LaurentLoop(k, {c}); }

    int min_degree() const { return dmin_; }
    int max_degree() const { return dmin_ + static_cast<int>(coef_.size()) - 1; }

    bool is_zero() const { return coef_.size() == 1 && detail::is_zero_coef(coef_[0]); }

    /// Coefficient of λᵏ (zero outside the span).
    T coef(int k) const {
        int idx = k - dmin_;
        if (idx < 0 || idx >= static_cast<int>(coef_.size())) return T{};
        return coef_[idx];
    }

    /// Σ coef_k λᵏ. Degrees below zero require λ ≠ 0.
    T eval(cplx lambda) const {
        if (dmin_ < 0 && lambda == cplx(0.0))
            throw std::domain_error("LaurentLoop: evaluation at lambda=0 with negative degrees");
        // Horner over the whole span, then scale by λ^dmin.
        T acc = coef_.back();
        for (int i = static_cast<int>(coef_.size()) - 2; i >= 0; --i)
            acc = acc * lambda + coef_[i];
        if (dmin_ != 0) acc = acc * std::pow(lambda, cplx(dmin_));
        return acc;
    }

    /// Term-wise λ-derivative k·c_k λ^{k-1}.
    LaurentLoop derivative() const {
        std::vector<T> out(coef_.size());
        for (size_t i = 0; i < coef_.size(); ++i) {
            int k = dmin_ + static_cast<int>(i);
            out[i] = coef_[i] * cplx(static_cast<double>(k));
        }
        return LaurentLoop(dmin_ - 1, std::move(out));
    }

    LaurentLoop operator+(const LaurentLoop& o) const {
        int lo = std::min(dmin_, o.dmin_);
        int hi = std::max(max_degree(), o.max_degree());
        std::vector<T> out(static_cast<size_t>(hi - lo + 1), T{});
        for (size_t i = 0; i < coef_.size(); ++i) out[dmin_ - lo + i] += coef_[i];
        for (size_t i = 0; i < o.coef_.size(); ++i) {
            T& slot = out[o.dmin_ - lo + i];
            slot = slot + o.coef_[i];
        }
        return LaurentLoop(lo, std::move(out));
    }

    LaurentLoop operator-() const {
        std::vector<T> out(coef_.size());
        for (size_t i = 0; i < coef_.size(); ++i) out[i] = -coef_[i];
        return LaurentLoop(dmin_, std::move(out));
    }

    LaurentLoop operator-(const LaurentLoop& o) const { return *this + (-o); }

    /// Cauchy product; degree spans add.
    LaurentLoop operator*(const LaurentLoop& o) const {
        if (is_zero() || o.is_zero()) return LaurentLoop();
        std::vector<T> out(coef_.size() + o.coef_.size() - 1, T{});
        for (size_t i = 0; i < coef_.size(); ++i)
            for (size_t j = 0; j < o.coef_.size(); ++j) out[i + j] += coef_[i] * o.coef_[j];
        return LaurentLoop(dmin_ + o.dmin_, std::move(out));
    }

    friend LaurentLoop operator*(const cplx& s, const LaurentLoop& l) {
        std::vector<T> out(l.coef_.size());
        for (size_t i = 0; i < l.coef_.size(); ++i) out[i] = l.coef_[i] * s;
        return LaurentLoop(l.dmin_, std::move(out));
    }

    double max_coef_norm() const {
        double m = 0.0;
        for (const auto& c : coef_) m = std::max(m, detail::coef_norm(c));
        return m;
    }

  private:
    void trim() {
        size_t lo = 0, hi = coef_.size();
        while (hi - lo > 1 && detail::is_zero_coef(coef_[hi - 1])) --hi;
        while (hi - lo > 1 && detail::is_zero_coef(coef_[lo])) ++lo;
        if (lo != 0 || hi != coef_.size()) {
            coef_ = std::vector<T>(coef_.begin() + lo, coef_.begin() + hi);
            dmin_ += static_cast<int>(lo);
        }
        if (coef_.size() == 1 && detail::is_zero_coef(coef_[0])) dmin_ = 0;
    }

    int dmin_;
    std::vector<T> coef_;
};

using ScalarLoop = LaurentLoop<cplx>;
using MatLoop = LaurentLoop<Mat2>;

inline Mat2 outer_entries(cplx a, cplx b, cplx c, cplx d) { return {a, b, c, d}; }

/// Assemble a matrix loop from four scalar entry loops.
inline MatLoop mat_loop(const ScalarLoop& a, const ScalarLoop& b, const ScalarLoop& c,
                        const ScalarLoop& d) {
    int lo = std::min(std::min(a.min_degree(), b.min_degree()),
                      std::min(c.min_degree(), d.min_degree()));
    int hi = std::max(std::max(a.max_degree(), b.max_degree()),
                      std::max(c.max_degree(), d.max_degree()));
    std::vector<Mat2> out;
    out.reserve(static_cast<size_t>(hi - lo + 1));
    for (int k = lo; k <= hi; ++k) out.push_back({a.coef(k), b.coef(k), c.coef(k), d.coef(k)});
    return MatLoop(lo, std::move(out));
}

inline ScalarLoop entry_loop(const MatLoop& m, int row, int col) {
    std::vector<cplx> out;
    for (int k = m.min_degree(); k <= m.max_degree(); ++k) {
        Mat2 c = m.coef(k);
        out.push_back(row == 0 ? (col == 0 ? c.a : c.b) : (col == 0 ? c.c : c.d));
    }
    return ScalarLoop(m.min_degree(), std::move(out));
}

inline ScalarLoop det_loop(const MatLoop& m) {
    return entry_loop(m, 0, 0) * entry_loop(m, 1, 1) - entry_loop(m, 0, 1) * entry_loop(m, 1, 0);
}

inline ScalarLoop trace_loop(const MatLoop& m) {
    return entry_loop(m, 0, 0) + entry_loop(m, 1, 1);
}

/// First two Taylor coefficients at λ=0 of the ratio num/den of Laurent
/// loops (num matrix, den scalar), assuming the ratio is holomorphic there.
/// Throws if the leading denominator coefficient vanishes.
std::pair<Mat2, Mat2> rational_taylor01(const MatLoop& num, const ScalarLoop& den);

/// Canonical division by (λ - root): returns (q, rem) with q the quotient
/// (p - p(root))/(λ - root) and rem = p(root), so p = (λ - root)·q + rem
/// exactly. |rem| measures how far p is from vanishing at the root.
std::pair<ScalarLoop, cplx> deflate_once(const ScalarLoop& p, cplx root);

/// Entry-wise adjugate loop: adj(P)(λ) = adj(P(λ)).
MatLoop adj_loop(const MatLoop& p);

}  // namespace cmcvol
