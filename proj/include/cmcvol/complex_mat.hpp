#pragma once

#include <cmath>
#include <complex>
#include <utility>

namespace cmcvol {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kI{0.0, 1.0};

/// 2x2 complex matrix, row-major entries (a b; c d). Value type, immutable in
/// spirit: every operation returns a new matrix.
struct Mat2 {
    cplx a{0.0}, b{0.0}, c{0.0}, d{0.0};

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 zero() { return {}; }
    static Mat2 diag(cplx x, cplx y) { return {x, 0.0, 0.0, y}; }

    cplx trace() const { return a + d; }
    cplx det() const { return a * d - b * c; }

    Mat2 adjugate() const { return {d, -b, -c, a}; }

    Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    Mat2& operator+=(const Mat2& o) {
        a += o.a; b += o.b; c += o.c; d += o.d;
        return *this;
    }

    friend Mat2 operator*(cplx s, const Mat2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }
    friend Mat2 operator*(const Mat2& m, cplx s) { return s * m; }
    friend Mat2 operator*(double s, const Mat2& m) { return cplx(s) * m; }

    /// Max-abs norm of the entries.
    double norm() const {
        return std::max(std::max(std::abs(a), std::abs(b)),
                        std::max(std::abs(c), std::abs(d)));
    }
};

Mat2 inverse(const Mat2& m);

/// Matrix exponential via the traceless closed form
/// exp(B) = cosh(w) Id + sinh(w)/w B with w² = -det B, series fallback near
/// the removable point w = 0. Total function.
Mat2 mat2_exp(const Mat2& m);

/// Both eigenvalues (roots of the characteristic polynomial); product equals
/// det, sum equals trace.
std::pair<cplx, cplx> eig2(const Mat2& m);

}  // namespace cmcvol
