#pragma once

#include <cmath>

namespace advectlab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

    friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
    friend constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }

/// Row-major 2x2 matrix. For a vector field f, the Jacobian stores
/// a(r, c) = d f_r / d x_c.
struct Mat2 {
    double xx = 0.0, xy = 0.0;
    double yx = 0.0, yy = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    constexpr Vec2 col_x() const { return {xx, yx}; }
    constexpr Vec2 col_y() const { return {xy, yy}; }

    friend constexpr Mat2 operator+(const Mat2& a, const Mat2& b) {
        return {a.xx + b.xx, a.xy + b.xy, a.yx + b.yx, a.yy + b.yy};
    }
    friend constexpr Mat2 operator-(const Mat2& a, const Mat2& b) {
        return {a.xx - b.xx, a.xy - b.xy, a.yx - b.yx, a.yy - b.yy};
    }
    friend constexpr Mat2 operator*(double s, const Mat2& a) {
        return {s * a.xx, s * a.xy, s * a.yx, s * a.yy};
    }
    friend constexpr Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.xx * b.xx + a.xy * b.yx, a.xx * b.xy + a.xy * b.yy,
                a.yx * b.xx + a.yy * b.yx, a.yx * b.xy + a.yy * b.yy};
    }
    friend constexpr Vec2 operator*(const Mat2& a, const Vec2& v) {
        return {a.xx * v.x + a.xy * v.y, a.yx * v.x + a.yy * v.y};
    }
    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

constexpr Mat2 transpose(const Mat2& a) { return {a.xx, a.yx, a.xy, a.yy}; }

/// Symmetric Hessian of a scalar function.
struct Hessian {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;
};

/// Contraction of the outer product a (x) b with a symmetric Hessian:
/// sum_{i,j} a_i b_j d_ij f.
constexpr double contract(const Vec2& a, const Vec2& b, const Hessian& hess) {
    return a.x * b.x * hess.xx + (a.x * b.y + a.y * b.x) * hess.xy + a.y * b.y * hess.yy;
}

}  // namespace advectlab
