#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numbers>
#include <random>

#include "advectlab/errors.hpp"
#include "advectlab/vec.hpp"

namespace advectlab {

/// Spatial derivatives of a velocity field (u, v) at one point and time.
struct VelocityDerivatives {
    Mat2 jacobian{};  ///< jacobian(r, c) = d v_r / d x_c
    Hessian hess_u{};
    Hessian hess_v{};

    Vec2 dxy() const { return {hess_u.xy, hess_v.xy}; }
};

/// Thread-safe monotone counter. Copies snapshot the current count.
class EvalCounter {
public:
    EvalCounter() = default;
    EvalCounter(const EvalCounter& o) : count_(o.value()) {}
    EvalCounter& operator=(const EvalCounter& o) {
        count_.store(o.value(), std::memory_order_relaxed);
        return *this;
    }

    void bump() const noexcept { count_.fetch_add(1, std::memory_order_relaxed); }
    std::uint64_t value() const noexcept { return count_.load(std::memory_order_relaxed); }
    void reset() noexcept { count_.store(0, std::memory_order_relaxed); }

private:
    mutable std::atomic<std::uint64_t> count_{0};
};

/// A velocity field with analytic first and second derivatives. Only
/// `velocity` calls are counted; derivative evaluations are free.
template <class V>
concept VelocityField = requires(const V& f, Vec2 p, double t) {
    { f.velocity(p, t) } -> std::same_as<Vec2>;
    { f.derivatives(p, t) } -> std::same_as<VelocityDerivatives>;
    { f.evaluations() } -> std::convertible_to<std::uint64_t>;
};

/// Vortex-in-a-box flow, periodic and divergence-free, reversing at t = T/2:
///   v(x, y, t) = cos(pi t / T) (sin^2(pi x) sin(2 pi y), -sin(2 pi x) sin^2(pi y)).
class SwirlField {
public:
    explicit SwirlField(double period) : period_(period) {
        if (!(period > 0.0)) throw ConfigError("swirl period must be positive");
    }

    double period() const noexcept { return period_; }

    Vec2 velocity(const Vec2& p, double t) const {
        counter_.bump();
        const double c = std::cos(std::numbers::pi * t / period_);
        const double sx = std::sin(std::numbers::pi * p.x);
        const double sy = std::sin(std::numbers::pi * p.y);
        return {c * sx * sx * std::sin(2.0 * std::numbers::pi * p.y),
                -c * std::sin(2.0 * std::numbers::pi * p.x) * sy * sy};
    }

    VelocityDerivatives derivatives(const Vec2& p, double t) const {
        constexpr double pi = std::numbers::pi;
        const double c = std::cos(pi * t / period_);
        const double sx = std::sin(pi * p.x), sy = std::sin(pi * p.y);
        const double s2x = std::sin(2.0 * pi * p.x), c2x = std::cos(2.0 * pi * p.x);
        const double s2y = std::sin(2.0 * pi * p.y), c2y = std::cos(2.0 * pi * p.y);
        const double sx2 = sx * sx, sy2 = sy * sy;

        VelocityDerivatives d;
        d.jacobian = {c * pi * s2x * s2y, c * 2.0 * pi * sx2 * c2y,
                      -c * 2.0 * pi * c2x * sy2, -c * pi * s2x * s2y};
        const double pi2 = pi * pi;
        d.hess_u = {c * 2.0 * pi2 * c2x * s2y, c * 2.0 * pi2 * s2x * c2y, -c * 4.0 * pi2 * sx2 * s2y};
        d.hess_v = {c * 4.0 * pi2 * s2x * sy2, -c * 2.0 * pi2 * c2x * s2y, -c * 2.0 * pi2 * s2x * c2y};
        return d;
    }

    std::uint64_t evaluations() const noexcept { return counter_.value(); }
    void reset_evaluations() noexcept { counter_.reset(); }

private:
    double period_;
    EvalCounter counter_;
};

/// Uniform translation v = c.
class ConstantField {
public:
    explicit ConstantField(Vec2 c) : c_(c) {}

    Vec2 velocity(const Vec2&, double) const {
        counter_.bump();
        return c_;
    }
    VelocityDerivatives derivatives(const Vec2&, double) const { return {}; }

    std::uint64_t evaluations() const noexcept { return counter_.value(); }
    void reset_evaluations() noexcept { counter_.reset(); }

private:
    Vec2 c_;
    EvalCounter counter_;
};

/// Rigid counter-clockwise rotation with unit angular speed about `center`.
/// Not periodic; used for characteristic-tracing checks.
class RotationField {
public:
    explicit RotationField(Vec2 center = {0.5, 0.5}) : center_(center) {}

    Vec2 velocity(const Vec2& p, double) const {
        counter_.bump();
        return {-(p.y - center_.y), p.x - center_.x};
    }
    VelocityDerivatives derivatives(const Vec2&, double) const {
        VelocityDerivatives d;
        d.jacobian = {0.0, -1.0, 1.0, 0.0};
        return d;
    }

    /// Exact position after rotating p for time s.
    Vec2 rotate(const Vec2& p, double s) const {
        const Vec2 r = p - center_;
        return center_ + Vec2{std::cos(s) * r.x - std::sin(s) * r.y, std::sin(s) * r.x + std::cos(s) * r.y};
    }

    std::uint64_t evaluations() const noexcept { return counter_.value(); }
    void reset_evaluations() noexcept { counter_.reset(); }

private:
    Vec2 center_;
    EvalCounter counter_;
};

/// Compares the analytic Jacobian and Hessians against central differences
/// (step 1e-5) at n random points in [0,1]^2 x [0, time_span]. Returns the
/// worst discrepancy, relative to max(1, |analytic|).
template <VelocityField V>
double verify_derivatives(const V& field, int n, double time_span = 1.0, std::uint64_t seed = 1) {
    if (n < 1) throw ConfigError("verify_derivatives needs at least one sample");
    constexpr double step = 1e-5;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double worst = 0.0;
    auto track = [&worst](double analytic, double approx) {
        worst = std::max(worst, std::abs(analytic - approx) / std::max(1.0, std::abs(analytic)));
    };

    for (int s = 0; s < n; ++s) {
        const Vec2 p{unit(rng), unit(rng)};
        const double t = time_span * unit(rng);
        const VelocityDerivatives d = field.derivatives(p, t);
        const Vec2 ex{step, 0.0}, ey{0.0, step};

        const Vec2 dvdx = (1.0 / (2.0 * step)) * (field.velocity(p + ex, t) - field.velocity(p - ex, t));
        const Vec2 dvdy = (1.0 / (2.0 * step)) * (field.velocity(p + ey, t) - field.velocity(p - ey, t));
        track(d.jacobian.xx, dvdx.x);
        track(d.jacobian.yx, dvdx.y);
        track(d.jacobian.xy, dvdy.x);
        track(d.jacobian.yy, dvdy.y);

        const Mat2 jx = (1.0 / (2.0 * step)) * (field.derivatives(p + ex, t).jacobian - field.derivatives(p - ex, t).jacobian);
        const Mat2 jy = (1.0 / (2.0 * step)) * (field.derivatives(p + ey, t).jacobian - field.derivatives(p - ey, t).jacobian);
        track(d.hess_u.xx, jx.xx);
        track(d.hess_u.xy, jy.xx);
        track(d.hess_u.xy, jx.xy);
        track(d.hess_u.yy, jy.xy);
        track(d.hess_v.xx, jx.yx);
        track(d.hess_v.xy, jy.yx);
        track(d.hess_v.xy, jx.yy);
        track(d.hess_v.yy, jy.yy);
    }
    return worst;
}

}  // namespace advectlab
