#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>

#include "advectlab/core_grid.hpp"
#include "advectlab/errors.hpp"
#include "advectlab/hermite.hpp"
#include "advectlab/vec.hpp"
#include "advectlab/velocity.hpp"

namespace advectlab {

/// A backward characteristic point together with its first derivatives and
/// mixed second derivative with respect to the starting position.
struct TracedPoint {
    Vec2 pos{};
    Mat2 jac = Mat2::identity();  ///< jac(r, c) = d pos_r / d x_c
    Vec2 dxy{};
};

/// Three stages of the backward Shu-Osher trace from (x, t + dt) to time t.
struct TraceResult {
    TracedPoint stage1;
    TracedPoint stage2;
    TracedPoint foot;
};

/// Foot point of the characteristic through x at t + dt, traced back to t
/// with the three-stage SSP Runge-Kutta scheme. Three velocity evaluations.
template <VelocityField V>
Vec2 trace_foot(const Vec2& x, double t, double dt, const V& v) {
    const Vec2 x1 = x - dt * v.velocity(x, t + dt);
    const Vec2 x2 = 0.75 * x + 0.25 * x1 - (0.25 * dt) * v.velocity(x1, t);
    return (1.0 / 3.0) * x + (2.0 / 3.0) * x2 - (2.0 / 3.0 * dt) * v.velocity(x2, t + 0.5 * dt);
}

namespace detail {

// Differentiated RK stage  y = a x + b prev - c dt v(prev, s), with a, b, c
// the stage weights. The mixed term applies (d_x prev)^T (d_y prev) : D^2 v
// per velocity component.
template <VelocityField V>
TracedPoint rk_stage(const Vec2& x, const TracedPoint& prev, double a, double b, double c, double dt, double s,
                     const V& v) {
    const Vec2 vel = v.velocity(prev.pos, s);
    const VelocityDerivatives d = v.derivatives(prev.pos, s);
    const Vec2 px = prev.jac.col_x();
    const Vec2 py = prev.jac.col_y();
    const Vec2 mixed{contract(px, py, d.hess_u), contract(px, py, d.hess_v)};

    TracedPoint out;
    out.pos = a * x + b * prev.pos - (c * dt) * vel;
    out.jac = a * Mat2::identity() + b * prev.jac - (c * dt) * (d.jacobian * prev.jac);
    out.dxy = b * prev.dxy - (c * dt) * (d.jacobian * prev.dxy + mixed);
    return out;
}

}  // namespace detail

/// Backward trace with analytic derivatives of every stage.
template <VelocityField V>
TraceResult trace_jet(const Vec2& x, double t, double dt, const V& v) {
    TraceResult r;
    const TracedPoint start{x, Mat2::identity(), {}};
    // x1 = x - dt v(x, t + dt) is the a = 0, b = 1 stage started at x itself.
    r.stage1 = detail::rk_stage(x, start, 0.0, 1.0, 1.0, dt, t + dt, v);
    r.stage2 = detail::rk_stage(x, r.stage1, 0.75, 0.25, 0.25, dt, t, v);
    r.foot = detail::rk_stage(x, r.stage2, 1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, dt, t + 0.5 * dt, v);
    return r;
}

namespace detail {
inline bool finite_sample(double a, double b, double c, double d) {
    return std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d);
}
}  // namespace detail

/// One jet-scheme step t -> t + dt with derivatives obtained by
/// differentiating the characteristic trace. Throws NonFiniteError naming the
/// first node whose new jet is not finite.
template <VelocityField V>
JetField step_analytic(const JetField& field, double t, double dt, const V& v) {
    if (!(dt > 0.0)) throw ConfigError("step_analytic needs dt > 0");
    const Grid& g = field.grid;
    JetField out(g);
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const TraceResult tr = trace_jet(node_position(g, i, j), t, dt, v);
            const TracedPoint& f = tr.foot;
            const CellLocation loc = locate_cell(g, f.pos);
            const JetEval hv = eval_jet_local(cell_jet(field, loc.ci, loc.cj), loc.xi, loc.eta);

            const Vec2 fx = f.jac.col_x();
            const Vec2 fy = f.jac.col_y();
            const Vec2 grad = hv.gradient();
            const std::size_t k = g.index(i, j);
            out.phi[k] = hv.value;
            out.dx[k] = dot(fx, grad);
            out.dy[k] = dot(fy, grad);
            out.dxy[k] = dot(f.dxy, grad) + contract(fx, fy, hv.hessian());
            if (!detail::finite_sample(out.phi[k], out.dx[k], out.dy[k], out.dxy[k]))
                throw NonFiniteError("jet-analytic", k, t);
        }
    }
    return out;
}

/// Default offset for epsilon finite differences, about delta^(1/4) in double.
inline constexpr double kDefaultEpsilon = 1e-4;

/// One jet-scheme step using epsilon finite differences: four characteristics
/// from (x +- eps, y +- eps) are traced back, all feet are evaluated on the one
/// cell holding their center of mass, and the jet is recovered by averaging
/// and differencing. Twelve velocity evaluations per node.
template <VelocityField V>
JetField step_epsfd(const JetField& field, double t, double dt, double eps, const V& v) {
    if (!(dt > 0.0)) throw ConfigError("step_epsfd needs dt > 0");
    const Grid& g = field.grid;
    if (!(eps > 0.0 && eps < 0.5 * g.h()))
        throw ConfigError("step_epsfd needs 0 < eps < h/2, got eps = " + std::to_string(eps));

    // Order: (+,+), (-,+), (+,-), (-,-).
    constexpr std::array<Vec2, 4> offsets{Vec2{1.0, 1.0}, Vec2{-1.0, 1.0}, Vec2{1.0, -1.0}, Vec2{-1.0, -1.0}};
    const double n = g.nx();

    JetField out(g);
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const Vec2 x = node_position(g, i, j);
            std::array<Vec2, 4> feet;
            for (std::size_t q = 0; q < 4; ++q) feet[q] = trace_foot(x + eps * offsets[q], t, dt, v);

            // Put all feet into the periodic copy of the first one before averaging.
            Vec2 com = feet[0];
            for (std::size_t q = 1; q < 4; ++q) {
                const Vec2 d = feet[q] - feet[0];
                feet[q] -= Vec2{std::round(d.x), std::round(d.y)};
                com += feet[q];
            }
            com *= 0.25;

            const double ci = std::floor(com.x * n);
            const double cj = std::floor(com.y * n);
            const CellJet cell = cell_jet(field, static_cast<int>(ci), static_cast<int>(cj));

            std::array<double, 4> val;
            for (std::size_t q = 0; q < 4; ++q)
                val[q] = eval_value_local(cell, feet[q].x * n - ci, feet[q].y * n - cj);

            const std::size_t k = g.index(i, j);
            out.phi[k] = 0.25 * (val[0] + val[1] + val[2] + val[3]);
            out.dx[k] = (val[0] - val[1] + val[2] - val[3]) / (4.0 * eps);
            out.dy[k] = (val[0] + val[1] - val[2] - val[3]) / (4.0 * eps);
            out.dxy[k] = (val[0] - val[1] - val[2] + val[3]) / (4.0 * eps * eps);
            if (!detail::finite_sample(out.phi[k], out.dx[k], out.dy[k], out.dxy[k]))
                throw NonFiniteError("jet-epsfd", k, t);
        }
    }
    return out;
}

enum class JetVariant { analytic, epsfd };

struct AdvanceStats {
    long steps = 0;
};

/// Integrates from t0 to t_end with steps of dt (default: the grid spacing);
/// the last step is shortened to land exactly on t_end. Projection is implicit:
/// each step writes exactly the node data that defines the interpolant.
template <VelocityField V>
JetField advance(JetField field, JetVariant variant, double t0, double t_end, const V& v, double dt = 0.0,
                 double eps = kDefaultEpsilon, AdvanceStats* stats = nullptr) {
    if (t_end < t0) throw ConfigError("advance needs t_end >= t0");
    if (dt <= 0.0) dt = field.grid.h();
    const long steps = static_cast<long>(std::ceil((t_end - t0) / dt - 1e-12));
    double t = t0;
    for (long s = 0; s < steps; ++s) {
        const double step = (s + 1 == steps) ? t_end - t : dt;
        field = variant == JetVariant::analytic ? step_analytic(field, t, step, v) : step_epsfd(field, t, step, eps, v);
        t = (s + 1 == steps) ? t_end : t0 + (s + 1) * dt;
    }
    if (stats) stats->steps = steps;
    return field;
}

}  // namespace advectlab
