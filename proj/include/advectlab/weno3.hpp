#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "advectlab/core_grid.hpp"
#include "advectlab/errors.hpp"
#include "advectlab/velocity.hpp"

namespace advectlab {

struct WenoConfig {
    bool limited = true;
    double eps_weno = 1e-6;  ///< smoothness regularizer, > 0
};

struct Weno3Weights {
    double w0 = 2.0 / 3.0;  ///< centered candidate (phi_p - phi_m) / 2h
    double w1 = 1.0 / 3.0;  ///< upwind candidate (3 phi_0 - 4 phi_m + phi_mm) / 2h
};

/// Nonlinear weights from the smoothness indicators (phi_p - phi_0)^2 and
/// (phi_0 - phi_m)^2 around the linear weights 2/3, 1/3.
inline Weno3Weights weno3_weights(double phi_m, double phi_0, double phi_p, double eps_weno) {
    const double b0 = (phi_p - phi_0) * (phi_p - phi_0);
    const double b1 = (phi_0 - phi_m) * (phi_0 - phi_m);
    const double a0 = (2.0 / 3.0) / ((eps_weno + b0) * (eps_weno + b0));
    const double a1 = (1.0 / 3.0) / ((eps_weno + b1) * (eps_weno + b1));
    return {a0 / (a0 + a1), a1 / (a0 + a1)};
}

/// Upwind-biased derivative at offset 0 from samples at offsets -2, -1, 0, +1
/// (in units of h along the upwind-oriented axis).
inline double weno3_derivative(double phi_mm, double phi_m, double phi_0, double phi_p, double h,
                               const WenoConfig& cfg) {
    if (!cfg.limited) return (2.0 * phi_p + 3.0 * phi_0 - 6.0 * phi_m + phi_mm) / (6.0 * h);
    const double d0 = (phi_p - phi_m) / (2.0 * h);
    const double d1 = (3.0 * phi_0 - 4.0 * phi_m + phi_mm) / (2.0 * h);
    const Weno3Weights w = weno3_weights(phi_m, phi_0, phi_p, cfg.eps_weno);
    return w.w0 * d0 + w.w1 * d1;
}

/// Semi-discrete right-hand side -u phi_x - v phi_y. The velocity is evaluated
/// once per node; the stencil is mirrored for negative velocity components
/// (zero counts as positive).
template <VelocityField V>
ScalarField weno3_rhs(const ScalarField& field, double t, const V& v, const WenoConfig& cfg) {
    const Grid& g = field.grid;
    const double h = g.h();
    const auto& f = field.values;
    ScalarField out(g);
    for (int j = 0; j < g.ny(); ++j) {
        for (int i = 0; i < g.nx(); ++i) {
            const Vec2 vel = v.velocity(node_position(g, i, j), t);
            auto at = [&](int di, int dj) { return f[g.index(i + di, j + dj)]; };

            const double phi_x = vel.x >= 0.0
                                     ? weno3_derivative(at(-2, 0), at(-1, 0), at(0, 0), at(1, 0), h, cfg)
                                     : -weno3_derivative(at(2, 0), at(1, 0), at(0, 0), at(-1, 0), h, cfg);
            const double phi_y = vel.y >= 0.0
                                     ? weno3_derivative(at(0, -2), at(0, -1), at(0, 0), at(0, 1), h, cfg)
                                     : -weno3_derivative(at(0, 2), at(0, 1), at(0, 0), at(0, -1), h, cfg);
            out.values[g.index(i, j)] = -vel.x * phi_x - vel.y * phi_y;
        }
    }
    return out;
}

namespace detail {
inline void check_finite(const std::vector<double>& values, const char* scheme, double t) {
    for (std::size_t k = 0; k < values.size(); ++k)
        if (!std::isfinite(values[k])) throw NonFiniteError(scheme, k, t);
}
}  // namespace detail

/// Shu-Osher SSP RK3 step for the WENO semi-discretization.
template <VelocityField V>
ScalarField weno3_ssp_rk3_step(const ScalarField& u, double t, double dt, const V& v, const WenoConfig& cfg) {
    if (!(dt > 0.0)) throw ConfigError("weno3_ssp_rk3_step needs dt > 0");
    const std::size_t n = u.values.size();

    ScalarField u1 = weno3_rhs(u, t, v, cfg);
    for (std::size_t k = 0; k < n; ++k) u1.values[k] = u.values[k] + dt * u1.values[k];

    ScalarField u2 = weno3_rhs(u1, t + dt, v, cfg);
    for (std::size_t k = 0; k < n; ++k)
        u2.values[k] = 0.75 * u.values[k] + 0.25 * u1.values[k] + 0.25 * dt * u2.values[k];

    ScalarField out = weno3_rhs(u2, t + 0.5 * dt, v, cfg);
    for (std::size_t k = 0; k < n; ++k)
        out.values[k] = u.values[k] / 3.0 + (2.0 / 3.0) * u2.values[k] + (2.0 / 3.0) * dt * out.values[k];

    detail::check_finite(out.values, cfg.limited ? "weno" : "weno-nolimit", t);
    return out;
}

/// Integrates to t_end with steps of dt (default h), shortening the last one.
template <VelocityField V>
ScalarField weno3_advance(ScalarField field, double t0, double t_end, const V& v, const WenoConfig& cfg,
                          double dt = 0.0, long* steps_taken = nullptr) {
    if (t_end < t0) throw ConfigError("weno3_advance needs t_end >= t0");
    if (dt <= 0.0) dt = field.grid.h();
    const long steps = static_cast<long>(std::ceil((t_end - t0) / dt - 1e-12));
    double t = t0;
    for (long s = 0; s < steps; ++s) {
        const double step = (s + 1 == steps) ? t_end - t : dt;
        field = weno3_ssp_rk3_step(field, t, step, v, cfg);
        t = (s + 1 == steps) ? t_end : t0 + (s + 1) * dt;
    }
    if (steps_taken) *steps_taken = steps;
    return field;
}

}  // namespace advectlab
