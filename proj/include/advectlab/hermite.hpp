#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "advectlab/core_grid.hpp"
#include "advectlab/vec.hpp"

namespace advectlab {

/// Univariate cubic Hermite basis w^q_alpha on [0, 1]. alpha selects value (0)
/// or slope (1) data, q selects the left (0) or right (1) endpoint.
constexpr double basis_1d(int alpha, int q, double x) {
    if (alpha == 0) return q == 0 ? 1.0 - 3.0 * x * x + 2.0 * x * x * x : 3.0 * x * x - 2.0 * x * x * x;
    return q == 0 ? x - 2.0 * x * x + x * x * x : -x * x + x * x * x;
}

constexpr double basis_1d_d1(int alpha, int q, double x) {
    if (alpha == 0) return q == 0 ? -6.0 * x + 6.0 * x * x : 6.0 * x - 6.0 * x * x;
    return q == 0 ? 1.0 - 4.0 * x + 3.0 * x * x : -2.0 * x + 3.0 * x * x;
}

constexpr double basis_1d_d2(int alpha, int q, double x) {
    if (alpha == 0) return q == 0 ? -6.0 + 12.0 * x : 6.0 - 12.0 * x;
    return q == 0 ? -4.0 + 6.0 * x : -2.0 + 6.0 * x;
}

/// Hermite data on the four corners of one cell. corner[q1][q2] is the jet at
/// (a + q1 h, b + q2 h); derivatives are in physical units.
struct CellJet {
    std::array<std::array<JetSample, 2>, 2> corner{};
    Vec2 origin{};
    double h = 1.0;
};

/// Value, gradient and Hessian of a cell interpolant at one point.
struct JetEval {
    double value = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    double dxx = 0.0;
    double dxy = 0.0;
    double dyy = 0.0;

    Vec2 gradient() const { return {dx, dy}; }
    Hessian hessian() const { return {dxx, dxy, dyy}; }
};

namespace detail {

// Physical-unit basis tables along one axis: tab[k][q][alpha] is the k-th
// derivative of h^alpha w^q_alpha((x - a) / h) with respect to x.
struct AxisTable {
    double tab[3][2][2];

    AxisTable(double s, double h) {
        const double inv_h = 1.0 / h;
        for (int q = 0; q < 2; ++q) {
            tab[0][q][0] = basis_1d(0, q, s);
            tab[0][q][1] = h * basis_1d(1, q, s);
            tab[1][q][0] = inv_h * basis_1d_d1(0, q, s);
            tab[1][q][1] = basis_1d_d1(1, q, s);
            tab[2][q][0] = inv_h * inv_h * basis_1d_d2(0, q, s);
            tab[2][q][1] = inv_h * basis_1d_d2(1, q, s);
        }
    }
};

inline double slot(const JetSample& s, int ax, int ay) {
    if (ax == 0) return ay == 0 ? s.phi : s.dy;
    return ay == 0 ? s.dx : s.dxy;
}

// sum_{q, alpha} phi^q_alpha * X[kx][q1][a1] * Y[ky][q2][a2]
inline double contract_tables(const CellJet& cell, const AxisTable& tx, int kx, const AxisTable& ty, int ky) {
    double acc = 0.0;
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2) {
            const JetSample& c = cell.corner[q1][q2];
            for (int a1 = 0; a1 < 2; ++a1)
                for (int a2 = 0; a2 < 2; ++a2) acc += slot(c, a1, a2) * tx.tab[kx][q1][a1] * ty.tab[ky][q2][a2];
        }
    return acc;
}

}  // namespace detail

/// Evaluates the bi-cubic interpolant at local coordinates (xi, eta). Values
/// outside [0, 1]^2 extrapolate the same polynomial.
inline JetEval eval_jet_local(const CellJet& cell, double xi, double eta) {
    const detail::AxisTable tx(xi, cell.h);
    const detail::AxisTable ty(eta, cell.h);
    JetEval e;
    e.value = detail::contract_tables(cell, tx, 0, ty, 0);
    e.dx = detail::contract_tables(cell, tx, 1, ty, 0);
    e.dy = detail::contract_tables(cell, tx, 0, ty, 1);
    e.dxx = detail::contract_tables(cell, tx, 2, ty, 0);
    e.dxy = detail::contract_tables(cell, tx, 1, ty, 1);
    e.dyy = detail::contract_tables(cell, tx, 0, ty, 2);
    return e;
}

inline JetEval eval_jet(const CellJet& cell, const Vec2& p) {
    return eval_jet_local(cell, (p.x - cell.origin.x) / cell.h, (p.y - cell.origin.y) / cell.h);
}

/// Value-only evaluation; the hot path of the epsilon-difference stepper.
inline double eval_value_local(const CellJet& cell, double xi, double eta) {
    double wx[2][2], wy[2][2];
    for (int q = 0; q < 2; ++q) {
        wx[q][0] = basis_1d(0, q, xi);
        wx[q][1] = cell.h * basis_1d(1, q, xi);
        wy[q][0] = basis_1d(0, q, eta);
        wy[q][1] = cell.h * basis_1d(1, q, eta);
    }
    double acc = 0.0;
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2) {
            const JetSample& c = cell.corner[q1][q2];
            acc += c.phi * wx[q1][0] * wy[q2][0] + c.dx * wx[q1][1] * wy[q2][0] + c.dy * wx[q1][0] * wy[q2][1] +
                   c.dxy * wx[q1][1] * wy[q2][1];
        }
    return acc;
}

/// d^4 H / dx^2 dy^2 at local coordinates; bi-linear within the cell.
inline double eval_dxxyy_local(const CellJet& cell, double xi, double eta) {
    const detail::AxisTable tx(xi, cell.h);
    const detail::AxisTable ty(eta, cell.h);
    return detail::contract_tables(cell, tx, 2, ty, 2);
}

/// Gathers the corner data of cell (ci, cj); indices wrap periodically and the
/// origin is the unwrapped lower-left corner ci*h, cj*h.
inline CellJet cell_jet(const JetField& field, int ci, int cj) {
    const Grid& g = field.grid;
    CellJet cell;
    cell.h = g.h();
    cell.origin = {static_cast<double>(ci) / g.nx(), static_cast<double>(cj) / g.ny()};
    for (int q1 = 0; q1 < 2; ++q1)
        for (int q2 = 0; q2 < 2; ++q2) {
            const std::size_t k = g.index(ci + q1, cj + q2);
            cell.corner[q1][q2] = {field.phi[k], field.dx[k], field.dy[k], field.dxy[k]};
        }
    return cell;
}

/// Evaluates the global piecewise interpolant H_phi at an arbitrary point.
inline JetEval interpolate(const JetField& field, const Vec2& p) {
    const CellLocation loc = locate_cell(field.grid, p);
    return eval_jet_local(cell_jet(field, loc.ci, loc.cj), loc.xi, loc.eta);
}

inline double interpolate_value(const JetField& field, const Vec2& p) {
    const CellLocation loc = locate_cell(field.grid, p);
    return eval_value_local(cell_jet(field, loc.ci, loc.cj), loc.xi, loc.eta);
}

/// Projection onto the Hermite space: re-samples the global interpolant's jet
/// at every node. Nodes carry the defining data, so this is the identity.
inline JetField project(const JetField& field) {
    const Grid& g = field.grid;
    JetField out(g);
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) {
            const JetEval e = eval_jet_local(cell_jet(field, i, j), 0.0, 0.0);
            const std::size_t k = g.index(i, j);
            out.phi[k] = e.value;
            out.dx[k] = e.dx;
            out.dy[k] = e.dy;
            out.dxy[k] = e.dxy;
        }
    return out;
}

/// Integral of (d_xxyy H)^2 over one cell. The integrand is a squared bi-linear
/// polynomial, so the 2x2 Gauss rule is exact.
inline double cell_stability_integral(const CellJet& cell) {
    const double g = 0.5 / std::sqrt(3.0);
    const double nodes[2] = {0.5 - g, 0.5 + g};
    double acc = 0.0;
    for (double xi : nodes)
        for (double eta : nodes) {
            const double d = eval_dxxyy_local(cell, xi, eta);
            acc += d * d;
        }
    return acc * 0.25 * cell.h * cell.h;
}

/// F[phi] = integral over the periodic domain of (d_xxyy H_phi)^2.
inline double stability_functional(const JetField& field) {
    const Grid& g = field.grid;
    double total = 0.0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i) total += cell_stability_integral(cell_jet(field, i, j));
    return total;
}

}  // namespace advectlab
