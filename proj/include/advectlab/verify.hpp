#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "advectlab/core_grid.hpp"
#include "advectlab/dg_p2.hpp"
#include "advectlab/hermite.hpp"
#include "advectlab/jet_scheme.hpp"
#include "advectlab/velocity.hpp"
#include "advectlab/weno3.hpp"

namespace advectlab {

/// Divergence-free flow (y(1 - y), x(1 - x)). Quadratic, so the DG quadrature
/// rules integrate its fluxes exactly, and its values agree across the
/// periodic seams.
class CellularPolyField {
public:
    Vec2 velocity(const Vec2& p, double) const {
        counter_.bump();
        return {p.y * (1.0 - p.y), p.x * (1.0 - p.x)};
    }
    VelocityDerivatives derivatives(const Vec2& p, double) const {
        VelocityDerivatives d;
        d.jacobian = {0.0, 1.0 - 2.0 * p.y, 1.0 - 2.0 * p.x, 0.0};
        d.hess_u = {0.0, 0.0, -2.0};
        d.hess_v = {-2.0, 0.0, 0.0};
        return d;
    }
    std::uint64_t evaluations() const noexcept { return counter_.value(); }

private:
    EvalCounter counter_;
};

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

/// Random jet data in [-1, 1] on every node.
inline JetField random_jet_field(const Grid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    JetField f(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        f.phi[k] = u(rng);
        f.dx[k] = u(rng);
        f.dy[k] = u(rng);
        f.dxy[k] = u(rng);
    }
    return f;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

inline double jet_distance(const JetField& a, const JetField& b) {
    return std::max({max_abs_diff(a.phi, b.phi), max_abs_diff(a.dx, b.dx), max_abs_diff(a.dy, b.dy),
                     max_abs_diff(a.dxy, b.dxy)});
}

/// Fast derivative and consistency checks behind `advectlab verify`.
inline std::vector<CheckResult> run_verification(std::uint64_t seed = 1) {
    std::vector<CheckResult> out;
    auto add = [&out](std::string name, double value, double threshold) {
        out.push_back({std::move(name), value, threshold, value < threshold});
    };

    add("swirl analytic derivatives vs central differences", verify_derivatives(SwirlField(1.0), 100, 1.0, seed), 1e-6);
    add("constant field derivatives", verify_derivatives(ConstantField({2.0, 3.0}), 10, 1.0, seed), 1e-300);

    {
        // x^3 around x0 = 0.3 with h = 0.1: the four-point formula returns 3 x0^2.
        const double h = 0.1, x0 = 0.3;
        auto c = [](double x) { return x * x * x; };
        const double d = weno3_derivative(c(x0 - 2 * h), c(x0 - h), c(x0), c(x0 + h), h, {false, 1e-6});
        add("unlimited WENO3 derivative exact on cubics", std::abs(d - 3.0 * x0 * x0), 1e-12);
    }

    {
        auto mesh = std::make_shared<const dg::Triangulation>(dg::build_triangulation_cells(8));
        const dg::DGField field = dg::l2_project_initial([](const Vec2&) { return 1.0; }, mesh);
        const dg::DGField r = dg::dg_rhs(field, 0.0, CellularPolyField{});
        double worst = 0.0;
        for (const auto& c : r.coeffs)
            for (double x : c) worst = std::max(worst, std::abs(x));
        add("DG rhs of a constant field under divergence-free flow", worst, 1e-12);

        const dg::Matrix6 m = dg::element_mass(mesh->triangles[0]);
        const dg::Matrix6 id = m.inverse() * m;
        add("DG mass matrix inverse", (id - dg::Matrix6::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    }

    {
        const JetField f = random_jet_field(Grid(12), seed);
        add("projection is idempotent", jet_distance(project(f), f), 1e-300);
    }

    {
        // Bi-cubic x^3 y^2 - 2 x y^3 + x^2 on one cell of width 0.25.
        auto poly = [](const Vec2& p) {
            const double x = p.x, y = p.y;
            return JetSample{x * x * x * y * y - 2 * x * y * y * y + x * x, 3 * x * x * y * y - 2 * y * y * y + 2 * x,
                             2 * x * x * x * y - 6 * x * y * y, 6 * x * x * y - 6 * y * y};
        };
        CellJet cell;
        cell.h = 0.25;
        cell.origin = {0.5, 0.25};
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) cell.corner[a][b] = poly(cell.origin + Vec2{a * cell.h, b * cell.h});
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int s = 0; s < 20; ++s) {
            const Vec2 p = cell.origin + cell.h * Vec2{u(rng), u(rng)};
            worst = std::max(worst, std::abs(eval_jet(cell, p).value - poly(p).phi));
        }
        add("bi-cubic interpolant reproduces bi-cubics", worst, 100 * 2.220446049250313e-16);
    }

    {
        const Grid g(16);
        const JetField f0 = sample_jet(g, [](const Vec2& p) {
            constexpr double k = 2.0 * std::numbers::pi;
            return JetSample{std::sin(k * p.x) * std::cos(k * p.y), k * std::cos(k * p.x) * std::cos(k * p.y),
                             -k * std::sin(k * p.x) * std::sin(k * p.y), -k * k * std::cos(k * p.x) * std::sin(k * p.y)};
        });
        const JetField f1 = advance(f0, JetVariant::analytic, 0.0, 1.0, ConstantField({1.0, 0.0}));
        add("node-aligned constant transport returns after one period", jet_distance(f0, f1), 1e-12);
    }

    {
        const RotationField rot;
        const Vec2 x{0.8, 0.6};
        const double e1 = norm(trace_foot(x, 0.0, 0.1, rot) - rot.rotate(x, -0.1));
        const double e2 = norm(trace_foot(x, 0.0, 0.05, rot) - rot.rotate(x, -0.05));
        const double ratio = e1 / e2;
        out.push_back({"backward trace local error ratio at dt, dt/2 in [14, 18]", ratio, 18.0, ratio >= 14.0 && ratio <= 18.0});
    }
    return out;
}

}  // namespace advectlab
