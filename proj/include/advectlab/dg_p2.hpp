#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "advectlab/errors.hpp"
#include "advectlab/vec.hpp"
#include "advectlab/velocity.hpp"

namespace advectlab::dg {

// ---------------------------------------------------------------------------
// Reference element: nodal P2 Lagrange basis on (0,0), (1,0), (0,1). Nodes are
// the three vertices followed by the midpoints of edges 0-1, 1-2, 2-0.
// ---------------------------------------------------------------------------

inline constexpr int kDofs = 6;
using Coeffs = std::array<double, kDofs>;

inline Coeffs basis(double xi, double eta) {
    const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
    return {l0 * (2.0 * l0 - 1.0), l1 * (2.0 * l1 - 1.0), l2 * (2.0 * l2 - 1.0),
            4.0 * l0 * l1,         4.0 * l1 * l2,         4.0 * l2 * l0};
}

/// Reference gradients d/dxi, d/deta of the six basis functions.
inline std::array<Vec2, kDofs> basis_gradients(double xi, double eta) {
    const double l0 = 1.0 - xi - eta, l1 = xi, l2 = eta;
    const Vec2 g0{-1.0, -1.0}, g1{1.0, 0.0}, g2{0.0, 1.0};
    return {(4.0 * l0 - 1.0) * g0, (4.0 * l1 - 1.0) * g1, (4.0 * l2 - 1.0) * g2,
            4.0 * (l1 * g0 + l0 * g1), 4.0 * (l2 * g1 + l1 * g2), 4.0 * (l0 * g2 + l2 * g0)};
}

struct QuadPoint {
    double xi, eta, weight;  ///< weights sum to the reference area 1/2
};

/// Seven-point symmetric triangle rule, exact for degree 5 (centroid plus two
/// three-point orbits).
inline const std::array<QuadPoint, 7>& triangle_rule() {
    static const std::array<QuadPoint, 7> rule = [] {
        const double s15 = std::sqrt(15.0);
        const double a1 = (6.0 - s15) / 21.0, w1 = (155.0 - s15) / 2400.0;
        const double a2 = (6.0 + s15) / 21.0, w2 = (155.0 + s15) / 2400.0;
        return std::array<QuadPoint, 7>{{{1.0 / 3.0, 1.0 / 3.0, 9.0 / 80.0},
                                         {a1, a1, w1},
                                         {1.0 - 2.0 * a1, a1, w1},
                                         {a1, 1.0 - 2.0 * a1, w1},
                                         {a2, a2, w2},
                                         {1.0 - 2.0 * a2, a2, w2},
                                         {a2, 1.0 - 2.0 * a2, w2}}};
    }();
    return rule;
}

struct EdgePoint {
    double s, weight;  ///< position along the edge in [0, 1]; weights sum to 1
};

/// Three-point Gauss-Legendre on [0, 1], exact for degree 5. The middle point
/// is the edge center.
inline const std::array<EdgePoint, 3>& edge_rule() {
    static const std::array<EdgePoint, 3> rule = [] {
        const double g = 0.5 * std::sqrt(0.6);
        return std::array<EdgePoint, 3>{{{0.5 - g, 5.0 / 18.0}, {0.5, 8.0 / 18.0}, {0.5 + g, 5.0 / 18.0}}};
    }();
    return rule;
}

using Matrix6 = Eigen::Matrix<double, kDofs, kDofs>;

/// Reference mass matrix integral psi_i psi_j over the reference triangle.
inline const Matrix6& reference_mass() {
    static const Matrix6 m = [] {
        Matrix6 out = Matrix6::Zero();
        for (const QuadPoint& q : triangle_rule()) {
            const Coeffs b = basis(q.xi, q.eta);
            for (int i = 0; i < kDofs; ++i)
                for (int j = 0; j < kDofs; ++j) out(i, j) += q.weight * b[i] * b[j];
        }
        return out;
    }();
    return m;
}

inline const Matrix6& reference_mass_inverse() {
    static const Matrix6 inv = reference_mass().inverse();
    return inv;
}

/// Integral of each basis function over the reference triangle.
inline const Coeffs& reference_basis_integrals() {
    static const Coeffs w = [] {
        Coeffs out{};
        for (const QuadPoint& q : triangle_rule()) {
            const Coeffs b = basis(q.xi, q.eta);
            for (int i = 0; i < kDofs; ++i) out[i] += q.weight * b[i];
        }
        return out;
    }();
    return w;
}

// ---------------------------------------------------------------------------
// Mesh
// ---------------------------------------------------------------------------

struct Triangle {
    std::array<int, 3> vertex{};   ///< periodic vertex ids
    std::array<Vec2, 3> corner{};  ///< unwrapped corner coordinates, counter-clockwise
    double area = 0.0;
    Mat2 jac{};          ///< columns corner[1] - corner[0], corner[2] - corner[0]
    Mat2 inv_jac_t{};    ///< J^{-T}, maps reference gradients to physical ones

    Vec2 map(double xi, double eta) const { return corner[0] + jac * Vec2{xi, eta}; }

    Vec2 to_reference(const Vec2& p) const {
        const Vec2 d = p - corner[0];
        const double det = 2.0 * area;
        return {(jac.yy * d.x - jac.xy * d.y) / det, (-jac.yx * d.x + jac.xx * d.y) / det};
    }
};

struct Edge {
    std::array<int, 2> vertex{};
    int left = -1;   ///< triangle the normal points out of
    int right = -1;
    Vec2 normal{};   ///< unit outward normal of `left`
    double length = 0.0;
    Vec2 a{}, b{};   ///< endpoints in `left`'s coordinates
    Vec2 shift{};    ///< add to a left-side point to get the same point in `right`'s coordinates
    /// Basis values at the edge quadrature points, seen from each side.
    std::array<Coeffs, 3> psi_left{}, psi_right{};
};

/// Periodic triangulation of the unit square: an M x M cartesian grid of
/// spacing sqrt(2) h, each cell split along its lower-left to upper-right
/// diagonal. Triangle 2c is the lower-right half of cell c, 2c + 1 the
/// upper-left half.
struct Triangulation {
    int cells = 0;      ///< M
    double h = 0.0;     ///< shortest triangle height
    std::vector<Vec2> vertices;
    std::vector<Triangle> triangles;
    std::vector<Edge> edges;

    std::size_t size() const noexcept { return triangles.size(); }
};

namespace detail {

inline Triangle make_triangle(std::array<int, 3> ids, std::array<Vec2, 3> c) {
    Triangle t;
    t.vertex = ids;
    t.corner = c;
    const Vec2 e1 = c[1] - c[0], e2 = c[2] - c[0];
    t.jac = {e1.x, e2.x, e1.y, e2.y};
    const double det = e1.x * e2.y - e2.x * e1.y;
    t.area = 0.5 * det;
    t.inv_jac_t = {t.jac.yy / det, -t.jac.yx / det, -t.jac.xy / det, t.jac.xx / det};
    return t;
}

inline double wrap_unit(double x) { return x - std::floor(x); }

}  // namespace detail

/// Builds the mesh for M cartesian cells per axis (shortest height 1/(sqrt(2) M)).
inline Triangulation build_triangulation_cells(int m) {
    if (m < 1) throw ConfigError("triangulation needs at least one cell per axis");
    Triangulation mesh;
    mesh.cells = m;
    const double H = 1.0 / m;
    mesh.h = H / std::sqrt(2.0);

    mesh.vertices.reserve(static_cast<std::size_t>(m) * m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) mesh.vertices.push_back({i * H, j * H});

    auto vid = [m](int i, int j) { return ((j % m + m) % m) * m + ((i % m + m) % m); };
    mesh.triangles.reserve(2 * static_cast<std::size_t>(m) * m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) {
            const Vec2 p00{i * H, j * H}, p10{(i + 1) * H, j * H}, p11{(i + 1) * H, (j + 1) * H},
                p01{i * H, (j + 1) * H};
            mesh.triangles.push_back(
                detail::make_triangle({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)}, {p00, p10, p11}));
            mesh.triangles.push_back(
                detail::make_triangle({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)}, {p00, p11, p01}));
        }

    // Pair triangle sides through their wrapped midpoints, which lie on the
    // half-spacing lattice.
    const double tol = 1e-12;
    std::map<std::pair<long, long>, std::pair<int, int>> open;
    for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
        const Triangle& tri = mesh.triangles[t];
        for (int e = 0; e < 3; ++e) {
            const Vec2 a = tri.corner[e], b = tri.corner[(e + 1) % 3];
            const Vec2 mid = 0.5 * (a + b);
            const long kx = std::lround(detail::wrap_unit(mid.x) * 2 * m) % (2 * m);
            const long ky = std::lround(detail::wrap_unit(mid.y) * 2 * m) % (2 * m);
            auto [it, inserted] = open.try_emplace({kx, ky}, t, e);
            if (inserted) continue;

            const auto [lt, le] = it->second;
            open.erase(it);
            const Triangle& left = mesh.triangles[lt];
            Edge edge;
            edge.left = lt;
            edge.right = t;
            edge.a = left.corner[le];
            edge.b = left.corner[(le + 1) % 3];
            edge.vertex = {left.vertex[le], left.vertex[(le + 1) % 3]};
            const Vec2 d = edge.b - edge.a;
            edge.length = norm(d);
            edge.normal = (1.0 / edge.length) * Vec2{d.y, -d.x};
            edge.shift = mid - 0.5 * (edge.a + edge.b);
            // The right side traverses the shared side in the opposite direction.
            if (norm(edge.a + edge.shift - b) > tol || norm(edge.b + edge.shift - a) > tol)
                throw ConfigError("periodic edge pairing failed for triangle " + std::to_string(t));
            for (int q = 0; q < 3; ++q) {
                const Vec2 p = edge.a + edge_rule()[q].s * d;
                const Vec2 rl = left.to_reference(p);
                const Vec2 rr = tri.to_reference(p + edge.shift);
                edge.psi_left[q] = basis(rl.x, rl.y);
                edge.psi_right[q] = basis(rr.x, rr.y);
            }
            mesh.edges.push_back(edge);
        }
    }
    if (!open.empty()) throw ConfigError("triangulation has unpaired edges");
    return mesh;
}

/// Builds the mesh whose shortest triangle height is h; 1/(sqrt(2) h) must be
/// a positive integer (to 1e-9).
inline Triangulation build_triangulation(double h) {
    if (!(h > 0.0)) throw ConfigError("triangulation needs h > 0");
    const double cells = 1.0 / (std::sqrt(2.0) * h);
    const long m = std::lround(cells);
    if (m < 1 || std::abs(cells - m) > 1e-9 * cells)
        throw ConfigError("h = " + std::to_string(h) + " does not tile the unit square (1/(sqrt(2) h) = " +
                          std::to_string(cells) + ")");
    return build_triangulation_cells(static_cast<int>(m));
}

/// Largest mesh not finer than the requested resolution: M = floor(1/(sqrt(2) h)).
inline Triangulation build_triangulation_at_most(double h) {
    if (!(h > 0.0)) throw ConfigError("triangulation needs h > 0");
    const int m = static_cast<int>(std::floor(1.0 / (std::sqrt(2.0) * h) + 1e-9));
    if (m < 1) throw ConfigError("h = " + std::to_string(h) + " is coarser than one cell");
    return build_triangulation_cells(m);
}

/// Element mass matrix 2|K| M_ref.
inline Matrix6 element_mass(const Triangle& t) { return (2.0 * t.area) * reference_mass(); }

// ---------------------------------------------------------------------------
// Fields and operators
// ---------------------------------------------------------------------------

struct DGField {
    std::shared_ptr<const Triangulation> mesh;
    std::vector<Coeffs> coeffs;

    explicit DGField(std::shared_ptr<const Triangulation> m) : mesh(std::move(m)), coeffs(mesh->size(), Coeffs{}) {}
};

inline double eval_element(const Coeffs& c, double xi, double eta) {
    const Coeffs b = basis(xi, eta);
    double acc = 0.0;
    for (int i = 0; i < kDofs; ++i) acc += c[i] * b[i];
    return acc;
}

/// Element-wise L2 projection of f (Vec2 -> double) with the 7-point rule.
template <class F>
DGField l2_project_initial(F&& f, std::shared_ptr<const Triangulation> mesh) {
    DGField out(std::move(mesh));
    const Matrix6& minv = reference_mass_inverse();
    for (std::size_t k = 0; k < out.mesh->size(); ++k) {
        const Triangle& tri = out.mesh->triangles[k];
        Eigen::Matrix<double, kDofs, 1> rhs = Eigen::Matrix<double, kDofs, 1>::Zero();
        for (const QuadPoint& q : triangle_rule()) {
            const double val = f(tri.map(q.xi, q.eta));
            const Coeffs b = basis(q.xi, q.eta);
            for (int i = 0; i < kDofs; ++i) rhs(i) += q.weight * val * b[i];
        }
        // Both sides carry the factor 2|K|, which cancels.
        const Eigen::Matrix<double, kDofs, 1> c = minv * rhs;
        for (int i = 0; i < kDofs; ++i) out.coeffs[k][i] = c(i);
    }
    return out;
}

/// How the upwind side of an edge is chosen.
enum class UpwindRule {
    /// By the sign of v . n at each edge quadrature point. Energy stable.
    per_point,
    /// Once per edge by v . n at the edge center (the middle quadrature point).
    /// Where v . n changes sign along an edge this downwinds part of the edge;
    /// the swirl flow then has growing modes (rate ~10 per unit time) at every
    /// resolution.
    edge_center,
};

/// Time derivative of the coefficients for phi_t + div(v phi) = 0:
///   M dc/dt = int_K phi v . grad psi - int_dK phi_hat v . n psi,
/// with phi_hat the trace from the upwind side. Velocity calls: 7 per element
/// plus 3 per edge; the edge center is the middle edge quadrature point.
template <VelocityField V>
DGField dg_rhs(const DGField& field, double t, const V& v, UpwindRule rule = UpwindRule::per_point) {
    const Triangulation& mesh = *field.mesh;
    std::vector<Coeffs> res(mesh.size(), Coeffs{});

    const auto& vol_rule = triangle_rule();
    static const auto vol_tables = [] {
        std::array<std::pair<Coeffs, std::array<Vec2, kDofs>>, 7> tab;
        for (std::size_t q = 0; q < 7; ++q)
            tab[q] = {basis(triangle_rule()[q].xi, triangle_rule()[q].eta),
                      basis_gradients(triangle_rule()[q].xi, triangle_rule()[q].eta)};
        return tab;
    }();

    for (std::size_t k = 0; k < mesh.size(); ++k) {
        const Triangle& tri = mesh.triangles[k];
        const Coeffs& c = field.coeffs[k];
        const double det = 2.0 * tri.area;
        for (std::size_t q = 0; q < vol_rule.size(); ++q) {
            const auto& [psi, grad] = vol_tables[q];
            double phi = 0.0;
            for (int i = 0; i < kDofs; ++i) phi += c[i] * psi[i];
            const Vec2 vel = v.velocity(tri.map(vol_rule[q].xi, vol_rule[q].eta), t);
            // v . (J^{-T} grad_ref psi) == (J^{-1} v) . grad_ref psi
            const Vec2 vref = transpose(tri.inv_jac_t) * vel;
            const double scale = vol_rule[q].weight * det * phi;
            for (int i = 0; i < kDofs; ++i) res[k][i] += scale * dot(vref, grad[i]);
        }
    }

    const auto& erule = edge_rule();
    for (const Edge& e : mesh.edges) {
        const Coeffs& cl = field.coeffs[e.left];
        const Coeffs& cr = field.coeffs[e.right];
        std::array<double, 3> vn;
        for (int q = 0; q < 3; ++q) vn[q] = dot(v.velocity(e.a + erule[q].s * (e.b - e.a), t), e.normal);
        const bool center_outflow = vn[1] >= 0.0;
        for (int q = 0; q < 3; ++q) {
            const bool outflow = rule == UpwindRule::per_point ? vn[q] >= 0.0 : center_outflow;
            const Coeffs& psi = outflow ? e.psi_left[q] : e.psi_right[q];
            const Coeffs& cu = outflow ? cl : cr;
            double phi_hat = 0.0;
            for (int i = 0; i < kDofs; ++i) phi_hat += cu[i] * psi[i];
            const double flux = erule[q].weight * e.length * phi_hat * vn[q];
            for (int i = 0; i < kDofs; ++i) {
                res[e.left][i] -= flux * e.psi_left[q][i];
                res[e.right][i] += flux * e.psi_right[q][i];
            }
        }
    }

    DGField out(field.mesh);
    const Matrix6& minv = reference_mass_inverse();
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        const double inv_det = 1.0 / (2.0 * mesh.triangles[k].area);
        for (int i = 0; i < kDofs; ++i) {
            double acc = 0.0;
            for (int j = 0; j < kDofs; ++j) acc += minv(i, j) * res[k][j];
            out.coeffs[k][i] = inv_det * acc;
        }
    }
    return out;
}

/// Largest admissible step: h / (c (2k + 1)) with c = 2, k = 2.
inline double max_time_step(const Triangulation& mesh) { return mesh.h / 10.0; }

/// Shu-Osher SSP RK3 step. Rejects dt above the CFL bound h/10.
template <VelocityField V>
DGField dg_ssp_rk3_step(const DGField& u, double t, double dt, const V& v, UpwindRule rule = UpwindRule::per_point) {
    if (!(dt > 0.0)) throw ConfigError("dg step needs dt > 0");
    if (dt > max_time_step(*u.mesh) * (1.0 + 1e-12))
        throw ConfigError("dg step dt = " + std::to_string(dt) + " violates CFL bound h/10 = " +
                          std::to_string(max_time_step(*u.mesh)));
    const std::size_t n = u.coeffs.size();
    auto axpy = [n](DGField& out, double a, const DGField& x, double b, const DGField& y, double c) {
        for (std::size_t k = 0; k < n; ++k)
            for (int i = 0; i < kDofs; ++i) out.coeffs[k][i] = a * x.coeffs[k][i] + b * y.coeffs[k][i] + c * out.coeffs[k][i];
    };

    DGField u1 = dg_rhs(u, t, v, rule);  // holds L(u), then overwritten in place
    axpy(u1, 1.0, u, 0.0, u, dt);
    DGField u2 = dg_rhs(u1, t + dt, v, rule);
    axpy(u2, 0.75, u, 0.25, u1, 0.25 * dt);
    DGField out = dg_rhs(u2, t + 0.5 * dt, v, rule);
    axpy(out, 1.0 / 3.0, u, 2.0 / 3.0, u2, 2.0 / 3.0 * dt);

    for (std::size_t k = 0; k < n; ++k)
        for (int i = 0; i < kDofs; ++i)
            if (!std::isfinite(out.coeffs[k][i])) throw NonFiniteError("dg", k, t);
    return out;
}

/// Integrates to t_end with steps of dt (default h/10), shortening the last.
template <VelocityField V>
DGField dg_advance(DGField field, double t0, double t_end, const V& v, double dt = 0.0, long* steps_taken = nullptr,
                   UpwindRule rule = UpwindRule::per_point) {
    if (t_end < t0) throw ConfigError("dg_advance needs t_end >= t0");
    if (dt <= 0.0) dt = max_time_step(*field.mesh);
    const long steps = static_cast<long>(std::ceil((t_end - t0) / dt - 1e-12));
    double t = t0;
    for (long s = 0; s < steps; ++s) {
        const double step = (s + 1 == steps) ? t_end - t : dt;
        field = dg_ssp_rk3_step(field, t, step, v, rule);
        t = (s + 1 == steps) ? t_end : t0 + (s + 1) * dt;
    }
    if (steps_taken) *steps_taken = steps;
    return field;
}

/// Sum over elements of the integral of phi_h.
inline double total_mass(const DGField& field) {
    const Coeffs& w = reference_basis_integrals();
    double m = 0.0;
    for (std::size_t k = 0; k < field.coeffs.size(); ++k) {
        double acc = 0.0;
        for (int i = 0; i < kDofs; ++i) acc += w[i] * field.coeffs[k][i];
        m += 2.0 * field.mesh->triangles[k].area * acc;
    }
    return m;
}

/// L2 norm of phi_h over the domain.
inline double l2_norm(const DGField& field) {
    const Matrix6& m = reference_mass();
    double sum = 0.0;
    for (std::size_t k = 0; k < field.coeffs.size(); ++k) {
        const Coeffs& c = field.coeffs[k];
        double acc = 0.0;
        for (int i = 0; i < kDofs; ++i)
            for (int j = 0; j < kDofs; ++j) acc += c[i] * m(i, j) * c[j];
        sum += 2.0 * field.mesh->triangles[k].area * acc;
    }
    return std::sqrt(sum);
}

/// Index of the triangle containing p (wrapped into the unit square). Points
/// on shared sides go to the lowest-indexed triangle.
inline std::size_t locate_triangle(const Triangulation& mesh, const Vec2& p, Vec2* reference = nullptr) {
    const int m = mesh.cells;
    const double sx = detail::wrap_unit(p.x) * m, sy = detail::wrap_unit(p.y) * m;
    const int ci = static_cast<int>(std::floor(sx)) % m, cj = static_cast<int>(std::floor(sy)) % m;
    constexpr double tol = 1e-12;

    std::size_t best = mesh.size();
    Vec2 best_ref{};
    for (int dj = -1; dj <= 0; ++dj)
        for (int di = -1; di <= 0; ++di) {
            const int i = ci + di, j = cj + dj;
            const int wi = (i % m + m) % m, wj = (j % m + m) % m;
            // Shift p into the unwrapped frame of cell (wi, wj).
            const Vec2 q{detail::wrap_unit(p.x) + static_cast<double>(wi - i) / m,
                         detail::wrap_unit(p.y) + static_cast<double>(wj - j) / m};
            for (int half = 0; half < 2; ++half) {
                const std::size_t k = 2 * (static_cast<std::size_t>(wj) * m + wi) + half;
                const Vec2 r = mesh.triangles[k].to_reference(q);
                if (r.x >= -tol && r.y >= -tol && r.x + r.y <= 1.0 + tol && k < best) {
                    best = k;
                    best_ref = r;
                }
            }
        }
    if (best == mesh.size()) throw std::logic_error("locate_triangle: point not found");
    if (reference) *reference = best_ref;
    return best;
}

inline double eval_solution(const DGField& field, const Vec2& p) {
    Vec2 r;
    const std::size_t k = locate_triangle(*field.mesh, p, &r);
    return eval_element(field.coeffs[k], r.x, r.y);
}

/// Reference coordinates of the barycentric lattice with `div` subdivisions
/// ((div + 1)(div + 2)/2 points, including vertices and sides).
inline std::vector<Vec2> lattice_points(int div) {
    std::vector<Vec2> pts;
    for (int j = 0; j <= div; ++j)
        for (int i = 0; i + j <= div; ++i) pts.push_back({static_cast<double>(i) / div, static_cast<double>(j) / div});
    return pts;
}

}  // namespace advectlab::dg
