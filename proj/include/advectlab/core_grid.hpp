#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "advectlab/errors.hpp"
#include "advectlab/vec.hpp"

namespace advectlab {

/// Uniform periodic grid on the unit square with n x n nodes and spacing 1/n.
/// Node (i, j) sits at (i/n, j/n); indices wrap modulo n.
class Grid {
public:
    explicit Grid(int n) : n_(n) {
        if (n <= 0) throw ConfigError("grid needs a positive node count, got " + std::to_string(n));
        h_ = 1.0 / n;
    }

    int nx() const noexcept { return n_; }
    int ny() const noexcept { return n_; }
    double h() const noexcept { return h_; }
    Vec2 origin() const noexcept { return {0.0, 0.0}; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * n_; }

    int wrap(int i) const noexcept {
        const int r = i % n_;
        return r < 0 ? r + n_ : r;
    }

    /// Flat row-major index (x fastest).
    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(wrap(j)) * n_ + wrap(i);
    }

    friend bool operator==(const Grid& a, const Grid& b) { return a.n_ == b.n_; }

private:
    int n_;
    double h_;
};

inline Vec2 node_position(const Grid& grid, int i, int j) {
    return {static_cast<double>(grid.wrap(i)) / grid.nx(), static_cast<double>(grid.wrap(j)) / grid.ny()};
}

struct CellLocation {
    int ci = 0;
    int cj = 0;
    double xi = 0.0;
    double eta = 0.0;
};

namespace detail {
// s in grid units; splits into a wrapped cell index and local coordinate in [0, 1).
inline void split_coordinate(double s, int n, int& cell, double& local) {
    const double fl = std::floor(s);
    local = s - fl;
    if (local >= 1.0) {  // s - floor(s) can round up to 1 for tiny negative s
        local = 0.0;
        cell = static_cast<int>(fl) + 1;
    } else {
        cell = static_cast<int>(fl);
    }
    cell %= n;
    if (cell < 0) cell += n;
}
}  // namespace detail

/// Periodic cell lookup. Points on an upper cell edge belong to the next cell
/// with local coordinate 0.
inline CellLocation locate_cell(const Grid& grid, const Vec2& p) {
    CellLocation loc;
    detail::split_coordinate(p.x * grid.nx(), grid.nx(), loc.ci, loc.xi);
    detail::split_coordinate(p.y * grid.ny(), grid.ny(), loc.cj, loc.eta);
    return loc;
}

/// Node values of phi and its jet (dx, dy, dxy) in physical units.
struct JetField {
    Grid grid;
    std::vector<double> phi, dx, dy, dxy;

    explicit JetField(const Grid& g)
        : grid(g), phi(g.size(), 0.0), dx(g.size(), 0.0), dy(g.size(), 0.0), dxy(g.size(), 0.0) {}

    friend bool operator==(const JetField&, const JetField&) = default;
};

struct ScalarField {
    Grid grid;
    std::vector<double> values;

    explicit ScalarField(const Grid& g) : grid(g), values(g.size(), 0.0) {}

    friend bool operator==(const ScalarField&, const ScalarField&) = default;
};

/// Pointwise value and the mixed-order derivatives a jet field stores.
struct JetSample {
    double phi = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    double dxy = 0.0;
};

/// Fills every node with the exact jet of `f`, a callable Vec2 -> JetSample.
template <class F>
JetField sample_jet(const Grid& grid, F&& f) {
    JetField out(grid);
    for (int j = 0; j < grid.ny(); ++j) {
        for (int i = 0; i < grid.nx(); ++i) {
            const JetSample s = f(node_position(grid, i, j));
            const std::size_t k = grid.index(i, j);
            out.phi[k] = s.phi;
            out.dx[k] = s.dx;
            out.dy[k] = s.dy;
            out.dxy[k] = s.dxy;
        }
    }
    return out;
}

/// Fills every node with f(x), a callable Vec2 -> double.
template <class F>
ScalarField sample_scalar(const Grid& grid, F&& f) {
    ScalarField out(grid);
    for (int j = 0; j < grid.ny(); ++j)
        for (int i = 0; i < grid.nx(); ++i) out.values[grid.index(i, j)] = f(node_position(grid, i, j));
    return out;
}

}  // namespace advectlab
