#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "advectlab/errors.hpp"
#include "advectlab/vec.hpp"

namespace advectlab {

struct Polyline {
    std::string scheme;
    double level = 0.0;
    std::vector<Vec2> points;  ///< closed polylines do not repeat the first point
    bool closed = false;
};

struct ContourSet {
    std::vector<Polyline> lines;

    std::vector<const Polyline*> at_level(const std::string& scheme, double level) const {
        std::vector<const Polyline*> out;
        for (const Polyline& l : lines)
            if (l.scheme == scheme && l.level == level) out.push_back(&l);
        return out;
    }
};

namespace detail {

// Marching-squares connectivity graph. Nodes are lattice edges carrying a
// crossing; every node touches at most two segments (one per adjacent square).
class ContourGraph {
public:
    void link(long a, long b) {
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }

    template <class PointOf>
    std::vector<std::pair<std::vector<Vec2>, bool>> chains(PointOf&& point_of) const {
        std::vector<long> keys;
        keys.reserve(adj_.size());
        for (const auto& entry : adj_) keys.push_back(entry.first);
        std::sort(keys.begin(), keys.end());

        std::unordered_map<long, bool> visited;
        std::vector<std::pair<std::vector<Vec2>, bool>> out;
        // Open chains start at degree-one nodes; whatever is left forms cycles.
        for (int pass = 0; pass < 2; ++pass)
            for (long start : keys) {
                if (visited[start]) continue;
                if (pass == 0 && adj_.at(start).size() != 1) continue;
                std::vector<Vec2> pts{point_of(start)};
                visited[start] = true;
                long prev = -1, cur = start;
                bool closed = false;
                while (true) {
                    long next = -1;
                    for (long nb : adj_.at(cur))
                        if (nb != prev) {
                            next = nb;
                            break;
                        }
                    if (next < 0) break;
                    if (next == start) {
                        closed = true;
                        break;
                    }
                    if (visited[next]) break;
                    visited[next] = true;
                    pts.push_back(point_of(next));
                    prev = cur;
                    cur = next;
                }
                out.emplace_back(std::move(pts), closed);
            }
        return out;
    }

private:
    std::unordered_map<long, std::vector<long>> adj_;
};

inline void drop_repeats(std::vector<Vec2>& pts, bool closed) {
    std::vector<Vec2> out;
    out.reserve(pts.size());
    for (const Vec2& p : pts)
        if (out.empty() || !(out.back() == p)) out.push_back(p);
    if (closed)
        while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    pts = std::move(out);
}

}  // namespace detail

/// Iso-lines of `sampler` (Vec2 -> double) on the unit square. The sampler is
/// evaluated on a lattice with `subgrid` points per cell per axis over
/// `cells` cells; marching squares with linear interpolation along lattice
/// edges produces the segments, which are joined into polylines. Saddle
/// squares are resolved with the average of their four corners.
template <class Sampler>
ContourSet extract_contours(Sampler&& sampler, const std::vector<double>& levels, int cells, int subgrid,
                            const std::string& scheme = {}) {
    if (subgrid < 2) throw ConfigError("extract_contours needs subgrid >= 2");
    if (cells < 1) throw ConfigError("extract_contours needs at least one cell");
    const long n = static_cast<long>(cells) * subgrid;  // lattice intervals per axis
    const double d = 1.0 / static_cast<double>(n);
    const long stride = n + 1;

    std::vector<double> val(static_cast<std::size_t>(stride * stride));
    for (long b = 0; b <= n; ++b)
        for (long a = 0; a <= n; ++a) val[b * stride + a] = sampler(Vec2{a * d, b * d});

    ContourSet out;
    for (double level : levels) {
        auto inside = [&](long a, long b) { return val[b * stride + a] >= level; };
        // Lattice edge ids: 2 * node + 0 for the edge to (a+1, b), + 1 for the edge to (a, b+1).
        auto point_of = [&](long id) {
            const long node = id / 2;
            const long a = node % stride, b = node / stride;
            const long a2 = (id % 2 == 0) ? a + 1 : a, b2 = (id % 2 == 0) ? b : b + 1;
            const double v0 = val[b * stride + a], v1 = val[b2 * stride + a2];
            const double s = (level - v0) / (v1 - v0);
            return Vec2{(a + s * (a2 - a)) * d, (b + s * (b2 - b)) * d};
        };

        detail::ContourGraph graph;
        for (long b = 0; b < n; ++b)
            for (long a = 0; a < n; ++a) {
                const int mask = (inside(a, b) ? 1 : 0) | (inside(a + 1, b) ? 2 : 0) | (inside(a + 1, b + 1) ? 4 : 0) |
                                 (inside(a, b + 1) ? 8 : 0);
                if (mask == 0 || mask == 15) continue;
                const long bottom = 2 * (b * stride + a), left = 2 * (b * stride + a) + 1;
                const long top = 2 * ((b + 1) * stride + a), right = 2 * (b * stride + a + 1) + 1;
                const double center = 0.25 * (val[b * stride + a] + val[b * stride + a + 1] +
                                              val[(b + 1) * stride + a + 1] + val[(b + 1) * stride + a]);
                if (mask == 5 || mask == 10) {
                    const bool diag_00_11 = (mask == 5) == (center >= level);
                    if (diag_00_11) {  // corners 10 and 01 are cut off
                        graph.link(bottom, right);
                        graph.link(top, left);
                    } else {
                        graph.link(bottom, left);
                        graph.link(right, top);
                    }
                    continue;
                }
                std::vector<long> hit;
                const bool c00 = mask & 1, c10 = mask & 2, c11 = mask & 4, c01 = mask & 8;
                if (c00 != c10) hit.push_back(bottom);
                if (c10 != c11) hit.push_back(right);
                if (c01 != c11) hit.push_back(top);
                if (c00 != c01) hit.push_back(left);
                graph.link(hit[0], hit[1]);
            }

        for (auto& [pts, closed] : graph.chains(point_of)) {
            detail::drop_repeats(pts, closed);
            if (pts.size() < 3) continue;
            out.lines.push_back({scheme, level, std::move(pts), closed});
        }
    }
    return out;
}

/// Points along a polyline spaced at most `spacing` apart, vertices included.
inline std::vector<Vec2> resample(const Polyline& line, double spacing) {
    std::vector<Vec2> out;
    const std::size_t n = line.points.size();
    if (n == 0) return out;
    const std::size_t segs = line.closed ? n : n - 1;
    out.push_back(line.points[0]);
    for (std::size_t s = 0; s < segs; ++s) {
        const Vec2 a = line.points[s], b = line.points[(s + 1) % n];
        const int pieces = std::max(1, static_cast<int>(std::ceil(norm(b - a) / spacing)));
        for (int k = 1; k <= pieces; ++k) out.push_back(a + (static_cast<double>(k) / pieces) * (b - a));
    }
    return out;
}

namespace detail {
inline double directed_hausdorff(const std::vector<Vec2>& from, const std::vector<Vec2>& to) {
    double worst = 0.0;
    for (const Vec2& p : from) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec2& q : to) {
            const double dx = p.x - q.x, dy = p.y - q.y;
            best = std::min(best, dx * dx + dy * dy);
            if (best <= worst) break;  // cannot raise the maximum
        }
        worst = std::max(worst, best);
    }
    return std::sqrt(worst);
}
}  // namespace detail

/// Symmetric Hausdorff distance between two polyline collections, both
/// resampled at `spacing`. Infinite if exactly one side is empty.
inline double hausdorff(const std::vector<const Polyline*>& a, const std::vector<const Polyline*>& b, double spacing) {
    std::vector<Vec2> pa, pb;
    for (const Polyline* l : a) {
        auto r = resample(*l, spacing);
        pa.insert(pa.end(), r.begin(), r.end());
    }
    for (const Polyline* l : b) {
        auto r = resample(*l, spacing);
        pb.insert(pb.end(), r.begin(), r.end());
    }
    if (pa.empty() && pb.empty()) return 0.0;
    if (pa.empty() || pb.empty()) return std::numeric_limits<double>::infinity();
    return std::max(detail::directed_hausdorff(pa, pb), detail::directed_hausdorff(pb, pa));
}

}  // namespace advectlab
