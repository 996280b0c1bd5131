#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "advectlab/advectlab.hpp"

namespace testing_support {

using advectlab::JetSample;
using advectlab::Vec2;

inline constexpr double kEps = 2.220446049250313e-16;

/// a * sin(2 pi (kx x + px)) * sin(2 pi (ky y + py)) with its jet and d_xxyy.
struct TrigMode {
    double a, kx, ky, px, py;

    JetSample jet(const Vec2& p) const {
        const double wx = 2 * std::numbers::pi * kx, wy = 2 * std::numbers::pi * ky;
        const double sx = std::sin(wx * p.x + 2 * std::numbers::pi * px), cx = std::cos(wx * p.x + 2 * std::numbers::pi * px);
        const double sy = std::sin(wy * p.y + 2 * std::numbers::pi * py), cy = std::cos(wy * p.y + 2 * std::numbers::pi * py);
        return {a * sx * sy, a * wx * cx * sy, a * wy * sx * cy, a * wx * wy * cx * cy};
    }
    double dxxyy(const Vec2& p) const {
        const double wx = 2 * std::numbers::pi * kx, wy = 2 * std::numbers::pi * ky;
        return a * wx * wx * wy * wy * std::sin(wx * p.x + 2 * std::numbers::pi * px) *
               std::sin(wy * p.y + 2 * std::numbers::pi * py);
    }
};

inline TrigMode random_mode(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> k(1, 3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {0.5 + u(rng), static_cast<double>(k(rng)), static_cast<double>(k(rng)), u(rng), u(rng)};
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace testing_support
