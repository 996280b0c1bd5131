#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "advectlab/core_grid.hpp"
#include "advectlab/errors.hpp"

using namespace advectlab;

TEST(Grid, SpacingAndSize) {
    const Grid g(4);
    EXPECT_EQ(g.nx(), 4);
    EXPECT_EQ(g.ny(), 4);
    EXPECT_DOUBLE_EQ(g.h(), 0.25);
    EXPECT_EQ(g.size(), 16u);
    EXPECT_THROW(Grid(0), ConfigError);
    EXPECT_THROW(Grid(-3), ConfigError);
}

TEST(Grid, IndexIsRowMajorAndPeriodic) {
    const Grid g(5);
    EXPECT_EQ(g.index(0, 0), 0u);
    EXPECT_EQ(g.index(1, 0), 1u);
    EXPECT_EQ(g.index(0, 1), 5u);
    EXPECT_EQ(g.index(-1, 0), g.index(4, 0));
    EXPECT_EQ(g.index(7, -6), g.index(2, 4));
}

TEST(NodePosition, Examples) {
    const Grid g(4);
    EXPECT_EQ(node_position(g, 0, 0), (Vec2{0.0, 0.0}));
    EXPECT_EQ(node_position(g, 2, 3), (Vec2{0.5, 0.75}));
    EXPECT_EQ(node_position(g, 4, 0), (Vec2{0.0, 0.0}));
    EXPECT_EQ(node_position(g, -1, 5), (Vec2{0.75, 0.25}));
}

TEST(LocateCell, Examples) {
    const Grid g(4);
    CellLocation a = locate_cell(g, {0.3, 0.3});
    EXPECT_EQ(a.ci, 1);
    EXPECT_EQ(a.cj, 1);
    EXPECT_NEAR(a.xi, 0.2, 1e-14);
    EXPECT_NEAR(a.eta, 0.2, 1e-14);

    CellLocation b = locate_cell(g, {-0.05, 0.5});
    EXPECT_EQ(b.ci, 3);
    EXPECT_EQ(b.cj, 2);
    EXPECT_NEAR(b.xi, 0.8, 1e-14);
    EXPECT_EQ(b.eta, 0.0);

    CellLocation c = locate_cell(g, {1.0, 1.0});
    EXPECT_EQ(c.ci, 0);
    EXPECT_EQ(c.cj, 0);
    EXPECT_EQ(c.xi, 0.0);
    EXPECT_EQ(c.eta, 0.0);
}

TEST(LocateCell, TinyNegativeCoordinateStaysInUnitInterval) {
    const Grid g(8);
    const CellLocation loc = locate_cell(g, {-1e-18, 0.5});
    EXPECT_GE(loc.xi, 0.0);
    EXPECT_LT(loc.xi, 1.0);
    EXPECT_GE(loc.ci, 0);
    EXPECT_LT(loc.ci, 8);
}

TEST(LocateCell, NodesMapToZeroLocalCoordinates) {
    for (int n : {3, 7, 16}) {
        const Grid g(n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                const CellLocation loc = locate_cell(g, node_position(g, i, j));
                EXPECT_EQ(loc.ci, i);
                EXPECT_EQ(loc.cj, j);
                EXPECT_EQ(loc.xi, 0.0);
                EXPECT_EQ(loc.eta, 0.0);
            }
    }
}

TEST(LocateCell, PeriodicShiftGivesSameCell) {
    const Grid g(10);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int s = 0; s < 200; ++s) {
        const Vec2 p{u(rng), u(rng)};
        const CellLocation a = locate_cell(g, p);
        const CellLocation b = locate_cell(g, p + Vec2{1.0, -1.0});
        EXPECT_EQ(a.ci, b.ci);
        EXPECT_EQ(a.cj, b.cj);
        EXPECT_NEAR(a.xi, b.xi, 1e-12);
        EXPECT_NEAR(a.eta, b.eta, 1e-12);
        // Reconstruction: node + h * local == p.
        const Vec2 back = node_position(g, a.ci, a.cj) + g.h() * Vec2{a.xi, a.eta};
        EXPECT_NEAR(back.x, p.x, 1e-14);
        EXPECT_NEAR(back.y, p.y, 1e-14);
        EXPECT_GE(a.xi, 0.0);
        EXPECT_LT(a.xi, 1.0);
    }
}

TEST(SampleJet, Constant) {
    const Grid g(6);
    const JetField f = sample_jet(g, [](const Vec2&) { return JetSample{1.0, 0.0, 0.0, 0.0}; });
    for (std::size_t k = 0; k < g.size(); ++k) {
        EXPECT_EQ(f.phi[k], 1.0);
        EXPECT_EQ(f.dx[k], 0.0);
        EXPECT_EQ(f.dy[k], 0.0);
        EXPECT_EQ(f.dxy[k], 0.0);
    }
}

TEST(SampleJet, ProductXY) {
    const Grid g(5);
    const JetField f = sample_jet(g, [](const Vec2& p) { return JetSample{p.x * p.y, p.y, p.x, 1.0}; });
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 5; ++i) {
            const std::size_t k = g.index(i, j);
            EXPECT_DOUBLE_EQ(f.phi[k], (i / 5.0) * (j / 5.0));
            EXPECT_DOUBLE_EQ(f.dx[k], j / 5.0);
            EXPECT_DOUBLE_EQ(f.dy[k], i / 5.0);
            EXPECT_EQ(f.dxy[k], 1.0);
        }
}

TEST(SampleJet, SpotValue) {
    const Grid g(8);
    const JetField f = sample_jet(g, [](const Vec2& p) {
        return JetSample{std::cos(2 * std::numbers::pi * p.x) * std::cos(4 * std::numbers::pi * p.y), 0, 0, 0};
    });
    EXPECT_NEAR(f.phi[g.index(2, 1)], 0.0, 1e-15);
}

TEST(SampleScalar, DeterministicAcrossCalls) {
    const Grid g(9);
    auto f = [](const Vec2& p) { return std::sin(3 * p.x) + p.y * p.y; };
    EXPECT_EQ(sample_scalar(g, f), sample_scalar(g, f));
}
