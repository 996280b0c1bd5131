#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support.hpp"

using namespace advectlab;

namespace {

const WenoConfig kLimited{true, 1e-6};
const WenoConfig kUnlimited{false, 1e-6};

ScalarField sine_x(const Grid& g) {
    return sample_scalar(g, [](const Vec2& p) { return std::sin(2 * std::numbers::pi * p.x); });
}

double rhs_error(int n, const WenoConfig& cfg, double speed) {
    const Grid g(n);
    const ScalarField r = weno3_rhs(sine_x(g), 0.0, ConstantField({speed, 0.0}), cfg);
    double worst = 0;
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double x = node_position(g, i, j).x;
            worst = std::max(worst, std::abs(r.values[g.index(i, j)] + speed * 2 * std::numbers::pi *
                                                                           std::cos(2 * std::numbers::pi * x)));
        }
    return worst;
}

}  // namespace

TEST(Weno3Derivative, ExactOnLinearData) {
    const double h = 0.1, a = 0.7, b = -2.5;
    auto f = [&](double x) { return a + b * x; };
    for (const WenoConfig& cfg : {kLimited, kUnlimited})
        EXPECT_NEAR(weno3_derivative(f(-2 * h), f(-h), f(0), f(h), h, cfg), b, 1e-12);
}

TEST(Weno3Derivative, UnlimitedExactOnCubics) {
    const double h = 0.05;
    for (double x0 : {-0.3, 0.0, 0.4, 1.7}) {
        auto f = [](double x) { return x * x * x; };
        const double d = weno3_derivative(f(x0 - 2 * h), f(x0 - h), f(x0), f(x0 + h), h, kUnlimited);
        EXPECT_NEAR(d, 3 * x0 * x0, 1e-12);
    }
}

TEST(Weno3Derivative, LimitedLeansUpwindAtDownwindKink) {
    const double h = 0.1;
    const double mm = 0.0, m = 0.1, z = 0.2, p = 5.0;  // outlier downwind
    const double d0 = (p - m) / (2 * h), d1 = (3 * z - 4 * m + mm) / (2 * h);
    const double d = weno3_derivative(mm, m, z, p, h, kLimited);
    EXPECT_GE(d, std::min(d0, d1));
    EXPECT_LE(d, std::max(d0, d1));
    EXPECT_LT(std::abs(d - d1), std::abs(d - d0));
}

TEST(Weno3Weights, ConvexCombination) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int s = 0; s < 200; ++s) {
        const Weno3Weights w = weno3_weights(u(rng), u(rng), u(rng), 1e-6);
        EXPECT_GE(w.w0, 0.0);
        EXPECT_GE(w.w1, 0.0);
        EXPECT_NEAR(w.w0 + w.w1, 1.0, 1e-15);
    }
    const Weno3Weights flat = weno3_weights(1.0, 1.0, 1.0, 1e-6);
    EXPECT_NEAR(flat.w0, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(flat.w1, 1.0 / 3.0, 1e-15);
}

TEST(Weno3Derivative, LimitedApproachesUnlimitedUnderRefinement) {
    auto gap = [](double h) {
        const double x0 = 0.3;
        auto f = [](double x) { return std::sin(2 * std::numbers::pi * x); };
        const double a = weno3_derivative(f(x0 - 2 * h), f(x0 - h), f(x0), f(x0 + h), h, kLimited);
        const double b = weno3_derivative(f(x0 - 2 * h), f(x0 - h), f(x0), f(x0 + h), h, kUnlimited);
        return std::abs(a - b);
    };
    double prev = gap(0.05);
    for (double h : {0.025, 0.0125, 0.00625}) {
        const double g = gap(h);
        EXPECT_LE(g, 0.5 * prev * (1 + 1e-9)) << "h = " << h;
        prev = g;
    }
}

TEST(Weno3Rhs, ZeroVelocity) {
    const Grid g(12);
    const ScalarField r = weno3_rhs(sine_x(g), 0.0, ConstantField({0.0, 0.0}), kLimited);
    EXPECT_EQ(testing_support::max_abs(r.values), 0.0);
}

TEST(Weno3Rhs, ThirdOrderOnSine) {
    for (double speed : {1.0, -1.0}) {
        const double e1 = rhs_error(32, kUnlimited, speed), e2 = rhs_error(64, kUnlimited, speed);
        EXPECT_GE(std::log2(e1 / e2), 2.8) << "speed " << speed;
        EXPECT_LT(e2, 1e-3);
    }
}

TEST(Weno3Rhs, MirroredStencilForNegativeVelocity) {
    // A field that is affine in the upwind direction only on the left of every node.
    const Grid g(16);
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1, 1);
    ScalarField f(g);
    for (double& x : f.values) x = u(rng);
    const ScalarField pos = weno3_rhs(f, 0.0, ConstantField({1.0, 0.0}), kUnlimited);
    const ScalarField neg = weno3_rhs(f, 0.0, ConstantField({-1.0, 0.0}), kUnlimited);
    const double h = g.h();
    for (int i = 0; i < 16; ++i) {
        auto v = [&](int k) { return f.values[g.index(k, 5)]; };
        const double up = (2 * v(i + 1) + 3 * v(i) - 6 * v(i - 1) + v(i - 2)) / (6 * h);
        const double down = -(2 * v(i - 1) + 3 * v(i) - 6 * v(i + 1) + v(i + 2)) / (6 * h);
        EXPECT_NEAR(pos.values[g.index(i, 5)], -up, 1e-12);
        EXPECT_NEAR(neg.values[g.index(i, 5)], down, 1e-12);
    }
}

TEST(Weno3Rhs, UnlimitedIsLinear) {
    const Grid g(14);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1, 1);
    ScalarField a(g), b(g), c(g);
    for (std::size_t k = 0; k < g.size(); ++k) {
        a.values[k] = u(rng);
        b.values[k] = u(rng);
        c.values[k] = 0.7 * a.values[k] - 1.3 * b.values[k];
    }
    const SwirlField v(1.0);
    const ScalarField ra = weno3_rhs(a, 0.2, v, kUnlimited), rb = weno3_rhs(b, 0.2, v, kUnlimited);
    const ScalarField rc = weno3_rhs(c, 0.2, v, kUnlimited);
    for (std::size_t k = 0; k < g.size(); ++k)
        EXPECT_NEAR(rc.values[k], 0.7 * ra.values[k] - 1.3 * rb.values[k], 1e-11);
}

TEST(Weno3Rhs, OneEvaluationPerNode) {
    const Grid g(20);
    const SwirlField v(1.0);
    weno3_rhs(sine_x(g), 0.0, v, kLimited);
    EXPECT_EQ(v.evaluations(), g.size());
}

TEST(Weno3Step, ZeroVelocityIsIdentity) {
    const Grid g(10);
    const ScalarField f = sine_x(g);
    const ScalarField out = weno3_ssp_rk3_step(f, 0.0, g.h(), ConstantField({0.0, 0.0}), kLimited);
    for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(out.values[k], f.values[k], 4 * testing_support::kEps);
}

TEST(Weno3Step, ShuOsherStages) {
    const Grid g(12);
    const SwirlField v(1.0);
    const ScalarField u = sample_scalar(g, [](const Vec2& p) { return efficiency_ic(p).phi; });
    const double t = 0.1, dt = g.h();
    auto L = [&](const ScalarField& f, double s) { return weno3_rhs(f, s, v, kLimited); };
    ScalarField u1(g), u2(g), want(g);
    const ScalarField l0 = L(u, t);
    for (std::size_t k = 0; k < g.size(); ++k) u1.values[k] = u.values[k] + dt * l0.values[k];
    const ScalarField l1 = L(u1, t + dt);
    for (std::size_t k = 0; k < g.size(); ++k)
        u2.values[k] = 0.75 * u.values[k] + 0.25 * u1.values[k] + 0.25 * dt * l1.values[k];
    const ScalarField l2 = L(u2, t + 0.5 * dt);
    for (std::size_t k = 0; k < g.size(); ++k)
        want.values[k] = u.values[k] / 3 + 2.0 / 3 * u2.values[k] + 2.0 / 3 * dt * l2.values[k];
    const ScalarField got = weno3_ssp_rk3_step(u, t, dt, v, kLimited);
    for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(got.values[k], want.values[k], 1e-14);
}

TEST(Weno3Step, ThreeRhsCallsPerStep) {
    const Grid g(16);
    const SwirlField v(1.0);
    weno3_ssp_rk3_step(sine_x(g), 0.0, g.h(), v, kUnlimited);
    EXPECT_EQ(v.evaluations(), 3 * g.size());
}

TEST(Weno3Step, TranslationMatchesExactShift) {
    auto err = [](int n) {
        const Grid g(n);
        const ScalarField out = weno3_ssp_rk3_step(sine_x(g), 0.0, g.h(), ConstantField({1.0, 0.0}), kUnlimited);
        double worst = 0;
        for (int i = 0; i < n; ++i) {
            const double x = node_position(g, i, 0).x;
            worst = std::max(worst, std::abs(out.values[g.index(i, 0)] - std::sin(2 * std::numbers::pi * (x - g.h()))));
        }
        return worst;
    };
    EXPECT_GE(std::log2(err(32) / err(64)), 3.0);
}

TEST(Weno3Step, RejectsNonFinite) {
    const Grid g(8);
    ScalarField f = sine_x(g);
    f.values[5] = std::numeric_limits<double>::infinity();
    EXPECT_THROW(weno3_ssp_rk3_step(f, 0.0, g.h(), SwirlField(1.0), kUnlimited), NonFiniteError);
}

TEST(Weno3Advance, StepCount) {
    const Grid g(20);
    long steps = 0;
    weno3_advance(sine_x(g), 0.0, 0.33, SwirlField(1.0), kLimited, 0.0, &steps);
    EXPECT_EQ(steps, 7);
    EXPECT_THROW(weno3_advance(sine_x(g), 1.0, 0.0, SwirlField(1.0), kLimited), ConfigError);
}
