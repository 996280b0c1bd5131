#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "advectlab/advectlab.hpp"
#include "advectlab/plot.hpp"

using namespace advectlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "advectlab_tests";
    fs::create_directories(dir);
    return dir / name;
}

double exact_efficiency(const Vec2& p) { return efficiency_ic(p).phi; }

ConvergenceRecord run(Scheme s, double h) { return run_scheme(s, h, 1.0, 1.0, efficiency_ic, exact_efficiency).record; }

int run_cli(const std::string& args) {
    const int status = std::system((std::string(ADVECTLAB_CLI) + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(LinfError, TrivialCases) {
    const std::vector<Vec2> samples{{0.1, 0.2}, {0.5, 0.5}, {0.9, 0.3}};
    auto f = [](const Vec2& p) { return std::sin(p.x) * p.y; };
    EXPECT_EQ(linf_error(f, f, samples), 0.0);
    EXPECT_NEAR(linf_error([&](const Vec2& p) { return f(p) + 0.01; }, f, samples), 0.01, 1e-15);
}

TEST(Parsing, SchemesAndResolutions) {
    for (Scheme s : all_schemes()) EXPECT_EQ(parse_scheme(scheme_name(s)), s);
    EXPECT_EQ(parse_scheme("weno-unlimited"), Scheme::weno_unlimited);
    EXPECT_EQ(parse_scheme("jet-analytic"), Scheme::jet_analytic);
    EXPECT_THROW(parse_scheme("upwind"), ConfigError);
    EXPECT_DOUBLE_EQ(parse_resolution("1/40"), 1.0 / 40);
    EXPECT_DOUBLE_EQ(parse_resolution("0.025"), 0.025);
    EXPECT_DOUBLE_EQ(parse_resolution("80"), 1.0 / 80);
    EXPECT_THROW(parse_resolution("abc"), ConfigError);
    EXPECT_THROW(parse_resolution("-1"), ConfigError);
    EXPECT_EQ(nodes_for(1.0 / 90), 90);
    EXPECT_THROW(nodes_for(0.3), ConfigError);
}

TEST(RunScheme, VelocityCountsMatchCostModel) {
    const double h = 1.0 / 20;
    const ConvergenceRecord epsfd = run(Scheme::jet_epsfd, h);
    EXPECT_EQ(epsfd.velocity_evals, 96000u);
    EXPECT_EQ(epsfd.steps, 20);
    for (Scheme s : {Scheme::jet_analytic, Scheme::weno_limited, Scheme::weno_unlimited}) {
        const ConvergenceRecord r = run(s, h);
        EXPECT_EQ(r.velocity_evals, 3u * 400u * 20u) << scheme_name(s);
        EXPECT_EQ(r.steps, 20);
    }
    const ConvergenceRecord dg = run(Scheme::dg, h);
    EXPECT_EQ(dg.steps, 200);
    EXPECT_EQ(2 * dg.velocity_evals, 69u * dg.n_nodes * 200u);
    EXPECT_FALSE(dg.failed);
}

TEST(RunScheme, JetSelfConvergenceRatio) {
    const double ratio = run(Scheme::jet_analytic, 1.0 / 40).linf_error / run(Scheme::jet_analytic, 1.0 / 80).linf_error;
    EXPECT_GE(ratio, 6.0);
    EXPECT_LE(ratio, 11.0);
}

TEST(RunScheme, UnlimitedWenoBeatsLimited) {
    for (double h : {1.0 / 20, 1.0 / 40, 1.0 / 80})
        EXPECT_LT(run(Scheme::weno_unlimited, h).linf_error, run(Scheme::weno_limited, h).linf_error) << "h = " << h;
}

TEST(RunScheme, JetAndDgMoreAccurateThanWeno) {
    for (double h : {1.0 / 20, 1.0 / 40}) {
        const double best = std::max(run(Scheme::jet_analytic, h).linf_error, run(Scheme::dg, h).linf_error);
        EXPECT_LT(best, run(Scheme::weno_limited, h).linf_error) << "h = " << h;
        EXPECT_LT(best, run(Scheme::weno_unlimited, h).linf_error) << "h = " << h;
    }
}

TEST(RunScheme, BlowUpIsRecordedNotThrown) {
    const auto nan_ic = [](const Vec2&) { return JetSample{std::nan(""), 0, 0, 0}; };
    const SchemeRun r = run_scheme(Scheme::weno_unlimited, 1.0 / 8, 1.0, 0.25, nan_ic, exact_efficiency);
    EXPECT_TRUE(r.record.failed);
    EXPECT_NE(r.record.failure.find("non-finite"), std::string::npos);
}

TEST(RunContours, InitialContoursAreCircles) {
    ContourConfig cfg;
    cfg.h = 1.0 / 30;
    cfg.schemes = {Scheme::jet_epsfd, Scheme::dg, Scheme::weno_unlimited};
    cfg.sample_time = 0.0;
    cfg.with_reference = false;
    const ContourResult res = run_contours(cfg);
    EXPECT_EQ(res.metrics.size(), 9u);
    for (const std::string scheme : {"jet-epsfd", "dg", "weno-nolimit"})
        for (double r : cfg.radii) {
            const auto lines = res.contours.at_level(scheme, level_for_radius(r));
            ASSERT_FALSE(lines.empty()) << scheme << " r = " << r;
            double worst = 0;
            for (const Polyline* l : lines)
                for (const Vec2& p : l->points) worst = std::max(worst, std::abs(norm(p - Vec2{0.5, 0.75}) - r));
            // WENO's bi-linear interpolant is only second order; allow one cell for it.
            const double tol = scheme == "weno-nolimit" ? cfg.h : 2 * std::sqrt(2.0) * cfg.h / cfg.subgrid;
            EXPECT_LT(worst, tol) << scheme << " r = " << r;
        }
}

TEST(RunContours, JetContoursClosedAtMaximumDeformation) {
    ContourConfig cfg;
    cfg.h = 1.0 / 30;
    cfg.schemes = {Scheme::jet_epsfd};
    cfg.reference_factor = 2;
    const ContourResult res = run_contours(cfg);
    for (const ContourMetric& m : res.metrics) {
        EXPECT_TRUE(m.all_closed) << m.level;
        EXPECT_TRUE(std::isfinite(m.hausdorff));
    }
    EXPECT_EQ(res.runs.back().scheme, "reference");
}

TEST(EmitCsv, HeaderOnlyAndOneRecord) {
    const fs::path empty = scratch("empty.csv");
    emit_csv(std::vector<ConvergenceRecord>{}, empty);
    const std::string e = slurp(empty);
    EXPECT_TRUE(std::regex_match(e, std::regex("# generated \\d{4}-\\d\\d-\\d\\dT\\d\\d:\\d\\d:\\d\\dZ\n"
                                               "scheme,h,n_nodes,steps,linf_error,wall_seconds,velocity_evals\n")));

    ConvergenceRecord r;
    r.scheme = "jet";
    r.h = 0.05;
    r.n_nodes = 400;
    r.steps = 20;
    r.linf_error = 0.0334;
    r.wall_seconds = 0.5;
    r.velocity_evals = 24000;
    const fs::path one = scratch("one.csv");
    emit_csv(std::vector<ConvergenceRecord>{r}, one);
    const std::string o = slurp(one);
    EXPECT_EQ(count(o, "\n"), 3u);
    EXPECT_NE(o.find("\njet,0.050000000000000003,400,20,0.033399999999999999,0.5,24000\n"), std::string::npos);
}

TEST(EmitCsv, RowOrderAndDeterminism) {
    EfficiencyConfig cfg;
    cfg.schemes = {Scheme::weno_unlimited, Scheme::jet_analytic};
    cfg.hs = {1.0 / 8, 1.0 / 16};
    cfg.T = 0.25;
    auto strip = [](std::string s) {
        s.erase(0, s.find('\n') + 1);
        // wall time is the only non-deterministic column
        return std::regex_replace(s, std::regex(",[^,]*,(\\d+)\n"), ",W,$1\n");
    };
    const fs::path a = scratch("a.csv"), b = scratch("b.csv");
    emit_csv(run_efficiency(cfg), a);
    emit_csv(run_efficiency(cfg), b);
    EXPECT_EQ(strip(slurp(a)), strip(slurp(b)));
    const std::string text = slurp(a);
    const auto p1 = text.find("weno-nolimit,0.125"), p2 = text.find("weno-nolimit,0.0625"), p3 = text.find("jet,0.125");
    EXPECT_LT(p1, p2);
    EXPECT_LT(p2, p3);
}

TEST(EmitCsv, ContourSchema) {
    ContourSet set;
    set.lines.push_back({"jet", 0.5, {{0.1, 0.2}, {0.3, 0.4}, {0.2, 0.6}}, true});
    const fs::path p = scratch("contours.csv");
    emit_csv(set, p);
    const std::string text = slurp(p);
    EXPECT_EQ(text.substr(0, text.find('\n')), "scheme,level,polyline_id,point_index,x,y,closed");
    EXPECT_EQ(count(text, "\n"), 4u);
    EXPECT_THROW(emit_csv(set, fs::path("/nonexistent/dir/x.csv")), std::runtime_error);
}

TEST(EmitPlot, MarkersPerScheme) {
    std::vector<ConvergenceRecord> recs;
    for (const char* s : {"jet", "dg"})
        for (int k = 0; k < 3; ++k) {
            ConvergenceRecord r;
            r.scheme = s;
            r.h = 0.05 / (1 << k);
            r.linf_error = 0.03 / std::pow(8.0, k);
            r.wall_seconds = 0.01 * std::pow(8.0, k);
            recs.push_back(r);
        }
    for (PlotKind kind : {PlotKind::error_vs_h, PlotKind::time_vs_h, PlotKind::time_vs_error}) {
        const fs::path p = scratch("plot.svg");
        emit_plot(recs, kind, p);
        const std::string svg = slurp(p);
        EXPECT_EQ(count(svg, "<circle"), 6u);
        EXPECT_EQ(count(svg, "fill=\"" + std::string(detail::scheme_color("jet")) + "\""), 3u);
        EXPECT_EQ(svg.find("no data"), std::string::npos);
    }
}

TEST(EmitPlot, EmptyInputSaysNoData) {
    const fs::path p = scratch("empty.svg");
    emit_plot(std::vector<ConvergenceRecord>{}, PlotKind::error_vs_h, p);
    const std::string svg = slurp(p);
    EXPECT_NE(svg.find("no data"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(EmitPlot, ContourOverlay) {
    ContourSet set;
    for (double level : {0.9, 0.5, 0.2}) {
        set.lines.push_back({"dg", level, {{0.1, 0.2}, {0.3, 0.4}, {0.2, 0.6}}, true});
        set.lines.push_back({"reference", level, {{0.1, 0.2}, {0.3, 0.4}, {0.2, 0.6}}, true});
    }
    const fs::path p = scratch("contours.svg");
    emit_plot(set, "dg", 10, p);
    const std::string svg = slurp(p);
    EXPECT_EQ(count(svg, "stroke=\"#999999\""), 3u);
    EXPECT_EQ(count(svg, "stroke=\"#d62728\""), 1u);
    EXPECT_EQ(count(svg, "stroke=\"#9467bd\""), 1u);
    EXPECT_EQ(count(svg, "stroke=\"#1f77b4\""), 1u);
    EXPECT_EQ(count(svg, "stroke=\"#dddddd\""), 22u);
}

TEST(Cli, ExitCodes) {
    const fs::path out = scratch("cli");
    EXPECT_EQ(run_cli("verify"), 0);
    EXPECT_EQ(run_cli("efficiency --schemes nope --out " + out.string()), 3);
    EXPECT_EQ(run_cli("efficiency --h 1/7.5 --out " + out.string()), 3);
    EXPECT_EQ(run_cli("efficiency --schemes jet,weno --h 1/8,1/16 --T 0.25 --out " + out.string()), 0);
    EXPECT_TRUE(fs::exists(out / "efficiency.csv"));
    EXPECT_EQ(run_cli("contours --schemes jet-epsfd --h 1/16 --T 1 --reference-factor 2 --out " + out.string()), 0);
    EXPECT_TRUE(fs::exists(out / "contours.csv"));
    EXPECT_TRUE(fs::exists(out / "contour_metrics.csv"));
}
