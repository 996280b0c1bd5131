// Command-line driver: efficiency and contour benchmarks, and the oracle suite.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "advectlab/advectlab.hpp"

namespace fs = std::filesystem;
using namespace advectlab;

namespace {

constexpr int kExitAborted = 2;
constexpr int kExitInvalidConfig = 3;

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::vector<Scheme> parse_schemes(const std::string& text) {
    std::vector<Scheme> out;
    for (const auto& s : split_list(text)) out.push_back(parse_scheme(s));
    if (out.empty()) throw ConfigError("no schemes given");
    return out;
}

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> out;
    for (const auto& s : split_list(text)) {
        try {
            out.push_back(std::stod(s));
        } catch (const std::exception&) {
            throw ConfigError("not a number: '" + s + "'");
        }
    }
    return out;
}

void print_records(const std::vector<ConvergenceRecord>& recs) {
    std::printf("%-13s %10s %9s %7s %13s %10s %14s %7s\n", "scheme", "h", "n", "steps", "linf_error", "wall[s]",
                "velocity_evals", "order");
    const ConvergenceRecord* prev = nullptr;
    for (const auto& r : recs) {
        std::string order = "-";
        if (prev && prev->scheme == r.scheme && !prev->failed && !r.failed) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "%.2f", observed_order(*prev, r));
            order = buf;
        }
        std::printf("%-13s %10.6f %9zu %7ld %13.4e %10.3f %14llu %7s%s\n", r.scheme.c_str(), r.h, r.n_nodes, r.steps,
                    r.linf_error, r.wall_seconds, static_cast<unsigned long long>(r.velocity_evals), order.c_str(),
                    r.failed ? "  FAILED" : "");
        if (r.failed) std::printf("    %s\n", r.failure.c_str());
        prev = &r;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Benchmarks for 2D linear advection: jet schemes, WENO3 and P2 DG"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    std::string schemes = "weno,weno-nolimit,dg,jet,jet-epsfd";
    std::string hs = "1/20,1/40,1/80,1/160";
    double T = 1.0, eps = kDefaultEpsilon, dt_factor = 1.0;
    std::uint64_t seed = 1;
    std::string out_dir = "out";

    auto* eff = app.add_subcommand("efficiency", "error, cost and velocity-evaluation counts on the swirl test");
    eff->add_option("--schemes", schemes, "comma-separated schemes")->capture_default_str();
    eff->add_option("--h", hs, "comma-separated resolutions, e.g. 1/20,1/40")->capture_default_str();
    eff->add_option("--T", T, "swirl period and final time")->capture_default_str();
    eff->add_option("--out", out_dir, "output directory")->capture_default_str();
    eff->add_option("--eps", eps, "epsilon for jet-epsfd")->capture_default_str();
    eff->add_option("--dt-factor", dt_factor, "time step as a multiple of the default")->capture_default_str();
    eff->add_option("--seed", seed, "random seed (runs are deterministic; kept for reproducible tooling)");

    std::string c_schemes = "jet-epsfd,dg,weno-nolimit", c_h = "1/90", radii = "0.044,0.132,0.220";
    double c_T = 6.0;
    int subgrid = 8, ref_factor = 4;
    bool no_reference = false;
    auto* con = app.add_subcommand("contours", "contour deformation test at t = T/2");
    con->add_option("--schemes", c_schemes, "comma-separated schemes")->capture_default_str();
    con->add_option("--h", c_h, "resolution")->capture_default_str();
    con->add_option("--T", c_T, "swirl period")->capture_default_str();
    con->add_option("--levels-from-radii", radii, "initial circle radii")->capture_default_str();
    con->add_option("--subgrid", subgrid, "samples per cell per axis")->capture_default_str();
    con->add_option("--reference-factor", ref_factor, "reference run uses h / factor")->capture_default_str();
    con->add_flag("--no-reference", no_reference, "skip the fine reference run and Hausdorff metrics");
    con->add_option("--out", out_dir, "output directory")->capture_default_str();
    con->add_option("--eps", eps, "epsilon for jet-epsfd")->capture_default_str();

    auto* ver = app.add_subcommand("verify", "derivative and consistency oracle suite");
    ver->add_option("--seed", seed, "random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidConfig;
    }

    try {
        if (*ver) {
            bool ok = true;
            for (const auto& c : run_verification(seed)) {
                std::printf("[%s] %s: %.3e (threshold %.1e)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value,
                            c.threshold);
                ok = ok && c.pass;
            }
            return ok ? 0 : 1;
        }

        fs::create_directories(out_dir);

        if (*eff) {
            EfficiencyConfig cfg;
            cfg.schemes = parse_schemes(schemes);
            cfg.hs.clear();
            for (const auto& s : split_list(hs)) cfg.hs.push_back(parse_resolution(s));
            cfg.T = T;
            cfg.options = {eps, dt_factor};
            const auto recs = run_efficiency(cfg);
            print_records(recs);
            emit_csv(recs, fs::path(out_dir) / "efficiency.csv");
            emit_plot(recs, PlotKind::error_vs_h, fs::path(out_dir) / "error_vs_h.svg");
            emit_plot(recs, PlotKind::time_vs_h, fs::path(out_dir) / "time_vs_h.svg");
            emit_plot(recs, PlotKind::time_vs_error, fs::path(out_dir) / "time_vs_error.svg");
            for (const auto& r : recs)
                if (r.failed) return kExitAborted;
            return 0;
        }

        if (*con) {
            ContourConfig cfg;
            cfg.schemes = parse_schemes(c_schemes);
            cfg.h = parse_resolution(c_h);
            cfg.T = c_T;
            cfg.radii = parse_numbers(radii);
            cfg.subgrid = subgrid;
            cfg.reference_factor = ref_factor;
            cfg.with_reference = !no_reference;
            cfg.options.eps = eps;
            const ContourResult res = run_contours(cfg);
            for (const auto& r : res.runs)
                std::printf("%-13s h=%.6f steps=%ld wall=%.2fs velocity_evals=%llu%s\n", r.scheme.c_str(), r.h,
                            r.steps, r.wall_seconds, static_cast<unsigned long long>(r.velocity_evals),
                            r.failed ? "  FAILED" : "");
            std::printf("%-13s %10s %12s %10s %7s\n", "scheme", "level", "hausdorff", "polylines", "closed");
            for (const auto& m : res.metrics)
                std::printf("%-13s %10.6f %12.4e %10zu %7s\n", m.scheme.c_str(), m.level, m.hausdorff, m.polylines,
                            m.all_closed ? "yes" : "no");
            emit_csv(res.contours, fs::path(out_dir) / "contours.csv");
            emit_csv(res.metrics, fs::path(out_dir) / "contour_metrics.csv");
            const int cells = nodes_for(cfg.h);
            for (Scheme s : cfg.schemes)
                emit_plot(res.contours, scheme_name(s), cells, fs::path(out_dir) / ("contours_" + scheme_name(s) + ".svg"));
            for (const auto& r : res.runs)
                if (r.failed) return kExitAborted;
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "invalid configuration: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
