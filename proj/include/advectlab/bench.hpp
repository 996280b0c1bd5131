#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "advectlab/contours.hpp"
#include "advectlab/core_grid.hpp"
#include "advectlab/dg_p2.hpp"
#include "advectlab/errors.hpp"
#include "advectlab/hermite.hpp"
#include "advectlab/jet_scheme.hpp"
#include "advectlab/velocity.hpp"
#include "advectlab/weno3.hpp"

namespace advectlab {

enum class Scheme { weno_limited, weno_unlimited, dg, jet_analytic, jet_epsfd };

inline const std::vector<Scheme>& all_schemes() {
    static const std::vector<Scheme> s{Scheme::weno_limited, Scheme::weno_unlimited, Scheme::dg, Scheme::jet_analytic,
                                       Scheme::jet_epsfd};
    return s;
}

inline std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::weno_limited: return "weno";
        case Scheme::weno_unlimited: return "weno-nolimit";
        case Scheme::dg: return "dg";
        case Scheme::jet_analytic: return "jet";
        case Scheme::jet_epsfd: return "jet-epsfd";
    }
    return "?";
}

/// Accepts the short CLI names and the long descriptive aliases.
inline Scheme parse_scheme(const std::string& name) {
    if (name == "weno" || name == "weno-limited") return Scheme::weno_limited;
    if (name == "weno-nolimit" || name == "weno-unlimited") return Scheme::weno_unlimited;
    if (name == "dg") return Scheme::dg;
    if (name == "jet" || name == "jet-analytic") return Scheme::jet_analytic;
    if (name == "jet-epsfd") return Scheme::jet_epsfd;
    throw ConfigError("unknown scheme '" + name + "'");
}

/// Parses "1/40", "0.025" or "40" style resolutions; integers > 1 mean 1/n.
inline double parse_resolution(const std::string& text) {
    try {
        const auto slash = text.find('/');
        if (slash != std::string::npos) {
            const double num = std::stod(text.substr(0, slash));
            const double den = std::stod(text.substr(slash + 1));
            if (num > 0.0 && den > 0.0) return num / den;
        } else {
            const double v = std::stod(text);
            if (v > 1.0) return 1.0 / v;
            if (v > 0.0) return v;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError("invalid resolution '" + text + "'");
}

/// Node count per axis for a grid of spacing h on the unit square.
inline int nodes_for(double h) {
    const long n = std::lround(1.0 / h);
    if (n < 4 || std::abs(n * h - 1.0) > 1e-9) throw ConfigError("1/h must be an integer >= 4, got h = " + std::to_string(h));
    return static_cast<int>(n);
}

// ---------------------------------------------------------------------------
// Test problems
// ---------------------------------------------------------------------------

/// cos(2 pi x) cos(4 pi y) with its jet.
inline JetSample efficiency_ic(const Vec2& p) {
    constexpr double a = 2.0 * std::numbers::pi, b = 4.0 * std::numbers::pi;
    const double cx = std::cos(a * p.x), sx = std::sin(a * p.x);
    const double cy = std::cos(b * p.y), sy = std::sin(b * p.y);
    return {cx * cy, -a * sx * cy, -b * cx * sy, a * b * sx * sy};
}

/// Gaussian bump exp(-10 ((x - 0.5)^2 + (y - 0.75)^2)) with its jet.
inline JetSample contour_ic(const Vec2& p) {
    const double dx = p.x - 0.5, dy = p.y - 0.75;
    const double g = std::exp(-10.0 * (dx * dx + dy * dy));
    return {g, -20.0 * dx * g, -20.0 * dy * g, 400.0 * dx * dy * g};
}

/// Level of the contour that starts as a circle of radius r around (0.5, 0.75).
inline double level_for_radius(double r) { return std::exp(-10.0 * r * r); }

// ---------------------------------------------------------------------------
// Error measurement
// ---------------------------------------------------------------------------

/// max |numeric(p) - reference(p)| over the given sample points.
template <class Numeric, class Reference>
double linf_error(Numeric&& numeric, Reference&& reference, const std::vector<Vec2>& samples) {
    double worst = 0.0;
    for (const Vec2& p : samples) worst = std::max(worst, std::abs(numeric(p) - reference(p)));
    return worst;
}

/// L-infinity error of node values against `reference` at the grid nodes.
template <class Reference>
double nodal_linf_error(const Grid& g, const std::vector<double>& values, Reference&& reference) {
    double worst = 0.0;
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
            worst = std::max(worst, std::abs(values[g.index(i, j)] - reference(node_position(g, i, j))));
    return worst;
}

/// L-infinity error of a DG solution over a 4-subdivision barycentric lattice
/// in every element, evaluated with that element's own polynomial.
template <class Reference>
double dg_linf_error(const dg::DGField& field, Reference&& reference, int div = 4) {
    const std::vector<Vec2> lattice = dg::lattice_points(div);
    double worst = 0.0;
    for (std::size_t k = 0; k < field.mesh->size(); ++k) {
        const dg::Triangle& tri = field.mesh->triangles[k];
        for (const Vec2& r : lattice)
            worst = std::max(worst, std::abs(dg::eval_element(field.coeffs[k], r.x, r.y) - reference(tri.map(r.x, r.y))));
    }
    return worst;
}

/// Bi-linear interpolation of node values, the WENO plotting interpolant.
inline double bilinear(const ScalarField& f, const Vec2& p) {
    const CellLocation loc = locate_cell(f.grid, p);
    const Grid& g = f.grid;
    const double v00 = f.values[g.index(loc.ci, loc.cj)], v10 = f.values[g.index(loc.ci + 1, loc.cj)];
    const double v01 = f.values[g.index(loc.ci, loc.cj + 1)], v11 = f.values[g.index(loc.ci + 1, loc.cj + 1)];
    return (1.0 - loc.eta) * ((1.0 - loc.xi) * v00 + loc.xi * v10) + loc.eta * ((1.0 - loc.xi) * v01 + loc.xi * v11);
}

// ---------------------------------------------------------------------------
// Runs
// ---------------------------------------------------------------------------

struct ConvergenceRecord {
    std::string scheme;
    double h = 0.0;              ///< requested resolution
    double h_effective = 0.0;    ///< actual resolution (DG meshes round to whole cells)
    std::size_t n_nodes = 0;     ///< grid nodes, or elements for DG
    long steps = 0;
    double linf_error = 0.0;
    double wall_seconds = 0.0;
    std::uint64_t velocity_evals = 0;
    bool failed = false;
    std::string failure;
};

/// Final state of one scheme run, kept so callers can sample it afterwards.
struct SchemeRun {
    ConvergenceRecord record;
    std::function<double(const Vec2&)> sampler;  ///< the scheme's own interpolant
    int lattice_cells = 0;                        ///< cells per axis for contour sampling
};

struct RunOptions {
    double eps = kDefaultEpsilon;
    double dt_factor = 1.0;  ///< dt = factor * h (jet, WENO) or factor * h / 10 (DG)
};

/// Advances the initial condition `ic` under swirl(period) from 0 to t_end
/// with one scheme and measures the error against `exact` at t_end.
inline SchemeRun run_scheme(Scheme scheme, double h, double period, double t_end,
                            const std::function<JetSample(const Vec2&)>& ic,
                            const std::function<double(const Vec2&)>& exact, const RunOptions& opt = {}) {
    using clock = std::chrono::steady_clock;
    SchemeRun run;
    ConvergenceRecord& rec = run.record;
    rec.scheme = scheme_name(scheme);
    rec.h = h;
    rec.h_effective = h;
    SwirlField v(period);
    const auto value_of = [&ic](const Vec2& p) { return ic(p).phi; };

    try {
        switch (scheme) {
            case Scheme::jet_analytic:
            case Scheme::jet_epsfd: {
                const Grid g(nodes_for(h));
                rec.n_nodes = g.size();
                run.lattice_cells = g.nx();
                JetField field = sample_jet(g, ic);
                const auto variant = scheme == Scheme::jet_analytic ? JetVariant::analytic : JetVariant::epsfd;
                AdvanceStats stats;
                const auto t0 = clock::now();
                field = advance(std::move(field), variant, 0.0, t_end, v, opt.dt_factor * h, opt.eps, &stats);
                rec.wall_seconds = std::chrono::duration<double>(clock::now() - t0).count();
                rec.steps = stats.steps;
                rec.linf_error = nodal_linf_error(g, field.phi, exact);
                run.sampler = [f = std::make_shared<JetField>(std::move(field))](const Vec2& p) {
                    return interpolate_value(*f, p);
                };
                break;
            }
            case Scheme::weno_limited:
            case Scheme::weno_unlimited: {
                const Grid g(nodes_for(h));
                rec.n_nodes = g.size();
                run.lattice_cells = g.nx();
                ScalarField field = sample_scalar(g, value_of);
                const WenoConfig cfg{scheme == Scheme::weno_limited, 1e-6};
                const auto t0 = clock::now();
                field = weno3_advance(std::move(field), 0.0, t_end, v, cfg, opt.dt_factor * h, &rec.steps);
                rec.wall_seconds = std::chrono::duration<double>(clock::now() - t0).count();
                rec.linf_error = nodal_linf_error(g, field.values, exact);
                run.sampler = [f = std::make_shared<ScalarField>(std::move(field))](const Vec2& p) {
                    return bilinear(*f, p);
                };
                break;
            }
            case Scheme::dg: {
                auto mesh = std::make_shared<const dg::Triangulation>(dg::build_triangulation_at_most(h));
                rec.h_effective = mesh->h;
                rec.n_nodes = mesh->size();
                run.lattice_cells = nodes_for(h);
                dg::DGField field = dg::l2_project_initial(value_of, mesh);
                const auto t0 = clock::now();
                field = dg::dg_advance(std::move(field), 0.0, t_end, v, opt.dt_factor * h / 10.0, &rec.steps);
                rec.wall_seconds = std::chrono::duration<double>(clock::now() - t0).count();
                rec.linf_error = dg_linf_error(field, exact);
                run.sampler = [f = std::make_shared<dg::DGField>(std::move(field))](const Vec2& p) {
                    return dg::eval_solution(*f, p);
                };
                break;
            }
        }
    } catch (const NonFiniteError& e) {
        rec.failed = true;
        rec.failure = e.what();
        rec.linf_error = std::numeric_limits<double>::quiet_NaN();
    }
    rec.velocity_evals = v.evaluations();
    return run;
}

struct EfficiencyConfig {
    std::vector<Scheme> schemes = all_schemes();
    std::vector<double> hs{1.0 / 20, 1.0 / 40, 1.0 / 80};
    double T = 1.0;
    RunOptions options{};
};

/// Rows ordered by scheme (as configured), then h descending.
inline std::vector<ConvergenceRecord> run_efficiency(const EfficiencyConfig& cfg) {
    if (!(cfg.T > 0.0)) throw ConfigError("T must be positive");
    if (cfg.schemes.empty() || cfg.hs.empty()) throw ConfigError("efficiency run needs schemes and resolutions");
    std::vector<double> hs = cfg.hs;
    std::sort(hs.begin(), hs.end(), std::greater<>());
    std::vector<ConvergenceRecord> out;
    const auto exact = [](const Vec2& p) { return efficiency_ic(p).phi; };
    for (Scheme s : cfg.schemes)
        for (double h : hs) out.push_back(run_scheme(s, h, cfg.T, cfg.T, efficiency_ic, exact, cfg.options).record);
    return out;
}

/// Observed order log(e1/e2)/log(h1/h2) between two records.
inline double observed_order(const ConvergenceRecord& coarse, const ConvergenceRecord& fine) {
    return std::log(coarse.linf_error / fine.linf_error) / std::log(coarse.h_effective / fine.h_effective);
}

struct ContourConfig {
    std::vector<Scheme> schemes{Scheme::jet_epsfd, Scheme::dg, Scheme::weno_unlimited};
    double h = 1.0 / 90;
    double T = 6.0;
    std::vector<double> radii{0.044, 0.132, 0.220};
    int subgrid = 8;
    int reference_factor = 4;  ///< reference resolution is h / factor
    bool with_reference = true;
    double sample_time = -1.0;  ///< defaults to T/2, the time of maximum deformation
    RunOptions options{};
};

struct ContourMetric {
    std::string scheme;
    double level = 0.0;
    double hausdorff = 0.0;
    std::size_t polylines = 0;
    bool all_closed = true;
};

struct ContourResult {
    ContourSet contours;  ///< all schemes plus "reference"
    std::vector<ContourMetric> metrics;
    std::vector<ConvergenceRecord> runs;  ///< timing and counts; linf_error is unused (NaN)
};

inline std::vector<double> contour_levels(const std::vector<double>& radii) {
    std::vector<double> levels;
    for (double r : radii) levels.push_back(level_for_radius(r));
    return levels;
}

inline ContourResult run_contours(const ContourConfig& cfg) {
    if (!(cfg.T > 0.0)) throw ConfigError("T must be positive");
    if (cfg.subgrid < 2) throw ConfigError("subgrid must be at least 2");
    if (cfg.reference_factor < 1) throw ConfigError("reference factor must be >= 1");
    const double t_sample = cfg.sample_time >= 0.0 ? cfg.sample_time : 0.5 * cfg.T;
    const std::vector<double> levels = contour_levels(cfg.radii);
    const auto no_exact = [](const Vec2&) { return std::numeric_limits<double>::quiet_NaN(); };

    ContourResult result;
    auto extract = [&](const SchemeRun& run, const std::string& name) {
        ContourSet set = extract_contours(run.sampler, levels, run.lattice_cells, cfg.subgrid, name);
        for (auto& l : set.lines) result.contours.lines.push_back(std::move(l));
    };

    for (Scheme s : cfg.schemes) {
        SchemeRun run = run_scheme(s, cfg.h, cfg.T, t_sample, contour_ic, no_exact, cfg.options);
        if (!run.record.failed) extract(run, run.record.scheme);
        result.runs.push_back(run.record);
    }
    if (cfg.with_reference) {
        SchemeRun ref = run_scheme(Scheme::jet_analytic, cfg.h / cfg.reference_factor, cfg.T, t_sample, contour_ic,
                                   no_exact, cfg.options);
        ref.record.scheme = "reference";
        if (!ref.record.failed) extract(ref, "reference");
        result.runs.push_back(ref.record);
    }

    for (const ConvergenceRecord& r : result.runs) {
        if (r.scheme == "reference") continue;
        for (double level : levels) {
            ContourMetric m;
            m.scheme = r.scheme;
            m.level = level;
            const auto lines = result.contours.at_level(r.scheme, level);
            m.polylines = lines.size();
            for (const Polyline* l : lines) m.all_closed = m.all_closed && l->closed;
            m.hausdorff = cfg.with_reference
                              ? hausdorff(lines, result.contours.at_level("reference", level), cfg.h / 16.0)
                              : std::numeric_limits<double>::quiet_NaN();
            result.metrics.push_back(m);
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace detail {
inline std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << std::setprecision(17);
    return out;
}
inline void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path.string());
}
}  // namespace detail

/// scheme,h,n_nodes,steps,linf_error,wall_seconds,velocity_evals after a
/// "# generated <timestamp>" line. Rows: scheme in first-seen order, then h
/// descending.
inline void emit_csv(std::vector<ConvergenceRecord> records, const std::filesystem::path& path) {
    std::vector<std::string> order;
    for (const auto& r : records)
        if (std::find(order.begin(), order.end(), r.scheme) == order.end()) order.push_back(r.scheme);
    std::stable_sort(records.begin(), records.end(), [&](const ConvergenceRecord& a, const ConvergenceRecord& b) {
        const auto ia = std::find(order.begin(), order.end(), a.scheme) - order.begin();
        const auto ib = std::find(order.begin(), order.end(), b.scheme) - order.begin();
        return ia != ib ? ia < ib : a.h > b.h;
    });

    auto out = detail::open_for_write(path);
    out << "# generated " << iso_timestamp() << '\n';
    out << "scheme,h,n_nodes,steps,linf_error,wall_seconds,velocity_evals\n";
    for (const auto& r : records)
        out << r.scheme << ',' << r.h << ',' << r.n_nodes << ',' << r.steps << ',' << r.linf_error << ','
            << r.wall_seconds << ',' << r.velocity_evals << '\n';
    detail::finish(out, path);
}

inline void emit_csv(const ContourSet& contours, const std::filesystem::path& path) {
    auto out = detail::open_for_write(path);
    out << "scheme,level,polyline_id,point_index,x,y,closed\n";
    std::size_t id = 0;
    for (const Polyline& l : contours.lines) {
        for (std::size_t k = 0; k < l.points.size(); ++k)
            out << l.scheme << ',' << l.level << ',' << id << ',' << k << ',' << l.points[k].x << ','
                << l.points[k].y << ',' << (l.closed ? 1 : 0) << '\n';
        ++id;
    }
    detail::finish(out, path);
}

inline void emit_csv(const std::vector<ContourMetric>& metrics, const std::filesystem::path& path) {
    auto out = detail::open_for_write(path);
    out << "scheme,level,hausdorff,polylines,all_closed\n";
    for (const auto& m : metrics)
        out << m.scheme << ',' << m.level << ',' << m.hausdorff << ',' << m.polylines << ','
            << (m.all_closed ? 1 : 0) << '\n';
    detail::finish(out, path);
}

}  // namespace advectlab
