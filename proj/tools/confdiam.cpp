// confdiam: diameter-bound toolkit for surfaces in conformally flat ambients.
//
// Subcommands: generate, check, double, solve, screen, sobolev. Structured
// results are JSON (plus CSV mirrors for tables); meshes travel as OFF. All
// outputs are deterministic for a fixed config and seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "confdiam/curvature.hpp"
#include "confdiam/doubling.hpp"
#include "confdiam/error.hpp"
#include "confdiam/gates.hpp"
#include "confdiam/generators.hpp"
#include "confdiam/geodesy.hpp"
#include "confdiam/io.hpp"
#include "confdiam/plateau.hpp"
#include "confdiam/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace confdiam;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CommonOpts {
    std::string ambient = "e3";
    double alpha = -1.0;  // < 0 means "pick the optimum"
    bool strict = false;
    int threads = 0;
    std::string out = "out";
    bool json_stdout = false;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--ambient", c.ambient, "Ambient geometry: e3|h3-ball|h3-half|s3")
        ->capture_default_str();
    cmd->add_option("--alpha", c.alpha, "Gate parameter alpha in (0,1); default: optimal");
    cmd->add_flag("--strict", c.strict, "Use strict gate inequalities");
    cmd->add_option("--threads", c.threads, "Worker thread cap (0 = hardware)");
    cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
    cmd->add_flag("--json", c.json_stdout, "Print the primary result JSON to stdout");
}

ConformalAmbient make_ambient(const CommonOpts& c) {
    return ConformalAmbient::from_kind(ambient_kind_from_flag(c.ambient));
}

std::optional<double> alpha_opt(const CommonOpts& c) {
    if (c.alpha < 0.0) return std::nullopt;
    return c.alpha;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_manifest(const std::string& out_dir, const std::string& command, const json& config,
                    const std::vector<std::string>& inputs) {
    json m;
    m["command"] = command;
    m["config"] = config;
    char hash[24];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a(config.dump())));
    m["config_hash"] = hash;
    m["inputs"] = inputs;
    m["tool_version"] = kVersion;
    write_text_file((fs::path(out_dir) / "manifest.json").string(), m.dump(2) + "\n");
}

void ensure_out(const std::string& out_dir) { fs::create_directories(out_dir); }

void print_report_table(const GateReport& r) {
    auto row = [](const char* key, const std::string& value) {
        std::printf("  %-14s %s\n", key, value.c_str());
    };
    std::printf("gate report\n");
    row("area", format_double(r.area));
    row("K_upper", format_double(r.K_upper));
    row("alpha", format_double(r.alpha));
    row("rho0", format_double(r.rho0));
    row("star_ok", r.star_ok ? "true" : "false");
    row("starstar_ok", r.starstar_ok ? "true" : "false");
    row("strict_mode", r.strict_mode ? "true" : "false");
    row("C2alpha", format_double(r.C2alpha));
    row("total_H", format_double(r.total_H));
    row("boundary_len", format_double(r.boundary_len));
    row("diameter", format_double(r.diameter));
    row("rhs", format_double(r.rhs));
    row("margin", format_double(r.margin));
    row("verdict", r.verdict);
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOpts {
    CommonOpts common;
    std::string kind;
    double radius = 1.0;
    double inner_radius = 0.5;
    int rings = 16;
    int sectors = 48;
    int subdiv = 4;
    double theta_max = 0.4;
    double height = 1.0;
    int stacks = 16;
    double separation = 2.0;
    int points = 64;
    double bump = 0.0;
    std::uint64_t seed = 0;
    std::string name;
};

int run_generate(const GenerateOpts& g) {
    ensure_out(g.common.out);
    const std::string base = g.name.empty() ? g.kind : g.name;
    json config{{"kind", g.kind},
                {"radius", g.radius},
                {"inner_radius", g.inner_radius},
                {"rings", g.rings},
                {"sectors", g.sectors},
                {"subdiv", g.subdiv},
                {"theta_max", g.theta_max},
                {"height", g.height},
                {"stacks", g.stacks},
                {"separation", g.separation},
                {"points", g.points},
                {"bump", g.bump},
                {"seed", g.seed}};

    std::string artifact;
    if (g.kind == "circle-pair") {
        const auto curves = make_circle_pair(g.radius, g.separation, g.points);
        artifact = (fs::path(g.common.out) / (base + ".json")).string();
        save_curves(curves, artifact);
    } else {
        ImmersedMesh mesh = [&] {
            if (g.kind == "disk") return make_disk(g.radius, g.rings, g.sectors, g.bump, g.seed);
            if (g.kind == "annulus")
                return make_annulus(g.inner_radius, g.radius, g.rings, g.sectors);
            if (g.kind == "spherical-cap") return make_spherical_cap(g.theta_max, g.rings, g.sectors);
            if (g.kind == "icosphere") return make_icosphere(g.subdiv, g.radius);
            if (g.kind == "catenoid-boundary")
                return make_cylinder_band(g.radius, g.height, g.sectors, g.stacks);
            fail(Errc::invalid_input, "unknown kind '" + g.kind + "'");
        }();
        artifact = (fs::path(g.common.out) / (base + ".off")).string();
        save_off(mesh, artifact);
        std::printf("wrote %s (%d vertices, %d faces)\n", artifact.c_str(), mesh.vertex_count(),
                    mesh.face_count());
    }
    write_manifest(g.common.out, "generate", config, {});
    if (g.common.json_stdout) std::printf("%s\n", json{{"artifact", artifact}}.dump(2).c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// check

struct CheckOpts {
    CommonOpts common;
    std::string mesh_path;
    bool wu_zheng = false;
    int steiner = 0;
};

int run_check(const CheckOpts& c) {
    ensure_out(c.common.out);
    const auto ambient = make_ambient(c.common);
    const auto mesh = load_mesh(c.mesh_path);

    ReportOptions opts;
    opts.alpha = alpha_opt(c.common);
    opts.strict = c.common.strict;
    opts.diameter.graph.steiner_rounds = c.steiner;

    const GateReport report = c.wu_zheng ? wu_zheng_check(mesh, ambient, opts)
                                         : main_inequality_report(mesh, ambient, opts);

    const std::string path = (fs::path(c.common.out) / "report.json").string();
    write_text_file(path, gate_report_json(report) + "\n");
    print_report_table(report);
    write_manifest(c.common.out, "check",
                   json{{"ambient", c.common.ambient},
                        {"alpha", c.common.alpha},
                        {"strict", c.common.strict},
                        {"wu_zheng", c.wu_zheng},
                        {"steiner", c.steiner}},
                   {c.mesh_path});
    if (c.common.json_stdout) std::printf("%s\n", gate_report_json(report).c_str());

    if (report.applicable && report.margin < 0.0) return 2;  // falsification signal
    return 0;
}

// ---------------------------------------------------------------------------
// double

struct DoubleOpts {
    CommonOpts common;
    std::string mesh_path;
    std::vector<double> eps{0.08, 0.04, 0.02};
    double eta = 0.05;
    int s_res = 144;
    int samples = 2048;
};

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream csv;
    csv << "eps,tube_integral,reference,abs_error,d_sigma,d_m_eps,monotone_ok,diam_bound_ok,"
           "wz_margin,wz_applicable\n";
    for (const auto& r : rows) {
        csv << format_double(r.eps) << "," << format_double(r.tube_integral) << ","
            << format_double(r.reference) << "," << format_double(r.abs_error) << ","
            << format_double(r.d_sigma) << "," << format_double(r.d_m_eps) << ","
            << (r.monotone_ok ? 1 : 0) << "," << (r.diam_bound_ok ? 1 : 0) << ","
            << format_double(r.wz.margin) << "," << (r.wz.applicable ? 1 : 0) << "\n";
    }
    return csv.str();
}

// Log-log error-vs-eps polyline with a slope-one reference segment.
std::string convergence_svg(const std::vector<ConvergenceRow>& rows) {
    const double W = 480, H = 360, margin = 50;
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rows) {
        if (r.abs_error <= 0.0) continue;
        const double x = std::log10(r.eps), y = std::log10(r.abs_error);
        pts.push_back({x, y});
        min_x = std::min(min_x, x); max_x = std::max(max_x, x);
        min_y = std::min(min_y, y); max_y = std::max(max_y, y);
    }
    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";
    if (pts.size() >= 2) {
        const double sx = (W - 2 * margin) / std::max(1e-12, max_x - min_x);
        const double sy = (H - 2 * margin) / std::max(1e-12, max_y - min_y);
        auto X = [&](double x) { return margin + (x - min_x) * sx; };
        auto Y = [&](double y) { return H - margin - (y - min_y) * sy; };
        svg << "<polyline fill='none' stroke='black' stroke-width='1.5' points='";
        for (auto [x, y] : pts) svg << format_double(X(x)) << "," << format_double(Y(y)) << " ";
        svg << "'/>\n";
        // slope-1 guide through the last point
        const auto [x0, y0] = pts.back();
        svg << "<line stroke='gray' stroke-dasharray='4' x1='" << format_double(X(x0)) << "' y1='"
            << format_double(Y(y0)) << "' x2='" << format_double(X(x0 + 1.0)) << "' y2='"
            << format_double(Y(y0 + 1.0)) << "'/>\n";
    }
    svg << "<text x='" << W / 2 << "' y='" << H - 12
        << "' font-size='12' text-anchor='middle'>log10 eps</text>\n";
    svg << "<text x='14' y='" << H / 2
        << "' font-size='12' transform='rotate(-90 14 " << H / 2
        << ")' text-anchor='middle'>log10 |tube integral - K l|</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

int run_double(const DoubleOpts& d) {
    ensure_out(d.common.out);
    const auto ambient = make_ambient(d.common);
    const auto mesh = load_mesh(d.mesh_path);
    const auto drop = make_teardrop(d.eta, d.samples);

    std::vector<double> eps = d.eps;
    std::sort(eps.begin(), eps.end(), std::greater<>());

    ConvergenceOptions opts;
    opts.s_res = d.s_res;
    opts.alpha = alpha_opt(d.common);
    opts.strict = d.common.strict;
    const auto rows = convergence_study(mesh, ambient, drop, eps, opts);

    for (size_t i = 0; i < eps.size(); ++i) {
        const auto dbl = build_double(mesh, ambient, eps[i], drop, d.s_res);
        char name[64];
        std::snprintf(name, sizeof(name), "double_%02zu.off", i);
        save_off(dbl.mesh, (fs::path(d.common.out) / name).string());
    }

    json jrows = json::array();
    for (const auto& r : rows) {
        jrows.push_back({{"eps", r.eps},
                         {"tube_integral", r.tube_integral},
                         {"reference", r.reference},
                         {"abs_error", r.abs_error},
                         {"d_sigma", r.d_sigma},
                         {"d_m_eps", r.d_m_eps},
                         {"monotone_ok", r.monotone_ok},
                         {"diam_bound_ok", r.diam_bound_ok},
                         {"wz_margin", r.wz.margin},
                         {"wz_applicable", r.wz.applicable}});
    }
    const json result{{"teardrop_total_turn", drop.total_abs_turn}, {"rows", jrows}};
    write_text_file((fs::path(d.common.out) / "convergence.json").string(),
                    result.dump(2) + "\n");
    write_text_file((fs::path(d.common.out) / "convergence.csv").string(),
                    convergence_csv(rows));
    write_text_file((fs::path(d.common.out) / "convergence.svg").string(),
                    convergence_svg(rows));
    write_manifest(d.common.out, "double",
                   json{{"ambient", d.common.ambient},
                        {"alpha", d.common.alpha},
                        {"strict", d.common.strict},
                        {"eps", eps},
                        {"eta", d.eta},
                        {"s_res", d.s_res},
                        {"samples", d.samples}},
                   {d.mesh_path});
    for (const auto& r : rows)
        std::printf("eps=%-8g tube=%-10g err=%-10g d_sigma=%-8g d_M=%-8g wz_margin=%g\n", r.eps,
                    r.tube_integral, r.abs_error, r.d_sigma, r.d_m_eps, r.wz.margin);
    if (d.common.json_stdout) std::printf("%s\n", result.dump(2).c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOpts {
    CommonOpts common;
    std::string boundary_path;
    std::string mesh_path;
    int rings = 12;
    int stacks = 12;
    int max_iters = 20000;
    double grad_tol = 1e-4;
    double shrink = 0.5;
    double armijo = 1e-4;
    double rel_area_tol = 0.0;
};

ImmersedMesh initial_surface(const std::vector<NamedCurve>& curves, int rings, int stacks) {
    if (curves.size() == 1) {
        // Fan of concentric rings from the centroid (star-shaped curves).
        const auto& pts = curves[0].points;
        Vec3 centroid{};
        for (const Vec3& p : pts) centroid += p;
        centroid = centroid / static_cast<double>(pts.size());
        const int n = static_cast<int>(pts.size());
        std::vector<Vec3> pos{centroid};
        for (int j = 1; j <= rings; ++j) {
            const double t = static_cast<double>(j) / rings;
            for (int k = 0; k < n; ++k) pos.push_back(centroid + (pts[k] - centroid) * t);
        }
        auto vid = [&](int j, int k) { return j == 0 ? 0 : 1 + (j - 1) * n + (k % n); };
        std::vector<std::array<int, 3>> faces;
        for (int k = 0; k < n; ++k) faces.push_back({0, vid(1, k), vid(1, k + 1)});
        for (int j = 1; j < rings; ++j)
            for (int k = 0; k < n; ++k) {
                faces.push_back({vid(j, k), vid(j + 1, k), vid(j + 1, k + 1)});
                faces.push_back({vid(j, k), vid(j + 1, k + 1), vid(j, k + 1)});
            }
        return ImmersedMesh::create(std::move(pos), std::move(faces));
    }
    if (curves.size() == 2 && curves[0].points.size() == curves[1].points.size()) {
        // Ruled band matched by index.
        const int n = static_cast<int>(curves[0].points.size());
        std::vector<Vec3> pos;
        for (int j = 0; j <= stacks; ++j) {
            const double t = static_cast<double>(j) / stacks;
            for (int k = 0; k < n; ++k)
                pos.push_back(curves[0].points[k] * (1.0 - t) + curves[1].points[k] * t);
        }
        auto vid = [&](int j, int k) { return j * n + (k % n); };
        std::vector<std::array<int, 3>> faces;
        for (int j = 0; j < stacks; ++j)
            for (int k = 0; k < n; ++k) {
                faces.push_back({vid(j, k), vid(j, k + 1), vid(j + 1, k + 1)});
                faces.push_back({vid(j, k), vid(j + 1, k + 1), vid(j + 1, k)});
            }
        return ImmersedMesh::create(std::move(pos), std::move(faces));
    }
    fail(Errc::invalid_input,
         "solve supports one closed curve or two curves with equal point counts");
}

int run_solve(const SolveOpts& s) {
    ensure_out(s.common.out);
    const auto ambient = make_ambient(s.common);
    ImmersedMesh mesh = s.mesh_path.empty()
                            ? initial_surface(load_curves(s.boundary_path), s.rings, s.stacks)
                            : load_mesh(s.mesh_path);

    SolverOptions opts;
    opts.max_iters = s.max_iters;
    opts.grad_tol = s.grad_tol;
    opts.shrink = s.shrink;
    opts.sufficient_decrease = s.armijo;
    opts.rel_area_tol = s.rel_area_tol;
    const auto result = minimize_area(mesh, ambient, opts);

    save_off(result.mesh, (fs::path(s.common.out) / "solution.off").string());
    {
        std::ostringstream csv;
        csv << "iter,area,grad_norm\n";
        for (size_t i = 0; i < result.history.size(); ++i)
            csv << i << "," << format_double(result.history[i].area) << ","
                << format_double(result.history[i].grad_norm) << "\n";
        write_text_file((fs::path(s.common.out) / "history.csv").string(), csv.str());
    }
    const json summary{{"status", solve_status_name(result.status)},
                       {"iterations", result.history.size()},
                       {"final_area", result.history.back().area},
                       {"final_grad_norm", result.history.back().grad_norm},
                       {"total_mean_curvature", total_mean_curvature(result.mesh, ambient)},
                       {"min_face_quality", min_face_quality(result.mesh)},
                       {"goldschmidt", result.status == SolveStatus::NeckCollapse}};
    write_text_file((fs::path(s.common.out) / "solve.json").string(), summary.dump(2) + "\n");
    write_manifest(s.common.out, "solve",
                   json{{"ambient", s.common.ambient},
                        {"rings", s.rings},
                        {"stacks", s.stacks},
                        {"max_iters", s.max_iters},
                        {"grad_tol", s.grad_tol},
                        {"shrink", s.shrink},
                        {"armijo", s.armijo},
                        {"rel_area_tol", s.rel_area_tol}},
                   {s.mesh_path.empty() ? s.boundary_path : s.mesh_path});
    std::printf("solve: %s after %zu iterations, area %s\n",
                solve_status_name(result.status), result.history.size(),
                format_double(result.history.back().area).c_str());
    if (s.common.json_stdout) std::printf("%s\n", summary.dump(2).c_str());
    return result.status == SolveStatus::Stalled ? 1 : 0;
}

// ---------------------------------------------------------------------------
// screen

struct ScreenOpts {
    CommonOpts common;
    std::string boundary_path;
    double area_budget = -1.0;
};

int run_screen(const ScreenOpts& s) {
    ensure_out(s.common.out);
    const auto ambient = make_ambient(s.common);
    const auto curves = load_curves(s.boundary_path);
    const std::optional<double> budget =
        s.area_budget >= 0.0 ? std::optional<double>(s.area_budget) : std::nullopt;
    const auto verdict =
        screen_boundary(curves, ambient, alpha_opt(s.common), budget, s.common.strict);
    write_text_file((fs::path(s.common.out) / "verdict.json").string(),
                    screen_verdict_json(verdict) + "\n");
    write_manifest(s.common.out, "screen",
                   json{{"ambient", s.common.ambient},
                        {"alpha", s.common.alpha},
                        {"strict", s.common.strict},
                        {"area_budget", s.area_budget}},
                   {s.boundary_path});
    std::printf("screen: %s (separation %s, bound %s)\n", verdict.verdict.c_str(),
                format_double(verdict.separation).c_str(),
                format_double(verdict.bound).c_str());
    if (s.common.json_stdout) std::printf("%s\n", screen_verdict_json(verdict).c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// sobolev

struct SobolevOpts {
    CommonOpts common;
    std::string mesh_path;
    std::string f_spec = "hat:center";
};

std::vector<double> build_f(const ImmersedMesh& mesh, const std::string& spec) {
    std::vector<double> f(mesh.vertex_count(), 0.0);
    if (spec.rfind("hat:", 0) == 0) {
        int v = -1;
        const std::string which = spec.substr(4);
        if (which == "center") {
            // Vertex nearest the position centroid.
            Vec3 c{};
            for (const Vec3& p : mesh.positions()) c += p;
            c = c / static_cast<double>(mesh.vertex_count());
            double best = 1e300;
            for (int u = 0; u < mesh.vertex_count(); ++u) {
                if (mesh.is_boundary_vertex(u)) continue;
                const double d = distance(mesh.position(u), c);
                if (d < best) {
                    best = d;
                    v = u;
                }
            }
        } else {
            v = std::stoi(which);
        }
        if (v < 0 || v >= mesh.vertex_count() || mesh.is_boundary_vertex(v))
            fail(Errc::invalid_input, "hat vertex must be an interior vertex");
        f[v] = 1.0;
        return f;
    }
    if (spec == "dist-bump") {
        // Graph distance to the boundary, normalized: vanishes exactly on the
        // boundary and peaks in the deep interior.
        std::vector<double> dist(mesh.vertex_count(), 1e300);
        std::vector<int> queue;
        for (int v = 0; v < mesh.vertex_count(); ++v)
            if (mesh.is_boundary_vertex(v)) {
                dist[v] = 0.0;
                queue.push_back(v);
            }
        if (queue.empty()) fail(Errc::invalid_input, "dist-bump needs a boundary");
        // Bellman-Ford style relaxation; meshes here are small.
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& e : mesh.edges()) {
                const double w = distance(mesh.position(e.a), mesh.position(e.b));
                if (dist[e.a] + w < dist[e.b]) { dist[e.b] = dist[e.a] + w; changed = true; }
                if (dist[e.b] + w < dist[e.a]) { dist[e.a] = dist[e.b] + w; changed = true; }
            }
        }
        const double peak = *std::max_element(dist.begin(), dist.end());
        for (int v = 0; v < mesh.vertex_count(); ++v) f[v] = dist[v] / peak;
        return f;
    }
    fail(Errc::invalid_input, "unknown f spec '" + spec + "' (hat:center|hat:<idx>|dist-bump)");
}

int run_sobolev(const SobolevOpts& s) {
    ensure_out(s.common.out);
    const auto ambient = make_ambient(s.common);
    const auto mesh = load_mesh(s.mesh_path);
    const double alpha = s.common.alpha > 0.0 ? s.common.alpha : 2.0 / 3.0;
    const auto f = build_f(mesh, s.f_spec);
    const auto pair = hoffman_spruck_check(mesh, ambient, f, alpha, s.common.strict);
    const json result{{"lhs", pair.lhs},
                      {"rhs", pair.rhs},
                      {"alpha", alpha},
                      {"f_spec", s.f_spec},
                      {"holds", pair.lhs <= pair.rhs}};
    write_text_file((fs::path(s.common.out) / "sobolev.json").string(), result.dump(2) + "\n");
    write_manifest(s.common.out, "sobolev",
                   json{{"ambient", s.common.ambient}, {"alpha", alpha}, {"f", s.f_spec}},
                   {s.mesh_path});
    std::printf("sobolev: lhs = %s, rhs = %s (%s)\n", format_double(pair.lhs).c_str(),
                format_double(pair.rhs).c_str(), pair.lhs <= pair.rhs ? "holds" : "VIOLATED");
    if (s.common.json_stdout) std::printf("%s\n", result.dump(2).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"confdiam: intrinsic diameter bounds for surfaces in conformally flat ambients"};
    app.require_subcommand(1);
    app.set_config("--config");

    GenerateOpts gen;
    auto* cgen = app.add_subcommand("generate", "Generate fixture meshes and boundary curves");
    add_common(cgen, gen.common);
    cgen->add_option("--kind", gen.kind,
                     "disk|annulus|spherical-cap|icosphere|catenoid-boundary|circle-pair")
        ->required();
    cgen->add_option("--radius", gen.radius);
    cgen->add_option("--inner-radius", gen.inner_radius);
    cgen->add_option("--rings", gen.rings);
    cgen->add_option("--sectors", gen.sectors);
    cgen->add_option("--subdiv", gen.subdiv);
    cgen->add_option("--theta-max", gen.theta_max);
    cgen->add_option("--height", gen.height);
    cgen->add_option("--stacks", gen.stacks);
    cgen->add_option("--separation", gen.separation);
    cgen->add_option("--points", gen.points);
    cgen->add_option("--bump", gen.bump);
    cgen->add_option("--seed", gen.seed);
    cgen->add_option("--name", gen.name, "Basename for the output file");

    CheckOpts chk;
    auto* cchk = app.add_subcommand("check", "Evaluate the diameter inequality for a mesh");
    add_common(cchk, chk.common);
    cchk->add_option("--mesh", chk.mesh_path)->required();
    cchk->add_flag("--wu-zheng", chk.wu_zheng, "Closed-surface check instead of the boundary form");
    cchk->add_option("--steiner", chk.steiner, "Edge-midpoint rounds for the distance graph (0|1)");

    DoubleOpts dbl;
    auto* cdbl = app.add_subcommand("double", "Doubling construction and eps-convergence table");
    add_common(cdbl, dbl.common);
    cdbl->add_option("--mesh", dbl.mesh_path)->required();
    cdbl->add_option("--eps", dbl.eps, "Decreasing tube radii")->expected(-1);
    cdbl->add_option("--eta", dbl.eta, "Teardrop parameter (total turning pi + 4 eta)");
    cdbl->add_option("--s-res", dbl.s_res, "Tube rings along the cross-section");
    cdbl->add_option("--samples", dbl.samples, "Cross-section resampling density");

    SolveOpts sol;
    auto* csol = app.add_subcommand("solve", "Minimize conformal area with a fixed boundary");
    add_common(csol, sol.common);
    csol->add_option("--boundary", sol.boundary_path, "curves.json with 1 or 2 components");
    csol->add_option("--mesh", sol.mesh_path, "Initial mesh (OFF/OBJ); boundary held fixed");
    csol->add_option("--rings", sol.rings);
    csol->add_option("--stacks", sol.stacks);
    csol->add_option("--max-iters", sol.max_iters);
    csol->add_option("--grad-tol", sol.grad_tol);
    csol->add_option("--shrink", sol.shrink);
    csol->add_option("--armijo", sol.armijo);
    csol->add_option("--rel-area-tol", sol.rel_area_tol);

    ScreenOpts scr;
    auto* cscr = app.add_subcommand("screen", "Necessary-condition screen for boundary data");
    add_common(cscr, scr.common);
    cscr->add_option("--boundary", scr.boundary_path)->required();
    cscr->add_option("--area-budget", scr.area_budget, "Competitor area bound (required for K > 0)");

    SobolevOpts sob;
    auto* csob = app.add_subcommand("sobolev", "Numeric Sobolev-inequality check");
    add_common(csob, sob.common);
    csob->add_option("--mesh", sob.mesh_path)->required();
    csob->add_option("--f", sob.f_spec, "hat:center | hat:<index> | dist-bump")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        const CommonOpts* common = nullptr;
        if (cgen->parsed()) common = &gen.common;
        if (cchk->parsed()) common = &chk.common;
        if (cdbl->parsed()) common = &dbl.common;
        if (csol->parsed()) common = &sol.common;
        if (cscr->parsed()) common = &scr.common;
        if (csob->parsed()) common = &sob.common;
        if (common && common->threads > 0) set_worker_count(common->threads);

        if (cgen->parsed()) return run_generate(gen);
        if (cchk->parsed()) return run_check(chk);
        if (cdbl->parsed()) return run_double(dbl);
        if (csol->parsed()) return run_solve(sol);
        if (cscr->parsed()) return run_screen(scr);
        if (csob->parsed()) return run_sobolev(sob);
    } catch (const Error& e) {
        const json err{{"error", {{"code", e.code_name()}, {"message", e.what()}}}};
        std::fprintf(stderr, "%s\n", err.dump(2).c_str());
        return 1;
    } catch (const std::exception& e) {
        const json err{{"error", {{"code", "internal"}, {"message", e.what()}}}};
        std::fprintf(stderr, "%s\n", err.dump(2).c_str());
        return 1;
    }
    return 0;
}
