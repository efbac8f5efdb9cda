// Command-line front end: generate HQSF surfaces from holomorphic data,
// verify the differential identities behind them, classify rotation data,
// and reproduce the bundled example surfaces.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hqsf/mesh.hpp"
#include "hqsf/rotation.hpp"
#include "hqsf/weierstrass.hpp"

using json = nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitVerification = 3;
constexpr int kExitIo = 4;

struct Options {
    std::optional<std::string> config;
    std::optional<std::string> f1, f2, g;
    std::optional<double> c, c1, c2;
    std::optional<std::string> z1;
    std::optional<double> a1, a2;
    std::optional<std::string> u1, u2, interval;
    std::optional<int> samples;
    std::optional<std::string> obj, csv, report_json;
    std::optional<double> tol_defining, tol_identity, tol_fd;
    bool keep_degenerate = false;
    std::string example;
};

struct Range {
    double lo{}, hi{};
    int n{};
};

Range parse_range(const std::string& text) {
    Range r;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &r.lo, &r.hi, &r.n) != 3)
        throw hqsf::Error("range '" + text + "' is not of the form lo:hi:n");
    if (!(r.lo < r.hi))
        throw hqsf::Error("range '" + text + "' needs lo < hi");
    if (r.n < 2)
        throw hqsf::Error("range '" + text + "' needs n >= 2");
    return r;
}

std::pair<double, double> parse_interval(const std::string& text) {
    double lo, hi;
    if (std::sscanf(text.c_str(), "%lf:%lf", &lo, &hi) != 2)
        throw hqsf::Error("interval '" + text + "' is not of the form lo:hi");
    if (!(lo < hi))
        throw hqsf::Error("interval '" + text + "' needs lo < hi");
    return {lo, hi};
}

bool contains_variable(const hqsf::Expr& e) {
    if (e.kind() == hqsf::NodeKind::Variable) return true;
    for (std::size_t k = 0; k < e.child_count(); ++k)
        if (contains_variable(e.child(k))) return true;
    return false;
}

hqsf::Complex parse_constant(const std::string& text) {
    hqsf::Expr e = hqsf::parse(text);
    if (contains_variable(e))
        throw hqsf::Error("'" + text + "' must be a constant, not a function of z");
    return hqsf::eval(e, {0.0, 0.0});
}

void merge_config(Options& opt) {
    if (!opt.config) return;
    std::ifstream in(*opt.config);
    if (!in)
        throw hqsf::Error("cannot open config '" + *opt.config + "'");
    json cfg = json::parse(in, nullptr, true, true);

    auto str = [&](const char* key, std::optional<std::string>& slot) {
        if (!slot && cfg.contains(key)) slot = cfg.at(key).get<std::string>();
    };
    auto num = [&](const char* key, std::optional<double>& slot) {
        if (!slot && cfg.contains(key)) slot = cfg.at(key).get<double>();
    };
    str("f1", opt.f1);
    str("f2", opt.f2);
    str("g", opt.g);
    num("c", opt.c);
    num("c1", opt.c1);
    num("c2", opt.c2);
    str("z1", opt.z1);
    num("a1", opt.a1);
    num("a2", opt.a2);
    str("u1", opt.u1);
    str("u2", opt.u2);
    str("interval", opt.interval);
    if (!opt.samples && cfg.contains("samples")) opt.samples = cfg.at("samples").get<int>();
    str("obj", opt.obj);
    str("csv", opt.csv);
    str("report_json", opt.report_json);
    num("tol_defining", opt.tol_defining);
    num("tol_identity", opt.tol_identity);
    num("tol_fd", opt.tol_fd);
    if (!opt.keep_degenerate && cfg.contains("keep_degenerate"))
        opt.keep_degenerate = cfg.at("keep_degenerate").get<bool>();
}

struct Tolerances {
    double defining = 1e-8;
    double identity = 1e-9;
    double fd = 1e-5;
};

Tolerances tolerances(const Options& opt) {
    Tolerances t;
    if (opt.tol_defining) t.defining = *opt.tol_defining;
    if (opt.tol_identity) t.identity = *opt.tol_identity;
    if (opt.tol_fd) t.fd = *opt.tol_fd;
    for (double v : {t.defining, t.identity, t.fd})
        if (!(v > 0.0)) throw hqsf::Error("tolerances must be positive");
    return t;
}

struct GridReport {
    std::size_t vertices = 0;
    std::size_t masked = 0;
    double max_defining = 0.0;
    double max_t = 0.0;
    double max_a = 0.0;
    double max_mu = 0.0;
    double max_mu_fd = 0.0;
    std::size_t mu_fd_skipped = 0;
    double h_min = 0.0, h_max = 0.0;
    double k_min = 0.0, k_max = 0.0;

    bool pass(const Tolerances& tol) const {
        return max_defining <= tol.defining && max_t <= tol.identity &&
               max_a <= tol.identity && max_mu <= tol.identity &&
               max_mu_fd <= tol.fd;
    }
};

GridReport verify_grid(const hqsf::HQSFData& data, const Range& r1, const Range& r2) {
    GridReport report;
    bool first_regular = true;
    double step1 = (r1.hi - r1.lo) / (r1.n - 1);
    double step2 = (r2.hi - r2.lo) / (r2.n - 1);
    for (int i = 0; i < r1.n; ++i) {
        for (int j = 0; j < r2.n; ++j) {
            hqsf::Complex z(r1.lo + i * step1, r2.lo + j * step2);
            ++report.vertices;
            try {
                hqsf::ScalarJet2 h = hqsf::build_scalar_field(data, z);
                auto forms = hqsf::intermediate_forms(data.g().jet(z), h);
                if (hqsf::is_degenerate(forms) || data.wronskian_negligible(z)) {
                    ++report.masked;
                    continue;
                }
                hqsf::SurfaceGeometry s = hqsf::surface_geometry(data.g().jet(z), h);
                if (first_regular) {
                    report.h_min = report.h_max = s.H;
                    report.k_min = report.k_max = s.K;
                    first_regular = false;
                } else {
                    report.h_min = std::min(report.h_min, s.H);
                    report.h_max = std::max(report.h_max, s.H);
                    report.k_min = std::min(report.k_min, s.K);
                    report.k_max = std::max(report.k_max, s.K);
                }
                report.max_defining =
                    std::max(report.max_defining, hqsf::defining_residual(data, z));
                hqsf::IdentityReport ids = hqsf::identity_suite(data, z);
                report.max_t = std::max(report.max_t, ids.t_identity);
                report.max_a = std::max(report.max_a, ids.a_identity);
                report.max_mu = std::max(report.max_mu, ids.mu_consistency);
                if (std::isfinite(ids.mu_laplacian_fd))
                    report.max_mu_fd = std::max(report.max_mu_fd, ids.mu_laplacian_fd);
                else
                    ++report.mu_fd_skipped;
            } catch (const hqsf::Error&) {
                ++report.masked;
            }
        }
    }
    return report;
}

void print_report(const GridReport& r, const Tolerances& tol) {
    auto line = [](const char* label, double value, double bound) {
        std::printf("  %-38s = %-12.3e (tol %.0e)  %s\n", label, value, bound,
                    value <= bound ? "ok" : "EXCEEDED");
    };
    std::printf("vertices: %zu (%zu masked)\n", r.vertices, r.masked);
    std::printf("  H in [%.12g, %.12g], K in [%.12g, %.12g]\n", r.h_min, r.h_max,
                r.k_min, r.k_max);
    line("max defining-relation residual", r.max_defining, tol.defining);
    line("max T-identity residual", r.max_t, tol.identity);
    line("max A-identity residual", r.max_a, tol.identity);
    line("max mu-consistency residual", r.max_mu, tol.identity);
    line("max |FD Laplacian of mu|", r.max_mu_fd, tol.fd);
    if (r.mu_fd_skipped > 0)
        std::printf("  (mu harmonicity skipped at %zu vertices with vanishing W)\n",
                    r.mu_fd_skipped);
    std::printf("verification: %s\n", r.pass(tol) ? "PASS" : "FAIL");
}

json report_to_json(const GridReport& r, const Tolerances& tol) {
    return json{{"vertices", r.vertices},
                {"masked", r.masked},
                {"mean_curvature_range", {r.h_min, r.h_max}},
                {"gauss_curvature_range", {r.k_min, r.k_max}},
                {"max_defining_residual", r.max_defining},
                {"max_t_identity_residual", r.max_t},
                {"max_a_identity_residual", r.max_a},
                {"max_mu_consistency_residual", r.max_mu},
                {"max_mu_fd_laplacian", r.max_mu_fd},
                {"mu_fd_skipped", r.mu_fd_skipped},
                {"tolerances",
                 {{"defining", tol.defining}, {"identity", tol.identity}, {"fd", tol.fd}}},
                {"pass", r.pass(tol)}};
}

void write_json(const std::string& path, const json& value) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw hqsf::IoError("cannot open '" + path + "' for writing");
    out << value.dump(2) << "\n";
    if (!out)
        throw hqsf::IoError("failed writing '" + path + "'");
}

hqsf::HQSFData surface_data(const Options& opt) {
    if (!opt.f1 || !opt.f2 || !opt.g || !opt.c)
        throw hqsf::Error("surface mode needs --f1, --f2, --g and --c");
    return hqsf::HQSFData(hqsf::parse(*opt.f1), hqsf::parse(*opt.f2),
                          hqsf::parse(*opt.g), *opt.c);
}

int run_surface(const Options& opt, bool export_mesh) {
    Tolerances tol = tolerances(opt);
    hqsf::HQSFData data = surface_data(opt);
    Range r1 = parse_range(opt.u1.value_or("-1:1:21"));
    Range r2 = parse_range(opt.u2.value_or("-1:1:21"));

    std::printf("surface: f1 = %s, f2 = %s, g = %s, c = %g\n",
                hqsf::to_string(data.f1().f).c_str(),
                hqsf::to_string(data.f2().f).c_str(),
                hqsf::to_string(data.g().f).c_str(), data.c());
    std::printf("grid: u1 %g:%g:%d, u2 %g:%g:%d\n", r1.lo, r1.hi, r1.n, r2.lo,
                r2.hi, r2.n);

    GridReport report = verify_grid(data, r1, r2);
    print_report(report, tol);

    if (export_mesh) {
        hqsf::GridSpec spec{r1.lo, r1.hi, r2.lo, r2.hi, r1.n, r2.n,
                            !opt.keep_degenerate};
        hqsf::SurfaceMesh mesh =
            hqsf::sample_surface(hqsf::make_surface_evaluator(data), spec);
        std::string path = opt.obj.value_or("surface.obj");
        hqsf::export_obj(mesh, path);
        std::printf("OBJ written to %s (%zu vertices, %zu quads)\n", path.c_str(),
                    mesh.vertices.size(), mesh.faces.size());
    }
    if (opt.report_json)
        write_json(*opt.report_json, report_to_json(report, tol));
    return report.pass(tol) ? 0 : kExitVerification;
}

hqsf::RotationParams rotation_params(const Options& opt) {
    if (!opt.c || !opt.z1)
        throw hqsf::Error("rotation mode needs --c, --c1, --c2, --z1, --a1, --a2");
    hqsf::RotationParams p;
    p.c = *opt.c;
    p.c1 = opt.c1.value_or(0.0);
    p.c2 = opt.c2.value_or(0.0);
    p.z1 = parse_constant(*opt.z1);
    p.k1 = opt.a1.value_or(1.0);
    p.k2 = opt.a2.value_or(0.0);
    return p;
}

int run_rotation(const Options& opt, const char* fixture_name) {
    Tolerances tol = tolerances(opt);
    hqsf::RotationParams params = rotation_params(opt);
    hqsf::CaseTag tag = hqsf::discriminant(params);
    auto [lo, hi] = parse_interval(opt.interval.value_or("-3:3"));
    int samples = opt.samples.value_or(4000);

    std::printf("rotation data: c = %g, c1 = %g, c2 = %g, z1 = %g%+gi, "
                "coefficients (%g, %g)\n",
                params.c, params.c1, params.c2, params.z1.real(),
                params.z1.imag(), params.k1, params.k2);
    std::printf("case: %s (Omega = %.17g)\n", to_string(tag.sign), tag.omega);

    hqsf::RotationSurface surface(params);
    hqsf::ScanResult scan = hqsf::singularity_scan(params, lo, hi, samples);
    std::printf("profile scan on [%g,%g] with %d samples: %zu events\n", lo, hi,
                samples, scan.events.size());
    for (const auto& e : scan.events)
        std::printf("  %s at u1 = %.9f (residual %.2e)\n",
                    e.kind == hqsf::SingularityKind::AxisCrossing
                        ? "axis crossing"
                        : "profile critical point",
                    e.u1, e.residual);
    for (const auto& w : scan.warnings) std::printf("  warning: %s\n", w.c_str());

    std::vector<hqsf::ProfileSample> profile(samples);
    double step = (hi - lo) / (samples - 1);
    for (int k = 0; k < samples; ++k) profile[k] = surface.profile(lo + k * step);
    std::string csv_path =
        opt.csv.value_or(fixture_name ? std::string(fixture_name) + "_profile.csv"
                                      : "profile.csv");
    hqsf::export_profile_csv(profile, csv_path);
    std::printf("profile CSV written to %s (%d samples)\n", csv_path.c_str(), samples);

    // Mesh and identity report default to a moderate u1 box: the solved pair
    // grows exponentially in u1 and wide boxes drown the identity checks in
    // round-off. --u1 overrides.
    Range r1;
    if (opt.u1) {
        r1 = parse_range(*opt.u1);
    } else {
        r1 = Range{std::max(lo, -1.5), std::min(hi, 1.5), 41};
        if (!(r1.lo < r1.hi)) r1 = Range{lo, hi, 41};
    }
    Range r2 = opt.u2 ? parse_range(*opt.u2) : Range{0.0, 6.283185307179586, 49};

    hqsf::HQSFData data = [&] {
        try {
            return surface.hqsf_data();
        } catch (const hqsf::DegenerateWronskian&) {
            std::printf("the solved pair (f1, f2) is linearly dependent for these "
                        "coefficients;\nno surface verification or mesh is possible "
                        "(the profile above is still exact)\n");
            throw;
        }
    }();

    hqsf::GridSpec spec{r1.lo, r1.hi, r2.lo, r2.hi, r1.n, r2.n, !opt.keep_degenerate};
    hqsf::SurfaceMesh mesh =
        hqsf::sample_surface(hqsf::make_rotation_evaluator(surface), spec);
    std::string obj_path =
        opt.obj.value_or(fixture_name ? std::string(fixture_name) + ".obj"
                                      : "rotation.obj");
    hqsf::export_obj(mesh, obj_path);
    std::printf("OBJ written to %s (%zu vertices, %zu quads)\n", obj_path.c_str(),
                mesh.vertices.size(), mesh.faces.size());

    GridReport report = verify_grid(data, r1, r2);
    print_report(report, tol);

    if (opt.report_json) {
        json j = report_to_json(report, tol);
        j["case"] = to_string(tag.sign);
        j["omega"] = tag.omega;
        j["events"] = json::array();
        for (const auto& e : scan.events)
            j["events"].push_back(
                {{"kind", e.kind == hqsf::SingularityKind::AxisCrossing
                              ? "axis_crossing"
                              : "critical_circle"},
                 {"u1", e.u1},
                 {"residual", e.residual}});
        write_json(*opt.report_json, j);
    }
    return report.pass(tol) ? 0 : kExitVerification;
}

// Bundled example data sets with their documented default domains.
void apply_example(Options& opt, const std::string& name) {
    auto set = [](std::optional<std::string>& slot, const char* v) {
        if (!slot) slot = v;
    };
    auto setd = [](std::optional<double>& slot, double v) {
        if (!slot) slot = v;
    };
    if (name == "ex1") {
        set(opt.f1, "z"); set(opt.f2, "exp(z)"); set(opt.g, "z^2"); setd(opt.c, -1);
        set(opt.u1, "0.2:1.2:21"); set(opt.u2, "0:1:21");
    } else if (name == "ex2") {
        set(opt.f1, "cosh(z)"); set(opt.f2, "sinh(z)"); set(opt.g, "z^3"); setd(opt.c, 2);
        set(opt.u1, "0.2:1.2:21"); set(opt.u2, "0:1:21");
    } else if (name == "ex3") {
        set(opt.f1, "z^3"); set(opt.f2, "z^4"); set(opt.g, "z^5"); setd(opt.c, -1);
        set(opt.u1, "0.3:1.3:21"); set(opt.u2, "0:1:21");
    } else if (name == "ex4") {
        set(opt.f1, "sin(z)"); set(opt.f2, "cos(z)"); set(opt.g, "exp(2*z)"); setd(opt.c, -1);
        set(opt.u1, "0:1:21"); set(opt.u2, "0:3.141592653589793:21");
    } else if (name == "ex5") {
        set(opt.f1, "exp(z)"); set(opt.f2, "-exp(-z)"); set(opt.g, "z"); setd(opt.c, -1);
        set(opt.u1, "-1:1:21"); set(opt.u2, "-1:1:21");
    } else if (name == "ex6") {
        setd(opt.c, 1); setd(opt.c1, 0); setd(opt.c2, 1); set(opt.z1, "-1/2");
        setd(opt.a1, 2); setd(opt.a2, -1.0 / 3.0);
    } else if (name == "ex7") {
        setd(opt.c, 2); setd(opt.c1, 0); setd(opt.c2, -0.5); set(opt.z1, "i/3");
        setd(opt.a1, 1); setd(opt.a2, -1);
    } else if (name == "ex8") {
        setd(opt.c, 6); setd(opt.c1, -1); setd(opt.c2, 0.5); set(opt.z1, "3-(1/3)*i");
        setd(opt.a1, 1); setd(opt.a2, 1);
    } else if (name == "ex9") {
        setd(opt.c, 4); setd(opt.c1, 1); setd(opt.c2, 0.5); set(opt.z1, "3");
        setd(opt.a1, 1); setd(opt.a2, 0);
    } else if (name == "ex10") {
        setd(opt.c, 4); setd(opt.c1, -1); setd(opt.c2, -2); set(opt.z1, "-1");
        setd(opt.a1, 0); setd(opt.a2, 2);
    } else if (name == "ex11") {
        setd(opt.c, 3); setd(opt.c1, 1); setd(opt.c2, -1); set(opt.z1, "1-i");
        setd(opt.a1, 1); setd(opt.a2, -1);
    } else if (name == "ex12") {
        setd(opt.c, 2); setd(opt.c1, 1); setd(opt.c2, 2); set(opt.z1, "3");
        setd(opt.a1, 1); setd(opt.a2, 1);
    } else {
        throw hqsf::Error("unknown example '" + name + "' (expected ex1..ex12)");
    }
}

int run_examples(Options& opt) {
    const std::string name = opt.example;
    apply_example(opt, name);
    int index = std::stoi(name.substr(2));
    if (index <= 5) {
        if (!opt.obj) opt.obj = name + ".obj";
        return run_surface(opt, true);
    }

    // ex6..ex8 print with the split-root closed form, ex9..ex11 with the
    // oscillatory one, ex12 with the repeated-root one. The closed forms are
    // evaluated verbatim with the example constants as standalone fixtures.
    hqsf::RotationParams params = rotation_params(opt);
    hqsf::Expr fixture = (index <= 8)    ? hqsf::closed_form_h_exponential(params)
                         : (index <= 11) ? hqsf::closed_form_h_oscillatory(params)
                                         : hqsf::closed_form_h_repeated(params);
    hqsf::JetExpr field(fixture);
    std::printf("closed-form fixture profile:\n");
    for (double u1 : {-1.0, 0.0, 1.0}) {
        hqsf::ProfileSample s = hqsf::closed_form_profile(field, u1);
        std::printf("  u1 = %+g: A = %.12g, B = %.12g\n", u1, s.A, s.B);
    }

    auto [lo, hi] = parse_interval(opt.interval.value_or("-3:3"));
    int samples = opt.samples.value_or(4000);
    std::vector<hqsf::ProfileSample> closed(samples);
    double step = (hi - lo) / (samples - 1);
    for (int k = 0; k < samples; ++k)
        closed[k] = hqsf::closed_form_profile(field, lo + k * step);
    std::string fixture_csv = name + "_fixture_profile.csv";
    hqsf::export_profile_csv(closed, fixture_csv);
    std::printf("closed-form fixture CSV written to %s\n", fixture_csv.c_str());

    return run_rotation(opt, name.c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"HQSF surfaces: Weierstrass-type generation and verification"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opt.config, "JSON config file (flags win on conflict)");
        cmd->add_option("--u1", opt.u1, "u1 grid range lo:hi:n");
        cmd->add_option("--u2", opt.u2, "u2 grid range lo:hi:n");
        cmd->add_option("--obj", opt.obj, "output OBJ path");
        cmd->add_option("--report-json", opt.report_json, "write the report as JSON");
        cmd->add_option("--tol-defining", opt.tol_defining,
                        "tolerance for the defining-relation residual (default 1e-8)");
        cmd->add_option("--tol-identity", opt.tol_identity,
                        "tolerance for the analytic identities (default 1e-9)");
        cmd->add_option("--tol-fd", opt.tol_fd,
                        "tolerance for finite-difference checks (default 1e-5)");
        cmd->add_flag("--keep-degenerate", opt.keep_degenerate,
                      "keep epsilon-degenerate vertices in the mesh");
    };
    auto add_surface_opts = [&](CLI::App* cmd) {
        cmd->add_option("--f1", opt.f1, "holomorphic f1(z)");
        cmd->add_option("--f2", opt.f2, "holomorphic f2(z)");
        cmd->add_option("--g", opt.g, "holomorphic Gauss-map data g(z)");
        cmd->add_option("--c", opt.c, "real constant c");
    };
    auto add_rotation_opts = [&](CLI::App* cmd, bool with_c) {
        if (with_c) cmd->add_option("--c", opt.c, "real constant c (nonzero)");
        cmd->add_option("--c1", opt.c1, "real constant c1");
        cmd->add_option("--c2", opt.c2, "real constant c2");
        cmd->add_option("--z1", opt.z1,
                        "complex constant z1 (expression, e.g. \"3-(1/3)*i\")");
        cmd->add_option("--a1", opt.a1, "first solution coefficient");
        cmd->add_option("--a2", opt.a2, "second solution coefficient");
        cmd->add_option("--interval", opt.interval, "profile interval lo:hi (default -3:3)");
        cmd->add_option("--samples", opt.samples, "profile samples (default 4000)");
        cmd->add_option("--csv", opt.csv, "output profile CSV path");
    };

    CLI::App* surface = app.add_subcommand("surface", "generate a surface and verify it");
    add_surface_opts(surface);
    add_common(surface);

    CLI::App* verify = app.add_subcommand("verify", "verify identities only, no mesh output");
    add_surface_opts(verify);
    add_common(verify);

    CLI::App* rotation = app.add_subcommand("rotation", "classify and build a rotation surface");
    add_rotation_opts(rotation, true);
    add_common(rotation);

    CLI::App* examples = app.add_subcommand("examples", "run a bundled example (ex1..ex12)");
    examples->add_option("name", opt.example, "ex1..ex12")->required();
    add_surface_opts(examples);
    add_rotation_opts(examples, false);
    add_common(examples);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        merge_config(opt);
        if (surface->parsed()) return run_surface(opt, true);
        if (verify->parsed()) return run_surface(opt, false);
        if (rotation->parsed()) return run_rotation(opt, nullptr);
        return run_examples(opt);
    } catch (const hqsf::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const hqsf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}
