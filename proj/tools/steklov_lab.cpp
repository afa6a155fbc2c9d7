// steklov-lab: Steklov / mixed Steklov-Dirichlet / Neumann spectra of
// deformed cylinders, plus the scenario-driven inequality checks.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "steklov/checks.hpp"
#include "steklov/mode_solver.hpp"
#include "steklov/report.hpp"
#include "steklov/scenario.hpp"
#include "steklov/spectrum.hpp"

namespace {

using namespace steklov;

constexpr double kPi = 3.14159265358979323846;

struct QuickGeometry {
    std::string kind = "circle";
    double radius = 1.0;
    std::vector<double> periods;
    int sphere_dimension = 2;
    std::string family = "conformal";
    std::string profile = "identity";
    double L = 1.0;
    double epsilon = 0.1;
    int count = 8;
    int refine = 1;
    bool strict_epsilon = true;
    std::string problem = "steklov";
    double collar_depth = 0.0;
};

void add_geometry_flags(CLI::App* cmd, QuickGeometry& g) {
    cmd->add_option("--kind", g.kind, "cross-section kind: circle | torus | sphere");
    cmd->add_option("--radius", g.radius, "circle/sphere radius");
    cmd->add_option("--periods", g.periods, "flat-torus periods (d >= 1 values)");
    cmd->add_option("--sphere-dimension", g.sphere_dimension, "sphere dimension d");
    cmd->add_option("--family", g.family, "metric family: conformal | warped");
    cmd->add_option("--profile", g.profile,
                    "factor profile: identity | conf1 | conf2 | warped");
    cmd->add_option("--cylinder-length,-L", g.L, "cylinder half-length L");
    cmd->add_option("--epsilon", g.epsilon, "profile parameter epsilon");
    cmd->add_option("--count,-k", g.count, "number of eigenvalues");
    cmd->add_option("--refine", g.refine, "mesh refinement multiplier");
    cmd->add_flag("--strict-epsilon,!--no-strict-epsilon", g.strict_epsilon,
                  "enforce the admissible epsilon range (default on)");
    cmd->add_option("--problem", g.problem, "steklov | steklov-dirichlet");
    cmd->add_option("--collar-depth", g.collar_depth,
                    "collar depth delta for steklov-dirichlet");
}

CrossSection build_cross_section(const QuickGeometry& g) {
    if (g.kind == "circle") return CrossSection::circle(g.radius);
    if (g.kind == "torus") {
        std::vector<double> periods = g.periods;
        if (periods.empty()) periods = {2 * kPi, 2 * kPi};
        return CrossSection::flat_torus(periods);
    }
    if (g.kind == "sphere") return CrossSection::round_sphere(g.sphere_dimension, g.radius);
    throw CLI::ValidationError("--kind", "expected circle | torus | sphere");
}

SpectrumRequest build_request(const QuickGeometry& g) {
    const CrossSection cs = build_cross_section(g);
    const MetricFamilyKind family = g.family == "warped" ? MetricFamilyKind::Warped
                                                         : MetricFamilyKind::Conformal;
    const ProblemKind kind = g.problem == "steklov-dirichlet"
                                 ? ProblemKind::SteklovDirichletCollar
                                 : ProblemKind::SteklovTwoSided;
    Resolution res;
    res.refine = g.refine;
    Profile profile = kind == ProblemKind::SteklovDirichletCollar
                          ? make_identity_profile(0.0, g.collar_depth > 0 ? g.collar_depth
                                                                          : g.epsilon)
                          : make_cylinder_profile(profile_label_from_string(g.profile),
                                                  g.epsilon, g.L, g.strict_epsilon);
    SpectrumRequest req{cs,
                        MetricFamily(family, cs.dimension(), std::move(profile)),
                        g.L,
                        kind,
                        kind == ProblemKind::SteklovDirichletCollar
                            ? (g.collar_depth > 0 ? g.collar_depth : g.epsilon)
                            : 0.0,
                        g.count,
                        res};
    return req;
}

void print_spectrum(const SpectrumResult& result, int count) {
    std::printf("# %s, family=%s, n=%d, L=%g, problem=%s\n",
                result.cross_section.c_str(), to_string(result.family).c_str(), result.n,
                result.L, to_string(result.kind).c_str());
    std::printf("%4s  %-22s  %s\n", "k", "sigma", "multiplicity");
    int k = 1;
    for (const auto& g : result.groups) {
        if (k > count) break;
        std::printf("%4d  %-22.15g  %d\n", k, g.sigma, g.multiplicity);
        k += g.multiplicity;
    }
    std::printf("# truncation: %d modes, lambda cutoff %.6g, omitted >= %.6g\n",
                result.certificate.distinct_modes, result.certificate.lambda_cutoff,
                result.certificate.omitted_lower_bound);
}

int cmd_spectrum(const QuickGeometry& g, const std::string& csv_path,
                 const std::string& json_path) {
    const SpectrumRequest req = build_request(g);
    const SpectrumResult result = req.kind == ProblemKind::SteklovTwoSided
                                      ? steklov_spectrum(req)
                                      : steklov_dirichlet_spectrum(req);
    print_spectrum(result, g.count);
    if (!csv_path.empty()) write_file_atomic(csv_path, spectrum_to_csv(result));
    if (!json_path.empty()) write_file_atomic(json_path, spectrum_to_json(result));
    return 0;
}

int cmd_dtn(const QuickGeometry& g, double lambda, const std::string& dump_path) {
    const SpectrumRequest req = build_request(g);
    const double t0 = req.metric.profile.domain_start();
    const double t1 = req.kind == ProblemKind::SteklovDirichletCollar
                          ? t0 + req.collar_depth
                          : req.metric.profile.domain_end();
    const EndpointCondition right = req.kind == ProblemKind::SteklovDirichletCollar
                                        ? EndpointCondition::Dirichlet
                                        : EndpointCondition::Steklov;
    const ModeProblem mp(lambda, req.metric, t0, t1, EndpointCondition::Steklov, right);
    const Mesh1D mesh = Mesh1D::build(req.metric.profile, t0, t1, req.resolution);
    const DtNMatrix dtn = dtn_matrix(mp, mesh);
    std::printf("# mode lambda=%g, interval [%g, %g], %zu elements\n", lambda, t0, t1,
                mesh.element_count());
    for (int i = 0; i < dtn.size; ++i) {
        for (int j = 0; j < dtn.size; ++j) std::printf("  %22.15g", dtn.entries[i][j]);
        std::printf("\n");
    }
    std::printf("eigenvalues:");
    for (int i = 0; i < dtn.size; ++i) std::printf(" %.15g", dtn.eigenvalues[i]);
    std::printf("\n");
    if (!dump_path.empty()) {
        const Extension ext = harmonic_extension(
            mp, mesh, 1.0,
            right == EndpointCondition::Dirichlet ? std::optional<double>(0.0)
                                                  : std::optional<double>(1.0));
        dump_extension_csv(dump_path, mp, mesh, ext);
        std::printf("# extension dumped to %s\n", dump_path.c_str());
    }
    return 0;
}

int cmd_convergence(const QuickGeometry& g, int levels) {
    const SpectrumRequest base = build_request(g);
    std::vector<double> values;
    std::vector<int> refines;
    for (int level = 0; level < levels; ++level) {
        SpectrumRequest req = base;
        req.resolution.refine = base.resolution.refine << level;
        req.resolution.richardson = false;
        const SpectrumResult result = req.kind == ProblemKind::SteklovTwoSided
                                          ? steklov_spectrum(req)
                                          : steklov_dirichlet_spectrum(req);
        values.push_back(result.sigma(2));
        refines.push_back(req.resolution.refine);
    }
    std::printf("%8s  %-22s  %-14s  %s\n", "refine", "sigma_2", "diff_to_finest",
                "order");
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double err = std::abs(values[i] - values.back());
        std::string order = "-";
        if (i + 2 < values.size()) {
            const double e0 = std::abs(values[i] - values.back());
            const double e1 = std::abs(values[i + 1] - values.back());
            if (e0 > 0 && e1 > 0) {
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%.2f", std::log2(e0 / e1));
                order = buf;
            }
        }
        std::printf("%8d  %-22.15g  %-14.6g  %s\n", refines[i], values[i], err,
                    order.c_str());
    }
    return 0;
}

int cmd_verify(const std::string& config_path, const std::string& csv_override,
               const std::string& json_override, const std::string& svg_override,
               bool strict_epsilon_set, bool strict_epsilon) {
    Scenario scenario = load_scenario_file(config_path);
    if (strict_epsilon_set) scenario.strict_epsilon = strict_epsilon;
    if (!csv_override.empty()) scenario.csv_path = csv_override;
    if (!json_override.empty()) scenario.json_path = json_override;
    if (!svg_override.empty()) scenario.svg_path = svg_override;

    const ScenarioRun run = run_scenario(scenario);
    write_artifacts(run);

    for (const auto& report : run.reports) {
        int failed = 0;
        for (const auto& row : report.rows) failed += row.pass ? 0 : 1;
        std::printf("[%s] %-18s rows=%zu failed=%d", report.pass ? "PASS" : "FAIL",
                    report.check.c_str(), report.rows.size(), failed);
        if (!std::isnan(report.loglog_slope))
            std::printf("  loglog_slope=%.3f", report.loglog_slope);
        std::printf("\n");
        for (const auto& c : report.constants)
            std::printf("         %s = %.12g   (%s)\n", c.name.c_str(), c.value,
                        c.formula.c_str());
        if (!report.pass)
            for (const auto& row : report.rows)
                if (!row.pass)
                    std::printf("         failed row: eps=%g index=%d computed=%.12g "
                                "bound=%.12g %s\n",
                                row.epsilon, row.index, row.computed, row.bound,
                                row.note.c_str());
    }
    std::printf("%s: %s\n", scenario.name.c_str(),
                run.all_pass ? "all checks passed" : "CHECK FAILURES");
    return run.all_pass ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, const std::string& csv_override,
              const std::string& json_override) {
    Scenario scenario = load_scenario_file(config_path);
    scenario.checks.clear();  // spectra only
    if (!csv_override.empty()) scenario.csv_path = csv_override;
    if (!json_override.empty()) scenario.json_path = json_override;
    const ScenarioRun run = run_scenario(scenario);
    write_artifacts(run);
    for (const auto& pt : run.sweep)
        std::printf("epsilon=%-10g sigma_2=%-16.10g volume=%-16.8g distance=%.8g\n",
                    pt.epsilon, pt.spectrum.sigma(2), pt.volume, pt.axial_distance);
    return 0;
}

int cmd_rayleigh(const std::string& config_path) {
    const Scenario scenario = load_scenario_file(config_path);
    const auto family = psi_family(scenario.cs, scenario.L);
    std::printf("# psi family (%zu members): upper bound on sigma_%zu, target 2/L = %g\n",
                family.size(), family.size(), 2.0 / scenario.L);
    for (double eps : scenario.epsilons) {
        MetricFamily metric(scenario.family, scenario.cs.dimension(),
                            scenario.cylinder_profile(eps));
        std::printf("epsilon=%-10g bound=%.12g\n", eps,
                    minmax_upper_bound(family, metric, scenario.cs));
    }
    if (scenario.cs.components().front().kind() == ComponentKind::FlatTorus &&
        scenario.cs.dimension() == 2 && scenario.cs.component_count() == 1) {
        std::printf("# disjoint-bump grid bounds\n");
        for (int k : scenario.smalleig_k) {
            for (double m : scenario.smalleig_m) {
                BumpFamilySpec spec;
                const auto& periods = scenario.cs.components().front().periods();
                spec.periods = {periods[0], periods[1]};
                spec.L = scenario.L;
                spec.ball_radius = scenario.smalleig_ball_radius;
                spec.bump_count = k;
                spec.m = m;
                spec.resolution = scenario.smalleig_resolution;
                const RefinedBound bound = disjoint_bump_bound(spec);
                std::printf("k=%d m=%-8g bound=%.8g (error bar %.2g)\n", k, m,
                            bound.value, bound.error_bar);
            }
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steklov spectra of deformed cylinders and inequality checks"};
    app.require_subcommand(1);

    QuickGeometry g;
    std::string config_path, csv_path, json_path, svg_path, dump_path;
    double lambda = 0.0;
    int levels = 4;
    bool strict_flag = true;

    auto* spectrum = app.add_subcommand("spectrum", "one-shot eigenvalue computation");
    add_geometry_flags(spectrum, g);
    spectrum->add_option("--csv", csv_path, "write (index, eigenvalue, multiplicity) CSV");
    spectrum->add_option("--json", json_path, "write the full-provenance JSON");

    auto* dtn = app.add_subcommand("dtn", "per-mode DtN matrix dump");
    add_geometry_flags(dtn, g);
    dtn->add_option("--lambda", lambda, "cross-section eigenvalue of the mode")
        ->required();
    dtn->add_option("--dump-extension", dump_path, "write (t, h, a) CSV");

    auto* sweep = app.add_subcommand("sweep", "epsilon sweep from a scenario config");
    sweep->add_option("config", config_path, "TOML scenario file")->required();
    sweep->add_option("--csv", csv_path, "override the CSV output path");
    sweep->add_option("--json", json_path, "override the JSON output path");

    auto* verify = app.add_subcommand("verify", "run the scenario's checks");
    verify->add_option("config", config_path, "TOML scenario file")->required();
    verify->add_option("--csv", csv_path, "override the CSV output path");
    verify->add_option("--json", json_path, "override the JSON output path");
    verify->add_option("--svg", svg_path, "override the SVG output path");
    auto* strict_opt = verify->add_flag("--strict-epsilon,!--no-strict-epsilon",
                                        strict_flag, "admissible-range enforcement");

    auto* rayleigh = app.add_subcommand("rayleigh", "min-max upper bounds from a config");
    rayleigh->add_option("config", config_path, "TOML scenario file")->required();

    auto* convergence = app.add_subcommand("convergence", "mesh-refinement study");
    add_geometry_flags(convergence, g);
    convergence->add_option("--levels", levels, "number of refinement levels");

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectrum->parsed()) return cmd_spectrum(g, csv_path, json_path);
        if (dtn->parsed()) return cmd_dtn(g, lambda, dump_path);
        if (sweep->parsed()) return cmd_sweep(config_path, csv_path, json_path);
        if (verify->parsed())
            return cmd_verify(config_path, csv_path, json_path, svg_path,
                              strict_opt->count() > 0, strict_flag);
        if (rayleigh->parsed()) return cmd_rayleigh(config_path);
        if (convergence->parsed()) return cmd_convergence(g, levels);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
