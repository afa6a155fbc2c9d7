#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "steklov/checks.hpp"
#include "steklov/report.hpp"

using namespace steklov;

namespace {

constexpr double kPi = 3.14159265358979323846;

Scenario torus_scenario() {
    Scenario s;
    s.name = "torus";
    s.seed = 11;
    s.cs = CrossSection::flat_torus({2 * kPi, 2 * kPi});
    s.family = MetricFamilyKind::Conformal;
    s.profile_label = ProfileLabel::Conf1;
    s.L = 1.0;
    s.epsilons = {0.1, 0.05};
    s.count = 6;
    return s;
}

Scenario warped3_scenario() {
    Scenario s;
    s.name = "warped3";
    s.seed = 11;
    s.cs = CrossSection::flat_torus({2 * kPi, 2 * kPi, 2 * kPi});
    s.family = MetricFamilyKind::Warped;
    s.profile_label = ProfileLabel::Warped;
    s.L = 0.4;
    s.epsilons = {0.05, 0.025};
    s.count = 6;
    return s;
}

const CheckReport& report_of(const ScenarioRun& run, const std::string& name) {
    for (const auto& r : run.reports)
        if (r.check == name) return r;
    throw std::runtime_error("missing report " + name);
}

double constant_of(const CheckReport& r, const std::string& name) {
    for (const auto& c : r.constants)
        if (c.name == name) return c.value;
    throw std::runtime_error("missing constant " + name);
}

}  // namespace

TEST_CASE("conf1 check passes on the torus and recomputes A = 1/16") {
    Scenario s = torus_scenario();
    s.checks = {"conf1"};
    const ScenarioRun run = run_scenario(s);
    const auto& report = report_of(run, "conf1");
    CHECK(report.pass);
    CHECK(constant_of(report, "A") == doctest::Approx(1.0 / 16.0));
    CHECK(constant_of(report, "b") == 2.0);
    CHECK(constant_of(report, "lambda_b_plus_1") == doctest::Approx(1.0));
    // Doubling rows present for the halving pair.
    bool doubling = false;
    for (const auto& row : report.rows)
        if (row.note.find("growth ratio") != std::string::npos) {
            doubling = true;
            CHECK(row.computed >= 1.8);
        }
    CHECK(doubling);
    // The diagnostic slope should be close to -1 for a 1/eps lower bound.
    CHECK(report.loglog_slope < -0.8);
}

TEST_CASE("conf1 check fails by design on the identity control profile") {
    Scenario s = torus_scenario();
    s.profile_label = ProfileLabel::Identity;
    s.checks = {"conf1"};
    const ScenarioRun run = run_scenario(s);
    const auto& report = report_of(run, "conf1");
    CHECK(!report.pass);
    CHECK(!run.all_pass);
    bool noted = false;
    for (const auto& note : report.notes)
        noted = noted || note.find("control") != std::string::npos;
    CHECK(noted);
}

TEST_CASE("necesbsmall: sigma_b <= 2/L and the psi bound is exactly 2/L") {
    Scenario s = torus_scenario();
    s.checks = {"necesbsmall"};
    const ScenarioRun run = run_scenario(s);
    const auto& report = report_of(run, "necesbsmall");
    CHECK(report.pass);
    CHECK(constant_of(report, "two_over_L") == doctest::Approx(2.0));
    for (const auto& row : report.rows) {
        if (row.note.find("psi") != std::string::npos)
            CHECK(row.computed == doctest::Approx(2.0).epsilon(1e-8));
        else
            CHECK(row.computed <= 2.0 + 1e-6);
    }
}

TEST_CASE("conf2 check recomputes mu, B, C and passes") {
    Scenario s = torus_scenario();
    s.profile_label = ProfileLabel::Conf2;
    s.checks = {"conf2"};
    s.epsilons = {0.1, 0.05};
    const ScenarioRun run = run_scenario(s);
    const auto& report = report_of(run, "conf2");
    CHECK(report.pass);
    // mu(Omega) = min(lambda_2, (pi/L)^2) = 1 on the middle slab.
    CHECK(constant_of(report, "mu_omega") == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(constant_of(report, "B") == doctest::Approx(1.0 / 128.0).epsilon(1e-7));
    CHECK(constant_of(report, "C") == doctest::Approx(1.0 / 256.0).epsilon(1e-7));
}

TEST_CASE("warped check: lower bound and fixed boundary distance") {
    Scenario s = warped3_scenario();
    s.checks = {"warped"};
    const ScenarioRun run = run_scenario(s);
    const auto& report = report_of(run, "warped");
    CHECK(report.pass);
    CHECK(constant_of(report, "C") == doctest::Approx(1.0 / 24.0));
    bool distance_rows = false;
    for (const auto& row : report.rows)
        if (row.note.find("boundary distance") != std::string::npos) {
            distance_rows = true;
            CHECK(row.computed == doctest::Approx(0.8).epsilon(1e-12));
        }
    CHECK(distance_rows);
}

TEST_CASE("quasi-isometry check holds with the sampled ratio") {
    Scenario s = warped3_scenario();
    s.epsilons = {0.05};
    s.checks = {"quasiiso"};
    s.quasiiso_ratio = 1.2;
    const ScenarioRun run = run_scenario(s);
    const auto& report = report_of(run, "quasiiso");
    CHECK(report.pass);
    CHECK(constant_of(report, "A") == doctest::Approx(1.2).epsilon(1e-9));
    CHECK(constant_of(report, "exponent") == 9.0);  // 2(n+1)+1 with n = 3
}

TEST_CASE("kokarev check on warped surfaces") {
    Scenario s;
    s.cs = CrossSection::circle(1.0);
    s.family = MetricFamilyKind::Warped;
    s.profile_label = ProfileLabel::Warped;
    s.L = 0.4;
    s.epsilons = {0.05, 0.025};
    s.checks = {"kokarev"};
    const ScenarioRun run = run_scenario(s);
    const auto& report = report_of(run, "kokarev");
    CHECK(report.pass);
    CHECK(constant_of(report, "bound") == doctest::Approx(2.0));
}

TEST_CASE("n2-bound: held for n = 2, exceeded for n = 3 at the smallest epsilon") {
    Scenario flat = warped3_scenario();
    flat.cs = CrossSection::flat_torus({2 * kPi, 2 * kPi});
    flat.checks = {"n2-bound"};
    const ScenarioRun run2 = run_scenario(flat);
    CHECK(report_of(run2, "n2-bound").pass);
    for (const auto& row : report_of(run2, "n2-bound").rows)
        CHECK(row.computed <= 0.8 + 1e-6);

    Scenario deep = warped3_scenario();
    deep.checks = {"n2-bound"};
    const ScenarioRun run3 = run_scenario(deep);
    const auto& report = report_of(run3, "n2-bound");
    CHECK(report.pass);
    double smallest_eps = 1e300;
    double sigma_at_smallest = 0;
    for (const auto& row : report.rows)
        if (row.epsilon < smallest_eps) {
            smallest_eps = row.epsilon;
            sigma_at_smallest = row.computed;
        }
    CHECK(sigma_at_smallest > 0.8);
}

TEST_CASE("volume growth: increasing under conf1, constant under identity") {
    Scenario s = torus_scenario();
    s.checks = {"volume-growth"};
    const ScenarioRun run = run_scenario(s);
    CHECK(report_of(run, "volume-growth").pass);

    Scenario id = torus_scenario();
    id.profile_label = ProfileLabel::Identity;
    id.checks = {"volume-growth"};
    const ScenarioRun idrun = run_scenario(id);
    const auto& report = report_of(idrun, "volume-growth");
    CHECK(report.pass);
    for (const auto& row : report.rows)
        if (row.note.find("identity") != std::string::npos)
            CHECK(row.computed == doctest::Approx(8 * kPi * kPi).epsilon(1e-10));
}

TEST_CASE("collar domination under conf2 with delta = epsilon") {
    Scenario s = torus_scenario();
    s.profile_label = ProfileLabel::Conf2;
    s.checks = {"collar-domination"};
    s.epsilons = {0.1, 0.05};
    const ScenarioRun run = run_scenario(s);
    const auto& report = report_of(run, "collar-domination");
    CHECK(report.pass);
    CHECK(report.rows.size() == 2 * 10);
}

TEST_CASE("collar domination on the identity profile with fixed delta") {
    Scenario s = torus_scenario();
    s.profile_label = ProfileLabel::Identity;
    s.collar_depth = 0.5;
    s.epsilons = {0.1};
    s.checks = {"collar-domination"};
    const ScenarioRun run = run_scenario(s);
    CHECK(report_of(run, "collar-domination").pass);
}

TEST_CASE("lemNeu scenario check") {
    Scenario s = torus_scenario();
    s.profile_label = ProfileLabel::Identity;
    s.checks = {"lemneu"};
    s.lemneu_trials = 16;
    const ScenarioRun run = run_scenario(s);
    const auto& report = report_of(run, "lemneu");
    CHECK(report.pass);
    CHECK(report.rows.size() == 16);
    CHECK(constant_of(report, "mu_omega") == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("small-eigenvalue bounds decrease (reduced resolution smoke)") {
    Scenario s = torus_scenario();
    s.profile_label = ProfileLabel::Identity;
    s.checks = {"small-eigenvalues"};
    s.smalleig_m = {10, 100};
    s.smalleig_k = {2};
    s.smalleig_resolution = {48, 48, 40};
    s.smalleig_threshold = 1.0;  // machinery smoke; tight threshold in acceptance
    const ScenarioRun run = run_scenario(s);
    CHECK(report_of(run, "small-eigenvalues").pass);
}

TEST_CASE("reports are deterministic for a fixed scenario and seed") {
    Scenario s = torus_scenario();
    s.profile_label = ProfileLabel::Identity;
    s.checks = {"lemneu", "volume-growth"};
    s.lemneu_trials = 6;
    const std::string a = scenario_run_to_json(run_scenario(s));
    const std::string b = scenario_run_to_json(run_scenario(s));
    CHECK(a == b);
    // A different seed changes the randomized rows.
    s.seed += 1;
    const std::string c = scenario_run_to_json(run_scenario(s));
    CHECK(a != c);
}

TEST_CASE("artifact writers produce the configured files atomically") {
    Scenario s = torus_scenario();
    s.checks = {"conf1"};
    s.epsilons = {0.1};
    s.csv_path = "artifact_test_sweep.csv";
    s.json_path = "artifact_test_report.json";
    s.svg_path = "artifact_test_plot.svg";
    const ScenarioRun run = run_scenario(s);
    write_artifacts(run);
    for (const char* path :
         {"artifact_test_sweep.csv", "artifact_test_report.json", "artifact_test_plot.svg"}) {
        std::ifstream in(path);
        CHECK(in.good());
        std::string first_line;
        std::getline(in, first_line);
        CHECK(!first_line.empty());
        in.close();
        std::remove(path);
    }
}

TEST_CASE("sweep CSV has one row per (epsilon, k)") {
    Scenario s = torus_scenario();
    s.checks = {};
    s.epsilons = {0.1, 0.05};
    s.count = 5;
    const ScenarioRun run = run_scenario(s);
    const std::string csv = sweep_to_csv(run);
    int lines = 0;
    for (char ch : csv) lines += ch == '\n' ? 1 : 0;
    CHECK(lines == 1 + 2 * 5);  // header + rows
}
