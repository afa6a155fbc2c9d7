// Acceptance suite: end-to-end verification of every inequality the
// library is built to check, at pinned tolerances.  Prints one line per
// criterion; exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "steklov/checks.hpp"
#include "steklov/report.hpp"

using namespace steklov;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Harness {
    int failures = 0;
    int index = 0;

    void run(const std::string& label, const std::function<bool(std::string&)>& body) {
        ++index;
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %2d [%s] %s%s%s\n", index, ok ? "PASS" : "FAIL",
                    label.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Scenario base_torus(ProfileLabel profile) {
    Scenario s;
    s.seed = 20260810;
    s.cs = CrossSection::flat_torus({2 * kPi, 2 * kPi});
    s.family = MetricFamilyKind::Conformal;
    s.profile_label = profile;
    s.L = 1.0;
    s.epsilons = {0.1, 0.05, 0.025, 0.0125};
    s.count = 10;
    return s;
}

Scenario base_warped3() {
    Scenario s;
    s.seed = 20260810;
    s.cs = CrossSection::flat_torus({2 * kPi, 2 * kPi, 2 * kPi});
    s.family = MetricFamilyKind::Warped;
    s.profile_label = ProfileLabel::Warped;
    s.L = 0.4;
    s.epsilons = {0.05, 0.025, 0.0125};
    s.count = 10;
    return s;
}

const CheckReport& report_of(const ScenarioRun& run, const std::string& name) {
    for (const auto& r : run.reports)
        if (r.check == name) return r;
    throw std::runtime_error("missing report " + name);
}

}  // namespace

int main() {
    Harness h;

    // 1. Analytic oracle: product cylinder over the unit circle.
    h.run("product-cylinder spectrum matches closed forms (rel 1e-6, < 1 s)",
          [&](std::string& detail) {
              const auto t0 = std::chrono::steady_clock::now();
              SpectrumRequest req{CrossSection::circle(1.0),
                                  MetricFamily(MetricFamilyKind::Conformal, 1,
                                               make_profile(ProfileLabel::Identity, 0.0,
                                                            1.0)),
                                  1.0,
                                  ProblemKind::SteklovTwoSided,
                                  0.0,
                                  6,
                                  Resolution{}};
              const auto result = steklov_spectrum(req);
              const double elapsed = seconds_since(t0);
              const double expected[] = {0.0,
                                         std::tanh(1.0),
                                         std::tanh(1.0),
                                         1.0,
                                         1.0 / std::tanh(1.0),
                                         1.0 / std::tanh(1.0)};
              double worst = 0;
              for (int j = 1; j <= 6; ++j) {
                  const double e = expected[j - 1];
                  const double err = std::abs(result.sigma(j) - e) / std::max(1.0, e);
                  worst = std::max(worst, err);
              }
              char buf[128];
              std::snprintf(buf, sizeof(buf), "max rel err %.2e, %.3f s", worst, elapsed);
              detail = buf;
              return worst <= 1e-6 && elapsed < 1.0;
          });

    // 2. FEM convergence order of sigma_2 across three mesh halvings.
    h.run("observed FEM order of sigma_2 within [1.8, 2.2]", [&](std::string& detail) {
        const MetricFamily mf(MetricFamilyKind::Conformal, 1,
                              make_profile(ProfileLabel::Identity, 0.0, 1.0));
        const ModeProblem mp(1.0, mf, -1.0, 1.0, EndpointCondition::Steklov,
                             EndpointCondition::Steklov);
        const double exact = std::tanh(1.0);
        std::vector<double> errors;
        for (int refine : {1, 2, 4, 8}) {
            Resolution res;
            res.refine = refine;
            const Mesh1D mesh = Mesh1D::build(mf.profile, res);
            errors.push_back(std::abs(dtn_matrix(mp, mesh).eigenvalues[0] - exact));
        }
        bool ok = true;
        std::string orders;
        for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
            const double order = std::log2(errors[i] / errors[i + 1]);
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%s%.3f", i ? ", " : "", order);
            orders += buf;
            ok = ok && order >= 1.8 && order <= 2.2;
        }
        detail = "orders " + orders;
        return ok;
    });

    // 3. Near-boundary conformal strip: sigma_{b+1} >= A/eps with doubling.
    h.run("conf1 lower bound sigma_3 >= (1/16)/eps with doubling (< 2 min)",
          [&](std::string& detail) {
              const auto t0 = std::chrono::steady_clock::now();
              Scenario s = base_torus(ProfileLabel::Conf1);
              s.checks = {"conf1"};
              const ScenarioRun run = run_scenario(s);
              const auto& report = report_of(run, "conf1");
              const double elapsed = seconds_since(t0);
              char buf[128];
              std::snprintf(buf, sizeof(buf), "slope %.3f, %.1f s", report.loglog_slope,
                            elapsed);
              detail = buf;
              return report.pass && elapsed < 120.0;
          });

    // 4. Near-boundary deformations cannot push sigma_b past 2/L; the psi
    // family reproduces 2/L exactly.  (Runs on conf1 profiles, which satisfy
    // the hypothesis that the metric is unchanged beyond the half-collar.)
    h.run("sigma_b <= 2/L + 1e-6 and psi-family bound = 2/L (rel 1e-8)",
          [&](std::string& detail) {
              Scenario s = base_torus(ProfileLabel::Conf1);
              s.checks = {"necesbsmall"};
              const ScenarioRun run = run_scenario(s);
              const auto& report = report_of(run, "necesbsmall");
              double worst_sigma = 0, worst_psi = 0;
              for (const auto& row : report.rows) {
                  if (row.note.find("psi") != std::string::npos)
                      worst_psi = std::max(worst_psi, std::abs(row.computed - 2.0) / 2.0);
                  else
                      worst_sigma = std::max(worst_sigma, row.computed);
              }
              char buf[128];
              std::snprintf(buf, sizeof(buf), "max sigma_b %.9f, psi dev %.2e",
                            worst_sigma, worst_psi);
              detail = buf;
              return report.pass;
          });

    // 5. Warped family: sigma_2 >= (1/24)/eps at fixed boundary distance.
    h.run("warped lower bound sigma_2 >= (1/24)/eps, distance 2L fixed",
          [&](std::string& detail) {
              Scenario s = base_warped3();
              s.checks = {"warped"};
              const ScenarioRun run = run_scenario(s);
              const auto& report = report_of(run, "warped");
              double min_product = 1e300;
              for (const auto& row : report.rows)
                  if (row.note.empty())
                      min_product = std::min(min_product, row.computed * row.epsilon);
              char buf[128];
              std::snprintf(buf, sizeof(buf), "min sigma_2*eps = %.6f (C = %.6f)",
                            min_product, 1.0 / 24.0);
              detail = buf;
              return report.pass;
          });

    // 6. Quasi-isometric eigenvalue control at ratio 1.2.
    h.run("quasi-isometry: sigma_k ratios within 1.2^(2(n+1)+1), k <= 10",
          [&](std::string& detail) {
              Scenario s = base_warped3();
              s.checks = {"quasiiso"};
              s.quasiiso_ratio = 1.2;
              const ScenarioRun run = run_scenario(s);
              detail = "exponent 9";
              return report_of(run, "quasiiso").pass;
          });

    // 7. Kokarev's genus-0 surface bound across every n = 1 scenario.
    h.run("Kokarev bound sigma_2 <= 8 pi / boundary length on all surfaces",
          [&](std::string& detail) {
              int scenarios = 0;
              bool ok = true;
              // Product cylinders, short and long.
              for (double L : {1.0, 100.0}) {
                  Scenario s;
                  s.cs = CrossSection::circle(1.0);
                  s.family = MetricFamilyKind::Conformal;
                  s.profile_label = ProfileLabel::Identity;
                  s.L = L;
                  s.epsilons = {0.1};
                  s.checks = {"kokarev"};
                  ok = ok && report_of(run_scenario(s), "kokarev").pass;
                  ++scenarios;
              }
              // Warped sweep.
              Scenario w;
              w.cs = CrossSection::circle(1.0);
              w.family = MetricFamilyKind::Warped;
              w.profile_label = ProfileLabel::Warped;
              w.L = 0.4;
              w.epsilons = {0.05, 0.025, 0.0125};
              w.checks = {"kokarev"};
              ok = ok && report_of(run_scenario(w), "kokarev").pass;
              ++scenarios;
              detail = std::to_string(scenarios) + " scenarios";
              return ok;
          });

    // 8. Dimension threshold: n = 2 warped sweeps stay below 2 L lambda_2,
    // an n = 3 sweep exceeds it at the smallest epsilon.
    h.run("n = 2 warped respects sigma_2 <= 2 L lambda_2; n = 3 exceeds it",
          [&](std::string& detail) {
              Scenario flat = base_warped3();
              flat.cs = CrossSection::flat_torus({2 * kPi, 2 * kPi});
              flat.checks = {"n2-bound"};
              const bool held = report_of(run_scenario(flat), "n2-bound").pass;

              Scenario deep = base_warped3();
              deep.checks = {"n2-bound"};
              const ScenarioRun run3 = run_scenario(deep);
              const auto& report = report_of(run3, "n2-bound");
              double sigma_small = 0, eps_small = 1e300;
              for (const auto& row : report.rows)
                  if (row.epsilon < eps_small) {
                      eps_small = row.epsilon;
                      sigma_small = row.computed;
                  }
              char buf[128];
              std::snprintf(buf, sizeof(buf),
                            "n=3 sigma_2 = %.3f vs threshold 0.8 at eps = %g",
                            sigma_small, eps_small);
              detail = buf;
              return held && report.pass;
          });

    // 9. Interior collapse: grid Rayleigh bounds decrease with m and drop
    // below 1e-2 at m = 1000.
    h.run("disjoint-bump bounds decrease in m and < 1e-2 at m = 1000",
          [&](std::string& detail) {
              Scenario s = base_torus(ProfileLabel::Identity);
              s.checks = {"small-eigenvalues"};
              s.smalleig_m = {10, 100, 1000};
              s.smalleig_k = {2, 3};
              s.smalleig_ball_radius = 2.9;
              s.smalleig_threshold = 1e-2;
              s.smalleig_resolution = {128, 128, 96};
              const ScenarioRun run = run_scenario(s);
              const auto& report = report_of(run, "small-eigenvalues");
              double final_worst = 0;
              for (const auto& row : report.rows)
                  if (row.epsilon == 1000.0) final_worst = std::max(final_worst, row.computed);
              char buf[128];
              std::snprintf(buf, sizeof(buf), "worst bound at m=1000: %.5f", final_worst);
              detail = buf;
              return report.pass;
          });

    // 10. Poincare-type inequality across 100 randomized grid functions.
    h.run("lemNeu property suite: lhs >= rhs (slack >= -1e-8) in 100 trials",
          [&](std::string& detail) {
              Scenario s = base_torus(ProfileLabel::Identity);
              s.checks = {"lemneu"};
              s.lemneu_trials = 100;
              const ScenarioRun run = run_scenario(s);
              const auto& report = report_of(run, "lemneu");
              double worst = 1e300;
              for (const auto& row : report.rows) worst = std::min(worst, row.slack);
              char buf[128];
              std::snprintf(buf, sizeof(buf), "min slack %.3e over %zu trials", worst,
                            report.rows.size());
              detail = buf;
              return report.pass && report.rows.size() == 100;
          });

    // 11. Collar domination on conf2 sweeps.
    h.run("sigma_k <= lambda_k^D(collar) + 1e-8 for k <= 10 on conf2 sweeps",
          [&](std::string& detail) {
              Scenario s = base_torus(ProfileLabel::Conf2);
              s.checks = {"collar-domination"};
              const ScenarioRun run = run_scenario(s);
              const auto& report = report_of(run, "collar-domination");
              double min_slack = 1e300;
              for (const auto& row : report.rows) min_slack = std::min(min_slack, row.slack);
              char buf[128];
              std::snprintf(buf, sizeof(buf), "min slack %.3e over %zu rows", min_slack,
                            report.rows.size());
              detail = buf;
              return report.pass;
          });

    // 12. Volume blow-up on all three deformation families.
    h.run("volumes strictly increase as eps halves and exceed 10x the product",
          [&](std::string& detail) {
              bool ok = true;
              std::string parts;
              for (auto label :
                   {ProfileLabel::Conf1, ProfileLabel::Conf2, ProfileLabel::Warped}) {
                  Scenario s = label == ProfileLabel::Warped ? base_warped3()
                                                             : base_torus(label);
                  s.checks = {"volume-growth"};
                  s.volume_growth_factor = 10.0;
                  const ScenarioRun run = run_scenario(s);
                  const bool pass = report_of(run, "volume-growth").pass;
                  parts += to_string(label) + (pass ? " ok " : " FAIL ");
                  ok = ok && pass;
              }
              detail = parts;
              return ok;
          });

    std::printf("acceptance: %d of %d criteria passed\n", h.index - h.failures, h.index);
    return h.failures == 0 ? 0 : 1;
}
