#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "steklov/rayleigh.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

// Scenario-driven inequality checks.  Every constant appearing in a bound
// (A, B, C, lambda_{b+1}, mu(Omega), |Sigma_j|, 2/L) is recomputed from the
// scenario's cross-section and metric data and logged with its formula.

struct Scenario {
    std::string name = "scenario";
    std::uint64_t seed = 0;

    CrossSection cs = CrossSection::circle(1.0);
    MetricFamilyKind family = MetricFamilyKind::Conformal;
    ProfileLabel profile_label = ProfileLabel::Identity;
    std::vector<ProfilePiece> custom_pieces;  // when profile_label == Custom
    double L = 1.0;
    std::vector<double> epsilons = {0.1};
    bool strict_epsilon = true;

    ProblemKind problem = ProblemKind::SteklovTwoSided;
    double collar_depth = 0.0;  // 0 => delta follows epsilon where needed
    int count = 10;
    Resolution resolution;

    std::vector<std::string> checks;

    // Check parameters.
    double quasiiso_ratio = 1.2;         // pointwise metric ratio bound A
    double volume_growth_factor = 10.0;  // final volume vs product volume
    int lemneu_trials = 100;
    // Extra test-function families declared in the config ([rayleigh]).
    std::vector<std::vector<ModeFormFunction>> rayleigh_families;
    double smalleig_threshold = 1e-2;
    std::vector<double> smalleig_m = {10, 100, 1000};
    std::vector<int> smalleig_k = {2, 3};
    double smalleig_ball_radius = 2.9;
    std::array<std::size_t, 3> smalleig_resolution = {128, 128, 96};

    std::string csv_path;
    std::string json_path;
    std::string svg_path;

    // Profile for one sweep point, in the two-sided cylinder convention
    // (or the scenario's custom pieces).
    Profile cylinder_profile(double epsilon) const;
    // Number of boundary components of the cylinder.
    int boundary_components() const;
};

// Throws with the offending check and reason when a requested check's
// preconditions cannot be satisfied by the scenario.
void validate_scenario(const Scenario& s);

struct SweepPoint {
    double epsilon = 0.0;
    SpectrumResult spectrum;
    double volume = 0.0;
    double axial_distance = 0.0;
};

std::vector<SweepPoint> run_sweep(const Scenario& s);

struct CheckConstant {
    std::string name;
    double value = 0.0;
    std::string formula;
};

struct CheckRow {
    double epsilon = std::numeric_limits<double>::quiet_NaN();
    int index = 0;  // k, trial number, or factor parameter, check-dependent
    double computed = 0.0;
    double bound = 0.0;
    double slack = 0.0;
    bool pass = true;
    std::string note;
};

struct CheckReport {
    std::string check;
    bool pass = true;
    std::vector<CheckConstant> constants;
    std::vector<CheckRow> rows;
    std::vector<std::string> notes;
    double loglog_slope = std::numeric_limits<double>::quiet_NaN();
};

CheckReport check_conf_bounds(const Scenario& s, const std::vector<SweepPoint>& sweep,
                              ProfileLabel kind);
CheckReport check_necesbsmall(const Scenario& s, const std::vector<SweepPoint>& sweep);
CheckReport check_quasiiso(const Scenario& s, const std::vector<SweepPoint>& sweep);
CheckReport check_kokarev(const Scenario& s, const std::vector<SweepPoint>& sweep);
CheckReport check_n2_bound(const Scenario& s, const std::vector<SweepPoint>& sweep);
CheckReport check_volume_growth(const Scenario& s, const std::vector<SweepPoint>& sweep);
CheckReport check_collar_domination(const Scenario& s,
                                    const std::vector<SweepPoint>& sweep);
CheckReport check_lemneu(const Scenario& s);
CheckReport check_small_eigenvalues(const Scenario& s);

struct ScenarioRun {
    Scenario scenario;
    std::vector<SweepPoint> sweep;
    std::vector<CheckReport> reports;
    bool all_pass = true;
};

// Runs the sweep and every requested check.  Deterministic for a fixed
// scenario (including seed).
ScenarioRun run_scenario(const Scenario& s);

}  // namespace steklov
