#include "steklov/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "steklov/numerics.hpp"

namespace steklov {

namespace {
constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void check_error(const std::string& check, const std::string& reason) {
    throw std::invalid_argument("check '" + check + "': " + reason);
}

}  // namespace

Profile Scenario::cylinder_profile(double epsilon) const {
    if (profile_label == ProfileLabel::Custom) {
        if (custom_pieces.empty())
            throw std::invalid_argument("scenario: custom profile without pieces");
        return Profile(ProfileLabel::Custom, epsilon, custom_pieces);
    }
    return make_cylinder_profile(profile_label, epsilon, L, strict_epsilon);
}

int Scenario::boundary_components() const {
    return problem == ProblemKind::SteklovTwoSided ? 2 * cs.component_count()
                                                   : cs.component_count();
}

void validate_scenario(const Scenario& s) {
    if (!(s.L > 0)) throw std::invalid_argument("scenario: L must be positive");
    if (s.epsilons.empty()) throw std::invalid_argument("scenario: empty epsilon grid");
    const int n = s.cs.dimension();
    const bool connected = s.cs.component_count() == 1;
    const bool torus = s.cs.components().front().kind() == ComponentKind::FlatTorus;

    auto profile_for = [&](double eps) { return s.cylinder_profile(eps); };

    for (const auto& check : s.checks) {
        if (check == "conf1" || check == "conf2") {
            if (n < 2)
                check_error(check, "requires cross-section dimension >= 2 (manifold "
                                   "dimension n+1 >= 3)");
            if (s.family != MetricFamilyKind::Conformal)
                check_error(check, "requires the conformal family");
        } else if (check == "warped") {
            if (n < 3) check_error(check, "requires cross-section dimension >= 3");
            if (s.family != MetricFamilyKind::Warped)
                check_error(check, "requires the warped family");
            if (!connected) check_error(check, "requires a connected cross-section");
        } else if (check == "necesbsmall") {
            for (double eps : s.epsilons)
                if (!profile_for(eps).is_one_on(-s.L / 2, s.L / 2))
                    check_error(check,
                                "hypothesis violated: the metric must be unchanged at "
                                "distance >= L/2 from the boundary (|t| <= L/2); use "
                                "conf1 with epsilon <= L/8 or the identity profile");
        } else if (check == "quasiiso") {
            if (!(s.quasiiso_ratio > 1))
                check_error(check, "quasiiso_ratio must exceed 1");
        } else if (check == "kokarev") {
            if (n != 1) check_error(check, "requires a surface (cross-section dimension 1)");
        } else if (check == "n2-bound") {
            if (s.family != MetricFamilyKind::Warped)
                check_error(check, "requires the warped family");
            if (n < 2) check_error(check, "requires cross-section dimension >= 2");
        } else if (check == "volume-growth") {
            // any scenario
        } else if (check == "lemneu") {
            if (!(n == 2 && connected && torus))
                check_error(check, "requires a connected flat-torus cross-section (n = 2)");
        } else if (check == "collar-domination") {
            for (double eps : s.epsilons) {
                const double delta = s.collar_depth > 0 ? s.collar_depth : eps;
                if (!(delta > 0) || !(delta < 2 * s.L))
                    check_error(check, "collar depth must lie in (0, 2L)");
                const Profile p = profile_for(eps);
                if (!p.is_one_on(-s.L, -s.L + delta) || !p.is_one_on(s.L - delta, s.L))
                    check_error(check, "profile must equal 1 on the collar of depth delta");
            }
        } else if (check == "small-eigenvalues") {
            if (!(n == 2 && connected && torus))
                check_error(check, "requires a connected flat-torus cross-section (n = 2)");
            const auto& periods = s.cs.components().front().periods();
            if (s.smalleig_ball_radius + 0.1 >
                std::min(periods[0], periods[1]) / 2)
                check_error(check, "deformation ball does not fit the cross-section");
            for (int k : s.smalleig_k)
                if (k < 1 || s.smalleig_ball_radius / (2.0 * k) >= 2 * s.L)
                    check_error(check, "bump radius exceeds the cylinder depth");
        } else {
            throw std::invalid_argument("unknown check '" + check + "'");
        }
    }
    if (!s.checks.empty() && s.problem != ProblemKind::SteklovTwoSided)
        throw std::invalid_argument(
            "scenario: inequality checks run on the two-sided Steklov problem");
}

std::vector<SweepPoint> run_sweep(const Scenario& s) {
    const int count = std::max({s.count, 10, s.boundary_components() + 1});
    std::vector<SweepPoint> sweep(s.epsilons.size());
    parallel_for(s.epsilons.size(), [&](std::size_t i) {
        const double eps = s.epsilons[i];
        MetricFamily metric(s.family, s.cs.dimension(), s.cylinder_profile(eps));
        SpectrumRequest req{s.cs, metric, s.L, s.problem,
                            s.problem == ProblemKind::SteklovDirichletCollar
                                ? (s.collar_depth > 0 ? s.collar_depth : eps)
                                : 0.0,
                            count, s.resolution};
        SweepPoint point;
        point.epsilon = eps;
        point.spectrum = s.problem == ProblemKind::SteklovTwoSided
                             ? steklov_spectrum(req)
                             : steklov_dirichlet_spectrum(req);
        point.volume = volume(metric, s.cs);
        point.axial_distance = metric.axial_boundary_distance();
        sweep[i] = std::move(point);
    });
    return sweep;
}

namespace {

void add_loglog_slope(CheckReport& report, const std::vector<SweepPoint>& sweep,
                      int sigma_index_k) {
    std::vector<double> lx, ly;
    for (const auto& pt : sweep) {
        const double sigma = pt.spectrum.sigma(sigma_index_k);
        if (pt.epsilon > 0 && sigma > 0) {
            lx.push_back(std::log(pt.epsilon));
            ly.push_back(std::log(sigma));
        }
    }
    if (lx.size() >= 2) {
        bool distinct = false;
        for (double v : lx) distinct = distinct || std::abs(v - lx.front()) > 1e-12;
        if (distinct) report.loglog_slope = regression_slope(lx, ly);
    }
}

void add_doubling_rows(CheckReport& report, const std::vector<SweepPoint>& sweep,
                       int sigma_index_k) {
    for (std::size_t i = 0; i + 1 < sweep.size(); ++i) {
        const double ratio_eps = sweep[i + 1].epsilon / sweep[i].epsilon;
        if (ratio_eps < 0.45 || ratio_eps > 0.55) continue;
        const double s0 = sweep[i].spectrum.sigma(sigma_index_k);
        const double s1 = sweep[i + 1].spectrum.sigma(sigma_index_k);
        CheckRow row;
        row.epsilon = sweep[i + 1].epsilon;
        row.index = sigma_index_k;
        row.computed = s0 > 0 ? s1 / s0 : std::numeric_limits<double>::quiet_NaN();
        row.bound = 2.0 * 0.9;  // doubling within 10% slack
        row.slack = row.computed - row.bound;
        row.pass = row.computed >= row.bound - 1e-12;
        row.note = "growth ratio as epsilon halves";
        report.rows.push_back(row);
        report.pass = report.pass && row.pass;
    }
}

double pointwise_metric_ratio(const Profile& p1, const Profile& p2,
                              MetricFamilyKind family) {
    const double a = std::max(p1.domain_start(), p2.domain_start());
    const double b = std::min(p1.domain_end(), p2.domain_end());
    double worst = 1.0;
    const int samples = 4096;
    for (int i = 0; i <= samples; ++i) {
        const double t = a + (b - a) * static_cast<double>(i) / samples;
        const double r = p1.evaluate(t) / p2.evaluate(t);
        worst = std::max({worst, r * r, 1.0 / (r * r)});
    }
    if (family == MetricFamilyKind::Warped) worst = std::max(worst, 1.0);
    return worst;
}

}  // namespace

CheckReport check_conf_bounds(const Scenario& s, const std::vector<SweepPoint>& sweep,
                              ProfileLabel kind) {
    CheckReport report;
    const int b = s.boundary_components();
    const double lambda_fp = s.cs.lambda_first_positive();

    int target_k = 0;
    double constant = 0.0;
    if (kind == ProfileLabel::Conf1) {
        report.check = "conf1";
        target_k = b + 1;
        constant = 0.25 * std::min(lambda_fp, 0.25);
        report.constants.push_back({"b", static_cast<double>(b),
                                    "number of boundary components of the cylinder"});
        report.constants.push_back({"lambda_b_plus_1", lambda_fp,
                                    "first positive eigenvalue of the merged boundary "
                                    "Laplacian"});
        report.constants.push_back({"A", constant, "A = min(lambda_b_plus_1, 1/4) / 4"});
        report.notes.push_back(
            "profile applied symmetrically near both boundary components");
    } else if (kind == ProfileLabel::Conf2) {
        report.check = "conf2";
        target_k = 2;
        const double A = 0.25 * std::min(lambda_fp, 0.25);
        MetricFamily omega_metric(s.family, s.cs.dimension(),
                                  make_identity_profile(-s.L / 2, s.L / 2));
        const double mu =
            first_positive_neumann(s.cs, omega_metric, -s.L / 2, s.L / 2, s.resolution);
        const double vmin = s.cs.min_component_volume();
        const double vmax = s.cs.max_component_volume();
        const double B = std::min(mu * b * s.L, 1.0 / (2.0 * b)) /
                         (32.0 * (b - 1) * (b - 1)) * (vmin * vmin) / (vmax * vmax);
        constant = 0.5 * std::min(A, B);
        report.constants.push_back({"b", static_cast<double>(b),
                                    "number of boundary components of the cylinder"});
        report.constants.push_back({"lambda_b_plus_1", lambda_fp,
                                    "first positive eigenvalue of the merged boundary "
                                    "Laplacian"});
        report.constants.push_back({"A", A, "A = min(lambda_b_plus_1, 1/4) / 4"});
        report.constants.push_back(
            {"mu_omega", mu,
             "first positive Neumann eigenvalue of the middle region Sigma x [-L/2, L/2]"});
        report.constants.push_back(
            {"B", B,
             "B = min(mu_omega b L, 1/(2b)) / (32 (b-1)^2) * min|Sigma_j|^2 / "
             "max|Sigma_j|^2"});
        report.constants.push_back({"C", constant, "C = min(A, B) / 2"});
    } else if (kind == ProfileLabel::Warped) {
        report.check = "warped";
        target_k = 2;
        constant = 0.25 * std::min(lambda_fp, 1.0 / 6.0);
        report.constants.push_back(
            {"lambda_2", lambda_fp, "first positive eigenvalue of the cross-section"});
        report.constants.push_back({"C", constant, "C = min(lambda_2, 1/6) / 4"});
    } else {
        throw std::invalid_argument("check_conf_bounds: kind must be conf1|conf2|warped");
    }

    for (const auto& pt : sweep) {
        CheckRow row;
        row.epsilon = pt.epsilon;
        row.index = target_k;
        row.computed = pt.spectrum.sigma(target_k);
        row.bound = constant / pt.epsilon;
        row.slack = row.computed * pt.epsilon - constant;
        row.pass = row.slack >= -1e-12;
        report.rows.push_back(row);
        report.pass = report.pass && row.pass;
    }
    if (s.profile_label == ProfileLabel::Identity) {
        report.notes.push_back(
            "not applicable: identity (product) control profile; the bound holds only "
            "when sigma exceeds the 1/epsilon scale, so this configuration fails by "
            "design");
    }
    if (kind == ProfileLabel::Conf1) add_doubling_rows(report, sweep, target_k);
    if (kind == ProfileLabel::Warped) {
        for (const auto& pt : sweep) {
            CheckRow row;
            row.epsilon = pt.epsilon;
            row.index = 0;
            row.computed = pt.axial_distance;
            row.bound = 2 * s.L;
            row.slack = std::abs(row.computed - row.bound);
            row.pass = row.slack <= 1e-9 * std::max(1.0, row.bound);
            row.note = "boundary distance (epsilon-independent)";
            report.rows.push_back(row);
            report.pass = report.pass && row.pass;
        }
    }
    add_loglog_slope(report, sweep, target_k);
    return report;
}

CheckReport check_necesbsmall(const Scenario& s, const std::vector<SweepPoint>& sweep) {
    CheckReport report;
    report.check = "necesbsmall";
    const int b = s.boundary_components();
    const double bound = 2.0 / s.L;
    report.constants.push_back(
        {"b", static_cast<double>(b), "number of boundary components of the cylinder"});
    report.constants.push_back({"two_over_L", bound, "2 / L"});

    const auto family = psi_family(s.cs, s.L);
    for (const auto& pt : sweep) {
        const Profile profile = s.cylinder_profile(pt.epsilon);
        MetricFamily metric(s.family, s.cs.dimension(), profile);

        CheckRow sigma_row;
        sigma_row.epsilon = pt.epsilon;
        sigma_row.index = b;
        sigma_row.computed = pt.spectrum.sigma(b);
        sigma_row.bound = bound;
        sigma_row.slack = bound - sigma_row.computed;
        sigma_row.pass = sigma_row.computed <= bound + 1e-6;
        sigma_row.note = "sigma_b";
        report.rows.push_back(sigma_row);
        report.pass = report.pass && sigma_row.pass;

        CheckRow psi_row;
        psi_row.epsilon = pt.epsilon;
        psi_row.index = b;
        psi_row.computed = minmax_upper_bound(family, metric, s.cs);
        psi_row.bound = bound;
        psi_row.slack = std::abs(psi_row.computed - bound);
        psi_row.pass = psi_row.slack <= 1e-8 * bound;
        psi_row.note = "psi-family min-max bound";
        report.rows.push_back(psi_row);
        report.pass = report.pass && psi_row.pass;
    }
    return report;
}

CheckReport check_quasiiso(const Scenario& s, const std::vector<SweepPoint>& sweep) {
    CheckReport report;
    report.check = "quasiiso";
    const int n = s.cs.dimension();
    const double scale = std::sqrt(s.quasiiso_ratio);
    const int exponent = 2 * (n + 1) + 1;
    const int kmax = 10;

    double worst_ratio = 1.0;
    for (const auto& pt : sweep) {
        const Profile p1 = s.cylinder_profile(pt.epsilon);
        const Profile p2 = scale_profile(p1, scale);
        const double A = pointwise_metric_ratio(p1, p2, s.family);
        worst_ratio = std::max(worst_ratio, A);
        const double bound = std::pow(A, exponent);

        MetricFamily metric2(s.family, n, p2);
        SpectrumRequest req{s.cs, metric2, s.L, ProblemKind::SteklovTwoSided, 0.0,
                            std::max(kmax, s.count), s.resolution};
        const SpectrumResult other = steklov_spectrum(req);

        for (int k = 1; k <= kmax; ++k) {
            const double s1 = pt.spectrum.sigma(k);
            const double s2 = other.sigma(k);
            CheckRow row;
            row.epsilon = pt.epsilon;
            row.index = k;
            if (s1 == 0.0 && s2 == 0.0) {
                row.computed = 1.0;
            } else if (s2 == 0.0 || s1 == 0.0) {
                row.computed = std::numeric_limits<double>::infinity();
            } else {
                row.computed = s1 / s2;
            }
            row.bound = bound;
            row.slack = std::min(bound - row.computed, row.computed - 1.0 / bound);
            row.pass = row.computed <= bound + 1e-9 && row.computed >= 1.0 / bound - 1e-9;
            report.rows.push_back(row);
            report.pass = report.pass && row.pass;
        }
    }
    report.constants.push_back({"A", worst_ratio, "pointwise metric ratio (sampled)"});
    report.constants.push_back({"exponent", static_cast<double>(exponent),
                                "2 (n+1) + 1, with dim M = n+1"});
    return report;
}

CheckReport check_kokarev(const Scenario& s, const std::vector<SweepPoint>& sweep) {
    CheckReport report;
    report.check = "kokarev";
    const double boundary_length = 2.0 * s.cs.total_volume();
    const double bound = 8.0 * kPi / boundary_length;
    report.constants.push_back({"boundary_length", boundary_length,
                                "total length of the two boundary circles"});
    report.constants.push_back({"bound", bound, "8 pi (1 + genus) / boundary_length, genus 0"});
    for (const auto& pt : sweep) {
        const KokarevResult kr = kokarev_check(pt.spectrum, boundary_length);
        CheckRow row;
        row.epsilon = pt.epsilon;
        row.index = 2;
        row.computed = kr.sigma2;
        row.bound = kr.bound;
        row.slack = kr.bound - kr.sigma2;
        row.pass = kr.pass;
        report.rows.push_back(row);
        report.pass = report.pass && row.pass;
    }
    return report;
}

CheckReport check_n2_bound(const Scenario& s, const std::vector<SweepPoint>& sweep) {
    CheckReport report;
    report.check = "n2-bound";
    const int n = s.cs.dimension();
    const double lambda2 = s.cs.lambda_first_positive();
    const double threshold = 2.0 * s.L * lambda2;
    report.constants.push_back(
        {"lambda_2", lambda2, "first positive eigenvalue of the cross-section"});
    report.constants.push_back({"threshold", threshold, "2 L lambda_2"});

    double min_eps = std::numeric_limits<double>::infinity();
    for (const auto& pt : sweep) min_eps = std::min(min_eps, pt.epsilon);

    for (const auto& pt : sweep) {
        CheckRow row;
        row.epsilon = pt.epsilon;
        row.index = 2;
        row.computed = pt.spectrum.sigma(2);
        row.bound = threshold;
        if (n == 2) {
            row.slack = threshold - row.computed;
            row.pass = row.computed <= threshold + 1e-6;
            row.note = "sigma_2 <= 2 L lambda_2";
        } else {
            const bool is_smallest = pt.epsilon == min_eps;
            row.slack = row.computed - threshold;
            row.pass = !is_smallest || row.computed > threshold;
            row.note = is_smallest ? "must exceed the n=2 threshold at the smallest epsilon"
                                   : "informational";
        }
        report.rows.push_back(row);
        report.pass = report.pass && row.pass;
    }
    return report;
}

CheckReport check_volume_growth(const Scenario& s, const std::vector<SweepPoint>& sweep) {
    CheckReport report;
    report.check = "volume-growth";
    const double product_volume = s.cs.total_volume() * 2.0 * s.L;
    report.constants.push_back(
        {"product_volume", product_volume, "|Sigma| * 2L (undeformed cylinder)"});
    report.constants.push_back({"growth_factor", s.volume_growth_factor,
                                "required final volume / product volume"});

    std::vector<SweepPoint> ordered(sweep);
    std::sort(ordered.begin(), ordered.end(),
              [](const SweepPoint& a, const SweepPoint& b) { return a.epsilon > b.epsilon; });

    const bool identity = s.profile_label == ProfileLabel::Identity;
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        CheckRow row;
        row.epsilon = ordered[i].epsilon;
        row.index = static_cast<int>(i);
        row.computed = ordered[i].volume;
        if (identity) {
            row.bound = product_volume;
            row.slack = std::abs(row.computed - product_volume);
            row.pass = row.slack <= 1e-8 * product_volume;
            row.note = "identity profile keeps the volume constant";
        } else if (i == 0) {
            row.bound = 0.0;
            row.pass = true;
            row.note = "baseline";
        } else {
            row.bound = ordered[i - 1].volume;
            row.slack = row.computed - row.bound;
            row.pass = row.computed > row.bound * (1 + 1e-12);
            row.note = "strictly increasing as epsilon shrinks";
        }
        report.rows.push_back(row);
        report.pass = report.pass && row.pass;
    }
    if (!identity && !ordered.empty()) {
        CheckRow row;
        row.epsilon = ordered.back().epsilon;
        row.index = static_cast<int>(ordered.size());
        row.computed = ordered.back().volume;
        row.bound = s.volume_growth_factor * product_volume;
        row.slack = row.computed - row.bound;
        row.pass = row.computed > row.bound;
        row.note = "blow-up vs product volume at the smallest epsilon";
        report.rows.push_back(row);
        report.pass = report.pass && row.pass;
    }
    return report;
}

CheckReport check_collar_domination(const Scenario& s,
                                    const std::vector<SweepPoint>& sweep) {
    CheckReport report;
    report.check = "collar-domination";
    const int kmax = 10;
    for (const auto& pt : sweep) {
        const double delta = s.collar_depth > 0 ? s.collar_depth : pt.epsilon;
        MetricFamily collar_metric(s.family, s.cs.dimension(),
                                   make_identity_profile(0.0, delta));
        SpectrumRequest req{s.cs,  collar_metric, s.L, ProblemKind::SteklovDirichletCollar,
                            delta, kmax,          s.resolution};
        const SpectrumResult collar = steklov_dirichlet_spectrum(req);
        for (int k = 1; k <= kmax; ++k) {
            CheckRow row;
            row.epsilon = pt.epsilon;
            row.index = k;
            row.computed = pt.spectrum.sigma(k);
            row.bound = collar.sigma(k);
            row.slack = row.bound - row.computed;
            row.pass = row.computed <= row.bound + 1e-8;
            report.rows.push_back(row);
            report.pass = report.pass && row.pass;
        }
    }
    report.notes.push_back(
        "mixed Steklov-Dirichlet values on the undeformed collar of depth delta "
        "dominate the Steklov spectrum (extension-by-zero test functions)");
    return report;
}

CheckReport check_lemneu(const Scenario& s) {
    CheckReport report;
    report.check = "lemneu";
    const auto& comp = s.cs.components().front();
    const auto& periods = comp.periods();
    const double a = s.L / 2, b = s.L;

    MetricFamily omega_metric(s.family, 2, make_identity_profile(a, b));
    const double mu = first_positive_neumann(s.cs, omega_metric, a, b, s.resolution);

    const double w = (b - a) / 4.0;
    const std::array<double, 2> slab1{a, a + w};
    const std::array<double, 2> slab2{b - w, b};
    report.constants.push_back(
        {"mu_omega", mu, "first positive Neumann eigenvalue of Sigma x [L/2, L]"});
    report.constants.push_back({"vol_V1", comp.volume() * w, "|Sigma| * slab width"});
    report.constants.push_back({"vol_V2", comp.volume() * w, "|Sigma| * slab width"});

    const std::size_t nx = 33, nt = 21;
    auto grid = make_grid(uniform_axis(0.0, periods[0], nx),
                          uniform_axis(0.0, periods[1], nx), uniform_axis(a, b, nt));

    std::mt19937_64 rng(s.seed + 0x5eb1);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);

    for (int trial = 0; trial < s.lemneu_trials; ++trial) {
        GridFunction f = make_grid_function(grid);
        if (trial % 2 == 0) {
            // Band-limited random field sampled at the nodes.
            struct Term {
                int k1, k2, l;
                double amp, ph1, ph2;
            };
            std::vector<Term> terms;
            for (int k1 = -2; k1 <= 2; ++k1)
                for (int k2 = -2; k2 <= 2; ++k2)
                    for (int l = 0; l <= 3; ++l)
                        terms.push_back({k1, k2, l,
                                         normal(rng) / (1.0 + k1 * k1 + k2 * k2 + l * l),
                                         2 * kPi * uniform(rng), 2 * kPi * uniform(rng)});
            for (std::size_t it = 0; it < grid->nt(); ++it)
                for (std::size_t i2 = 0; i2 < grid->n2(); ++i2)
                    for (std::size_t i1 = 0; i1 < grid->n1(); ++i1) {
                        double v = 0;
                        for (const auto& tm : terms)
                            v += tm.amp *
                                 std::cos(2 * kPi * tm.k1 * grid->x1[i1] / periods[0] +
                                          tm.ph1) *
                                 std::cos(2 * kPi * tm.k2 * grid->x2[i2] / periods[1] +
                                          tm.ph2) *
                                 std::cos(tm.l * kPi * (grid->t[it] - a) / (b - a));
                        f.at(i1, i2, it) = v;
                    }
        } else {
            for (auto& v : f.values) v = uniform(rng);
        }
        // Periodic identification in x.
        for (std::size_t it = 0; it < grid->nt(); ++it) {
            for (std::size_t i2 = 0; i2 < grid->n2(); ++i2)
                f.at(grid->n1() - 1, i2, it) = f.at(0, i2, it);
            for (std::size_t i1 = 0; i1 < grid->n1(); ++i1)
                f.at(i1, grid->n2() - 1, it) = f.at(i1, 0, it);
        }

        const LemNeuResult r = lemneu_check(f, slab1, slab2, mu);
        CheckRow row;
        row.index = trial;
        row.computed = r.lhs;
        row.bound = r.rhs;
        row.slack = r.lhs - r.rhs * (1 - 1e-8);
        row.pass = r.pass;
        row.note = trial % 2 == 0 ? "band-limited field" : "raw node noise";
        report.rows.push_back(row);
        report.pass = report.pass && row.pass;
    }
    return report;
}

CheckReport check_small_eigenvalues(const Scenario& s) {
    CheckReport report;
    report.check = "small-eigenvalues";
    const auto& comp = s.cs.components().front();
    report.constants.push_back(
        {"ball_radius", s.smalleig_ball_radius, "radius of the deformation ball"});
    report.constants.push_back({"threshold", s.smalleig_threshold,
                                "required bound at the largest factor parameter"});

    for (int k : s.smalleig_k) {
        report.constants.push_back(
            {"bump_radius_k" + std::to_string(k), s.smalleig_ball_radius / (2.0 * k),
             "ball_radius / (2k)"});
        double previous = std::numeric_limits<double>::infinity();
        for (std::size_t mi = 0; mi < s.smalleig_m.size(); ++mi) {
            const double m = s.smalleig_m[mi];
            BumpFamilySpec spec;
            spec.periods = {comp.periods()[0], comp.periods()[1]};
            spec.L = s.L;
            spec.ball_radius = s.smalleig_ball_radius;
            spec.bump_count = k;
            spec.m = m;
            spec.resolution = s.smalleig_resolution;
            const RefinedBound bound = disjoint_bump_bound(spec);

            CheckRow row;
            row.epsilon = m;  // factor parameter of the sequence
            row.index = k;
            row.computed = bound.value;
            const bool last = mi + 1 == s.smalleig_m.size();
            row.bound = last ? s.smalleig_threshold : previous;
            const bool monotone = bound.value < previous;
            row.pass = monotone && (!last || bound.value < s.smalleig_threshold);
            row.slack = row.bound - row.computed;
            std::ostringstream note;
            note << "sigma_" << k << " bound at m=" << m << " (error bar "
                 << bound.error_bar << ")";
            row.note = note.str();
            report.rows.push_back(row);
            report.pass = report.pass && row.pass;
            previous = bound.value;
        }
    }
    report.notes.push_back(
        "upper bounds from disjoint cosine-squared bumps with the interior factor "
        "pushed toward 1/m; the limit is 0");
    return report;
}

ScenarioRun run_scenario(const Scenario& s) {
    validate_scenario(s);
    ScenarioRun run;
    run.scenario = s;

    bool needs_sweep = false;
    for (const auto& c : s.checks)
        needs_sweep = needs_sweep || (c != "lemneu" && c != "small-eigenvalues");
    if (needs_sweep || s.checks.empty()) run.sweep = run_sweep(s);

    for (const auto& check : s.checks) {
        if (check == "conf1")
            run.reports.push_back(check_conf_bounds(s, run.sweep, ProfileLabel::Conf1));
        else if (check == "conf2")
            run.reports.push_back(check_conf_bounds(s, run.sweep, ProfileLabel::Conf2));
        else if (check == "warped")
            run.reports.push_back(check_conf_bounds(s, run.sweep, ProfileLabel::Warped));
        else if (check == "necesbsmall")
            run.reports.push_back(check_necesbsmall(s, run.sweep));
        else if (check == "quasiiso")
            run.reports.push_back(check_quasiiso(s, run.sweep));
        else if (check == "kokarev")
            run.reports.push_back(check_kokarev(s, run.sweep));
        else if (check == "n2-bound")
            run.reports.push_back(check_n2_bound(s, run.sweep));
        else if (check == "volume-growth")
            run.reports.push_back(check_volume_growth(s, run.sweep));
        else if (check == "collar-domination")
            run.reports.push_back(check_collar_domination(s, run.sweep));
        else if (check == "lemneu")
            run.reports.push_back(check_lemneu(s));
        else if (check == "small-eigenvalues")
            run.reports.push_back(check_small_eigenvalues(s));
    }
    for (const auto& r : run.reports) run.all_pass = run.all_pass && r.pass;
    return run;
}

}  // namespace steklov
