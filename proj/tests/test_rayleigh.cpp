#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "steklov/rayleigh.hpp"
#include "steklov/report.hpp"

using namespace steklov;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("psi family bounds sigma_b by exactly 2/L when the deep region is flat") {
    const auto cs = CrossSection::flat_torus({2 * kPi, 2 * kPi});
    for (double L : {1.0, 2.0}) {
        const auto family = psi_family(cs, L);
        REQUIRE(family.size() == 2);  // b = 2 boundary components
        for (double eps : {0.1, 0.05}) {
            // conf1 deforms only within 4 eps <= L/2 of the boundary.
            MetricFamily metric(MetricFamilyKind::Conformal, 2,
                                make_cylinder_profile(ProfileLabel::Conf1, eps, L));
            const double bound = minmax_upper_bound(family, metric, cs);
            CHECK(bound == doctest::Approx(2.0 / L).epsilon(1e-10));
        }
        MetricFamily identity(MetricFamilyKind::Conformal, 2,
                              make_profile(ProfileLabel::Identity, 0.0, L));
        CHECK(minmax_upper_bound(family, identity, cs) ==
              doctest::Approx(2.0 / L).epsilon(1e-10));
    }
}

TEST_CASE("psi family detects a violated hypothesis (conf2 deforms the taper region)") {
    const auto cs = CrossSection::flat_torus({2 * kPi, 2 * kPi});
    const double L = 1.0;
    const auto family = psi_family(cs, L);
    MetricFamily conf2(MetricFamilyKind::Conformal, 2,
                       make_cylinder_profile(ProfileLabel::Conf2, 0.1, L));
    // With h = eps^-2 on the taper region the energy inflates far above 2/L.
    CHECK(minmax_upper_bound(family, conf2, cs) > 10.0 * 2.0 / L);
}

TEST_CASE("psi family over a disconnected cross-section") {
    const CrossSection pair({CrossSectionComponent::flat_torus({2 * kPi, 2 * kPi}),
                             CrossSectionComponent::flat_torus({3.0, 5.0})});
    const double L = 1.0;
    const auto family = psi_family(pair, L);
    REQUIRE(family.size() == 4);  // b = 4
    MetricFamily identity(MetricFamilyKind::Conformal, 2,
                          make_profile(ProfileLabel::Identity, 0.0, L));
    CHECK(minmax_upper_bound(family, identity, pair) ==
          doctest::Approx(2.0 / L).epsilon(1e-10));
}

TEST_CASE("a single constant function gives the zero bound") {
    const auto cs = CrossSection::flat_torus({2 * kPi, 2 * kPi});
    ModeFormFunction constant;
    constant.lambda = 0.0;
    constant.tag = 0;
    constant.t_nodes = {-1.0, 1.0};
    constant.a_values = {1.0, 1.0};
    MetricFamily identity(MetricFamilyKind::Conformal, 2,
                          make_profile(ProfileLabel::Identity, 0.0, 1.0));
    CHECK(std::abs(minmax_upper_bound({constant}, identity, cs)) <= 1e-12);
}

TEST_CASE("degenerate boundary Gram is rejected") {
    const auto cs = CrossSection::flat_torus({2 * kPi, 2 * kPi});
    ModeFormFunction f;
    f.lambda = 0.0;
    f.tag = 0;
    f.t_nodes = {-1.0, 1.0};
    f.a_values = {1.0, 1.0};
    MetricFamily identity(MetricFamilyKind::Conformal, 2,
                          make_profile(ProfileLabel::Identity, 0.0, 1.0));
    CHECK_THROWS_WITH_AS(minmax_upper_bound({f, f}, identity, cs),
                         doctest::Contains("degenerate"), std::invalid_argument);
}

TEST_CASE("upper bound soundness against the computed spectrum") {
    const auto cs = CrossSection::flat_torus({2 * kPi, 2 * kPi});
    const double L = 1.0;
    const auto family = psi_family(cs, L);
    for (double eps : {0.1, 0.05}) {
        MetricFamily metric(MetricFamilyKind::Conformal, 2,
                            make_cylinder_profile(ProfileLabel::Conf1, eps, L));
        SpectrumRequest req{cs, metric, L, ProblemKind::SteklovTwoSided, 0.0, 4,
                            Resolution{}};
        const auto spectrum = steklov_spectrum(req);
        const double bound = minmax_upper_bound(family, metric, cs);
        CHECK(bound >= spectrum.sigma(2) * (1 - 1e-8));
    }
}

TEST_CASE("grid Rayleigh quotients match mode-form quotients for axial factors") {
    // f = a(t) cos(x1) on the square torus, conf1 factor: the grid path
    // (tri-linear cells, two Richardson stages) must agree with the 1D
    // mode-form quadrature.
    const auto cs = CrossSection::flat_torus({2 * kPi, 2 * kPi});
    const double L = 1.0, eps = 0.2;
    const Profile profile = make_cylinder_profile(ProfileLabel::Conf1, eps, L);
    MetricFamily metric(MetricFamilyKind::Conformal, 2, profile);

    ModeFormFunction f;
    f.lambda = 1.0;
    f.tag = 100;
    f.t_nodes = {-1.0, -0.5, 0.0};
    f.a_values = {1.0, 0.7, 0.0};
    const double mode_value = minmax_upper_bound({f}, metric, cs);

    auto quotient_at = [&](std::size_t nx, std::size_t nt) {
        auto grid = make_grid(uniform_axis(0.0, 2 * kPi, nx),
                              uniform_axis(0.0, 2 * kPi, nx), uniform_axis(-L, L, nt));
        GridFunction gf = make_grid_function(grid);
        for (std::size_t it = 0; it < grid->nt(); ++it) {
            double a = 0.0;
            const double t = grid->t[it];
            if (t <= -0.5)
                a = 1.0 + (t + 1.0) * (0.7 - 1.0) / 0.5;
            else if (t <= 0.0)
                a = 0.7 + (t + 0.5) * (0.0 - 0.7) / 0.5;
            for (std::size_t i2 = 0; i2 < grid->n2(); ++i2)
                for (std::size_t i1 = 0; i1 < grid->n1(); ++i1)
                    gf.at(i1, i2, it) = a * std::cos(grid->x1[i1]);
        }
        const GridMetric gm = sample_profile_metric(grid, profile, 2);
        return grid_energy_product(gf, gf, &gm) / grid_boundary_product(gf, gf);
    };

    // Nested doubling: h, h/2, h/4; two extrapolation stages give O(h^6).
    const double q0 = quotient_at(25, 121);
    const double q1 = quotient_at(49, 241);
    const double q2 = quotient_at(97, 481);
    const double r1 = (4 * q1 - q0) / 3;
    const double r2 = (4 * q2 - q1) / 3;
    const double rr = (16 * r2 - r1) / 15;
    CHECK(rr == doctest::Approx(mode_value).epsilon(1e-6));
}

TEST_CASE("grid metric must be 1 on the boundary face") {
    auto grid = make_grid(uniform_axis(0.0, 2 * kPi, 9), uniform_axis(0.0, 2 * kPi, 9),
                          uniform_axis(-1.0, 1.0, 9));
    GridFunction f = make_grid_function(grid);
    for (auto& v : f.values) v = 1.0;
    GridMetric gm;
    gm.grid = grid;
    gm.n = 2;
    gm.values.assign(grid->size(), 2.0);  // != 1 at the boundary face
    CHECK_THROWS_AS(minmax_upper_bound({f}, gm), std::invalid_argument);
}

TEST_CASE("lemNeu: constant functions give zero on both sides") {
    auto grid = make_grid(uniform_axis(0.0, 2 * kPi, 9), uniform_axis(0.0, 2 * kPi, 9),
                          uniform_axis(0.0, 1.0, 9));
    GridFunction f = make_grid_function(grid);
    for (auto& v : f.values) v = 3.25;
    const auto r = lemneu_check(f, {0.0, 0.25}, {0.75, 1.0}, kPi * kPi);
    CHECK(r.lhs == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(r.rhs == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(r.pass);
}

TEST_CASE("lemNeu oracle: f = t on the product cylinder slab") {
    // Omega = Sigma x [0,1], V1 = Sigma x [0, 1/4], V2 = Sigma x [3/4, 1],
    // mu = pi^2: lhs = |Sigma|, means 1/8 and 7/8, so
    // rhs = (pi^2/2)(|Sigma|/4)(3/4)^2 = 9 pi^2 |Sigma| / 128.
    const double sigma_area = 4 * kPi * kPi;
    auto grid = make_grid(uniform_axis(0.0, 2 * kPi, 9), uniform_axis(0.0, 2 * kPi, 9),
                          uniform_axis(0.0, 1.0, 17));
    GridFunction f = make_grid_function(grid);
    for (std::size_t it = 0; it < grid->nt(); ++it)
        for (std::size_t i2 = 0; i2 < grid->n2(); ++i2)
            for (std::size_t i1 = 0; i1 < grid->n1(); ++i1)
                f.at(i1, i2, it) = grid->t[it];
    const auto r = lemneu_check(f, {0.0, 0.25}, {0.75, 1.0}, kPi * kPi);
    CHECK(r.lhs == doctest::Approx(sigma_area).epsilon(1e-12));
    CHECK(r.mean1 == doctest::Approx(1.0 / 8.0).epsilon(1e-12));
    CHECK(r.mean2 == doctest::Approx(7.0 / 8.0).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(9 * kPi * kPi * sigma_area / 128.0).epsilon(1e-12));
    CHECK(r.lhs >= r.rhs);
    CHECK(r.pass);
}

TEST_CASE("lemNeu holds across random grid functions") {
    // mu for Omega = Sigma x [1/2, 1] over the square torus is 1.
    auto grid = make_grid(uniform_axis(0.0, 2 * kPi, 17), uniform_axis(0.0, 2 * kPi, 17),
                          uniform_axis(0.5, 1.0, 13));
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        GridFunction f = make_grid_function(grid);
        for (auto& v : f.values) v = uniform(rng);
        for (std::size_t it = 0; it < grid->nt(); ++it) {
            for (std::size_t i2 = 0; i2 < grid->n2(); ++i2)
                f.at(grid->n1() - 1, i2, it) = f.at(0, i2, it);
            for (std::size_t i1 = 0; i1 < grid->n1(); ++i1)
                f.at(i1, grid->n2() - 1, it) = f.at(i1, 0, it);
        }
        const auto r = lemneu_check(f, {0.5, 0.625}, {0.875, 1.0}, 1.0);
        CHECK(r.pass);
        CHECK(r.lhs >= r.rhs * (1 - 1e-8));
    }
}

TEST_CASE("lemNeu input validation") {
    auto grid = make_grid(uniform_axis(0.0, 1.0, 5), uniform_axis(0.0, 1.0, 5),
                          uniform_axis(0.0, 1.0, 5));
    GridFunction f = make_grid_function(grid);
    CHECK_THROWS_AS(lemneu_check(f, {0.0, 0.5}, {0.4, 1.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(lemneu_check(f, {0.5, 0.5}, {0.6, 1.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(lemneu_check(f, {0.0, 0.25}, {0.75, 1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("Kokarev bound on product and long cylinders") {
    SpectrumRequest req{CrossSection::circle(1.0),
                        MetricFamily(MetricFamilyKind::Conformal, 1,
                                     make_profile(ProfileLabel::Identity, 0.0, 1.0)),
                        1.0,
                        ProblemKind::SteklovTwoSided,
                        0.0,
                        4,
                        Resolution{}};
    const auto result = steklov_spectrum(req);
    const auto kr = kokarev_check(result, 4 * kPi);
    CHECK(kr.bound == doctest::Approx(2.0));
    CHECK(kr.sigma2 == doctest::Approx(std::tanh(1.0)).epsilon(1e-6));
    CHECK(kr.pass);

    // Degenerate long cylinder: sigma_2 = 1/L.
    SpectrumRequest longreq = req;
    longreq.L = 100.0;
    longreq.metric = MetricFamily(MetricFamilyKind::Conformal, 1,
                                  make_profile(ProfileLabel::Identity, 0.0, 100.0));
    const auto longres = steklov_spectrum(longreq);
    const auto lkr = kokarev_check(longres, 4 * kPi);
    CHECK(lkr.sigma2 == doctest::Approx(0.01).epsilon(1e-6));
    CHECK(lkr.pass);
}

TEST_CASE("Kokarev check rejects higher-dimensional cross-sections") {
    SpectrumRequest req{CrossSection::flat_torus({2 * kPi, 2 * kPi}),
                        MetricFamily(MetricFamilyKind::Conformal, 2,
                                     make_profile(ProfileLabel::Identity, 0.0, 1.0)),
                        1.0,
                        ProblemKind::SteklovTwoSided,
                        0.0,
                        4,
                        Resolution{}};
    const auto result = steklov_spectrum(req);
    CHECK_THROWS_AS(kokarev_check(result, 4 * kPi), std::invalid_argument);
}

TEST_CASE("disjoint-bump bounds decrease in the factor parameter") {
    BumpFamilySpec spec;
    spec.bump_count = 2;
    spec.resolution = {48, 48, 40};
    spec.m = 10.0;
    const RefinedBound b10 = disjoint_bump_bound(spec);
    spec.m = 100.0;
    const RefinedBound b100 = disjoint_bump_bound(spec);
    CHECK(b10.value > 0.0);
    CHECK(b100.value > 0.0);
    CHECK(b100.value < b10.value);
}

TEST_CASE("grid metric round-trips through the CSV loader") {
    auto grid = make_grid(uniform_axis(0.0, 1.0, 4), uniform_axis(0.0, 1.0, 3),
                          uniform_axis(0.0, 1.0, 5));
    GridMetric m;
    m.grid = grid;
    m.n = 2;
    m.values.resize(grid->size());
    for (std::size_t i = 0; i < m.values.size(); ++i)
        m.values[i] = 1.0 + 0.001 * static_cast<double>(i);
    const char* path = "grid_metric_roundtrip.csv";
    save_grid_metric_csv(path, m);
    const GridMetric back = load_grid_metric_csv(path, grid, 2);
    std::remove(path);
    REQUIRE(back.values.size() == m.values.size());
    for (std::size_t i = 0; i < m.values.size(); ++i)
        CHECK(back.values[i] == m.values[i]);
}
