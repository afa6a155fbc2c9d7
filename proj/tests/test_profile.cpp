#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "steklov/profile.hpp"

using namespace steklov;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("conf1 plateaus in the collar coordinate") {
    const Profile p = make_profile(ProfileLabel::Conf1, 0.1, 1.0);
    CHECK(p.evaluate(0.25) == doctest::Approx(100.0).epsilon(1e-13));
    CHECK(p.evaluate(0.05) == 1.0);
    CHECK(p.evaluate(0.5) == 1.0);
    CHECK(p.evaluate(0.95) == 1.0);
    // Plateau values are exact: identical bits across the plateau.
    CHECK(p.evaluate(0.21) == p.evaluate(0.29));
    CHECK(p.evaluate(0.25) == 1.0 / (0.1 * 0.1));
    // Transition midpoint of the documented smoothstep: s(1/2) = 1/2, so
    // h = (eps^-2)^(1/2) = 10.
    CHECK(p.evaluate(0.15) == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("conf2 plateaus") {
    const Profile p = make_profile(ProfileLabel::Conf2, 0.1, 1.0);
    CHECK(p.evaluate(0.8) == doctest::Approx(100.0).epsilon(1e-13));
    CHECK(p.evaluate(0.05) == 1.0);
    CHECK(p.evaluate(0.5) == 1.0 / (0.1 * 0.1));
}

TEST_CASE("warped profile is even with unit boundary values") {
    const Profile p = make_profile(ProfileLabel::Warped, 0.05, 0.4);
    CHECK(p.evaluate(-0.4) == 1.0);
    CHECK(p.evaluate(0.4) == 1.0);
    CHECK(p.evaluate(0.0) == doctest::Approx(400.0).epsilon(1e-13));
    for (double t : {0.05, 0.17, 0.33, 0.362, 0.385})
        CHECK(p.evaluate(t) == doctest::Approx(p.evaluate(-t)).epsilon(1e-13));
}

TEST_CASE("identity profile is one everywhere") {
    const Profile p = make_profile(ProfileLabel::Identity, 0.0, 1.0);
    for (double t = -1.0; t <= 1.0; t += 0.05) CHECK(p.evaluate(t) == 1.0);
}

TEST_CASE("cylinder reflection of collar profiles") {
    const Profile p = make_cylinder_profile(ProfileLabel::Conf1, 0.1, 1.0);
    CHECK(p.domain_start() == doctest::Approx(-1.0));
    CHECK(p.domain_end() == doctest::Approx(1.0));
    // Collar coordinate tau = 1 - |t|.
    CHECK(p.evaluate(-0.75) == doctest::Approx(100.0).epsilon(1e-13));
    CHECK(p.evaluate(0.75) == doctest::Approx(100.0).epsilon(1e-13));
    CHECK(p.evaluate(0.0) == 1.0);
    CHECK(p.evaluate(-0.95) == 1.0);
    CHECK(p.evaluate(0.95) == 1.0);
    for (double t : {0.1, 0.45, 0.72, 0.85})
        CHECK(p.evaluate(t) == doctest::Approx(p.evaluate(-t)).epsilon(1e-13));
    CHECK(p.is_one_on(-0.5, 0.5));
    CHECK(!p.is_one_on(-0.8, 0.8));
}

TEST_CASE("h >= 1 everywhere; cylinder profiles are symmetric") {
    for (auto label : {ProfileLabel::Conf1, ProfileLabel::Conf2, ProfileLabel::Warped}) {
        const double L = label == ProfileLabel::Warped ? 0.4 : 1.0;
        const double eps = label == ProfileLabel::Warped ? 0.05 : 0.1;
        const Profile p = make_cylinder_profile(label, eps, L);
        for (int i = 0; i <= 2000; ++i) {
            const double t = p.domain_start() +
                             (p.domain_end() - p.domain_start()) * i / 2000.0;
            CHECK(p.evaluate(t) >= 1.0 - 1e-14);
            CHECK(p.evaluate(t) == doctest::Approx(p.evaluate(-t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("every transition piece is monotone") {
    for (auto label : {ProfileLabel::Conf1, ProfileLabel::Conf2, ProfileLabel::Warped}) {
        const double L = label == ProfileLabel::Warped ? 0.4 : 1.0;
        const double eps = label == ProfileLabel::Warped ? 0.05 : 0.1;
        const Profile p = make_cylinder_profile(label, eps, L);
        for (const auto& piece : p.pieces()) {
            if (piece.is_plateau()) continue;
            const double dir = piece.value_right >= piece.value_left ? 1.0 : -1.0;
            double prev = p.evaluate(piece.t0);
            for (int i = 1; i <= 400; ++i) {
                const double t = piece.t0 + piece.length() * i / 400.0;
                const double h = p.evaluate(t);
                CHECK(dir * (h - prev) >= -1e-12 * std::max(1.0, h));
                prev = h;
            }
        }
    }
}

TEST_CASE("junctions are C1: one-sided finite differences agree") {
    const Profile p = make_profile(ProfileLabel::Conf1, 0.1, 1.0);
    const double fd = 1e-7;
    for (double junction : {0.1, 0.2, 0.3, 0.4}) {
        const double left = (p.evaluate(junction) - p.evaluate(junction - fd)) / fd;
        const double right = (p.evaluate(junction + fd) - p.evaluate(junction)) / fd;
        CHECK(std::abs(left - right) <=
              1e-6 * std::max(1.0, std::max(std::abs(left), std::abs(right))));
    }
}

TEST_CASE("log derivative matches finite differences on transitions") {
    const Profile p = make_profile(ProfileLabel::Conf1, 0.1, 1.0);
    CHECK(p.evaluate_log_derivative(0.25) == 0.0);
    CHECK(p.evaluate_log_derivative(0.05) == 0.0);
    const double fd = 1e-6;
    for (double t : {0.13, 0.15, 0.18, 0.33, 0.36}) {
        const double num =
            (std::log(p.evaluate(t + fd)) - std::log(p.evaluate(t - fd))) / (2 * fd);
        const double got = p.evaluate_log_derivative(t);
        CHECK(got == doctest::Approx(num).epsilon(1e-5));
    }
}

TEST_CASE("admissible epsilon enforcement") {
    CHECK_THROWS_WITH_AS(make_profile(ProfileLabel::Conf1, 0.3, 1.0),
                         doctest::Contains("admissible range"), std::invalid_argument);
    // L large: the 2/L constraint bites.
    CHECK_THROWS_AS(make_profile(ProfileLabel::Conf1, 0.3, 8.0), std::invalid_argument);
    CHECK_THROWS_AS(make_profile(ProfileLabel::Warped, 0.11, 0.4), std::invalid_argument);
    // Override for exploratory runs.
    const Profile p = make_profile(ProfileLabel::Warped, 0.09, 0.4, false);
    CHECK(p.evaluate(0.0) > 1.0);
    CHECK_THROWS_AS(make_profile(ProfileLabel::Conf1, -0.1, 1.0, false),
                    std::invalid_argument);
}

TEST_CASE("evaluation outside the domain throws") {
    const Profile p = make_profile(ProfileLabel::Conf1, 0.1, 1.0);
    CHECK_THROWS_AS(p.evaluate(1.5), std::out_of_range);
    CHECK_THROWS_AS(p.evaluate(-0.2), std::out_of_range);
}

TEST_CASE("volume of the product cylinder") {
    const auto cs = CrossSection::flat_torus({2 * kPi, 2 * kPi});
    MetricFamily mf(MetricFamilyKind::Conformal, 2,
                    make_profile(ProfileLabel::Identity, 0.0, 1.0));
    CHECK(volume(mf, cs) == doctest::Approx(8 * kPi * kPi).epsilon(1e-12));
}

TEST_CASE("warped volume dominated by the middle plateau") {
    const auto cs = CrossSection::flat_torus({2 * kPi, 2 * kPi});
    const double eps = 0.05, L = 0.4;
    MetricFamily mf(MetricFamilyKind::Warped, 2, make_profile(ProfileLabel::Warped, eps, L));
    const double vol = volume(mf, cs);
    const double plateau_lower =
        4 * kPi * kPi * (2 * L - 4 * eps) * std::pow(eps, -4.0);
    CHECK(vol >= plateau_lower);
    CHECK(vol <= plateau_lower * 1.5);
}

TEST_CASE("conf1 volume blow-up vs the identity metric") {
    const auto cs = CrossSection::flat_torus({2 * kPi, 2 * kPi});
    const int n = 2;
    MetricFamily identity(MetricFamilyKind::Conformal, n,
                          make_profile(ProfileLabel::Identity, 0.0, 1.0));
    const double base = volume(identity, cs);
    double previous = base;
    for (double eps : {0.1, 0.05, 0.025}) {
        MetricFamily mf(MetricFamilyKind::Conformal, n,
                        make_cylinder_profile(ProfileLabel::Conf1, eps, 1.0));
        const double vol = volume(mf, cs);
        // One plateau of length eps at level eps^-2 per side, weight h^{n+1}.
        CHECK(vol >= cs.total_volume() * eps * std::pow(eps, -2.0 * (n + 1)));
        CHECK(vol > previous);
        previous = vol;
    }
}

TEST_CASE("axial boundary distance") {
    const auto warped = MetricFamily(MetricFamilyKind::Warped, 3,
                                     make_profile(ProfileLabel::Warped, 0.05, 0.4));
    CHECK(warped.axial_boundary_distance() == doctest::Approx(0.8));
    const auto conf = MetricFamily(MetricFamilyKind::Conformal, 2,
                                   make_cylinder_profile(ProfileLabel::Conf1, 0.1, 1.0));
    CHECK(conf.axial_boundary_distance() > 2.0);
}

TEST_CASE("scaled profiles keep structure") {
    const Profile p = make_profile(ProfileLabel::Warped, 0.05, 0.4);
    const Profile q = scale_profile(p, 1.1);
    CHECK(q.evaluate(0.0) == doctest::Approx(1.1 * p.evaluate(0.0)));
    CHECK(q.evaluate(0.4) == doctest::Approx(1.1));
    CHECK_THROWS_AS(scale_profile(p, 0.9), std::invalid_argument);
}
