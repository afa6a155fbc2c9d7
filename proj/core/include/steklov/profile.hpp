#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steklov/cross_section.hpp"

namespace steklov {

// Piecewise factor functions h(t) >= 1 with exact plateau bookkeeping.
//
// Plateaus hold a single exactly-representable value (1 or eps^-2).
// Transitions interpolate in log space through the C-infinity smoothstep
//   h(t) = exp((1-s) ln v0 + s ln v1),   s = smoothstep((t-t0)/(t1-t0)),
// so they are monotone, stay within [min(v0,v1), max(v0,v1)], and meet the
// neighbouring plateaus with all derivatives equal to zero.
//
// Built-in labels and their plateau contracts, in the collar coordinate
// (distance from the boundary) for conf1/conf2 and in the symmetric
// cylinder coordinate t in [-L, L] for warped:
//   conf1:    h = 1 outside (eps, 4eps), h = eps^-2 on [2eps, 3eps]
//   conf2:    h = 1 on [0, eps), h = eps^-2 on [L/2, L]
//   warped:   h even, h = 1 on [-L,-L+eps] u [L-eps,L],
//             h = eps^-2 on [-L+2eps, L-2eps]
//   identity: h = 1 on [-L, L]

enum class ProfileLabel { Conf1, Conf2, Warped, Identity, Custom };

std::string to_string(ProfileLabel label);
ProfileLabel profile_label_from_string(const std::string& s);

struct ProfilePiece {
    enum class Kind { Constant, SmoothTransition };
    double t0 = 0.0;
    double t1 = 0.0;
    Kind kind = Kind::Constant;
    double value_left = 1.0;    // constant value, or transition start value
    double value_right = 1.0;   // transition end value (== value_left on plateaus)

    bool is_plateau() const { return kind == Kind::Constant; }
    double length() const { return t1 - t0; }
};

class Profile {
  public:
    Profile(ProfileLabel label, double epsilon, std::vector<ProfilePiece> pieces);

    ProfileLabel label() const { return label_; }
    double epsilon() const { return epsilon_; }  // 0 for identity/custom without eps
    double domain_start() const { return pieces_.front().t0; }
    double domain_end() const { return pieces_.back().t1; }
    const std::vector<ProfilePiece>& pieces() const { return pieces_; }

    double operator()(double t) const { return evaluate(t); }
    double evaluate(double t) const;
    // d/dt log h(t), for diagnostics; zero on plateaus.
    double evaluate_log_derivative(double t) const;

    // True when h == 1 everywhere on [a,b] (plateau bookkeeping, no sampling).
    bool is_one_on(double a, double b) const;

    std::string describe() const;

  private:
    const ProfilePiece& piece_at(double t) const;

    ProfileLabel label_;
    double epsilon_;
    std::vector<ProfilePiece> pieces_;
};

// Admissible-epsilon ranges follow the construction hypotheses:
//   conf1/conf2: 0 < eps < min(L/4, 2/L)
//   warped:      0 < eps < min(L, 1/L)/4
// With enforce=false the range check is skipped (exploratory runs).
double admissible_epsilon_upper_bound(ProfileLabel label, double L);

// Profile in the convention of its construction: conf1/conf2 live on the
// collar coordinate [0, L]; warped and identity live on [-L, L].
Profile make_profile(ProfileLabel label, double epsilon, double L, bool enforce = true);

// h == 1 on an arbitrary interval (collar problems, Neumann subdomains).
Profile make_identity_profile(double t0, double t1);

// Two-sided cylinder version on [-L, L]: collar-coordinate profiles are
// reflected symmetrically about t = 0 (the profile is applied near both
// boundary components); warped/identity are unchanged.
Profile make_cylinder_profile(ProfileLabel label, double epsilon, double L,
                              bool enforce = true);

// Pointwise scaling s*h (label becomes Custom); used for quasi-isometric
// comparisons.  Requires s >= 1 so h >= 1 is preserved.
Profile scale_profile(const Profile& p, double s);

// Metric family on the cylinder Sigma x [t0,t1] over an n-dimensional
// cross-section.  The three weight exponents drive every 1D integral:
//   conformal g' = h^2 g:        energy density (a'^2 + lambda a^2) h^{n-1},
//                                volume density h^{n+1}
//   warped g' = h^2 g_0 + dt^2:  energy density a'^2 h^n + lambda a^2 h^{n-2},
//                                volume density h^n
enum class MetricFamilyKind { Conformal, Warped };

std::string to_string(MetricFamilyKind kind);

struct MetricFamily {
    MetricFamilyKind family = MetricFamilyKind::Conformal;
    int n = 2;  // cross-section dimension; dim M = n+1
    Profile profile;

    MetricFamily(MetricFamilyKind fam, int dimension, Profile prof);

    int alpha_p() const { return family == MetricFamilyKind::Conformal ? n - 1 : n; }
    int alpha_q() const { return family == MetricFamilyKind::Conformal ? n - 1 : n - 2; }
    int alpha_r() const { return family == MetricFamilyKind::Conformal ? n + 1 : n; }

    // Boundary weight h(endpoint)^n; the paper-style constructions keep
    // h = 1 at the boundary so this is 1 there.
    double boundary_weight(double t) const;

    // Distance between the two boundary hypersurfaces along the axis:
    // \int h dt for conformal metrics, t1 - t0 for warped ones.
    double axial_boundary_distance() const;
};

// Riemannian volume |Sigma| * \int h^{alpha_r} dt over the profile domain.
// Plateau pieces integrate in closed form; transitions by adaptive
// quadrature with relative tolerance 1e-9 (contract: 1e-8).
double volume(const MetricFamily& mf, const CrossSection& cs);

}  // namespace steklov
