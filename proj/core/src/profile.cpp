#include "steklov/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "steklov/numerics.hpp"

namespace steklov {

std::string to_string(ProfileLabel label) {
    switch (label) {
        case ProfileLabel::Conf1: return "conf1";
        case ProfileLabel::Conf2: return "conf2";
        case ProfileLabel::Warped: return "warped";
        case ProfileLabel::Identity: return "identity";
        case ProfileLabel::Custom: return "custom";
    }
    return "?";
}

ProfileLabel profile_label_from_string(const std::string& s) {
    if (s == "conf1") return ProfileLabel::Conf1;
    if (s == "conf2") return ProfileLabel::Conf2;
    if (s == "warped") return ProfileLabel::Warped;
    if (s == "identity") return ProfileLabel::Identity;
    if (s == "custom") return ProfileLabel::Custom;
    throw std::invalid_argument("unknown profile label: " + s);
}

std::string to_string(MetricFamilyKind kind) {
    return kind == MetricFamilyKind::Conformal ? "conformal" : "warped";
}

Profile::Profile(ProfileLabel label, double epsilon, std::vector<ProfilePiece> pieces)
    : label_(label), epsilon_(epsilon), pieces_(std::move(pieces)) {
    if (pieces_.empty()) throw std::invalid_argument("profile: empty piece list");
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        if (!(p.t1 > p.t0)) throw std::invalid_argument("profile: empty or reversed piece");
        if (!(p.value_left >= 1.0) || !(p.value_right >= 1.0))
            throw std::invalid_argument("profile: h must satisfy h >= 1");
        if (p.kind == ProfilePiece::Kind::Constant && p.value_left != p.value_right)
            throw std::invalid_argument("profile: constant piece with two values");
        if (i > 0) {
            const auto& prev = pieces_[i - 1];
            if (std::abs(prev.t1 - p.t0) > 1e-14 * std::max(1.0, std::abs(p.t0)))
                throw std::invalid_argument("profile: pieces must tile the domain");
            if (prev.value_right != p.value_left)
                throw std::invalid_argument("profile: discontinuous at piece junction");
        }
    }
}

const ProfilePiece& Profile::piece_at(double t) const {
    const double pad = 1e-12 * std::max(1.0, std::abs(domain_end()) + std::abs(domain_start()));
    if (t < domain_start() - pad || t > domain_end() + pad) {
        std::ostringstream ss;
        ss << "profile: t=" << t << " outside domain [" << domain_start() << ", "
           << domain_end() << "]";
        throw std::out_of_range(ss.str());
    }
    for (const auto& p : pieces_)
        if (t <= p.t1 || &p == &pieces_.back()) return p;
    return pieces_.back();
}

double Profile::evaluate(double t) const {
    const ProfilePiece& p = piece_at(t);
    if (p.kind == ProfilePiece::Kind::Constant) return p.value_left;
    const double u = (t - p.t0) / (p.t1 - p.t0);
    const double s = smoothstep(u);
    // Exact endpoint values keep junctions bit-identical to the plateaus.
    if (s == 0.0) return p.value_left;
    if (s == 1.0) return p.value_right;
    return std::exp((1.0 - s) * std::log(p.value_left) + s * std::log(p.value_right));
}

double Profile::evaluate_log_derivative(double t) const {
    const ProfilePiece& p = piece_at(t);
    if (p.kind == ProfilePiece::Kind::Constant) return 0.0;
    const double gap = p.t1 - p.t0;
    const double u = (t - p.t0) / gap;
    return smoothstep_derivative(u) * (std::log(p.value_right) - std::log(p.value_left)) / gap;
}

bool Profile::is_one_on(double a, double b) const {
    if (a > b) std::swap(a, b);
    const double tol = 1e-12;
    for (const auto& p : pieces_) {
        if (p.t1 <= a + tol || p.t0 >= b - tol) continue;
        if (!(p.is_plateau() && p.value_left == 1.0)) return false;
    }
    return true;
}

std::string Profile::describe() const {
    std::ostringstream ss;
    ss << to_string(label_);
    if (epsilon_ > 0) ss << "(eps=" << epsilon_ << ")";
    ss << " on [" << domain_start() << ", " << domain_end() << "]";
    return ss.str();
}

double admissible_epsilon_upper_bound(ProfileLabel label, double L) {
    switch (label) {
        case ProfileLabel::Conf1:
        case ProfileLabel::Conf2:
            return std::min(L / 4.0, 2.0 / L);
        case ProfileLabel::Warped:
            return 0.25 * std::min(L, 1.0 / L);
        default:
            return std::numeric_limits<double>::infinity();
    }
}

namespace {

void check_epsilon(ProfileLabel label, double epsilon, double L, bool enforce) {
    if (!(L > 0)) throw std::invalid_argument("profile: L must be positive");
    if (label == ProfileLabel::Identity) return;
    if (!(epsilon > 0)) throw std::invalid_argument("profile: epsilon must be positive");
    if (!enforce) return;
    const double bound = admissible_epsilon_upper_bound(label, L);
    if (epsilon >= bound) {
        std::ostringstream ss;
        ss << to_string(label) << ": epsilon=" << epsilon
           << " outside admissible range (0, " << bound << ")";
        if (label == ProfileLabel::Warped)
            ss << " (requires epsilon < min(L, 1/L)/4)";
        else
            ss << " (requires epsilon < min(L/4, 2/L))";
        throw std::invalid_argument(ss.str());
    }
}

ProfilePiece plateau(double t0, double t1, double v) {
    return {t0, t1, ProfilePiece::Kind::Constant, v, v};
}

ProfilePiece transition(double t0, double t1, double v0, double v1) {
    return {t0, t1, ProfilePiece::Kind::SmoothTransition, v0, v1};
}

}  // namespace

Profile make_profile(ProfileLabel label, double epsilon, double L, bool enforce) {
    check_epsilon(label, epsilon, L, enforce);
    const double hi = label == ProfileLabel::Identity ? 1.0 : 1.0 / (epsilon * epsilon);
    std::vector<ProfilePiece> pieces;
    switch (label) {
        case ProfileLabel::Identity:
            pieces.push_back(plateau(-L, L, 1.0));
            return Profile(label, 0.0, std::move(pieces));
        case ProfileLabel::Conf1:
            // Collar coordinate: distance from the boundary.
            pieces.push_back(plateau(0.0, epsilon, 1.0));
            pieces.push_back(transition(epsilon, 2 * epsilon, 1.0, hi));
            pieces.push_back(plateau(2 * epsilon, 3 * epsilon, hi));
            pieces.push_back(transition(3 * epsilon, 4 * epsilon, hi, 1.0));
            pieces.push_back(plateau(4 * epsilon, L, 1.0));
            return Profile(label, epsilon, std::move(pieces));
        case ProfileLabel::Conf2:
            // One monotone transition spans the whole gap (eps, L/2).
            pieces.push_back(plateau(0.0, epsilon, 1.0));
            pieces.push_back(transition(epsilon, L / 2, 1.0, hi));
            pieces.push_back(plateau(L / 2, L, hi));
            return Profile(label, epsilon, std::move(pieces));
        case ProfileLabel::Warped:
            pieces.push_back(plateau(-L, -L + epsilon, 1.0));
            pieces.push_back(transition(-L + epsilon, -L + 2 * epsilon, 1.0, hi));
            pieces.push_back(plateau(-L + 2 * epsilon, L - 2 * epsilon, hi));
            pieces.push_back(transition(L - 2 * epsilon, L - epsilon, hi, 1.0));
            pieces.push_back(plateau(L - epsilon, L, 1.0));
            return Profile(label, epsilon, std::move(pieces));
        case ProfileLabel::Custom:
            throw std::invalid_argument("custom profiles are built from explicit pieces");
    }
    throw std::logic_error("unreachable");
}

Profile make_identity_profile(double t0, double t1) {
    if (!(t1 > t0)) throw std::invalid_argument("identity profile: empty interval");
    std::vector<ProfilePiece> pieces{plateau(t0, t1, 1.0)};
    return Profile(ProfileLabel::Identity, 0.0, std::move(pieces));
}

Profile make_cylinder_profile(ProfileLabel label, double epsilon, double L, bool enforce) {
    if (label == ProfileLabel::Identity || label == ProfileLabel::Warped)
        return make_profile(label, epsilon, L, enforce);
    // Collar-coordinate profiles are applied near both boundary components:
    // tau = L - |t| is the distance to the nearest boundary, so the collar
    // piece [tau0, tau1] lands on [tau0 - L, tau1 - L] in the left half and,
    // mirrored, on [L - tau1, L - tau0] in the right half.
    const Profile collar = make_profile(label, epsilon, L, enforce);
    const auto& cp = collar.pieces();
    std::vector<ProfilePiece> pieces;
    for (const auto& p : cp)
        pieces.push_back({p.t0 - L, p.t1 - L, p.kind, p.value_left, p.value_right});
    for (auto it = cp.rbegin(); it != cp.rend(); ++it)
        pieces.push_back({L - it->t1, L - it->t0, it->kind, it->value_right, it->value_left});
    return Profile(label, epsilon, std::move(pieces));
}

Profile scale_profile(const Profile& p, double s) {
    if (!(s >= 1.0)) throw std::invalid_argument("scale_profile: s must be >= 1");
    std::vector<ProfilePiece> pieces = p.pieces();
    for (auto& q : pieces) {
        q.value_left *= s;
        q.value_right *= s;
    }
    return Profile(ProfileLabel::Custom, p.epsilon(), std::move(pieces));
}

MetricFamily::MetricFamily(MetricFamilyKind fam, int dimension, Profile prof)
    : family(fam), n(dimension), profile(std::move(prof)) {
    if (n < 1) throw std::invalid_argument("metric family: cross-section dimension >= 1");
}

double MetricFamily::boundary_weight(double t) const {
    return std::pow(profile.evaluate(t), n);
}

double MetricFamily::axial_boundary_distance() const {
    if (family == MetricFamilyKind::Warped)
        return profile.domain_end() - profile.domain_start();
    double d = 0;
    for (const auto& p : profile.pieces()) {
        if (p.is_plateau())
            d += p.value_left * p.length();
        else
            d += adaptive_quadrature([&](double t) { return profile.evaluate(t); }, p.t0,
                                     p.t1, 1e-10);
    }
    return d;
}

double volume(const MetricFamily& mf, const CrossSection& cs) {
    if (cs.dimension() != mf.n)
        throw std::invalid_argument("volume: cross-section dimension mismatch");
    const int a = mf.alpha_r();
    double integral = 0;
    for (const auto& p : mf.profile.pieces()) {
        if (p.is_plateau())
            integral += std::pow(p.value_left, a) * p.length();
        else
            integral += adaptive_quadrature(
                [&](double t) { return std::pow(mf.profile.evaluate(t), a); }, p.t0, p.t1,
                1e-9);
    }
    return cs.total_volume() * integral;
}

}  // namespace steklov
