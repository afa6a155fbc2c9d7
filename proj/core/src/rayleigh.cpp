#include "steklov/rayleigh.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "steklov/numerics.hpp"

namespace steklov {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double ModeFormFunction::a_at(double t) const {
    if (t_nodes.empty() || t <= t_nodes.front() || t >= t_nodes.back()) {
        // Outside the support the profile is zero, except exactly at the
        // recorded nodes.
        for (std::size_t i = 0; i < t_nodes.size(); ++i)
            if (t == t_nodes[i]) return a_values[i];
        return 0.0;
    }
    for (std::size_t i = 0; i + 1 < t_nodes.size(); ++i)
        if (t <= t_nodes[i + 1]) {
            const double u = (t - t_nodes[i]) / (t_nodes[i + 1] - t_nodes[i]);
            return (1 - u) * a_values[i] + u * a_values[i + 1];
        }
    return 0.0;
}

double ModeFormFunction::a_slope(std::size_t piece) const {
    return (a_values[piece + 1] - a_values[piece]) /
           (t_nodes[piece + 1] - t_nodes[piece]);
}

std::vector<ModeFormFunction> psi_family(const CrossSection& cs, double L) {
    if (!(L > 0)) throw std::invalid_argument("psi_family: L must be positive");
    std::vector<ModeFormFunction> family;
    const double amp = 1.0;  // phi is already L^2-normalized per component
    for (int c = 0; c < cs.component_count(); ++c) {
        // Left boundary component of the cylinder over component c.
        ModeFormFunction left;
        left.lambda = 0.0;
        left.tag = c;
        left.t_nodes = {-L, -L / 2, 0.0};
        left.a_values = {amp, amp, 0.0};
        family.push_back(std::move(left));
        // Right boundary component.
        ModeFormFunction right;
        right.lambda = 0.0;
        right.tag = c;
        right.t_nodes = {0.0, L / 2, L};
        right.a_values = {0.0, amp, amp};
        family.push_back(std::move(right));
    }
    return family;
}

namespace {

// 1D integrals of (a_i' a_j' h^{alpha_p} + lambda a_i a_j h^{alpha_q}) over
// the overlap of the two piecewise-linear supports.
double mode_pair_energy(const ModeFormFunction& fi, const ModeFormFunction& fj,
                        const MetricFamily& metric) {
    if (fi.tag != fj.tag) return 0.0;
    const double lambda = fi.lambda;
    const int ap = metric.alpha_p();
    const int aq = metric.alpha_q();

    // Breakpoints: union of both node lists and the profile piece edges.
    std::vector<double> cuts;
    cuts.insert(cuts.end(), fi.t_nodes.begin(), fi.t_nodes.end());
    cuts.insert(cuts.end(), fj.t_nodes.begin(), fj.t_nodes.end());
    for (const auto& p : metric.profile.pieces()) {
        cuts.push_back(p.t0);
        cuts.push_back(p.t1);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-14; }),
               cuts.end());

    const double lo = std::max(
        {fi.t_nodes.front(), fj.t_nodes.front(), metric.profile.domain_start()});
    const double hi =
        std::min({fi.t_nodes.back(), fj.t_nodes.back(), metric.profile.domain_end()});
    if (!(hi > lo)) return 0.0;

    double acc = 0.0;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double a = std::max(lo, cuts[s]);
        const double b = std::min(hi, cuts[s + 1]);
        if (!(b > a)) continue;
        const double mid = 0.5 * (a + b);
        // Piecewise-linear a on this segment: constant slopes.
        auto slope_of = [&](const ModeFormFunction& f) {
            for (std::size_t i = 0; i + 1 < f.t_nodes.size(); ++i)
                if (mid > f.t_nodes[i] && mid < f.t_nodes[i + 1]) return f.a_slope(i);
            return 0.0;
        };
        const double si = slope_of(fi);
        const double sj = slope_of(fj);
        if (si != 0.0 || sj != 0.0 || lambda != 0.0) {
            acc += adaptive_quadrature(
                [&](double t) {
                    const double h = metric.profile.evaluate(t);
                    double val = si * sj * std::pow(h, ap);
                    if (lambda != 0.0)
                        val += lambda * fi.a_at(t) * fj.a_at(t) * std::pow(h, aq);
                    return val;
                },
                a, b, 1e-11);
        }
    }
    return acc;
}

double mode_pair_boundary(const ModeFormFunction& fi, const ModeFormFunction& fj,
                          const MetricFamily& metric) {
    if (fi.tag != fj.tag) return 0.0;
    const double t0 = metric.profile.domain_start();
    const double t1 = metric.profile.domain_end();
    return fi.a_at(t0) * fj.a_at(t0) * metric.boundary_weight(t0) +
           fi.a_at(t1) * fj.a_at(t1) * metric.boundary_weight(t1);
}

double largest_generalized_eigenvalue(Eigen::MatrixXd A, Eigen::MatrixXd B) {
    const int k = static_cast<int>(A.rows());
    // Trace-normalize so the degeneracy threshold is scale-free.
    Eigen::VectorXd scale(k);
    for (int i = 0; i < k; ++i) scale(i) = 1.0 / std::sqrt(std::max(B(i, i), 1e-300));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            A(i, j) *= scale(i) * scale(j);
            B(i, j) *= scale(i) * scale(j);
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bsolve(B);
    if (bsolve.eigenvalues().minCoeff() <= 1e-10)
        throw std::invalid_argument(
            "minmax_upper_bound: boundary Gram degenerate (family not linearly "
            "independent on the boundary)");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, B);
    return solver.eigenvalues().maxCoeff();
}

}  // namespace

double minmax_upper_bound(const std::vector<ModeFormFunction>& family,
                          const MetricFamily& metric, const CrossSection& cs) {
    if (family.empty()) throw std::invalid_argument("minmax_upper_bound: empty family");
    for (const auto& f : family) {
        if (f.t_nodes.size() < 2 || f.t_nodes.size() != f.a_values.size())
            throw std::invalid_argument("minmax_upper_bound: malformed mode function");
        if (f.lambda > 0 && f.tag < cs.component_count())
            throw std::invalid_argument(
                "minmax_upper_bound: positive-mode tags must not collide with "
                "zero-mode component tags");
    }
    const int k = static_cast<int>(family.size());
    Eigen::MatrixXd A(k, k), B(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            A(i, j) = A(j, i) = mode_pair_energy(family[i], family[j], metric);
            B(i, j) = B(j, i) = mode_pair_boundary(family[i], family[j], metric);
        }
    return largest_generalized_eigenvalue(std::move(A), std::move(B));
}

double minmax_upper_bound(const std::vector<GridFunction>& family,
                          const GridMetric& metric) {
    if (family.empty()) throw std::invalid_argument("minmax_upper_bound: empty family");
    if (!metric.is_one_on_boundary())
        throw std::invalid_argument(
            "minmax_upper_bound: grid factor must equal 1 on the boundary face");
    const int k = static_cast<int>(family.size());
    Eigen::MatrixXd A(k, k), B(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            A(i, j) = A(j, i) = grid_energy_product(family[i], family[j], &metric);
            B(i, j) = B(j, i) = grid_boundary_product(family[i], family[j]);
        }
    return largest_generalized_eigenvalue(std::move(A), std::move(B));
}

namespace {

double cos2_bump(double d, double radius) {
    if (d >= radius) return 0.0;
    const double c = std::cos(0.5 * kPi * d / radius);
    return c * c;
}

}  // namespace

BumpFamily make_disjoint_bump_family(const BumpFamilySpec& spec) {
    const double R = spec.ball_radius;
    const int k = spec.bump_count;
    if (k < 1) throw std::invalid_argument("bump family: bump_count >= 1");
    if (!(spec.m > 1)) throw std::invalid_argument("bump family: m must be > 1");
    if (!(R > 0) || R + 0.1 > std::min(spec.periods[0], spec.periods[1]) / 2)
        throw std::invalid_argument("bump family: ball does not fit the torus patch");
    const double rho = R / (2.0 * k);
    if (rho >= 2 * spec.L)
        throw std::invalid_argument("bump family: bumps deeper than the cylinder");
    const double delta = spec.layer_width > 0 ? spec.layer_width : rho / (20.0 * spec.m);

    // Window around the center point p = (pi, pi) on the boundary face.
    const double cx1 = spec.periods[0] / 2;
    const double cx2 = spec.periods[1] / 2;
    const double w = R + 0.1;
    const double t0 = -spec.L;
    const double depth = std::min(2 * spec.L, rho + 0.1 * rho);

    auto grid = make_grid(uniform_axis(cx1 - w, cx1 + w, spec.resolution[0]),
                          uniform_axis(cx2 - w, cx2 + w, spec.resolution[1]),
                          graded_axis(t0, t0 + depth, delta, spec.resolution[2]));

    // Bump centers along x1 within the ball, spaced 2.2 rho apart.
    std::vector<std::array<double, 2>> centers;
    for (int j = 0; j < k; ++j) {
        const double off = (j - 0.5 * (k - 1)) * 2.2 * rho;
        centers.push_back({cx1 + off, cx2});
    }

    BumpFamily fam;
    fam.metric.grid = grid;
    fam.metric.n = 2;
    fam.metric.values.assign(grid->size(), 1.0);
    const double inv_m = 1.0 / spec.m;
    for (std::size_t it = 0; it < grid->nt(); ++it) {
        const double tau = grid->t[it] - t0;
        const double ramp = smoothstep(std::min(tau / delta, 1.0));
        for (std::size_t i2 = 0; i2 < grid->n2(); ++i2)
            for (std::size_t i1 = 0; i1 < grid->n1(); ++i1) {
                const double dx1 = grid->x1[i1] - cx1;
                const double dx2 = grid->x2[i2] - cx2;
                const double d = std::sqrt(dx1 * dx1 + dx2 * dx2 + tau * tau);
                // 1 outside the ball, 1 on the boundary face, -> 1/m inside.
                double cap = 1.0;
                if (d < R) {
                    const double edge =
                        d <= 0.8 * R ? 1.0 : 1.0 - smoothstep((d / R - 0.8) / 0.2);
                    cap = 1.0 - (1.0 - inv_m) * edge * ramp;
                }
                fam.metric.values[grid->index(i1, i2, it)] = cap;
            }
    }

    for (const auto& c : centers) {
        GridFunction f = make_grid_function(grid);
        for (std::size_t it = 0; it < grid->nt(); ++it) {
            const double tau = grid->t[it] - t0;
            for (std::size_t i2 = 0; i2 < grid->n2(); ++i2)
                for (std::size_t i1 = 0; i1 < grid->n1(); ++i1) {
                    const double dx1 = grid->x1[i1] - c[0];
                    const double dx2 = grid->x2[i2] - c[1];
                    const double d = std::sqrt(dx1 * dx1 + dx2 * dx2 + tau * tau);
                    f.at(i1, i2, it) = cos2_bump(d, rho);
                }
        }
        fam.functions.push_back(std::move(f));
    }
    return fam;
}

RefinedBound disjoint_bump_bound(const BumpFamilySpec& spec) {
    const BumpFamily coarse = make_disjoint_bump_family(spec);
    BumpFamilySpec fine_spec = spec;
    for (auto& r : fine_spec.resolution) r = (r * 3) / 2;
    const BumpFamily fine = make_disjoint_bump_family(fine_spec);
    RefinedBound out;
    out.coarse = minmax_upper_bound(coarse.functions, coarse.metric);
    out.value = minmax_upper_bound(fine.functions, fine.metric);
    out.error_bar = std::abs(out.value - out.coarse);
    return out;
}

LemNeuResult lemneu_check(const GridFunction& f, std::array<double, 2> slab1,
                          std::array<double, 2> slab2, double mu) {
    const TensorGrid& G = *f.grid;
    if (!(mu > 0)) throw std::invalid_argument("lemneu_check: mu must be positive");
    if (slab1[1] <= slab1[0] || slab2[1] <= slab2[0])
        throw std::invalid_argument("lemneu_check: empty slab");
    if (!(slab1[1] <= slab2[0] || slab2[1] <= slab1[0]))
        throw std::invalid_argument("lemneu_check: slabs must be disjoint");

    const double area = (G.x1.back() - G.x1.front()) * (G.x2.back() - G.x2.front());
    auto slab_mean = [&](const std::array<double, 2>& s) {
        const double vol = area * (s[1] - s[0]);
        if (!(vol > 0)) throw std::invalid_argument("lemneu_check: zero-volume part");
        return grid_box_integral(f, G.x1.front(), G.x1.back(), G.x2.front(),
                                 G.x2.back(), s[0], s[1]) /
               vol;
    };

    LemNeuResult out;
    out.lhs = grid_energy_product(f, f, nullptr);
    out.mean1 = slab_mean(slab1);
    out.mean2 = slab_mean(slab2);
    const double v1 = area * (slab1[1] - slab1[0]);
    const double v2 = area * (slab2[1] - slab2[0]);
    const double diff = out.mean1 - out.mean2;
    out.rhs = 0.5 * mu * std::min(v1, v2) * diff * diff;
    out.pass = out.lhs >= out.rhs * (1 - 1e-8);
    return out;
}

KokarevResult kokarev_check(const SpectrumResult& result, double boundary_length) {
    if (result.n != 1)
        throw std::invalid_argument("kokarev_check applies to surfaces (n = 1) only");
    if (!(boundary_length > 0))
        throw std::invalid_argument("kokarev_check: boundary length must be positive");
    KokarevResult out;
    out.sigma2 = result.sigma(2);
    out.bound = 8.0 * kPi / boundary_length;  // genus 0 for cylinders
    out.pass = out.sigma2 <= out.bound + 1e-8 * std::max(1.0, out.bound);
    return out;
}

}  // namespace steklov
