#pragma once

#include <array>
#include <optional>
#include <vector>

#include "steklov/mesh.hpp"
#include "steklov/profile.hpp"

namespace steklov {

// One Fourier mode of the cylinder problem reduces to the 1D form
//   E(a,b) = \int (p a'b' + q ab) dt,   p = h^{alpha_p},  q = lambda h^{alpha_q},
// with mass weight r = h^{alpha_r} for Neumann problems and Steklov /
// Dirichlet / Neumann conditions at the interval endpoints.  P1 elements,
// 5-point Gauss per element; plateaus integrate exactly.

enum class EndpointCondition { Steklov, Dirichlet, Neumann };

struct ModeProblem {
    double lambda = 0.0;
    MetricFamily metric;
    double a = 0.0;
    double b = 0.0;
    EndpointCondition bc_left = EndpointCondition::Steklov;
    EndpointCondition bc_right = EndpointCondition::Steklov;

    ModeProblem(double lam, MetricFamily m, double t0, double t1,
                EndpointCondition left, EndpointCondition right);

    // Boundary weight h^n at an endpoint (1 in all paper-style profiles).
    double weight_left() const { return metric.boundary_weight(a); }
    double weight_right() const { return metric.boundary_weight(b); }
};

// Per-element Gauss data for one (metric, mesh) pair, reusable across all
// modes: K(lambda) = [p-stiffness] + lambda [q-mass],  M = [r-mass].
struct ElementWeights {
    std::vector<double> nodes;
    std::vector<double> p_integral;            // \int_e h^{alpha_p}
    std::vector<std::array<double, 3>> q_mass; // (ll, lr, rr) of h^{alpha_q} phi phi
    std::vector<std::array<double, 3>> r_mass; // (ll, lr, rr) of h^{alpha_r} phi phi
};

ElementWeights assemble_weights(const MetricFamily& metric, const Mesh1D& mesh);

// Symmetric tridiagonal matrix (diag, off-diagonal).
struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;
    std::size_t size() const { return diag.size(); }
    void multiply(const std::vector<double>& x, std::vector<double>& y) const;
};

Tridiagonal stiffness_matrix(const ElementWeights& w, double lambda);
Tridiagonal mass_matrix(const ElementWeights& w);

// Discrete energy-minimizing extension of endpoint data.  `data` entries
// are the prescribed values at the left/right endpoint; an empty optional
// leaves that endpoint free (natural condition).
struct Extension {
    std::vector<double> values;  // at mesh nodes
    double residual = 0.0;       // relative residual of the constrained solve
};

Extension harmonic_extension(const ModeProblem& mp, const Mesh1D& mesh,
                             std::optional<double> left_value,
                             std::optional<double> right_value);

// Dirichlet-to-Neumann matrix restricted to one mode: size = number of
// Steklov endpoints (1 or 2); symmetric positive semidefinite; its
// eigenvalues are the per-mode Steklov eigenvalues.
struct DtNMatrix {
    int size = 0;
    std::array<std::array<double, 2>, 2> entries{};  // upper-left size x size block
    std::array<double, 2> eigenvalues{};             // ascending
    std::array<std::array<double, 2>, 2> eigenvectors{};  // column i <-> eigenvalue i
};

DtNMatrix dtn_matrix(const ModeProblem& mp, const Mesh1D& mesh);
DtNMatrix dtn_matrix(const ModeProblem& mp, const ElementWeights& w);

// Mixed problem: Steklov at one end, Dirichlet at the other.
double steklov_dirichlet_eigenvalue(const ModeProblem& mp, const Mesh1D& mesh);

// k smallest eigenvalues of E(a,b) against the r-weighted mass form,
// by Sturm-sequence bisection on the tridiagonal pencil.
std::vector<double> neumann_eigenvalues(const ModeProblem& mp, const Mesh1D& mesh,
                                        int count);

struct NeumannEigenpair {
    double value = 0.0;
    std::vector<double> vector;  // M-normalized
};
std::vector<NeumannEigenpair> neumann_eigenpairs(const ModeProblem& mp,
                                                 const Mesh1D& mesh, int count);

// Energy E(u,v) of two discrete functions under the mode's bilinear form,
// evaluated element-wise (stable for near-constant vectors).
double energy_product(const ModeProblem& mp, const ElementWeights& w,
                      const std::vector<double>& u, const std::vector<double>& v);
// r-weighted mass product \int r uv.
double mass_product(const ElementWeights& w, const std::vector<double>& u,
                    const std::vector<double>& v);

// CSV dump of (t, h, a) triples for diagnostics.
void dump_extension_csv(const std::string& path, const ModeProblem& mp,
                        const Mesh1D& mesh, const Extension& ext);

}  // namespace steklov
