#pragma once

#include <array>
#include <string>
#include <vector>

#include "steklov/cross_section.hpp"
#include "steklov/grid.hpp"
#include "steklov/profile.hpp"
#include "steklov/spectrum.hpp"

namespace steklov {

// Certified upper bounds on sigma_k from the min-max principle: any
// k-dimensional family of test functions bounds sigma_k by the largest
// eigenvalue of (energy Gram, boundary Gram).

// Test function of mode form a(t) * phi(x): a is piecewise linear through
// (t_nodes, a_values); phi is an L^2-normalized cross-section eigenfunction
// identified by `tag` (equal tags share one phi; distinct tags are
// orthogonal on Sigma and in energy).
struct ModeFormFunction {
    double lambda = 0.0;          // eigenvalue of the attached mode
    int tag = 0;                  // identity of phi
    std::vector<double> t_nodes;  // strictly increasing; a == 0 outside
    std::vector<double> a_values;

    double a_at(double t) const;
    double a_slope(std::size_t piece) const;
};

// Members of the family that bounds sigma_b: one function per boundary
// component of the two-sided cylinder, constant |Sigma_c|^{-1/2} near its
// boundary component and tapering linearly to zero across the deep half of
// the collar.  Exact energy 2/L whenever h == 1 on the taper region.
std::vector<ModeFormFunction> psi_family(const CrossSection& cs, double L);

// Largest Rayleigh quotient over the span of the family; an upper bound on
// sigma_k for k = family size.  Quadrature is refined adaptively (1e-7
// relative); throws when the boundary Gram is degenerate (minimum
// eigenvalue <= 1e-10 after trace normalization).
double minmax_upper_bound(const std::vector<ModeFormFunction>& family,
                          const MetricFamily& metric, const CrossSection& cs);

// Grid path (x-dependent conformal factors on flat-torus cylinders).
double minmax_upper_bound(const std::vector<GridFunction>& family,
                          const GridMetric& metric);

// Disjoint cosine-squared bumps near one boundary point together with the
// interior factor h_m -> 1/m: the concrete family behind the
// small-eigenvalue scenario.  All shapes are evaluated analytically on the
// grid, so resolutions can be refined for an error bar.
struct BumpFamilySpec {
    std::array<double, 2> periods{2 * 3.14159265358979323846,
                                  2 * 3.14159265358979323846};
    double L = 1.0;            // cylinder half-length; boundary face at t = -L
    double ball_radius = 2.9;  // deformation ball around the center point
    int bump_count = 2;        // k disjoint bumps, radius ball_radius/(2k)
    double m = 10.0;           // factor parameter: h -> 1/m inside the ball
    double layer_width = 0.0;  // boundary layer of h; default rho/(20 m)
    std::array<std::size_t, 3> resolution{128, 128, 96};
};

struct BumpFamily {
    std::vector<GridFunction> functions;
    GridMetric metric;
};

BumpFamily make_disjoint_bump_family(const BumpFamilySpec& spec);

// Bound with one extra refinement as an error bar.
struct RefinedBound {
    double value = 0.0;      // finer-resolution bound
    double coarse = 0.0;
    double error_bar = 0.0;  // |value - coarse|
};
RefinedBound disjoint_bump_bound(const BumpFamilySpec& spec);

// Poincare-type inequality check:
//   lhs = \int_Omega |df|^2,
//   rhs = mu/2 * min(|V1|,|V2|) * (mean_{V1} f - mean_{V2} f)^2,
// for V_j = Sigma x [slab_j] inside the grid domain; f spans the full
// cross-section (periodic in x).  mu is supplied by the caller (Neumann
// solver).  pass <=> lhs >= rhs (1 - 1e-8).
struct LemNeuResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double mean1 = 0.0;
    double mean2 = 0.0;
    bool pass = false;
};
LemNeuResult lemneu_check(const GridFunction& f, std::array<double, 2> slab1,
                          std::array<double, 2> slab2, double mu);

// sigma_2(M) <= 8 pi (1 + genus) / boundary-length for surfaces; cylinders
// over circles have genus 0.  Throws unless the result's cross-section
// dimension is 1.
struct KokarevResult {
    double sigma2 = 0.0;
    double bound = 0.0;
    bool pass = false;
};
KokarevResult kokarev_check(const SpectrumResult& result, double boundary_length);

}  // namespace steklov
