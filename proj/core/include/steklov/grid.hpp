#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "steklov/profile.hpp"

namespace steklov {

// Tensor grid over a rectangular patch of a flat 2-torus cross-section
// times an axial interval.  Values are stored row-major with x1 fastest,
// then x2, then t:  value(i1,i2,it) = data[i1 + n1*(i2 + n2*it)].
//
// Grid functions are interpreted as their trilinear interpolants, so cell
// integrals (gradients, products, slab means) evaluate in closed form.
struct TensorGrid {
    std::vector<double> x1;
    std::vector<double> x2;
    std::vector<double> t;

    std::size_t n1() const { return x1.size(); }
    std::size_t n2() const { return x2.size(); }
    std::size_t nt() const { return t.size(); }
    std::size_t size() const { return n1() * n2() * nt(); }
    std::size_t index(std::size_t i1, std::size_t i2, std::size_t it) const {
        return i1 + n1() * (i2 + n2() * it);
    }

    static void validate_axis(const std::vector<double>& axis, const char* name);
    void validate() const;
};

using GridPtr = std::shared_ptr<const TensorGrid>;

GridPtr make_grid(std::vector<double> x1, std::vector<double> x2, std::vector<double> t);

// Uniform axis of `count` nodes covering [lo, hi].
std::vector<double> uniform_axis(double lo, double hi, std::size_t count);
// Axis on [lo, hi] with a geometric boundary layer of scale `layer` at lo.
std::vector<double> graded_axis(double lo, double hi, double layer, std::size_t count);

struct GridFunction {
    GridPtr grid;
    std::vector<double> values;

    double& at(std::size_t i1, std::size_t i2, std::size_t it) {
        return values[grid->index(i1, i2, it)];
    }
    double at(std::size_t i1, std::size_t i2, std::size_t it) const {
        return values[grid->index(i1, i2, it)];
    }
};

GridFunction make_grid_function(GridPtr grid);

// Conformal factor h(x,t) > 0 sampled on the grid.
struct GridMetric {
    GridPtr grid;
    std::vector<double> values;
    int n = 2;  // cross-section dimension

    double min_value() const;
    // True when every node on the t-start face has h == 1 (tolerance 1e-12).
    bool is_one_on_boundary() const;
};

// x-independent factor sampled from an axial profile.
GridMetric sample_profile_metric(GridPtr grid, const Profile& profile, int n);

// Raw h values, row-major x1-fastest layout: CSV = one value per line
// ('#' comments allowed), binary = little-endian float64.  The node count
// must match the grid.
GridMetric load_grid_metric_csv(const std::string& path, GridPtr grid, int n);
GridMetric load_grid_metric_binary(const std::string& path, GridPtr grid, int n);
void save_grid_metric_csv(const std::string& path, const GridMetric& metric);

// \int grad(f).grad(g) w dV with w = h^{n-1} from the metric (cell-averaged),
// or w = 1 when metric is null.
double grid_energy_product(const GridFunction& f, const GridFunction& g,
                           const GridMetric* metric);

// \int f g over the t-start face (boundary trace product, metric g_0).
double grid_boundary_product(const GridFunction& f, const GridFunction& g);

// Exact integral of the trilinear interpolant over the sub-box
// [a1,b1]x[a2,b2]x[at,bt] clipped to the grid.
double grid_box_integral(const GridFunction& f, double a1, double b1, double a2,
                         double b2, double at, double bt);

}  // namespace steklov
