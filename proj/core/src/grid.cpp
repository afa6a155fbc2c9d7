#include "steklov/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace steklov {

void TensorGrid::validate_axis(const std::vector<double>& axis, const char* name) {
    if (axis.size() < 2)
        throw std::invalid_argument(std::string("grid axis ") + name + ": needs >= 2 nodes");
    for (std::size_t i = 0; i + 1 < axis.size(); ++i)
        if (!(axis[i + 1] > axis[i]))
            throw std::invalid_argument(std::string("grid axis ") + name +
                                        ": nodes must be strictly increasing");
}

void TensorGrid::validate() const {
    validate_axis(x1, "x1");
    validate_axis(x2, "x2");
    validate_axis(t, "t");
}

GridPtr make_grid(std::vector<double> x1, std::vector<double> x2, std::vector<double> t) {
    auto g = std::make_shared<TensorGrid>();
    g->x1 = std::move(x1);
    g->x2 = std::move(x2);
    g->t = std::move(t);
    g->validate();
    return g;
}

std::vector<double> uniform_axis(double lo, double hi, std::size_t count) {
    if (count < 2 || !(hi > lo)) throw std::invalid_argument("uniform_axis: bad arguments");
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    v.back() = hi;
    return v;
}

std::vector<double> graded_axis(double lo, double hi, double layer, std::size_t count) {
    if (count < 4 || !(hi > lo) || !(layer > 0))
        throw std::invalid_argument("graded_axis: bad arguments");
    // Geometric steps from layer/4 until they reach the uniform step of the
    // remaining budget, then uniform to hi.
    std::vector<double> v{lo};
    double step = layer / 4.0;
    while (v.size() + 1 < count) {
        const std::size_t remaining = count - v.size();
        const double uniform_step = (hi - v.back()) / remaining;
        if (step >= uniform_step || v.back() + step >= hi) break;
        v.push_back(v.back() + step);
        step *= 1.5;
    }
    const std::size_t remaining = count - v.size();
    const double start = v.back();
    for (std::size_t i = 1; i <= remaining; ++i)
        v.push_back(start + (hi - start) * static_cast<double>(i) / remaining);
    v.back() = hi;
    return v;
}

GridFunction make_grid_function(GridPtr grid) {
    GridFunction f;
    f.grid = std::move(grid);
    f.values.assign(f.grid->size(), 0.0);
    return f;
}

double GridMetric::min_value() const {
    double m = values.empty() ? 0.0 : values.front();
    for (double v : values) m = std::min(m, v);
    return m;
}

bool GridMetric::is_one_on_boundary() const {
    for (std::size_t i2 = 0; i2 < grid->n2(); ++i2)
        for (std::size_t i1 = 0; i1 < grid->n1(); ++i1)
            if (std::abs(values[grid->index(i1, i2, 0)] - 1.0) > 1e-12) return false;
    return true;
}

GridMetric sample_profile_metric(GridPtr grid, const Profile& profile, int n) {
    GridMetric m;
    m.grid = std::move(grid);
    m.n = n;
    m.values.assign(m.grid->size(), 1.0);
    for (std::size_t it = 0; it < m.grid->nt(); ++it) {
        const double h = profile.evaluate(m.grid->t[it]);
        for (std::size_t i2 = 0; i2 < m.grid->n2(); ++i2)
            for (std::size_t i1 = 0; i1 < m.grid->n1(); ++i1)
                m.values[m.grid->index(i1, i2, it)] = h;
    }
    return m;
}

namespace {

std::vector<double> read_values_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open grid file: " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (auto& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream ss(line);
        double v;
        while (ss >> v) values.push_back(v);
    }
    return values;
}

GridMetric finish_metric(GridPtr grid, std::vector<double> values, int n,
                         const std::string& path) {
    if (values.size() != grid->size())
        throw std::runtime_error("grid file " + path + ": expected " +
                                 std::to_string(grid->size()) + " values, found " +
                                 std::to_string(values.size()));
    GridMetric m;
    m.grid = std::move(grid);
    m.values = std::move(values);
    m.n = n;
    if (!(m.min_value() > 0))
        throw std::runtime_error("grid file " + path + ": factor values must be positive");
    return m;
}

}  // namespace

GridMetric load_grid_metric_csv(const std::string& path, GridPtr grid, int n) {
    return finish_metric(std::move(grid), read_values_text(path), n, path);
}

GridMetric load_grid_metric_binary(const std::string& path, GridPtr grid, int n) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open grid file: " + path);
    std::vector<double> values(grid->size());
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!in || in.gcount() != static_cast<std::streamsize>(values.size() * sizeof(double)))
        throw std::runtime_error("grid file " + path + ": short read");
    return finish_metric(std::move(grid), std::move(values), n, path);
}

void save_grid_metric_csv(const std::string& path, const GridMetric& metric) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "# conformal factor values, row-major: x1 fastest, then x2, then t\n";
    char buf[64];
    for (double v : metric.values) {
        std::snprintf(buf, sizeof(buf), "%.17g\n", v);
        out << buf;
    }
}

namespace {

// \int over the unit square of two bilinear functions given by corner
// values u,v ordered (00, 01, 10, 11); tensor of the 1D mass [[2,1],[1,2]]/6.
double bilinear_square_product(const double u[4], const double v[4]) {
    const double diag = u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
    const double adj = u[0] * v[1] + u[1] * v[0] + u[0] * v[2] + u[2] * v[0] +
                       u[1] * v[3] + u[3] * v[1] + u[2] * v[3] + u[3] * v[2];
    const double opp = u[0] * v[3] + u[3] * v[0] + u[1] * v[2] + u[2] * v[1];
    return (4.0 * diag + 2.0 * adj + opp) / 36.0;
}

}  // namespace

double grid_energy_product(const GridFunction& f, const GridFunction& g,
                           const GridMetric* metric) {
    const TensorGrid& G = *f.grid;
    if (g.grid.get() != &G || (metric && metric->grid.get() != &G))
        throw std::invalid_argument("grid energy: functions/metric on different grids");
    const int wexp = metric ? metric->n - 1 : 0;

    double acc = 0.0;
    for (std::size_t kt = 0; kt + 1 < G.nt(); ++kt) {
        const double c = G.t[kt + 1] - G.t[kt];
        for (std::size_t j = 0; j + 1 < G.n2(); ++j) {
            const double b = G.x2[j + 1] - G.x2[j];
            for (std::size_t i = 0; i + 1 < G.n1(); ++i) {
                const double a = G.x1[i + 1] - G.x1[i];
                double fc[8], gc[8];
                for (int di = 0; di < 2; ++di)
                    for (int dj = 0; dj < 2; ++dj)
                        for (int dk = 0; dk < 2; ++dk) {
                            const std::size_t idx = G.index(i + di, j + dj, kt + dk);
                            const int local = 4 * di + 2 * dj + dk;
                            fc[local] = f.values[idx];
                            gc[local] = g.values[idx];
                        }
                double w = 1.0;
                if (metric) {
                    double hmean = 0.0;
                    for (int di = 0; di < 2; ++di)
                        for (int dj = 0; dj < 2; ++dj)
                            for (int dk = 0; dk < 2; ++dk)
                                hmean += std::pow(
                                    metric->values[G.index(i + di, j + dj, kt + dk)], wexp);
                    w = hmean / 8.0;
                }
                // d/dx1: bilinear over (x2,t); corners (j,k) -> (00,01,10,11).
                double fu[4], gv[4];
                fu[0] = (fc[4] - fc[0]) / a;
                fu[1] = (fc[5] - fc[1]) / a;
                fu[2] = (fc[6] - fc[2]) / a;
                fu[3] = (fc[7] - fc[3]) / a;
                gv[0] = (gc[4] - gc[0]) / a;
                gv[1] = (gc[5] - gc[1]) / a;
                gv[2] = (gc[6] - gc[2]) / a;
                gv[3] = (gc[7] - gc[3]) / a;
                double cell = a * b * c * bilinear_square_product(fu, gv);
                // d/dx2: bilinear over (x1,t).
                fu[0] = (fc[2] - fc[0]) / b;
                fu[1] = (fc[3] - fc[1]) / b;
                fu[2] = (fc[6] - fc[4]) / b;
                fu[3] = (fc[7] - fc[5]) / b;
                gv[0] = (gc[2] - gc[0]) / b;
                gv[1] = (gc[3] - gc[1]) / b;
                gv[2] = (gc[6] - gc[4]) / b;
                gv[3] = (gc[7] - gc[5]) / b;
                cell += a * b * c * bilinear_square_product(fu, gv);
                // d/dt: bilinear over (x1,x2).
                fu[0] = (fc[1] - fc[0]) / c;
                fu[1] = (fc[3] - fc[2]) / c;
                fu[2] = (fc[5] - fc[4]) / c;
                fu[3] = (fc[7] - fc[6]) / c;
                gv[0] = (gc[1] - gc[0]) / c;
                gv[1] = (gc[3] - gc[2]) / c;
                gv[2] = (gc[5] - gc[4]) / c;
                gv[3] = (gc[7] - gc[6]) / c;
                cell += a * b * c * bilinear_square_product(fu, gv);
                acc += w * cell;
            }
        }
    }
    return acc;
}

double grid_boundary_product(const GridFunction& f, const GridFunction& g) {
    const TensorGrid& G = *f.grid;
    if (g.grid.get() != &G)
        throw std::invalid_argument("grid boundary product: different grids");
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < G.n2(); ++j) {
        const double b = G.x2[j + 1] - G.x2[j];
        for (std::size_t i = 0; i + 1 < G.n1(); ++i) {
            const double a = G.x1[i + 1] - G.x1[i];
            double fu[4], gv[4];
            fu[0] = f.values[G.index(i, j, 0)];
            fu[1] = f.values[G.index(i, j + 1, 0)];
            fu[2] = f.values[G.index(i + 1, j, 0)];
            fu[3] = f.values[G.index(i + 1, j + 1, 0)];
            gv[0] = g.values[G.index(i, j, 0)];
            gv[1] = g.values[G.index(i, j + 1, 0)];
            gv[2] = g.values[G.index(i + 1, j, 0)];
            gv[3] = g.values[G.index(i + 1, j + 1, 0)];
            acc += a * b * bilinear_square_product(fu, gv);
        }
    }
    return acc;
}

namespace {

// Clipped 1D shape-function integrals on one cell mapped to [0,1]:
// returns (\int_alpha^beta (1-u) du, \int_alpha^beta u du).
std::array<double, 2> clipped_shape_integrals(double lo, double hi, double clip_lo,
                                              double clip_hi) {
    const double len = hi - lo;
    double alpha = (clip_lo - lo) / len;
    double beta = (clip_hi - lo) / len;
    alpha = std::clamp(alpha, 0.0, 1.0);
    beta = std::clamp(beta, 0.0, 1.0);
    if (beta <= alpha) return {0.0, 0.0};
    const double i1 = 0.5 * (beta * beta - alpha * alpha);
    return {(beta - alpha) - i1, i1};
}

}  // namespace

double grid_box_integral(const GridFunction& f, double a1, double b1, double a2,
                         double b2, double at, double bt) {
    const TensorGrid& G = *f.grid;
    double acc = 0.0;
    for (std::size_t kt = 0; kt + 1 < G.nt(); ++kt) {
        if (G.t[kt + 1] <= at || G.t[kt] >= bt) continue;
        const auto wt = clipped_shape_integrals(G.t[kt], G.t[kt + 1], at, bt);
        const double c = G.t[kt + 1] - G.t[kt];
        for (std::size_t j = 0; j + 1 < G.n2(); ++j) {
            if (G.x2[j + 1] <= a2 || G.x2[j] >= b2) continue;
            const auto w2 = clipped_shape_integrals(G.x2[j], G.x2[j + 1], a2, b2);
            const double b = G.x2[j + 1] - G.x2[j];
            for (std::size_t i = 0; i + 1 < G.n1(); ++i) {
                if (G.x1[i + 1] <= a1 || G.x1[i] >= b1) continue;
                const auto w1 = clipped_shape_integrals(G.x1[i], G.x1[i + 1], a1, b1);
                const double a = G.x1[i + 1] - G.x1[i];
                double cell = 0.0;
                for (int di = 0; di < 2; ++di)
                    for (int dj = 0; dj < 2; ++dj)
                        for (int dk = 0; dk < 2; ++dk)
                            cell += f.values[G.index(i + di, j + dj, kt + dk)] *
                                    w1[di] * w2[dj] * wt[dk];
                acc += a * b * c * cell;
            }
        }
    }
    return acc;
}

}  // namespace steklov
