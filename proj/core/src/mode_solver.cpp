#include "steklov/mode_solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "steklov/numerics.hpp"

namespace steklov {

namespace {

double ipow(double x, int e) {
    if (e < 0) return 1.0 / ipow(x, -e);
    double r = 1.0;
    while (e) {
        if (e & 1) r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

// LDL^T factorization pivots of (K - mu M); returns the negative-pivot
// count, which equals the number of pencil eigenvalues below mu.
int sturm_count(const Tridiagonal& K, const Tridiagonal& M, double mu) {
    const std::size_t n = K.size();
    int count = 0;
    double d_prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = K.diag[i] - mu * M.diag[i];
        if (i > 0) {
            const double e = K.off[i - 1] - mu * M.off[i - 1];
            d -= e * e / d_prev;
        }
        if (d == 0.0) d = -1e-300;
        if (d < 0.0) ++count;
        d_prev = d;
    }
    return count;
}

// Thomas/LDL^T solve; the caller guarantees the matrix is definite enough
// for an unpivoted factorization (SPD interior blocks, or shifted systems
// whose shift is not an eigenvalue).
void tridiagonal_solve(const Tridiagonal& A, std::vector<double>& x) {
    const std::size_t n = A.size();
    std::vector<double> d(n), l(n > 0 ? n - 1 : 0);
    d[0] = A.diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        if (d[i - 1] == 0.0) d[i - 1] = std::numeric_limits<double>::min();
        l[i - 1] = A.off[i - 1] / d[i - 1];
        d[i] = A.diag[i] - l[i - 1] * A.off[i - 1];
    }
    for (std::size_t i = 1; i < n; ++i) x[i] -= l[i - 1] * x[i - 1];
    if (d[n - 1] == 0.0) d[n - 1] = std::numeric_limits<double>::min();
    x[n - 1] /= d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = x[i] / d[i] - l[i] * x[i + 1];
}

double inf_norm(const std::vector<double>& v) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

ModeProblem::ModeProblem(double lam, MetricFamily m, double t0, double t1,
                         EndpointCondition left, EndpointCondition right)
    : lambda(lam), metric(std::move(m)), a(t0), b(t1), bc_left(left), bc_right(right) {
    if (lam < 0) throw std::invalid_argument("mode problem: lambda must be >= 0");
    if (!(t1 > t0)) throw std::invalid_argument("mode problem: empty interval");
}

void Tridiagonal::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    const std::size_t n = size();
    y.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = diag[i] * x[i];
        if (i > 0) y[i] += off[i - 1] * x[i - 1];
        if (i + 1 < n) y[i] += off[i] * x[i + 1];
    }
}

ElementWeights assemble_weights(const MetricFamily& metric, const Mesh1D& mesh) {
    const int ap = metric.alpha_p();
    const int aq = metric.alpha_q();
    const int ar = metric.alpha_r();
    const auto& t = mesh.nodes();
    const std::size_t ne = mesh.element_count();

    ElementWeights w;
    w.nodes = t;
    w.p_integral.assign(ne, 0.0);
    w.q_mass.assign(ne, {0, 0, 0});
    w.r_mass.assign(ne, {0, 0, 0});

    for (std::size_t e = 0; e < ne; ++e) {
        const double xl = t[e], xr = t[e + 1];
        const double half = 0.5 * (xr - xl);
        const double mid = 0.5 * (xl + xr);
        for (int g = 0; g < Gauss5::n; ++g) {
            const double tg = mid + half * Gauss5::node[g];
            const double wg = half * Gauss5::weight[g];
            const double h = metric.profile.evaluate(tg);
            const double phir = (tg - xl) / (xr - xl);
            const double phil = 1.0 - phir;
            w.p_integral[e] += wg * ipow(h, ap);
            const double q = wg * ipow(h, aq);
            w.q_mass[e][0] += q * phil * phil;
            w.q_mass[e][1] += q * phil * phir;
            w.q_mass[e][2] += q * phir * phir;
            const double r = wg * ipow(h, ar);
            w.r_mass[e][0] += r * phil * phil;
            w.r_mass[e][1] += r * phil * phir;
            w.r_mass[e][2] += r * phir * phir;
        }
    }
    return w;
}

Tridiagonal stiffness_matrix(const ElementWeights& w, double lambda) {
    const std::size_t ne = w.p_integral.size();
    Tridiagonal K;
    K.diag.assign(ne + 1, 0.0);
    K.off.assign(ne, 0.0);
    for (std::size_t e = 0; e < ne; ++e) {
        const double dx = w.nodes[e + 1] - w.nodes[e];
        const double s = w.p_integral[e] / (dx * dx);
        K.diag[e] += s + lambda * w.q_mass[e][0];
        K.diag[e + 1] += s + lambda * w.q_mass[e][2];
        K.off[e] += -s + lambda * w.q_mass[e][1];
    }
    return K;
}

Tridiagonal mass_matrix(const ElementWeights& w) {
    const std::size_t ne = w.r_mass.size();
    Tridiagonal M;
    M.diag.assign(ne + 1, 0.0);
    M.off.assign(ne, 0.0);
    for (std::size_t e = 0; e < ne; ++e) {
        M.diag[e] += w.r_mass[e][0];
        M.diag[e + 1] += w.r_mass[e][2];
        M.off[e] += w.r_mass[e][1];
    }
    return M;
}

namespace {

// Constrained energy minimization: prescribed values at zero, one, or two
// endpoints; free endpoints get the natural condition.  Returns full nodal
// vector and the relative residual of the interior solve.
Extension constrained_minimize(const Tridiagonal& K, std::optional<double> left,
                               std::optional<double> right, double lambda) {
    const std::size_t n = K.size();
    if (!left && !right) {
        if (lambda <= 0.0)
            throw std::invalid_argument("zero mode has no unique extension");
        throw std::invalid_argument("harmonic extension needs boundary data");
    }
    const std::size_t lo = left ? 1 : 0;
    const std::size_t hi = right ? n - 2 : n - 1;  // inclusive
    const std::size_t m = hi - lo + 1;

    Tridiagonal S;
    S.diag.assign(K.diag.begin() + lo, K.diag.begin() + hi + 1);
    S.off.assign(K.off.begin() + lo, K.off.begin() + hi);

    std::vector<double> rhs(m, 0.0);
    if (left) rhs.front() -= K.off[0] * (*left);
    if (right) rhs.back() -= K.off[n - 2] * (*right);

    std::vector<double> x = rhs;
    tridiagonal_solve(S, x);

    auto residual = [&]() {
        std::vector<double> r(m);
        S.multiply(x, r);
        for (std::size_t i = 0; i < m; ++i) r[i] -= rhs[i];
        double knorm = 0;
        for (std::size_t i = 0; i < m; ++i) {
            double row = std::abs(S.diag[i]);
            if (i > 0) row += std::abs(S.off[i - 1]);
            if (i + 1 < m) row += std::abs(S.off[i]);
            knorm = std::max(knorm, row);
        }
        const double denom = inf_norm(rhs) + knorm * inf_norm(x) +
                             std::numeric_limits<double>::min();
        return inf_norm(r) / denom;
    };

    double rel = residual();
    for (int pass = 0; pass < 3 && rel > 1e-12; ++pass) {
        std::vector<double> r(m);
        S.multiply(x, r);
        for (std::size_t i = 0; i < m; ++i) r[i] = rhs[i] - r[i];
        tridiagonal_solve(S, r);
        for (std::size_t i = 0; i < m; ++i) x[i] += r[i];
        rel = residual();
    }
    if (rel > 1e-12) {
        std::ostringstream ss;
        ss << "harmonic extension: relative residual " << rel
           << " exceeds 1e-12 after iterative refinement";
        throw std::runtime_error(ss.str());
    }

    Extension ext;
    ext.values.assign(n, 0.0);
    if (left) ext.values.front() = *left;
    if (right) ext.values.back() = *right;
    for (std::size_t i = 0; i < m; ++i) ext.values[lo + i] = x[i];
    ext.residual = rel;
    return ext;
}

double bilinear(const Tridiagonal& K, const std::vector<double>& u,
                const std::vector<double>& v) {
    std::vector<double> kv;
    K.multiply(v, kv);
    double acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * kv[i];
    return acc;
}

// Element-wise evaluation of E(u,v) = \int (p u'v' + q uv).  The stiffness
// part uses nodal differences, so near-constant vectors do not suffer the
// cancellation a matrix-vector product would produce.
double energy_elementwise(const ElementWeights& w, double lambda,
                          const std::vector<double>& u, const std::vector<double>& v) {
    double acc = 0;
    const std::size_t ne = w.p_integral.size();
    for (std::size_t e = 0; e < ne; ++e) {
        const double dx = w.nodes[e + 1] - w.nodes[e];
        const double du = u[e + 1] - u[e];
        const double dv = v[e + 1] - v[e];
        acc += w.p_integral[e] * du * dv / (dx * dx);
        if (lambda != 0.0)
            acc += lambda * (w.q_mass[e][0] * u[e] * v[e] +
                             w.q_mass[e][1] * (u[e] * v[e + 1] + u[e + 1] * v[e]) +
                             w.q_mass[e][2] * u[e + 1] * v[e + 1]);
    }
    return acc;
}

}  // namespace

Extension harmonic_extension(const ModeProblem& mp, const Mesh1D& mesh,
                             std::optional<double> left_value,
                             std::optional<double> right_value) {
    const ElementWeights w = assemble_weights(mp.metric, mesh);
    const Tridiagonal K = stiffness_matrix(w, mp.lambda);
    return constrained_minimize(K, left_value, right_value, mp.lambda);
}

DtNMatrix dtn_matrix(const ModeProblem& mp, const Mesh1D& mesh) {
    return dtn_matrix(mp, assemble_weights(mp.metric, mesh));
}

DtNMatrix dtn_matrix(const ModeProblem& mp, const ElementWeights& w) {
    const bool steklov_left = mp.bc_left == EndpointCondition::Steklov;
    const bool steklov_right = mp.bc_right == EndpointCondition::Steklov;
    if (!steklov_left && !steklov_right)
        throw std::invalid_argument("dtn matrix needs >= 1 Steklov endpoint");

    const Tridiagonal K = stiffness_matrix(w, mp.lambda);
    const std::size_t nn = K.size();

    // Extension of the i-th Steklov boundary basis vector: 1 at that end,
    // 0 at any other Steklov or Dirichlet end, free at Neumann ends.
    auto extend = [&](bool unit_at_left) {
        std::optional<double> lv, rv;
        if (mp.bc_left != EndpointCondition::Neumann) lv = unit_at_left ? 1.0 : 0.0;
        if (mp.bc_right != EndpointCondition::Neumann) rv = unit_at_left ? 0.0 : 1.0;
        return constrained_minimize(K, lv, rv, mp.lambda).values;
    };

    std::vector<std::vector<double>> ext;
    std::vector<double> weights;
    if (steklov_left && steklov_right && mp.lambda == 0.0) {
        // Zero mode, two-sided: work in the symmetric/antisymmetric data
        // basis.  The (1,1) extension is the exact discrete constant, the
        // (1,-1) extension is a pinned-gauge solve; their averages carry no
        // stiffness cancellation, so the zero branch comes out exactly 0.
        const std::vector<double> ones(nn, 1.0);
        const std::vector<double> odd = constrained_minimize(K, 1.0, -1.0, 0.0).values;
        std::vector<double> left(nn), right(nn);
        for (std::size_t i = 0; i < nn; ++i) {
            left[i] = 0.5 * (ones[i] + odd[i]);
            right[i] = 0.5 * (ones[i] - odd[i]);
        }
        ext.push_back(std::move(left));
        ext.push_back(std::move(right));
        weights.push_back(mp.weight_left());
        weights.push_back(mp.weight_right());
    } else if (mp.lambda == 0.0 &&
               ((steklov_left && mp.bc_right == EndpointCondition::Neumann) ||
                (steklov_right && mp.bc_left == EndpointCondition::Neumann))) {
        // Zero mode with a free far end: the minimizer is the constant.
        ext.emplace_back(nn, 1.0);
        weights.push_back(steklov_left ? mp.weight_left() : mp.weight_right());
    } else {
        if (steklov_left) {
            ext.push_back(extend(true));
            weights.push_back(mp.weight_left());
        }
        if (steklov_right) {
            ext.push_back(extend(false));
            weights.push_back(mp.weight_right());
        }
    }

    DtNMatrix dtn;
    dtn.size = static_cast<int>(ext.size());
    double scale = 1.0;
    for (int i = 0; i < dtn.size; ++i)
        for (int j = i; j < dtn.size; ++j) {
            const double e = energy_elementwise(w, mp.lambda, ext[i], ext[j]) /
                             std::sqrt(weights[i] * weights[j]);
            dtn.entries[i][j] = e;
            dtn.entries[j][i] = e;
            scale = std::max(scale, std::abs(e));
        }

    const double snap = 1e-13 * scale;
    if (dtn.size == 1) {
        double v = dtn.entries[0][0];
        if (std::abs(v) <= snap) v = 0.0;
        dtn.eigenvalues = {v, 0.0};
        dtn.eigenvectors[0] = {1.0, 0.0};
    } else {
        const double a = dtn.entries[0][0], b = dtn.entries[0][1], c = dtn.entries[1][1];
        const double mean = 0.5 * (a + c);
        const double disc = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
        double lo = mean - disc, hi = mean + disc;
        if (std::abs(lo) <= snap) lo = 0.0;
        if (std::abs(hi) <= snap) hi = 0.0;
        dtn.eigenvalues = {lo, hi};
        // Eigenvector for lo: (b, lo - a) or (lo - c, b), whichever is stabler.
        auto unit = [](double x, double y) -> std::array<double, 2> {
            const double n = std::hypot(x, y);
            if (n == 0) return {1.0, 0.0};
            return {x / n, y / n};
        };
        if (std::abs(b) > snap) {
            dtn.eigenvectors[0] = unit(b, lo - a);
            dtn.eigenvectors[1] = unit(b, hi - a);
        } else {
            if (a <= c) {
                dtn.eigenvectors[0] = {1.0, 0.0};
                dtn.eigenvectors[1] = {0.0, 1.0};
            } else {
                dtn.eigenvectors[0] = {0.0, 1.0};
                dtn.eigenvectors[1] = {1.0, 0.0};
            }
        }
    }
    return dtn;
}

double steklov_dirichlet_eigenvalue(const ModeProblem& mp, const Mesh1D& mesh) {
    const bool sl = mp.bc_left == EndpointCondition::Steklov;
    const bool sr = mp.bc_right == EndpointCondition::Steklov;
    const bool dl = mp.bc_left == EndpointCondition::Dirichlet;
    const bool dr = mp.bc_right == EndpointCondition::Dirichlet;
    if (!((sl && dr) || (sr && dl)))
        throw std::invalid_argument(
            "steklov_dirichlet_eigenvalue needs one Steklov and one Dirichlet end");
    const DtNMatrix dtn = dtn_matrix(mp, mesh);
    return dtn.eigenvalues[0];
}

std::vector<double> neumann_eigenvalues(const ModeProblem& mp, const Mesh1D& mesh,
                                        int count) {
    if (count < 1) throw std::invalid_argument("neumann_eigenvalues: count >= 1");
    const ElementWeights w = assemble_weights(mp.metric, mesh);
    const Tridiagonal K = stiffness_matrix(w, mp.lambda);
    const Tridiagonal M = mass_matrix(w);
    const std::size_t n = K.size();
    if (static_cast<std::size_t>(count) > n)
        throw std::invalid_argument("neumann_eigenvalues: count exceeds mesh dimension");

    // Seed bracket from a rough row-ratio bound, then grow until it
    // certifiably contains `count` eigenvalues.
    double hi = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(K.diag[i]);
        if (i > 0) row += std::abs(K.off[i - 1]);
        if (i + 1 < n) row += std::abs(K.off[i]);
        hi = std::max(hi, row / std::max(M.diag[i], 1e-300));
    }
    for (int guard = 0; sturm_count(K, M, hi) < count; ++guard) {
        if (guard > 120) throw std::runtime_error("neumann_eigenvalues: bracket growth failed");
        hi *= 4.0;
    }

    std::vector<double> values(count);
    const double lo0 = -1e-12 * hi;
    for (int j = 1; j <= count; ++j) {
        double lo = lo0;
        double up = hi;
        for (int it = 0; it < 300; ++it) {
            const double mid = 0.5 * (lo + up);
            if (sturm_count(K, M, mid) >= j)
                up = mid;
            else
                lo = mid;
            if (up - lo <= 1e-14 * std::max(1.0, std::abs(up))) break;
        }
        values[j - 1] = 0.5 * (lo + up);
    }
    std::sort(values.begin(), values.end());
    // Discrete zero modes sit at the assembly-roundoff scale, not at 0.
    const double snap = 1e-9 * std::max(1.0, std::abs(values.back()));
    for (auto& v : values)
        if (std::abs(v) <= snap) v = 0.0;
    return values;
}

std::vector<NeumannEigenpair> neumann_eigenpairs(const ModeProblem& mp,
                                                 const Mesh1D& mesh, int count) {
    const std::vector<double> values = neumann_eigenvalues(mp, mesh, count);
    const ElementWeights w = assemble_weights(mp.metric, mesh);
    const Tridiagonal K = stiffness_matrix(w, mp.lambda);
    const Tridiagonal M = mass_matrix(w);
    const std::size_t n = K.size();

    std::vector<NeumannEigenpair> pairs;
    for (double mu : values) {
        // Inverse iteration on (K - shift M) with a shift nudged off mu.
        const double nudge = 1e-7 * std::max(1.0, std::abs(mu));
        double shift = mu + nudge;
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = std::sin(1.7 * (i + 1)) + 0.3;
        for (int attempt = 0; attempt < 3; ++attempt) {
            Tridiagonal A;
            A.diag.resize(n);
            A.off.resize(n - 1);
            for (std::size_t i = 0; i < n; ++i) A.diag[i] = K.diag[i] - shift * M.diag[i];
            for (std::size_t i = 0; i + 1 < n; ++i) A.off[i] = K.off[i] - shift * M.off[i];
            bool ok = true;
            for (int it = 0; it < 4 && ok; ++it) {
                std::vector<double> rhs;
                M.multiply(x, rhs);
                tridiagonal_solve(A, rhs);
                double norm = inf_norm(rhs);
                if (!std::isfinite(norm) || norm == 0.0) {
                    ok = false;
                    break;
                }
                for (auto& v : rhs) v /= norm;
                x = rhs;
            }
            if (ok) break;
            shift = mu + nudge * (2 << attempt);
            for (std::size_t i = 0; i < n; ++i) x[i] = std::cos(0.9 * (i + 1)) + 0.4;
        }
        const double mnorm = std::sqrt(std::max(bilinear(M, x, x), 1e-300));
        for (auto& v : x) v /= mnorm;
        pairs.push_back({mu, std::move(x)});
    }
    return pairs;
}

double energy_product(const ModeProblem& mp, const ElementWeights& w,
                      const std::vector<double>& u, const std::vector<double>& v) {
    return energy_elementwise(w, mp.lambda, u, v);
}

double mass_product(const ElementWeights& w, const std::vector<double>& u,
                    const std::vector<double>& v) {
    double acc = 0;
    for (std::size_t e = 0; e < w.r_mass.size(); ++e)
        acc += w.r_mass[e][0] * u[e] * v[e] +
               w.r_mass[e][1] * (u[e] * v[e + 1] + u[e + 1] * v[e]) +
               w.r_mass[e][2] * u[e + 1] * v[e + 1];
    return acc;
}

void dump_extension_csv(const std::string& path, const ModeProblem& mp,
                        const Mesh1D& mesh, const Extension& ext) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << "t,h,a\n";
    char buf[128];
    for (std::size_t i = 0; i < mesh.node_count(); ++i) {
        const double t = mesh.nodes()[i];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", t,
                      mp.metric.profile.evaluate(t), ext.values[i]);
        out << buf;
    }
}

}  // namespace steklov
