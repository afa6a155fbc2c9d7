#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace steklov {

// 5-point Gauss-Legendre rule on [-1,1].
struct Gauss5 {
    static constexpr int n = 5;
    static constexpr double node[5] = {
        -0.90617984593866396, -0.53846931010568311, 0.0,
        0.53846931010568311, 0.90617984593866396};
    static constexpr double weight[5] = {
        0.23692688505618917, 0.47862867049936647, 0.56888888888888889,
        0.47862867049936647, 0.23692688505618917};
};

// Integrate f over [a,b] with one 5-point Gauss panel.
template <typename F>
double gauss5(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (int g = 0; g < Gauss5::n; ++g)
        acc += Gauss5::weight[g] * f(mid + half * Gauss5::node[g]);
    return acc * half;
}

// Adaptive Gauss quadrature: bisect panels until the refined estimate
// stabilizes to rel_tol.  Smooth integrands only; depth-capped.
double adaptive_quadrature(const std::function<double(double)>& f, double a,
                           double b, double rel_tol = 1e-10, int max_depth = 40);

// C-infinity smoothstep s:[0,1]->[0,1] built from sigma(x)=exp(-1/x).
// All derivatives vanish at 0 and 1; strictly increasing inside.
double smoothstep(double u);
double smoothstep_derivative(double u);

// Least-squares slope of y against x.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

// Run fn(i) for i in [0,n) on up to `threads` workers.  Results must be
// written to index-addressed storage by the caller; iteration order is
// unspecified but the partition is deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  int threads = 0);

// Worker cap: STEKLOV_LAB_THREADS if set, else hardware concurrency.
int default_thread_count();

}  // namespace steklov
