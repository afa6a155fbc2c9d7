#include "steklov/numerics.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>

namespace steklov {

namespace {

double adaptive_impl(const std::function<double(double)>& f, double a, double b,
                     double whole, double rel_tol, int depth, int max_depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss5(f, a, mid);
    const double right = gauss5(f, mid, b);
    const double refined = left + right;
    const double scale = std::max({std::abs(refined), std::abs(whole), 1e-300});
    if (std::abs(refined - whole) <= rel_tol * scale || depth >= max_depth)
        return refined;
    return adaptive_impl(f, a, mid, left, rel_tol, depth + 1, max_depth) +
           adaptive_impl(f, mid, b, right, rel_tol, depth + 1, max_depth);
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a,
                           double b, double rel_tol, int max_depth) {
    if (!(b >= a)) throw std::invalid_argument("adaptive_quadrature: b < a");
    if (a == b) return 0.0;
    return adaptive_impl(f, a, b, gauss5(f, a, b), rel_tol, 0, max_depth);
}

namespace {
inline double bump_sigma(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }
inline double bump_sigma_prime(double x) {
    return x > 0.0 ? std::exp(-1.0 / x) / (x * x) : 0.0;
}
}  // namespace

double smoothstep(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double s0 = bump_sigma(u);
    const double s1 = bump_sigma(1.0 - u);
    return s0 / (s0 + s1);
}

double smoothstep_derivative(double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double s0 = bump_sigma(u);
    const double s1 = bump_sigma(1.0 - u);
    const double d0 = bump_sigma_prime(u);
    const double d1 = bump_sigma_prime(1.0 - u);
    const double denom = (s0 + s1) * (s0 + s1);
    return (d0 * s1 + s0 * d1) / denom;
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("regression_slope: need >= 2 paired samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("regression_slope: degenerate x");
    return (n * sxy - sx * sy) / denom;
}

int default_thread_count() {
    if (const char* env = std::getenv("STEKLOV_LAB_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1) return v;
        } catch (...) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                  int threads) {
    if (n == 0) return;
    int workers = threads > 0 ? threads : default_thread_count();
    workers = static_cast<int>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            while (!failed.load()) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!failed.exchange(true)) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace steklov
