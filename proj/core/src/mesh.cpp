#include "steklov/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace steklov {

Mesh1D Mesh1D::build(const Profile& profile, double a, double b, const Resolution& res) {
    const double pad = 1e-12 * std::max(1.0, std::abs(profile.domain_end()));
    if (a < profile.domain_start() - pad || b > profile.domain_end() + pad || !(a < b))
        throw std::invalid_argument("mesh: interval outside profile domain");
    if (res.refine < 1 || res.min_elements_per_piece < 1)
        throw std::invalid_argument("mesh: resolution parameters must be >= 1");

    std::vector<double> nodes;
    nodes.push_back(a);
    for (const auto& piece : profile.pieces()) {
        const double lo = std::max(a, piece.t0);
        const double hi = std::min(b, piece.t1);
        if (!(hi > lo)) continue;
        const double len = hi - lo;
        // eps-graded rule; profiles without an eps scale fall back to a
        // fixed subdivision of the piece.
        const double eps_scale = profile.epsilon() > 0 ? profile.epsilon() : len / 16.0;
        const double graded = res.elements_per_epsilon * len / eps_scale;
        int n = static_cast<int>(std::ceil(std::max(
            static_cast<double>(res.min_elements_per_piece), graded)));
        n *= res.refine;
        for (int i = 1; i <= n; ++i) {
            const double t = lo + len * static_cast<double>(i) / n;
            if (t > nodes.back() + 1e-15 * std::max(1.0, std::abs(t))) nodes.push_back(t);
        }
    }
    if (std::abs(nodes.back() - b) > 1e-12 * std::max(1.0, std::abs(b))) nodes.push_back(b);
    nodes.back() = b;
    if (nodes.size() < 3) throw std::logic_error("mesh: degenerate node list");
    return Mesh1D(std::move(nodes));
}

double Mesh1D::width_max() const {
    double w = 0;
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i)
        w = std::max(w, nodes_[i + 1] - nodes_[i]);
    return w;
}

}  // namespace steklov
