#include "steklov/cross_section.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace steklov {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Dedup rule for merging enumerated eigenvalues: closed forms are exact,
// the tolerance only absorbs floating-point lattice norms.
bool same_eigenvalue(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(1.0, std::max(a, b));
}

void aggregate_sorted(std::vector<std::pair<double, int>>& entries) {
    std::sort(entries.begin(), entries.end());
    std::vector<std::pair<double, int>> out;
    for (const auto& e : entries) {
        if (!out.empty() && same_eigenvalue(out.back().first, e.first))
            out.back().second += e.second;
        else
            out.push_back(e);
    }
    entries.swap(out);
}

unsigned long long binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned long long>(n - k + i) / i;
    return r;
}

int sphere_multiplicity(int l, int d) {
    if (l == 0) return 1;
    return static_cast<int>(binomial(l + d, d) - binomial(l - 2 + d, d));
}

double sphere_area(int d, double r) {
    // |S^d_r| = 2 pi^{(d+1)/2} / Gamma((d+1)/2) * r^d
    const double half = 0.5 * (d + 1);
    return 2.0 * std::pow(kPi, half) / std::tgamma(half) * std::pow(r, d);
}

}  // namespace

CrossSectionComponent CrossSectionComponent::circle(double radius) {
    if (!(radius > 0)) throw std::invalid_argument("circle: radius must be positive");
    CrossSectionComponent c;
    c.kind_ = ComponentKind::Circle;
    c.dimension_ = 1;
    c.radius_ = radius;
    c.volume_ = 2.0 * kPi * radius;
    return c;
}

CrossSectionComponent CrossSectionComponent::flat_torus(std::vector<double> periods) {
    if (periods.empty()) throw std::invalid_argument("flat_torus: needs >= 1 period");
    double vol = 1.0;
    for (double l : periods) {
        if (!(l > 0)) throw std::invalid_argument("flat_torus: periods must be positive");
        vol *= l;
    }
    CrossSectionComponent c;
    c.kind_ = ComponentKind::FlatTorus;
    c.dimension_ = static_cast<int>(periods.size());
    c.periods_ = std::move(periods);
    c.volume_ = vol;
    return c;
}

CrossSectionComponent CrossSectionComponent::round_sphere(int dimension, double radius) {
    if (dimension < 1) throw std::invalid_argument("round_sphere: dimension must be >= 1");
    if (!(radius > 0)) throw std::invalid_argument("round_sphere: radius must be positive");
    CrossSectionComponent c;
    c.kind_ = ComponentKind::RoundSphere;
    c.dimension_ = dimension;
    c.radius_ = radius;
    c.volume_ = sphere_area(dimension, radius);
    return c;
}

CrossSectionComponent CrossSectionComponent::custom_list(
    std::vector<std::pair<double, int>> entries, double volume, int dimension) {
    if (entries.empty()) throw std::invalid_argument("custom spectrum: empty list");
    if (!(volume > 0)) throw std::invalid_argument("custom spectrum: volume must be positive");
    if (dimension < 1) throw std::invalid_argument("custom spectrum: dimension must be >= 1");
    if (std::abs(entries.front().first) > 1e-12)
        throw std::invalid_argument("custom spectrum: must start at eigenvalue 0");
    entries.front().first = 0.0;
    if (entries.front().second != 1)
        throw std::invalid_argument(
            "custom spectrum: eigenvalue 0 must have multiplicity 1 (connected component)");
    double prev = -1.0;
    for (const auto& [lam, mult] : entries) {
        if (lam < prev - 1e-15)
            throw std::invalid_argument("custom spectrum: eigenvalues must be nondecreasing");
        if (mult < 1)
            throw std::invalid_argument("custom spectrum: multiplicities must be >= 1");
        prev = lam;
    }
    CrossSectionComponent c;
    c.kind_ = ComponentKind::CustomList;
    c.dimension_ = dimension;
    c.volume_ = volume;
    c.custom_ = std::move(entries);
    return c;
}

CrossSectionComponent CrossSectionComponent::custom_from_file(const std::string& path,
                                                              double volume,
                                                              int dimension) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spectrum file: " + path);
    std::vector<std::pair<double, int>> entries;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double lam;
        int mult;
        if (ss >> lam >> mult) entries.emplace_back(lam, mult);
    }
    return custom_list(std::move(entries), volume, dimension);
}

std::vector<std::pair<double, int>> CrossSectionComponent::eigenvalues_below(
    double cutoff, std::size_t cap) const {
    if (cutoff < 0) throw std::invalid_argument("eigenvalues_below: cutoff must be >= 0");
    std::vector<std::pair<double, int>> out;
    auto guard = [&](std::size_t extra) {
        if (out.size() + extra > cap)
            throw std::runtime_error("eigenvalue enumeration exceeds cap (" +
                                     std::to_string(cap) + ") below cutoff " +
                                     std::to_string(cutoff) + " on " + describe());
    };
    switch (kind_) {
        case ComponentKind::Circle: {
            out.emplace_back(0.0, 1);
            for (int k = 1;; ++k) {
                const double lam = static_cast<double>(k) * k / (radius_ * radius_);
                if (lam > cutoff) break;
                guard(1);
                out.emplace_back(lam, 2);
            }
            break;
        }
        case ComponentKind::FlatTorus: {
            // Lattice walk over the bounding box |k_i| <= l_i sqrt(cutoff)/(2 pi).
            const int d = dimension_;
            std::vector<double> coef(d);
            std::vector<int> kmax(d);
            for (int i = 0; i < d; ++i) {
                coef[i] = std::pow(2.0 * kPi / periods_[i], 2);
                kmax[i] = static_cast<int>(std::floor(std::sqrt(cutoff / coef[i]) + 1e-12));
            }
            std::vector<int> k(d, 0);
            std::vector<std::pair<double, int>> raw;
            std::function<void(int, double)> walk = [&](int dim, double partial) {
                if (dim == d) {
                    if (partial <= cutoff * (1 + 1e-15)) {
                        if (raw.size() >= cap)
                            throw std::runtime_error(
                                "eigenvalue enumeration exceeds cap on " + describe());
                        raw.emplace_back(partial, 1);
                    }
                    return;
                }
                for (int v = -kmax[dim]; v <= kmax[dim]; ++v) {
                    const double next = partial + coef[dim] * v * v;
                    if (next > cutoff * (1 + 1e-15)) continue;
                    k[dim] = v;
                    walk(dim + 1, next);
                }
            };
            walk(0, 0.0);
            aggregate_sorted(raw);
            out = std::move(raw);
            break;
        }
        case ComponentKind::RoundSphere: {
            for (int l = 0;; ++l) {
                const double lam = static_cast<double>(l) * (l + dimension_ - 1) /
                                   (radius_ * radius_);
                if (lam > cutoff) break;
                guard(1);
                out.emplace_back(lam, sphere_multiplicity(l, dimension_));
            }
            break;
        }
        case ComponentKind::CustomList: {
            for (const auto& e : custom_) {
                if (e.first > cutoff) break;
                guard(1);
                out.push_back(e);
            }
            break;
        }
    }
    return out;
}

double CrossSectionComponent::first_positive_eigenvalue() const {
    switch (kind_) {
        case ComponentKind::Circle:
            return 1.0 / (radius_ * radius_);
        case ComponentKind::FlatTorus: {
            double best = std::numeric_limits<double>::infinity();
            for (double l : periods_) best = std::min(best, std::pow(2.0 * kPi / l, 2));
            return best;
        }
        case ComponentKind::RoundSphere:
            return static_cast<double>(dimension_) / (radius_ * radius_);
        case ComponentKind::CustomList:
            for (const auto& e : custom_)
                if (e.first > 1e-12) return e.first;
            throw std::runtime_error(
                "custom spectrum has no positive eigenvalue below its cutoff");
    }
    throw std::logic_error("unreachable");
}

std::string CrossSectionComponent::describe() const {
    std::ostringstream ss;
    switch (kind_) {
        case ComponentKind::Circle:
            ss << "circle(r=" << radius_ << ")";
            break;
        case ComponentKind::FlatTorus: {
            ss << "flat-torus(";
            for (std::size_t i = 0; i < periods_.size(); ++i)
                ss << (i ? "," : "") << periods_[i];
            ss << ")";
            break;
        }
        case ComponentKind::RoundSphere:
            ss << "round-sphere(d=" << dimension_ << ",r=" << radius_ << ")";
            break;
        case ComponentKind::CustomList:
            ss << "custom-list(" << custom_.size() << " entries)";
            break;
    }
    return ss.str();
}

CrossSection::CrossSection(std::vector<CrossSectionComponent> components)
    : components_(std::move(components)) {
    if (components_.empty())
        throw std::invalid_argument("cross-section needs >= 1 component");
    const int n = components_.front().dimension();
    for (const auto& c : components_)
        if (c.dimension() != n)
            throw std::invalid_argument("cross-section components must share one dimension");
}

double CrossSection::total_volume() const {
    double v = 0;
    for (const auto& c : components_) v += c.volume();
    return v;
}

double CrossSection::min_component_volume() const {
    double v = components_.front().volume();
    for (const auto& c : components_) v = std::min(v, c.volume());
    return v;
}

double CrossSection::max_component_volume() const {
    double v = components_.front().volume();
    for (const auto& c : components_) v = std::max(v, c.volume());
    return v;
}

std::vector<SpectrumEntry> CrossSection::eigenvalues_below(
    double cutoff, std::size_t cap, EnumerationStrategy strategy) const {
    struct Tagged {
        double lambda;
        int mult;
        int comp;
    };
    std::vector<Tagged> all;
    if (strategy == EnumerationStrategy::LatticeWalk) {
        for (int ci = 0; ci < component_count(); ++ci)
            for (const auto& [lam, mult] : components_[ci].eigenvalues_below(cutoff, cap))
                all.push_back({lam, mult, ci});
        std::stable_sort(all.begin(), all.end(),
                         [](const Tagged& a, const Tagged& b) { return a.lambda < b.lambda; });
    } else {
        // k-way heap merge of the per-component sorted streams.
        std::vector<std::vector<std::pair<double, int>>> lists;
        lists.reserve(components_.size());
        for (const auto& c : components_) lists.push_back(c.eigenvalues_below(cutoff, cap));
        using Head = std::tuple<double, int, std::size_t>;  // (lambda, comp, pos)
        auto cmp = [](const Head& a, const Head& b) { return std::get<0>(a) > std::get<0>(b); };
        std::priority_queue<Head, std::vector<Head>, decltype(cmp)> heap(cmp);
        for (int ci = 0; ci < component_count(); ++ci)
            if (!lists[ci].empty()) heap.push({lists[ci][0].first, ci, 0});
        while (!heap.empty()) {
            auto [lam, ci, pos] = heap.top();
            heap.pop();
            all.push_back({lam, lists[ci][pos].second, ci});
            if (pos + 1 < lists[ci].size())
                heap.push({lists[ci][pos + 1].first, ci, pos + 1});
        }
    }
    if (all.size() > cap)
        throw std::runtime_error("merged eigenvalue enumeration exceeds cap");

    std::vector<SpectrumEntry> out;
    for (const auto& t : all) {
        if (!out.empty() && same_eigenvalue(out.back().lambda, t.lambda)) {
            out.back().multiplicity += t.mult;
            if (out.back().component != t.comp) out.back().component = -1;
        } else {
            out.push_back({t.lambda, t.mult, t.comp});
        }
    }
    return out;
}

double CrossSection::lambda_first_positive() const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : components_) best = std::min(best, c.first_positive_eigenvalue());
    return best;
}

std::string CrossSection::describe() const {
    std::ostringstream ss;
    for (std::size_t i = 0; i < components_.size(); ++i)
        ss << (i ? " + " : "") << components_[i].describe();
    return ss.str();
}

}  // namespace steklov
