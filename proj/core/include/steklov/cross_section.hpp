#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace steklov {

// Closed cross-section geometries with closed-form Laplace spectra.
// A component is always connected: its spectrum starts at 0 with
// multiplicity one.  Disconnected cross-sections are modelled as ordered
// unions of components of equal dimension.

enum class ComponentKind { Circle, FlatTorus, RoundSphere, CustomList };

struct SpectrumEntry {
    double lambda = 0.0;
    int multiplicity = 0;
    int component = 0;  // -1 when an entry aggregates several components
};

class CrossSectionComponent {
  public:
    static CrossSectionComponent circle(double radius);
    // Rectangular flat torus R^d / (l_1 Z x ... x l_d Z); d >= 1.
    static CrossSectionComponent flat_torus(std::vector<double> periods);
    // Round sphere S^d of radius r: eigenvalues l(l+d-1)/r^2.
    static CrossSectionComponent round_sphere(int dimension, double radius);
    // Explicit finite spectrum (nondecreasing, first entry 0 with mult 1).
    static CrossSectionComponent custom_list(std::vector<std::pair<double, int>> entries,
                                             double volume, int dimension);
    // Two-column text file: eigenvalue multiplicity, '#' comments allowed.
    static CrossSectionComponent custom_from_file(const std::string& path,
                                                  double volume, int dimension);

    ComponentKind kind() const { return kind_; }
    int dimension() const { return dimension_; }
    double volume() const { return volume_; }
    double radius() const { return radius_; }                    // circle / sphere
    const std::vector<double>& periods() const { return periods_; }  // flat torus

    // All eigenvalues <= cutoff as (lambda, multiplicity), nondecreasing,
    // aggregated within the component.  `cap` guards unbounded enumeration.
    std::vector<std::pair<double, int>> eigenvalues_below(double cutoff,
                                                          std::size_t cap) const;

    double first_positive_eigenvalue() const;
    std::string describe() const;

  private:
    CrossSectionComponent() = default;

    ComponentKind kind_ = ComponentKind::Circle;
    int dimension_ = 1;
    double volume_ = 0.0;
    double radius_ = 0.0;                              // circle / sphere
    std::vector<double> periods_;                      // flat torus
    std::vector<std::pair<double, int>> custom_;       // custom list
};

enum class EnumerationStrategy { LatticeWalk, SortedHeap };

class CrossSection {
  public:
    explicit CrossSection(std::vector<CrossSectionComponent> components);

    static CrossSection circle(double radius) {
        return CrossSection({CrossSectionComponent::circle(radius)});
    }
    static CrossSection flat_torus(std::vector<double> periods) {
        return CrossSection({CrossSectionComponent::flat_torus(std::move(periods))});
    }
    static CrossSection round_sphere(int dimension, double radius) {
        return CrossSection({CrossSectionComponent::round_sphere(dimension, radius)});
    }

    const std::vector<CrossSectionComponent>& components() const { return components_; }
    int component_count() const { return static_cast<int>(components_.size()); }
    int dimension() const { return components_.front().dimension(); }

    double total_volume() const;
    double min_component_volume() const;
    double max_component_volume() const;

    // Merged spectrum of the disjoint union, sorted and aggregated across
    // components when eigenvalues coincide within the dedup tolerance
    // |a-b| <= 1e-12 max(1,a).  Throws when more than `cap` entries would
    // be produced.
    std::vector<SpectrumEntry> eigenvalues_below(
        double cutoff, std::size_t cap = 100000,
        EnumerationStrategy strategy = EnumerationStrategy::SortedHeap) const;

    // First positive merged eigenvalue lambda_{b+1}.
    double lambda_first_positive() const;

    std::string describe() const;

  private:
    std::vector<CrossSectionComponent> components_;
};

}  // namespace steklov
