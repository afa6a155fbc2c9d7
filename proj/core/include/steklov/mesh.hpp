#pragma once

#include <cstddef>
#include <vector>

#include "steklov/profile.hpp"

namespace steklov {

// Mesh/solver resolution knobs shared by the spectrum and harness layers.
struct Resolution {
    int min_elements_per_piece = 16;
    // Plateau/transition pieces receive >= elements_per_epsilon * len/eps
    // elements so eps-scale features are resolved.
    double elements_per_epsilon = 8.0;
    int refine = 1;                 // multiplies every element count
    std::size_t mode_cap = 512;     // distinct cross-section eigenvalues
    std::size_t enum_cap = 200000;  // raw merged eigenvalue entries
    bool richardson = true;         // two-level order-2 extrapolation
};

// Strictly increasing node list; every profile-piece junction inside the
// requested interval is a node, and each piece is subdivided uniformly.
class Mesh1D {
  public:
    static Mesh1D build(const Profile& profile, double a, double b,
                        const Resolution& res);
    static Mesh1D build(const Profile& profile, const Resolution& res) {
        return build(profile, profile.domain_start(), profile.domain_end(), res);
    }

    const std::vector<double>& nodes() const { return nodes_; }
    std::size_t node_count() const { return nodes_.size(); }
    std::size_t element_count() const { return nodes_.size() - 1; }
    double a() const { return nodes_.front(); }
    double b() const { return nodes_.back(); }
    double width_max() const;

  private:
    explicit Mesh1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {}
    std::vector<double> nodes_;
};

}  // namespace steklov
