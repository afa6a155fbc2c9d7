#pragma once

#include <string>
#include <vector>

#include "steklov/cross_section.hpp"
#include "steklov/mesh.hpp"
#include "steklov/mode_solver.hpp"
#include "steklov/profile.hpp"

namespace steklov {

// Global spectra on the cylinder, assembled by merging per-mode 1D
// eigenvalues across cross-section modes with multiplicities, with a
// truncation certificate based on the (numerically verified) monotonicity
// of per-mode eigenvalues in the cross-section eigenvalue.

enum class ProblemKind { SteklovTwoSided, SteklovDirichletCollar };

std::string to_string(ProblemKind kind);

struct SpectrumRequest {
    CrossSection cs;
    MetricFamily metric;   // profile on [-L,L] (two-sided) or [0,delta] (collar)
    double L = 1.0;
    ProblemKind kind = ProblemKind::SteklovTwoSided;
    double collar_depth = 0.0;
    int count = 10;
    Resolution resolution;
};

struct ModeBranch {
    double lambda = 0.0;      // cross-section eigenvalue of the mode
    int cs_multiplicity = 1;  // multiplicity of lambda on the cross-section
    int branch = 0;           // 0-based index among the per-mode eigenvalues
    double sigma = 0.0;       // reported value (extrapolated when enabled)
    double sigma_coarse = 0.0;
    double sigma_fine = 0.0;
};

struct EigenvalueGroup {
    double sigma = 0.0;
    int multiplicity = 0;
    std::vector<ModeBranch> sources;
};

struct TruncationCertificate {
    double lambda_cutoff = 0.0;       // largest included cross-section eigenvalue
    double omitted_lower_bound = 0.0; // min per-mode eigenvalue at the cutoff
    int distinct_modes = 0;
    bool monotonicity_verified = false;
};

struct SpectrumResult {
    std::vector<EigenvalueGroup> groups;  // sorted nondecreasing
    TruncationCertificate certificate;

    // Request summary kept for provenance and serialization.
    std::string cross_section;
    MetricFamilyKind family = MetricFamilyKind::Conformal;
    int n = 0;
    double L = 0.0;
    ProblemKind kind = ProblemKind::SteklovTwoSided;
    double collar_depth = 0.0;

    // j-th eigenvalue counted with multiplicity (1-based).
    double sigma(int j) const;
    int total_multiplicity() const;
};

SpectrumResult steklov_spectrum(const SpectrumRequest& req);
SpectrumResult steklov_dirichlet_spectrum(const SpectrumRequest& req);

// Convenience accessor honoring multiplicity (1-based).
double sigma_index(const SpectrumResult& result, int j);

// Merged Neumann spectrum of Sigma x [a,b] under the metric family, and
// its first positive eigenvalue mu; used by the Poincare-type checks.
std::vector<double> neumann_spectrum(const CrossSection& cs, const MetricFamily& metric,
                                     double a, double b, int count,
                                     const Resolution& res);
double first_positive_neumann(const CrossSection& cs, const MetricFamily& metric,
                              double a, double b, const Resolution& res);

}  // namespace steklov
