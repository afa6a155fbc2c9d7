#include "steklov/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "steklov/numerics.hpp"

namespace steklov {

std::string to_string(ProblemKind kind) {
    return kind == ProblemKind::SteklovTwoSided ? "steklov-two-sided"
                                                : "steklov-dirichlet-collar";
}

namespace {

double richardson(double coarse, double fine) { return fine + (fine - coarse) / 3.0; }

struct ModeSolveOutput {
    std::vector<ModeBranch> branches;  // ascending in sigma
    double min_branch = 0.0;
};

struct Solver {
    const SpectrumRequest& req;
    ElementWeights coarse;
    ElementWeights fine;
    double t0, t1;
    EndpointCondition bc_left, bc_right;

    explicit Solver(const SpectrumRequest& r) : req(r) {
        if (req.count < 1) throw std::invalid_argument("spectrum: count must be >= 1");
        if (req.kind == ProblemKind::SteklovDirichletCollar) {
            if (!(req.collar_depth > 0) || !(req.collar_depth < 2 * req.L))
                throw std::invalid_argument(
                    "spectrum: collar depth must lie in (0, 2L)");
            t0 = req.metric.profile.domain_start();
            t1 = t0 + req.collar_depth;
            bc_left = EndpointCondition::Steklov;
            bc_right = EndpointCondition::Dirichlet;
        } else {
            t0 = req.metric.profile.domain_start();
            t1 = req.metric.profile.domain_end();
            bc_left = EndpointCondition::Steklov;
            bc_right = EndpointCondition::Steklov;
        }
        Resolution res = req.resolution;
        const Mesh1D mesh_c = Mesh1D::build(req.metric.profile, t0, t1, res);
        res.refine *= 2;
        const Mesh1D mesh_f = Mesh1D::build(req.metric.profile, t0, t1, res);
        coarse = assemble_weights(req.metric, mesh_c);
        fine = assemble_weights(req.metric, mesh_f);
    }

    ModeSolveOutput solve(double lambda, int cs_mult) const {
        const ModeProblem mp(lambda, req.metric, t0, t1, bc_left, bc_right);
        const DtNMatrix dc = dtn_matrix(mp, coarse);
        const DtNMatrix df = dtn_matrix(mp, fine);
        ModeSolveOutput out;
        for (int b = 0; b < dc.size; ++b) {
            ModeBranch mb;
            mb.lambda = lambda;
            mb.cs_multiplicity = cs_mult;
            mb.branch = b;
            mb.sigma_coarse = dc.eigenvalues[b];
            mb.sigma_fine = df.eigenvalues[b];
            mb.sigma = req.resolution.richardson
                           ? richardson(mb.sigma_coarse, mb.sigma_fine)
                           : mb.sigma_fine;
            if (mb.sigma_coarse == 0.0 && mb.sigma_fine == 0.0) mb.sigma = 0.0;
            out.branches.push_back(mb);
        }
        std::sort(out.branches.begin(), out.branches.end(),
                  [](const ModeBranch& x, const ModeBranch& y) { return x.sigma < y.sigma; });
        for (std::size_t b = 0; b < out.branches.size(); ++b)
            out.branches[b].branch = static_cast<int>(b);
        out.min_branch = out.branches.front().sigma;
        return out;
    }
};

// k-th smallest collected value counted with multiplicity; NaN while fewer
// than k values are available.
double kth_with_multiplicity(std::vector<std::pair<double, int>> pool, int k) {
    std::sort(pool.begin(), pool.end());
    long long seen = 0;
    for (const auto& [sigma, mult] : pool) {
        seen += mult;
        if (seen >= k) return sigma;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

SpectrumResult assemble(const SpectrumRequest& req) {
    const Solver solver(req);

    std::vector<ModeBranch> all;
    std::vector<std::pair<double, int>> pool;  // (sigma, multiplicity)
    double last_min_branch = -std::numeric_limits<double>::infinity();
    double lambda_cutoff = 0.0;
    double omitted_bound = 0.0;
    int distinct = 0;
    int settled = 0;  // consecutive trailing modes whose min branch clears sigma_k

    double cutoff = std::max(1.0, 4.0 * req.cs.lambda_first_positive());
    std::size_t consumed = 0;
    bool done = false;
    const std::size_t chunk_size =
        std::max<std::size_t>(2, 2 * static_cast<std::size_t>(default_thread_count()));
    while (!done) {
        const auto modes = req.cs.eigenvalues_below(cutoff, req.resolution.enum_cap);
        while (consumed < modes.size() && !done) {
            if (distinct >= static_cast<int>(req.resolution.mode_cap)) {
                std::ostringstream ss;
                ss << "spectrum: truncation certificate unattainable within mode cap "
                   << req.resolution.mode_cap << " (included " << distinct
                   << " modes up to lambda=" << lambda_cutoff << ", current sigma_"
                   << req.count << "=" << kth_with_multiplicity(pool, req.count)
                   << ", min branch=" << last_min_branch << ")";
                throw std::runtime_error(ss.str());
            }
            // Mode solves are independent; dispatch a chunk to the worker
            // pool, then evaluate the stopping rule in lambda order.
            const std::size_t hi =
                std::min({modes.size(), consumed + chunk_size,
                          consumed + req.resolution.mode_cap -
                              static_cast<std::size_t>(distinct)});
            std::vector<ModeSolveOutput> outputs(hi - consumed);
            parallel_for(hi - consumed, [&](std::size_t j) {
                outputs[j] = solver.solve(modes[consumed + j].lambda,
                                          modes[consumed + j].multiplicity);
            });
            for (std::size_t j = 0; j < outputs.size() && !done; ++j) {
                const ModeSolveOutput& out = outputs[j];
                ++distinct;
                lambda_cutoff = modes[consumed + j].lambda;
                omitted_bound = out.min_branch;

                // Truncation rests on per-mode minima being nondecreasing
                // in lambda; a decrease voids the certificate.
                if (out.min_branch < last_min_branch * (1 - 1e-9) - 1e-12) {
                    std::ostringstream ss;
                    ss << "spectrum: certificate error: per-mode minimum eigenvalue "
                       << "decreased from " << last_min_branch << " to "
                       << out.min_branch << " at lambda=" << modes[consumed + j].lambda;
                    throw std::runtime_error(ss.str());
                }
                last_min_branch = std::max(last_min_branch, out.min_branch);

                for (const auto& mb : out.branches) {
                    all.push_back(mb);
                    pool.emplace_back(mb.sigma, mb.cs_multiplicity);
                }

                const double sigma_k = kth_with_multiplicity(pool, req.count);
                if (!std::isnan(sigma_k) && out.min_branch > sigma_k)
                    ++settled;
                else
                    settled = 0;
                if (settled >= 3) done = true;  // trigger mode + 2 safety modes
            }
            consumed = hi;
        }
        if (!done) cutoff *= 4.0;
    }

    std::sort(all.begin(), all.end(),
              [](const ModeBranch& x, const ModeBranch& y) { return x.sigma < y.sigma; });

    SpectrumResult result;
    for (const auto& mb : all) {
        const bool merge =
            !result.groups.empty() &&
            std::abs(result.groups.back().sigma - mb.sigma) <=
                1e-8 * std::max(1.0, std::abs(mb.sigma));
        if (merge) {
            auto& g = result.groups.back();
            g.multiplicity += mb.cs_multiplicity;
            g.sources.push_back(mb);
        } else {
            result.groups.push_back({mb.sigma, mb.cs_multiplicity, {mb}});
        }
    }
    result.certificate = {lambda_cutoff, omitted_bound, distinct, true};
    result.cross_section = req.cs.describe();
    result.family = req.metric.family;
    result.n = req.metric.n;
    result.L = req.L;
    result.kind = req.kind;
    result.collar_depth = req.collar_depth;

    if (req.kind == ProblemKind::SteklovTwoSided) {
        if (result.groups.empty() || result.groups.front().sigma != 0.0)
            throw std::runtime_error("spectrum: sigma_1 = 0 invariant violated");
        if (result.groups.front().multiplicity != req.cs.component_count())
            throw std::runtime_error(
                "spectrum: zero-eigenvalue multiplicity must equal the number of "
                "connected components");
    } else {
        if (!result.groups.empty() && result.groups.front().sigma <= 0.0)
            throw std::runtime_error(
                "spectrum: mixed Steklov-Dirichlet eigenvalues must be positive");
    }
    return result;
}

}  // namespace

double SpectrumResult::sigma(int j) const {
    if (j < 1) throw std::out_of_range("sigma index must be >= 1");
    long long seen = 0;
    for (const auto& g : groups) {
        seen += g.multiplicity;
        if (seen >= j) return g.sigma;
    }
    throw std::out_of_range("sigma index " + std::to_string(j) +
                            " exceeds available count " + std::to_string(seen));
}

int SpectrumResult::total_multiplicity() const {
    long long seen = 0;
    for (const auto& g : groups) seen += g.multiplicity;
    return static_cast<int>(seen);
}

SpectrumResult steklov_spectrum(const SpectrumRequest& req) {
    if (req.kind != ProblemKind::SteklovTwoSided)
        throw std::invalid_argument("steklov_spectrum: request kind mismatch");
    return assemble(req);
}

SpectrumResult steklov_dirichlet_spectrum(const SpectrumRequest& req) {
    if (req.kind != ProblemKind::SteklovDirichletCollar)
        throw std::invalid_argument("steklov_dirichlet_spectrum: request kind mismatch");
    return assemble(req);
}

double sigma_index(const SpectrumResult& result, int j) { return result.sigma(j); }

std::vector<double> neumann_spectrum(const CrossSection& cs, const MetricFamily& metric,
                                     double a, double b, int count,
                                     const Resolution& res) {
    if (count < 1) throw std::invalid_argument("neumann_spectrum: count >= 1");
    Resolution fine_res = res;
    fine_res.refine *= 2;
    const Mesh1D mesh_c = Mesh1D::build(metric.profile, a, b, res);
    const Mesh1D mesh_f = Mesh1D::build(metric.profile, a, b, fine_res);

    std::vector<double> merged;
    double cutoff = std::max(1.0, 4.0 * cs.lambda_first_positive());
    std::size_t consumed = 0;
    int settled = 0;
    int distinct = 0;
    bool done = false;
    while (!done) {
        const auto modes = cs.eigenvalues_below(cutoff, res.enum_cap);
        for (std::size_t i = consumed; i < modes.size() && !done; ++i) {
            if (distinct >= static_cast<int>(res.mode_cap))
                throw std::runtime_error("neumann_spectrum: mode cap exceeded");
            const ModeProblem mp(modes[i].lambda, metric, a, b,
                                 EndpointCondition::Neumann, EndpointCondition::Neumann);
            const auto vc = neumann_eigenvalues(mp, mesh_c, count);
            const auto vf = neumann_eigenvalues(mp, mesh_f, count);
            ++distinct;
            double min_branch = std::numeric_limits<double>::infinity();
            for (int k = 0; k < count; ++k) {
                double v = res.richardson ? richardson(vc[k], vf[k]) : vf[k];
                if (vc[k] == 0.0 && vf[k] == 0.0) v = 0.0;
                min_branch = std::min(min_branch, v);
                for (int m = 0; m < modes[i].multiplicity; ++m) merged.push_back(v);
            }
            std::sort(merged.begin(), merged.end());
            const double target = merged.size() >= static_cast<std::size_t>(count)
                                      ? merged[count - 1]
                                      : std::numeric_limits<double>::quiet_NaN();
            if (!std::isnan(target) && min_branch > target)
                ++settled;
            else
                settled = 0;
            if (settled >= 3) done = true;
        }
        consumed = modes.size();
        if (!done) cutoff *= 4.0;
    }
    merged.resize(std::min<std::size_t>(merged.size(), count * 4));
    return merged;
}

double first_positive_neumann(const CrossSection& cs, const MetricFamily& metric,
                              double a, double b, const Resolution& res) {
    const auto merged = neumann_spectrum(cs, metric, a, b, 3, res);
    for (double v : merged)
        if (v > 1e-10) return v;
    throw std::runtime_error("first_positive_neumann: no positive eigenvalue found");
}

}  // namespace steklov
