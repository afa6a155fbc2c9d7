#include "steklov/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace steklov {

namespace {

using json = nlohmann::ordered_json;

// NaN is not representable in JSON; report it as null.
json number_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

json spectrum_json(const SpectrumResult& r) {
    json out;
    out["cross_section"] = r.cross_section;
    out["family"] = to_string(r.family);
    out["n"] = r.n;
    out["L"] = r.L;
    out["problem"] = to_string(r.kind);
    if (r.kind == ProblemKind::SteklovDirichletCollar) out["collar_depth"] = r.collar_depth;
    out["eigenvalues"] = json::array();
    for (const auto& g : r.groups) {
        json entry;
        entry["sigma"] = g.sigma;
        entry["multiplicity"] = g.multiplicity;
        entry["sources"] = json::array();
        for (const auto& src : g.sources) {
            json sj;
            sj["lambda"] = src.lambda;
            sj["cs_multiplicity"] = src.cs_multiplicity;
            sj["branch"] = src.branch;
            sj["sigma"] = src.sigma;
            sj["sigma_raw_coarse"] = src.sigma_coarse;
            sj["sigma_raw_fine"] = src.sigma_fine;
            entry["sources"].push_back(sj);
        }
        out["eigenvalues"].push_back(entry);
    }
    json cert;
    cert["lambda_cutoff"] = r.certificate.lambda_cutoff;
    cert["omitted_lower_bound"] = r.certificate.omitted_lower_bound;
    cert["distinct_modes"] = r.certificate.distinct_modes;
    cert["monotonicity_verified"] = r.certificate.monotonicity_verified;
    out["truncation_certificate"] = cert;
    return out;
}

json report_json(const CheckReport& r) {
    json out;
    out["check"] = r.check;
    out["pass"] = r.pass;
    out["constants"] = json::array();
    for (const auto& c : r.constants) {
        json cj;
        cj["name"] = c.name;
        cj["value"] = c.value;
        cj["formula"] = c.formula;
        out["constants"].push_back(cj);
    }
    out["rows"] = json::array();
    for (const auto& row : r.rows) {
        json rj;
        rj["epsilon"] = number_or_null(row.epsilon);
        rj["index"] = row.index;
        rj["computed"] = number_or_null(row.computed);
        rj["bound"] = number_or_null(row.bound);
        rj["slack"] = number_or_null(row.slack);
        rj["pass"] = row.pass;
        if (!row.note.empty()) rj["note"] = row.note;
        out["rows"].push_back(rj);
    }
    if (!r.notes.empty()) out["notes"] = r.notes;
    if (!std::isnan(r.loglog_slope)) out["loglog_slope"] = r.loglog_slope;
    return out;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string scenario_run_to_json(const ScenarioRun& run) {
    const Scenario& s = run.scenario;
    json out;
    json sj;
    sj["name"] = s.name;
    sj["seed"] = s.seed;
    sj["cross_section"] = s.cs.describe();
    sj["family"] = to_string(s.family);
    sj["profile"] = to_string(s.profile_label);
    sj["transition"] = "log-space C-infinity smoothstep";
    sj["L"] = s.L;
    sj["epsilons"] = s.epsilons;
    sj["problem"] = to_string(s.problem);
    sj["count"] = s.count;
    json res;
    res["min_elements_per_piece"] = s.resolution.min_elements_per_piece;
    res["elements_per_epsilon"] = s.resolution.elements_per_epsilon;
    res["refine"] = s.resolution.refine;
    res["mode_cap"] = s.resolution.mode_cap;
    res["richardson"] = s.resolution.richardson;
    sj["resolution"] = res;
    out["scenario"] = sj;

    out["sweep"] = json::array();
    for (const auto& pt : run.sweep) {
        json pj;
        pj["epsilon"] = pt.epsilon;
        pj["volume"] = pt.volume;
        pj["axial_boundary_distance"] = pt.axial_distance;
        pj["spectrum"] = spectrum_json(pt.spectrum);
        out["sweep"].push_back(pj);
    }
    out["checks"] = json::array();
    for (const auto& r : run.reports) out["checks"].push_back(report_json(r));
    out["all_pass"] = run.all_pass;
    return out.dump(2) + "\n";
}

std::string sweep_to_csv(const ScenarioRun& run) {
    std::ostringstream out;
    out << "epsilon,k,sigma,multiplicity,lambda,branch\n";
    for (const auto& pt : run.sweep) {
        int k = 1;
        for (const auto& g : pt.spectrum.groups) {
            for (const auto& src : g.sources) {
                for (int m = 0; m < src.cs_multiplicity; ++m) {
                    if (k > run.scenario.count) break;
                    out << fmt(pt.epsilon) << ',' << k << ',' << fmt(src.sigma) << ','
                        << g.multiplicity << ',' << fmt(src.lambda) << ',' << src.branch
                        << '\n';
                    ++k;
                }
            }
        }
    }
    return out.str();
}

std::string spectrum_to_json(const SpectrumResult& result) {
    return spectrum_json(result).dump(2) + "\n";
}

std::string spectrum_to_csv(const SpectrumResult& result) {
    std::ostringstream out;
    out << "index,eigenvalue,multiplicity\n";
    int k = 1;
    for (const auto& g : result.groups) {
        out << k << ',' << fmt(g.sigma) << ',' << g.multiplicity << '\n';
        k += g.multiplicity;
    }
    return out.str();
}

namespace {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;  // (epsilon, value)
};

std::string svg_plot(const std::vector<Series>& series, const std::string& title) {
    const double width = 640, height = 480;
    const double ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            if (x <= 0 || y <= 0) continue;
            xmin = std::min(xmin, std::log10(x));
            xmax = std::max(xmax, std::log10(x));
            ymin = std::min(ymin, std::log10(y));
            ymax = std::max(ymax, std::log10(y));
        }
    if (xmin > xmax || ymin > ymax) {
        xmin = ymin = 0;
        xmax = ymax = 1;
    }
    if (xmax - xmin < 1e-9) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax - ymin < 1e-9) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    auto px = [&](double lx) {
        return ml + (lx - xmin) / (xmax - xmin) * (width - ml - mr);
    };
    auto py = [&](double ly) {
        return height - mb - (ly - ymin) / (ymax - ymin) * (height - mt - mb);
    };
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                            "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
        << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
    // Axes.
    out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
        << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << height - mb << "\" stroke=\"black\"/>\n";
    char buf[64];
    for (int i = 0; i <= 4; ++i) {
        const double lx = xmin + (xmax - xmin) * i / 4;
        const double ly = ymin + (ymax - ymin) * i / 4;
        std::snprintf(buf, sizeof(buf), "%.3g", std::pow(10.0, lx));
        out << "<text x=\"" << px(lx) << "\" y=\"" << height - mb + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << buf << "</text>\n";
        std::snprintf(buf, sizeof(buf), "%.3g", std::pow(10.0, ly));
        out << "<text x=\"" << ml - 8 << "\" y=\"" << py(ly) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << buf
            << "</text>\n";
    }
    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << "epsilon (log)</text>\n";

    int ci = 0;
    double legend_y = mt + 6;
    for (const auto& s : series) {
        const char* color = colors[ci++ % 8];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        std::vector<std::pair<double, double>> pts = s.points;
        std::sort(pts.begin(), pts.end());
        for (const auto& [x, y] : pts)
            if (x > 0 && y > 0) out << px(std::log10(x)) << ',' << py(std::log10(y)) << ' ';
        out << "\"/>\n";
        for (const auto& [x, y] : pts)
            if (x > 0 && y > 0)
                out << "<circle cx=\"" << px(std::log10(x)) << "\" cy=\""
                    << py(std::log10(y)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << width - mr - 6 << "\" y=\"" << legend_y
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
            << color << "\">" << s.label << "</text>\n";
        legend_y += 14;
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace

std::string checks_to_svg(const ScenarioRun& run) {
    std::vector<Series> series;
    for (const auto& report : run.reports) {
        Series computed{report.check + " computed", {}};
        Series bound{report.check + " bound", {}};
        for (const auto& row : report.rows) {
            if (std::isnan(row.epsilon) || !row.note.empty()) continue;
            computed.points.emplace_back(row.epsilon, row.computed);
            bound.points.emplace_back(row.epsilon, row.bound);
        }
        if (!computed.points.empty()) {
            series.push_back(std::move(computed));
            series.push_back(std::move(bound));
        }
    }
    return svg_plot(series, run.scenario.name + ": eigenvalue vs epsilon");
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

void write_artifacts(const ScenarioRun& run) {
    const Scenario& s = run.scenario;
    if (!s.csv_path.empty()) write_file_atomic(s.csv_path, sweep_to_csv(run));
    if (!s.json_path.empty()) write_file_atomic(s.json_path, scenario_run_to_json(run));
    if (!s.svg_path.empty()) write_file_atomic(s.svg_path, checks_to_svg(run));
}

}  // namespace steklov
