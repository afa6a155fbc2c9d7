#include "steklov/scenario.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "toml.hpp"

namespace steklov {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& field, const std::string& reason) {
    throw std::invalid_argument("config field '" + field + "': " + reason);
}

void require_keys(const json& obj, const std::string& context,
                  const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            schema_error(context.empty() ? key : context + "." + key,
                         "unknown field");
}

double get_number(const json& obj, const std::string& context, const std::string& key,
                  bool required, double fallback = 0.0) {
    if (!obj.contains(key)) {
        if (required) schema_error(context + "." + key, "missing required field");
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) schema_error(context + "." + key, "expected a number");
    return v.get<double>();
}

long long get_integer(const json& obj, const std::string& context, const std::string& key,
                      bool required, long long fallback = 0) {
    if (!obj.contains(key)) {
        if (required) schema_error(context + "." + key, "missing required field");
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) schema_error(context + "." + key, "expected an integer");
    return v.get<long long>();
}

std::string get_string(const json& obj, const std::string& context, const std::string& key,
                       bool required, const std::string& fallback = "") {
    if (!obj.contains(key)) {
        if (required) schema_error(context + "." + key, "missing required field");
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_string()) schema_error(context + "." + key, "expected a string");
    return v.get<std::string>();
}

bool get_bool(const json& obj, const std::string& context, const std::string& key,
              bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) schema_error(context + "." + key, "expected a boolean");
    return v.get<bool>();
}

std::vector<double> get_number_array(const json& obj, const std::string& context,
                                     const std::string& key, bool required) {
    std::vector<double> out;
    if (!obj.contains(key)) {
        if (required) schema_error(context + "." + key, "missing required field");
        return out;
    }
    const json& v = obj.at(key);
    if (!v.is_array()) schema_error(context + "." + key, "expected an array of numbers");
    for (const auto& e : v) {
        if (!e.is_number()) schema_error(context + "." + key, "expected numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

CrossSectionComponent parse_component(const json& obj, const std::string& context) {
    const std::string kind = get_string(obj, context, "kind", true);
    if (kind == "circle") {
        require_keys(obj, context, {"kind", "radius"});
        return CrossSectionComponent::circle(get_number(obj, context, "radius", true));
    }
    if (kind == "flat-torus") {
        require_keys(obj, context, {"kind", "periods"});
        return CrossSectionComponent::flat_torus(
            get_number_array(obj, context, "periods", true));
    }
    if (kind == "round-sphere") {
        require_keys(obj, context, {"kind", "dimension", "radius"});
        return CrossSectionComponent::round_sphere(
            static_cast<int>(get_integer(obj, context, "dimension", true)),
            get_number(obj, context, "radius", true));
    }
    if (kind == "custom-list") {
        require_keys(obj, context, {"kind", "file", "eigenvalues", "volume", "dimension"});
        const double vol = get_number(obj, context, "volume", true);
        const int dim = static_cast<int>(get_integer(obj, context, "dimension", true));
        if (obj.contains("file"))
            return CrossSectionComponent::custom_from_file(
                get_string(obj, context, "file", true), vol, dim);
        if (!obj.contains("eigenvalues"))
            schema_error(context, "custom-list needs 'file' or 'eigenvalues'");
        std::vector<std::pair<double, int>> entries;
        for (const auto& e : obj.at("eigenvalues")) {
            if (!e.is_array() || e.size() != 2)
                schema_error(context + ".eigenvalues", "expected [eigenvalue, multiplicity] pairs");
            entries.emplace_back(e[0].get<double>(), e[1].get<int>());
        }
        return CrossSectionComponent::custom_list(std::move(entries), vol, dim);
    }
    schema_error(context + ".kind",
                 "unknown kind '" + kind +
                     "' (circle | flat-torus | round-sphere | custom-list | union)");
}

CrossSection parse_cross_section(const json& obj) {
    const std::string context = "cross_section";
    const std::string kind = get_string(obj, context, "kind", true);
    if (kind == "union") {
        require_keys(obj, context, {"kind", "components"});
        if (!obj.contains("components") || !obj.at("components").is_array() ||
            obj.at("components").empty())
            schema_error(context + ".components", "expected a nonempty array of components");
        std::vector<CrossSectionComponent> components;
        int i = 0;
        for (const auto& e : obj.at("components"))
            components.push_back(
                parse_component(e, context + ".components[" + std::to_string(i++) + "]"));
        return CrossSection(std::move(components));
    }
    return CrossSection({parse_component(obj, context)});
}

std::vector<ProfilePiece> parse_pieces(const json& arr) {
    std::vector<ProfilePiece> pieces;
    int i = 0;
    for (const auto& e : arr) {
        const std::string context = "metric.pieces[" + std::to_string(i++) + "]";
        const std::string kind = get_string(e, context, "kind", true);
        ProfilePiece piece;
        piece.t0 = get_number(e, context, "from", true);
        piece.t1 = get_number(e, context, "to", true);
        if (kind == "constant") {
            require_keys(e, context, {"kind", "from", "to", "value"});
            piece.kind = ProfilePiece::Kind::Constant;
            piece.value_left = piece.value_right = get_number(e, context, "value", true);
        } else if (kind == "transition") {
            require_keys(e, context, {"kind", "from", "to", "from_value", "to_value"});
            piece.kind = ProfilePiece::Kind::SmoothTransition;
            piece.value_left = get_number(e, context, "from_value", true);
            piece.value_right = get_number(e, context, "to_value", true);
        } else {
            schema_error(context + ".kind", "expected 'constant' or 'transition'");
        }
        pieces.push_back(piece);
    }
    return pieces;
}

Scenario scenario_from_json(const json& root) {
    require_keys(root, "", {"name", "seed", "checks", "cross_section", "metric",
                            "problem", "resolution", "output", "quasiiso",
                            "volume-growth", "lemneu", "small-eigenvalues",
                            "collar-domination", "rayleigh"});
    Scenario s;
    s.name = get_string(root, "", "name", false, "scenario");
    s.seed = static_cast<std::uint64_t>(get_integer(root, "", "seed", false, 0));

    if (!root.contains("cross_section"))
        schema_error("cross_section", "missing required table");
    s.cs = parse_cross_section(root.at("cross_section"));

    if (!root.contains("metric")) schema_error("metric", "missing required table");
    const json& metric = root.at("metric");
    require_keys(metric, "metric",
                 {"family", "profile", "L", "epsilons", "strict_epsilon", "pieces"});
    const std::string family = get_string(metric, "metric", "family", true);
    if (family == "conformal")
        s.family = MetricFamilyKind::Conformal;
    else if (family == "warped")
        s.family = MetricFamilyKind::Warped;
    else
        schema_error("metric.family", "expected 'conformal' or 'warped'");
    s.profile_label = profile_label_from_string(get_string(metric, "metric", "profile", true));
    s.L = get_number(metric, "metric", "L", true);
    s.epsilons = get_number_array(metric, "metric", "epsilons", false);
    if (s.epsilons.empty()) s.epsilons = {0.1};
    s.strict_epsilon = get_bool(metric, "metric", "strict_epsilon", true);
    if (s.profile_label == ProfileLabel::Custom) {
        if (!metric.contains("pieces"))
            schema_error("metric.pieces", "custom profiles need an ordered piece list");
        s.custom_pieces = parse_pieces(metric.at("pieces"));
    }

    if (root.contains("problem")) {
        const json& problem = root.at("problem");
        require_keys(problem, "problem", {"kind", "count", "collar_depth"});
        const std::string kind = get_string(problem, "problem", "kind", false, "steklov");
        if (kind == "steklov")
            s.problem = ProblemKind::SteklovTwoSided;
        else if (kind == "steklov-dirichlet")
            s.problem = ProblemKind::SteklovDirichletCollar;
        else
            schema_error("problem.kind", "expected 'steklov' or 'steklov-dirichlet'");
        s.count = static_cast<int>(get_integer(problem, "problem", "count", false, 10));
        if (s.count < 1) schema_error("problem.count", "must be >= 1");
        s.collar_depth = get_number(problem, "problem", "collar_depth", false, 0.0);
    }

    if (root.contains("resolution")) {
        const json& res = root.at("resolution");
        require_keys(res, "resolution",
                     {"min_elements_per_piece", "elements_per_epsilon", "refine",
                      "mode_cap", "enum_cap", "richardson"});
        s.resolution.min_elements_per_piece = static_cast<int>(
            get_integer(res, "resolution", "min_elements_per_piece", false, 16));
        s.resolution.elements_per_epsilon =
            get_number(res, "resolution", "elements_per_epsilon", false, 8.0);
        s.resolution.refine =
            static_cast<int>(get_integer(res, "resolution", "refine", false, 1));
        s.resolution.mode_cap = static_cast<std::size_t>(
            get_integer(res, "resolution", "mode_cap", false, 512));
        s.resolution.enum_cap = static_cast<std::size_t>(
            get_integer(res, "resolution", "enum_cap", false, 200000));
        s.resolution.richardson = get_bool(res, "resolution", "richardson", true);
    }

    if (root.contains("checks")) {
        const json& checks = root.at("checks");
        if (!checks.is_array()) schema_error("checks", "expected an array of check names");
        for (const auto& c : checks) {
            if (!c.is_string()) schema_error("checks", "expected strings");
            s.checks.push_back(c.get<std::string>());
        }
    }

    if (root.contains("quasiiso")) {
        const json& q = root.at("quasiiso");
        require_keys(q, "quasiiso", {"ratio"});
        s.quasiiso_ratio = get_number(q, "quasiiso", "ratio", false, 1.2);
    }
    if (root.contains("volume-growth")) {
        const json& v = root.at("volume-growth");
        require_keys(v, "volume-growth", {"factor"});
        s.volume_growth_factor = get_number(v, "volume-growth", "factor", false, 10.0);
    }
    if (root.contains("lemneu")) {
        const json& l = root.at("lemneu");
        require_keys(l, "lemneu", {"trials"});
        s.lemneu_trials =
            static_cast<int>(get_integer(l, "lemneu", "trials", false, 100));
        if (s.lemneu_trials < 1) schema_error("lemneu.trials", "must be >= 1");
    }
    if (root.contains("collar-domination")) {
        const json& c = root.at("collar-domination");
        require_keys(c, "collar-domination", {"delta"});
        const double delta = get_number(c, "collar-domination", "delta", false, 0.0);
        if (delta > 0) s.collar_depth = delta;
    }
    if (root.contains("small-eigenvalues")) {
        const json& se = root.at("small-eigenvalues");
        require_keys(se, "small-eigenvalues",
                     {"m", "k", "ball_radius", "threshold", "resolution"});
        const auto ms = get_number_array(se, "small-eigenvalues", "m", false);
        if (!ms.empty()) s.smalleig_m = ms;
        if (se.contains("k")) {
            s.smalleig_k.clear();
            for (const auto& e : se.at("k")) {
                if (!e.is_number_integer())
                    schema_error("small-eigenvalues.k", "expected integers");
                s.smalleig_k.push_back(e.get<int>());
            }
        }
        s.smalleig_ball_radius =
            get_number(se, "small-eigenvalues", "ball_radius", false, 2.9);
        s.smalleig_threshold =
            get_number(se, "small-eigenvalues", "threshold", false, 1e-2);
        if (se.contains("resolution")) {
            const auto r = get_number_array(se, "small-eigenvalues", "resolution", false);
            if (r.size() != 3)
                schema_error("small-eigenvalues.resolution", "expected [n1, n2, nt]");
            for (int i = 0; i < 3; ++i)
                s.smalleig_resolution[i] = static_cast<std::size_t>(r[i]);
        }
    }

    if (root.contains("output")) {
        const json& out = root.at("output");
        require_keys(out, "output", {"csv", "json", "svg"});
        s.csv_path = get_string(out, "output", "csv", false);
        s.json_path = get_string(out, "output", "json", false);
        s.svg_path = get_string(out, "output", "svg", false);
    }
    return s;
}

}  // namespace

Scenario load_scenario_text(const std::string& toml_text) {
    return scenario_from_json(parse_toml(toml_text));
}

Scenario load_scenario_file(const std::string& path) {
    return scenario_from_json(parse_toml_file(path));
}

}  // namespace steklov
