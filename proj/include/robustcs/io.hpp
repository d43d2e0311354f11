#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "robustcs/core.hpp"
#include "robustcs/genprefs.hpp"
#include "robustcs/oracle.hpp"
#include "robustcs/region.hpp"
#include "robustcs/relevance.hpp"
#include "robustcs/steepening.hpp"

namespace robustcs {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct ActionEntry {
    std::string name;
    Payoffs pre;
    std::optional<Payoffs> post;

    friend bool operator==(const ActionEntry&, const ActionEntry&) = default;
};

struct OracleSettings {
    std::size_t fillers = 9;
    std::vector<double> iotas = default_iotas();
    double edge_resolution = 0.01;
    /// 0 disables the simplex lattice (used only for three states).
    double simplex_resolution = 0.0;
    std::size_t random_members = 0;
    std::uint64_t seed = 1;

    friend bool operator==(const OracleSettings&, const OracleSettings&) = default;
};

struct ProblemDocument {
    int schema_version = kSchemaVersion;
    std::vector<double> states;
    std::vector<ActionEntry> actions;
    std::optional<json> functional;
    std::optional<OracleSettings> oracle;

    friend bool operator==(const ProblemDocument&, const ProblemDocument&) = default;
};

// ------------------------------------------------------------------ parsing

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

template <class T>
T field(const json& j, const char* key) {
    require(j.is_object() && j.contains(key), ErrorKind::ParseError, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, std::string("field '") + key + "': " + e.what());
    }
}

} // namespace detail

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports the byte just past the offending character.
        const auto [line, col] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    detail::require(static_cast<bool>(in), ErrorKind::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json to_json(const OracleSettings& s) {
    return {{"fillers", s.fillers},
            {"iotas", s.iotas},
            {"edge_resolution", s.edge_resolution},
            {"simplex_resolution", s.simplex_resolution},
            {"random_members", s.random_members},
            {"seed", s.seed}};
}

inline OracleSettings oracle_settings_from_json(const json& j) {
    OracleSettings s;
    if (j.contains("fillers")) s.fillers = detail::field<std::size_t>(j, "fillers");
    if (j.contains("iotas")) s.iotas = detail::field<std::vector<double>>(j, "iotas");
    if (j.contains("edge_resolution")) s.edge_resolution = detail::field<double>(j, "edge_resolution");
    if (j.contains("simplex_resolution")) s.simplex_resolution = detail::field<double>(j, "simplex_resolution");
    if (j.contains("random_members")) s.random_members = detail::field<std::size_t>(j, "random_members");
    if (j.contains("seed")) s.seed = detail::field<std::uint64_t>(j, "seed");
    return s;
}

inline json to_json(const ProblemDocument& d) {
    json acts = json::array();
    for (const auto& a : d.actions) {
        json e{{"name", a.name}, {"pre", a.pre}};
        if (a.post) e["post"] = *a.post;
        acts.push_back(std::move(e));
    }
    json j{{"schema_version", d.schema_version}, {"states", d.states}, {"actions", std::move(acts)}};
    if (d.functional) j["functional"] = *d.functional;
    if (d.oracle) j["oracle"] = to_json(*d.oracle);
    return j;
}

inline ProblemDocument document_from_json(const json& j) {
    detail::require(j.is_object(), ErrorKind::ParseError, "document must be a JSON object");
    ProblemDocument d;
    if (j.contains("schema_version")) d.schema_version = detail::field<int>(j, "schema_version");
    detail::require(d.schema_version == kSchemaVersion, ErrorKind::ParseError,
                    "unsupported schema_version " + std::to_string(d.schema_version));
    d.states = detail::field<std::vector<double>>(j, "states");
    const json acts = detail::field<json>(j, "actions");
    detail::require(acts.is_array(), ErrorKind::ParseError, "'actions' must be an array");
    for (const auto& a : acts) {
        ActionEntry e{detail::field<std::string>(a, "name"), detail::field<Payoffs>(a, "pre"), std::nullopt};
        if (a.contains("post")) e.post = detail::field<Payoffs>(a, "post");
        d.actions.push_back(std::move(e));
    }
    if (j.contains("functional")) d.functional = j.at("functional");
    if (j.contains("oracle")) d.oracle = oracle_settings_from_json(j.at("oracle"));
    return d;
}

inline ProblemDocument parse_document(const std::string& text) { return document_from_json(parse_json_text(text)); }

/// Shortest round-trip representation of every double.
inline std::string serialize_document(const ProblemDocument& d) { return to_json(d).dump(2); }

inline MonotoneProblem build_problem(const ProblemDocument& d) {
    std::vector<ActionPayoffs> acts;
    for (const auto& a : d.actions) acts.push_back({a.name, a.pre});
    return validate_problem(StateGrid(d.states), std::move(acts));
}

/// Actions without `post` keep their payoffs.
inline Transformation build_transformation(const ProblemDocument& d) {
    MonotoneProblem p = build_problem(d);
    PayoffTable post(p.size());
    for (const auto& a : d.actions) post[*p.index_of(a.name)] = a.post ? *a.post : a.pre;
    return validate_transformation(std::move(p), std::move(post));
}

// -------------------------------------------------------------- functionals

inline json to_json(const PiecewiseLinearUtility& u) {
    return {{"breakpoints", u.breakpoints()}, {"slopes", u.slopes()}, {"anchor", u.anchor()}};
}

inline PiecewiseLinearUtility utility_from_json(const json& j) {
    if (j.contains("kink"))
        return KinkedUtility(detail::field<double>(j, "kink"), detail::field<double>(j, "iota")).to_piecewise();
    return PiecewiseLinearUtility(detail::field<std::vector<double>>(j, "breakpoints"),
                                  detail::field<std::vector<double>>(j, "slopes"),
                                  j.contains("anchor") ? detail::field<double>(j, "anchor") : 0.0);
}

inline std::vector<Belief> beliefs_from_json(const json& j) {
    std::vector<Belief> out;
    for (const auto& w : j) out.emplace_back(w.get<std::vector<double>>());
    return out;
}

/**
 * {"kind": "eu"|"variational"|"multiplier"|"smooth", "u": utility?, "beliefs": [[..]],
 *  "weights": [..], "phi": utility?, "reference": [..], "theta": x}
 */
inline PreferenceFunctional functional_from_json(const json& j) {
    const auto kind = detail::field<std::string>(j, "kind");
    const auto u = j.contains("u") ? utility_from_json(j.at("u")) : PiecewiseLinearUtility::identity();
    auto beliefs = beliefs_from_json(detail::field<json>(j, "beliefs"));
    if (kind == "eu") {
        detail::require(beliefs.size() == 1, ErrorKind::ParseError, "eu functional takes exactly one belief");
        return make_eu(beliefs.front(), u);
    }
    if (kind == "variational")
        return make_variational(std::move(beliefs), detail::field<std::vector<double>>(j, "weights"), u);
    if (kind == "multiplier")
        return make_multiplier(std::move(beliefs), Belief(detail::field<std::vector<double>>(j, "reference")),
                               detail::field<double>(j, "theta"), u);
    if (kind == "smooth") {
        const auto phi = j.contains("phi") ? utility_from_json(j.at("phi")) : PiecewiseLinearUtility::identity();
        return make_smooth_ambiguity(std::move(beliefs), detail::field<std::vector<double>>(j, "weights"), u, phi);
    }
    throw Error(ErrorKind::ParseError, "unknown functional kind '" + kind + "'");
}

// ------------------------------------------------------------- oracle setup

inline UtilityFamily family_for(const Transformation& t, const OracleSettings& s) {
    UtilityFamily fam = default_family(t, s.fillers, s.iotas);
    if (s.random_members > 0) {
        const auto [lo, hi] = payoff_range(t);
        const auto extra = random_concave_family(s.seed, s.random_members, 3, lo, hi);
        fam.members.insert(fam.members.end(), extra.members.begin(), extra.members.end());
        fam.provenance += "+" + extra.provenance;
    }
    return fam;
}

inline BeliefGrid grid_for(std::size_t n_states, const OracleSettings& s) {
    BeliefGrid g = edge_grid(n_states, s.edge_resolution);
    if (n_states == 3 && s.simplex_resolution > 0.0) g = merge_grids(simplex_grid(3, s.simplex_resolution), g);
    return g;
}

// ------------------------------------------------------------------ reports

inline json to_json(const Belief& b) { return b.weights(); }

inline json names_of(const Transformation& t, const ActionSet& s) {
    json out = json::array();
    for (std::size_t i : s) out.push_back(t.name(i));
    return out;
}

inline ActionSet indices_of(const Transformation& t, const json& names) {
    ActionSet out;
    for (const auto& n : names) {
        const auto idx = t.problem().index_of(n.get<std::string>());
        detail::require(idx.has_value(), ErrorKind::ParseError, "unknown action '" + n.get<std::string>() + "'");
        out.push_back(*idx);
    }
    return out;
}

inline json to_json(const Transformation& t, const CounterexampleWitness& w) {
    return {{"type", "kinked"},
            {"kink", w.utility.kink()},
            {"iota", w.utility.iota()},
            {"belief", to_json(w.belief)},
            {"states", {w.state_low, w.state_high}},
            {"violated_action", t.name(w.violated_action)},
            {"beats_it_post", t.name(w.post_strictly_better)},
            {"pre_optimal", names_of(t, w.pre_optimal)},
            {"case", w.proof_case},
            {"mu_pre", w.mu_pre},
            {"mu_post", w.mu_post}};
}

inline CounterexampleWitness counterexample_from_json(const Transformation& t, const json& j) {
    const auto states = detail::field<std::vector<std::size_t>>(j, "states");
    detail::require(states.size() == 2, ErrorKind::ParseError, "witness 'states' must have two entries");
    const ActionSet violated = indices_of(t, json::array({detail::field<std::string>(j, "violated_action")}));
    const ActionSet better = indices_of(t, json::array({detail::field<std::string>(j, "beats_it_post")}));
    return {KinkedUtility(detail::field<double>(j, "kink"), detail::field<double>(j, "iota")),
            Belief(detail::field<std::vector<double>>(j, "belief")),
            states[0],
            states[1],
            indices_of(t, detail::field<json>(j, "pre_optimal")),
            better.front(),
            violated.front(),
            j.contains("case") ? detail::field<int>(j, "case") : 0,
            j.contains("mu_pre") ? detail::field<double>(j, "mu_pre") : 0.0,
            j.contains("mu_post") ? detail::field<double>(j, "mu_post") : 0.0};
}

inline json to_json(const Transformation& t, const Witness& w) {
    json j{{"type", "oracle"},
           {"pre_optimal", names_of(t, w.pre_optimal)},
           {"post_optimal", names_of(t, w.post_optimal)}};
    if (w.utility) j["utility"] = to_json(*w.utility);
    if (w.belief) j["belief"] = to_json(*w.belief);
    return j;
}

inline Witness oracle_witness_from_json(const Transformation& t, const json& j) {
    Witness w;
    if (j.contains("utility")) w.utility = utility_from_json(j.at("utility"));
    if (j.contains("belief")) w.belief = Belief(detail::field<std::vector<double>>(j, "belief"));
    w.pre_optimal = indices_of(t, detail::field<json>(j, "pre_optimal"));
    w.post_optimal = indices_of(t, detail::field<json>(j, "post_optimal"));
    return w;
}

inline json to_json(const Transformation& t, const Verdict& v) {
    json j{{"status", to_string(v.status)}, {"note", v.note}};
    if (v.witness) j["witness"] = to_json(t, *v.witness);
    return j;
}

inline json to_json(const Transformation& t, const RelevanceViolation& v) {
    return {{"states", {v.state_low, v.state_high}},
            {"action", t.name(v.action)},
            {"position", v.position},
            {"kind", to_string(v.kind)}};
}

inline json region_to_json(const std::string& action, const std::vector<Polygon>& polys) {
    auto pts = [](const Polygon& p) {
        json a = json::array();
        for (const auto& v : p) a.push_back({v[0], v[1]});
        return a;
    };
    json j{{"action", action}, {"vertices", polys.empty() ? json::array() : pts(polys.front())}};
    if (polys.size() > 1) {
        json rest = json::array();
        for (std::size_t k = 1; k < polys.size(); ++k) rest.push_back(pts(polys[k]));
        j["extra_pieces"] = std::move(rest);
    }
    return j;
}

} // namespace robustcs
