#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "robustcs/robustcs.hpp"

using namespace robustcs;

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitIndeterminate = 2;
constexpr int kExitInput = 64;

int emit(const json& report, int code) {
    std::cout << report.dump(2) << "\n";
    return code;
}

int verdict_exit(const Verdict& v) {
    switch (v.status) {
    case VerdictStatus::CertifiedHolds: return kExitHolds;
    case VerdictStatus::Refuted: return kExitFails;
    case VerdictStatus::IndeterminateSearchExhausted: return kExitIndeterminate;
    }
    return kExitIndeterminate;
}

OracleSettings settings_for(const ProblemDocument& d) {
    OracleSettings s = d.oracle.value_or(OracleSettings{});
    if (const char* env = std::getenv("ROBUSTCS_SEED")) s.seed = std::stoull(env);
    return s;
}

ProblemDocument load(const std::string& path) { return parse_document(read_file(path)); }

int check_steeper(const std::string& path, double tol) {
    const Transformation t = build_transformation(load(path));
    json pairs = json::array();
    bool all = true;
    for (const auto& pr : pairwise_steeper_reports(t, tol)) {
        json e{{"lower", t.name(pr.lower)},
               {"upper", t.name(pr.upper)},
               {"holds", pr.report.holds},
               {"reason", to_string(pr.report.reason)}};
        // Infinite slack (no A × B pair) is reported as null.
        e["ineq1_slack"] = std::isfinite(pr.report.min_slack) ? json(pr.report.min_slack) : json(nullptr);
        if (pr.report.failing_pair) e["failing_states"] = {pr.report.failing_pair->first, pr.report.failing_pair->second};
        all = all && pr.report.holds;
        pairs.push_back(std::move(e));
    }
    return emit({{"check", "steeper"}, {"holds", all}, {"pairs", pairs}}, all ? kExitHolds : kExitFails);
}

int check_relevant(const std::string& path, double tol) {
    const Transformation t = build_transformation(load(path));
    json vs = json::array();
    for (const auto& v : relevance_violations(t, tol)) vs.push_back(to_json(t, v));
    const bool holds = vs.empty();
    return emit({{"check", "relevant"}, {"holds", holds}, {"violations", vs}}, holds ? kExitHolds : kExitFails);
}

int check_common(const std::string& path, bool weak, double tol) {
    const Transformation t = build_transformation(load(path));
    json pairs = json::array();
    bool all = true;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            const bool ok = weak ? made_weakly_commonly_steeper(t.pre(i), t.pre(j), t.post(i), t.post(j), tol)
                                 : made_commonly_steeper(t.pre(i), t.pre(j), t.post(i), t.post(j));
            all = all && ok;
            pairs.push_back({{"lower", t.name(i)}, {"upper", t.name(j)}, {"holds", ok}});
        }
    return emit({{"check", weak ? "weakly-common" : "common"}, {"holds", all}, {"pairs", pairs}},
                all ? kExitHolds : kExitFails);
}

int replay(const Transformation& t, const std::string& report_path, double tol) {
    const json report = parse_json_text(read_file(report_path));
    const json w = report.contains("witness") ? report.at("witness") : report;
    const std::string type = w.value("type", "oracle");
    bool ok = false;
    if (type == "kinked")
        ok = replay_counterexample(t, counterexample_from_json(t, w), tol);
    else
        ok = replays(t, oracle_witness_from_json(t, w), tol);
    const Verdict v{ok ? VerdictStatus::Refuted : VerdictStatus::IndeterminateSearchExhausted, std::nullopt,
                    ok ? "witness replays" : "witness does not replay"};
    json out = to_json(t, v);
    out["replayed"] = ok;
    out["witness"] = w;
    return emit(out, verdict_exit(v));
}

int verify(const std::string& path, const std::string& replay_path, double tol) {
    const ProblemDocument d = load(path);
    const Transformation t = build_transformation(d);
    if (!replay_path.empty()) return replay(t, replay_path, tol);
    if (d.functional) {
        const RegularVerdict rv = verify_reduction_regular(t, functional_from_json(*d.functional), tol);
        json out = to_json(t, rv.verdict);
        out["commonly_steeper_all"] = rv.commonly_all;
        out["weakly_commonly_steeper_all"] = rv.weakly_all;
        return emit(out, verdict_exit(rv.verdict));
    }
    const OracleSettings s = settings_for(d);
    const Verdict v = verify_reduction(t, family_for(t, s), grid_for(t.state_count(), s), tol);
    return emit(to_json(t, v), verdict_exit(v));
}

int refute(const std::string& path, double tol) {
    const Transformation t = build_transformation(load(path));
    json out{{"command", "refute"}};
    CounterexampleSearch search;
    if (t.size() == 2) {
        if (made_steeper(t.pre(0), t.pre(1), t.post(0), t.post(1), tol)) {
            out["status"] = to_string(VerdictStatus::CertifiedHolds);
            out["note"] = "the pair is made steeper";
            return emit(out, kExitHolds);
        }
        search = binary_necessity_counterexample(t.pre(0), t.pre(1), t.post(0), t.post(1), tol);
    } else {
        if (relevantly_steeper(t, tol)) {
            out["status"] = to_string(VerdictStatus::IndeterminateSearchExhausted);
            out["note"] = "relevantly steeper; no constructive counterexample applies, run verify";
            return emit(out, kExitIndeterminate);
        }
        search = necessity_counterexample(t, tol);
        if (search.violation) out["violation"] = to_json(t, *search.violation);
    }
    if (!search.witness) {
        out["status"] = to_string(VerdictStatus::IndeterminateSearchExhausted);
        out["note"] = "iota schedule exhausted";
        return emit(out, kExitIndeterminate);
    }
    out["status"] = to_string(VerdictStatus::Refuted);
    out["witness"] = to_json(t, *search.witness);
    return emit(out, kExitFails);
}

int region(const std::string& path, const std::string& target, const std::string& condition,
           const std::string& svg_path, double tol) {
    const Transformation t = build_transformation(load(path));
    detail::require(condition == "eu" || condition == "regular", ErrorKind::InvalidParameter,
                    "condition must be eu or regular");
    const RegionCondition cond = condition == "eu" ? RegionCondition::EU : RegionCondition::Regular;
    std::vector<std::size_t> targets;
    if (target.empty()) {
        for (std::size_t i = 0; i < t.size(); ++i) targets.push_back(i);
    } else {
        const auto idx = t.problem().index_of(target);
        detail::require(idx.has_value(), ErrorKind::InvalidParameter, "unknown action '" + target + "'");
        targets.push_back(*idx);
    }
    json regions = json::array();
    std::vector<NamedRegion> named;
    Box box{};
    for (std::size_t k = 0; k < targets.size(); ++k) {
        const TwoStateRegion r(t.problem(), t.post_table(), targets[k], cond, tol);
        if (k == 0) box = r.default_box();
        auto polys = r.polygons(box);
        regions.push_back(region_to_json(t.name(targets[k]), polys));
        named.push_back({t.name(targets[k]), std::move(polys)});
    }
    if (!svg_path.empty()) {
        std::ofstream out(svg_path, std::ios::binary);
        detail::require(static_cast<bool>(out), ErrorKind::InvalidParameter, "cannot write " + svg_path);
        out << regions_svg(named, box);
    }
    return emit({{"condition", condition},
                 {"box", {box.xmin, box.xmax, box.ymin, box.ymax}},
                 {"regions", regions}},
                kExitHolds);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust comparative statics checks for monotone decision problems"};
    app.require_subcommand(1);
    double tol = kEps;
    app.add_option("--tol", tol, "Numeric tolerance for inequality checks")->capture_default_str();

    std::string doc, replay_path, target, condition = "eu", svg_path;
    bool weak = false;

    auto* check = app.add_subcommand("check", "Sufficient and necessary conditions");
    check->require_subcommand(1);
    auto* c_steeper = check->add_subcommand("steeper", "Pairwise made-steeper test");
    c_steeper->add_option("document", doc)->required();
    auto* c_relevant = check->add_subcommand("relevant", "Relevant steepness");
    c_relevant->add_option("document", doc)->required();
    auto* c_common = check->add_subcommand("common", "Commonly steeper for regular preferences");
    c_common->add_option("document", doc)->required();
    c_common->add_flag("--weak", weak, "Use the weak version");

    auto* verify_cmd = app.add_subcommand("verify", "Brute-force oracle over a utility family and belief grid");
    verify_cmd->add_option("document", doc)->required();
    verify_cmd->add_option("--replay", replay_path, "Replay the witness stored in a report");

    auto* refute_cmd = app.add_subcommand("refute", "Construct a counterexample");
    refute_cmd->add_option("document", doc)->required();

    auto* region_cmd = app.add_subcommand("region", "Two-state feasible regions");
    region_cmd->add_option("document", doc)->required();
    region_cmd->add_option("--target", target, "Action name (default: every action)");
    region_cmd->add_option("--condition", condition, "eu or regular")->capture_default_str();
    region_cmd->add_option("--svg", svg_path, "Write an SVG rendering");

    auto* app_cmd = app.add_subcommand("app", "Worked applications");
    app_cmd->require_subcommand(1);
    double p = 0.3, p_hat = 0.2, loss = 10.0, loss_hat = 12.0;
    std::vector<double> levels{0.0, 0.25, 0.5, 0.75, 1.0};
    auto* a_ins = app_cmd->add_subcommand("insurance", "Price and loss changes");
    a_ins->add_option("--p", p)->capture_default_str();
    a_ins->add_option("--p-hat", p_hat)->capture_default_str();
    a_ins->add_option("--loss", loss)->capture_default_str();
    a_ins->add_option("--loss-hat", loss_hat)->capture_default_str();
    a_ins->add_option("--levels", levels, "Coverage as fractions of the loss");

    std::vector<double> returns, sigma, alloc{0.0, 0.5, 1.0, 2.0};
    auto* a_inv = app_cmd->add_subcommand("invest", "Distorted risky return");
    a_inv->add_option("--returns", returns)->required();
    a_inv->add_option("--sigma", sigma)->required();
    a_inv->add_option("--alloc", alloc)->capture_default_str();

    PDSpec pd{2.0, 1.0, 1.0, 2.0, 1.0, 0.0};
    auto* a_pd = app_cmd->add_subcommand("pd", "Repeated prisoner's dilemma");
    a_pd->add_option("--beta", pd.beta)->capture_default_str();
    a_pd->add_option("--gamma", pd.gamma)->capture_default_str();
    a_pd->add_option("--alpha-hat", pd.alpha_hat)->capture_default_str();
    a_pd->add_option("--beta-hat", pd.beta_hat)->capture_default_str();
    a_pd->add_option("--gamma-hat", pd.gamma_hat)->capture_default_str();
    a_pd->add_option("--rho-hat", pd.rho_hat)->capture_default_str();

    double kink = 0.0, iota = 0.5;
    auto* a_lb = app_cmd->add_subcommand("lowerbound", "Transform every payoff through a kinked v");
    a_lb->add_option("document", doc)->required();
    a_lb->add_option("--kink", kink)->required();
    a_lb->add_option("--iota", iota)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (c_steeper->parsed()) return check_steeper(doc, tol);
        if (c_relevant->parsed()) return check_relevant(doc, tol);
        if (c_common->parsed()) return check_common(doc, weak, tol);
        if (verify_cmd->parsed()) return verify(doc, replay_path, tol);
        if (refute_cmd->parsed()) return refute(doc, tol);
        if (region_cmd->parsed()) return region(doc, target, condition, svg_path, tol);
        if (a_ins->parsed()) {
            const bool closed = insurance_reduces(p, p_hat, loss, loss_hat);
            const Transformation t =
                insurance_transformation(insurance_spec(loss, p, levels), insurance_spec(loss_hat, p_hat, levels));
            const bool pairwise = pairwise_steeper_all(t, tol), relevant = relevantly_steeper(t, tol);
            return emit({{"app", "insurance"},
                         {"closed_form", closed},
                         {"pairwise_steeper", pairwise},
                         {"relevantly_steeper", relevant}},
                        closed ? kExitHolds : kExitFails);
        }
        if (a_inv->parsed()) {
            const SigmaDistortion s{returns, sigma};
            const bool ok = sigma_reduces(s);
            const Transformation t = investment_transformation(s, alloc);
            return emit({{"app", "invest"}, {"sigma_condition", ok}, {"pairwise_steeper", pairwise_steeper_all(t, tol)}},
                        ok ? kExitHolds : kExitFails);
        }
        if (a_pd->parsed()) {
            const bool ok = pd_cooperation_preserved(pd);
            return emit({{"app", "pd"}, {"closed_form", ok}, {"made_steeper", pd_made_steeper(pd, tol)}},
                        ok ? kExitHolds : kExitFails);
        }
        if (a_lb->parsed()) {
            const MonotoneProblem prob = build_problem(load(doc));
            const auto rep = lower_bound_transform_check(prob, KinkedUtility(kink, iota), tol);
            return emit({{"app", "lowerbound"}, {"ordinal_ok", rep.ordinal_ok}, {"ineq1_ok", rep.ineq1_ok}},
                        rep.holds() ? kExitHolds : kExitFails);
        }
    } catch (const Error& e) {
        std::cerr << json{{"error", e.what()}, {"kind", to_string(e.kind())}}.dump() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
