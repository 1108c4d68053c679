// Command-line front end: validate, analyze, decompose, extend, and score
// boxes. Every command reads/writes the JSON formats of nsbox/io.hpp and
// prints one JSON report to standard output.
//
// Exit codes: 0 success, 1 validation failure, 2 infeasibility,
// 3 file/format errors.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "nsbox/bell.hpp"
#include "nsbox/box.hpp"
#include "nsbox/ensembles.hpp"
#include "nsbox/extension.hpp"
#include "nsbox/io.hpp"
#include "nsbox/polytope.hpp"
#include "nsbox/rational.hpp"

namespace {

using namespace nsbox;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Box load_box(const std::string& path) { return box_from_json(load_json(path)); }

Box load_valid_box(const std::string& path) {
    Box b = load_box(path);
    const auto violations = validate(b);
    if (!violations.empty()) {
        for (const auto& v : violations) std::cerr << "validation: " << v << "\n";
        throw domain_error("box in '" + path + "' fails validation");
    }
    return b;
}

/// Resolves --vertices: a builtin name or a vertex-set JSON file.
/// builtin:det and enumerate derive the scenario from the target box.
VertexSet resolve_vertices(const std::string& selector, const Scenario& scenario,
                           std::size_t cap) {
    if (selector == "builtin:2222") return barrett_2222_vertices();
    if (selector == "builtin:3cycle") return threecycle_vertices();
    if (selector == "builtin:det") return deterministic_vertices(scenario);
    if (selector == "enumerate") return enumerate_vertices(scenario, cap);
    return vertex_set_from_json(load_json(selector));
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string tok = text.substr(pos, comma - pos);
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw format_error("expected a comma-separated integer list, got '" + text + "'");
        }
        pos = comma + 1;
        if (comma == text.size()) break;
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"exact analysis of non-signaling boxes and their extensions"};
    app.require_subcommand(1);

    std::string box_path, vertices_sel = "builtin:det", scenario_path, menu_path;
    std::string ensemble_path, channel_path, eta_text, lambda_text;
    std::vector<std::string> merge_maps;
    std::size_t max_support = 0, cap = 12, party = 0, input = 0;
    unsigned jobs = 1;
    int outputs = 0, max_denominator = 6;
    bool prune = false, relabel_search = false;

    auto* c_validate = app.add_subcommand("validate", "normalization and range checks");
    c_validate->add_option("box", box_path)->required();

    auto* c_ns = app.add_subcommand("ns-check", "non-signaling check");
    c_ns->add_option("box", box_path)->required();

    auto* c_vertex = app.add_subcommand("vertex-check", "tight-constraint-rank vertex test");
    c_vertex->add_option("box", box_path)->required();

    auto* c_dim = app.add_subcommand("dim", "polytope dimensions of a scenario");
    c_dim->add_option("scenario", scenario_path, "scenario or box JSON")->required();

    auto* c_vertices = app.add_subcommand("vertices", "emit a vertex set");
    c_vertices->add_option("selector", vertices_sel,
                           "builtin:det|builtin:2222|builtin:3cycle|enumerate|file");
    c_vertices->add_option("--scenario", scenario_path, "scenario JSON for det/enumerate");
    c_vertices->add_option("--cap", cap, "effective-dimension cap for enumerate");

    auto* c_minens = app.add_subcommand("min-ensembles", "enumerate all minimal ensembles");
    c_minens->add_option("box", box_path)->required();
    c_minens->add_option("--vertices", vertices_sel);
    c_minens->add_option("--max-support", max_support);
    c_minens->add_flag("--prune-nonlocal", prune);
    c_minens->add_option("--jobs", jobs);
    c_minens->add_option("--cap", cap);

    auto* c_ce = app.add_subcommand("complete-extension", "build the complete extension");
    c_ce->add_option("box", box_path)->required();
    c_ce->add_option("--vertices", vertices_sel);
    c_ce->add_flag("--prune-nonlocal", prune);
    c_ce->add_option("--jobs", jobs);
    c_ce->add_option("--cap", cap);

    auto* c_arb = app.add_subcommand("arbitrary-extension", "extension from an ensemble menu");
    c_arb->add_option("box", box_path)->required();
    c_arb->add_option("--menu", menu_path, "JSON: [[{\"weight\",\"box\"},...],...]")
        ->required();

    auto* c_conj = app.add_subcommand("conjugate",
                                      "complete extension of an extension's marginal");
    c_conj->add_option("box", box_path, "extension box JSON")->required();
    c_conj->add_option("--party", party, "index of the extending party")->required();
    c_conj->add_option("--cap", cap);

    auto* c_channel = app.add_subcommand("channel", "mixed-ensemble post-processing channel");
    c_channel->add_option("spec", channel_path,
                          "JSON: {vertex_set, mixture:[{weight,box}], member_weights:[[...]]}")
        ->required();

    auto* c_mix = app.add_subcommand("mix", "express an ensemble as a minimal-ensemble mix");
    c_mix->add_option("box", box_path)->required();
    c_mix->add_option("--vertices", vertices_sel);
    c_mix->add_option("--ensemble", ensemble_path, "JSON: {support:[labels], weights:[...]}")
        ->required();
    c_mix->add_option("--cap", cap);

    auto* c_chsh = app.add_subcommand("chsh", "CHSH value over the eight sign variants");
    c_chsh->add_option("box", box_path)->required();
    c_chsh->add_flag("--relabel", relabel_search, "maximize over all relabelings");

    auto* c_cglmp = app.add_subcommand("cglmp3", "three-outcome Bell functional");
    c_cglmp->add_option("box", box_path)->required();
    c_cglmp->add_flag("--relabel", relabel_search, "maximize over all relabelings");

    auto* c_merge = app.add_subcommand("merge", "merge outputs of one party");
    c_merge->add_option("box", box_path)->required();
    c_merge->add_option("--party", party)->required();
    c_merge->add_option("--map", merge_maps,
                        "one comma-separated map per input, e.g. --map 0,1,1 --map 0,1")
        ->required();

    auto* c_pad = app.add_subcommand("pad", "append zero-probability outputs");
    c_pad->add_option("box", box_path)->required();
    c_pad->add_option("--party", party)->required();
    c_pad->add_option("--input", input)->required();
    c_pad->add_option("--outputs", outputs, "new output cardinality")->required();

    auto* c_iso = app.add_subcommand("isotropic", "emit the isotropic binary box");
    c_iso->add_option("--eta", eta_text, "rational mixing parameter")->required();

    auto* c_3c = app.add_subcommand("threecycle", "emit the three-cycle contextual box");
    c_3c->add_option("--lambda", lambda_text, "rational noise parameter")->required();

    auto* c_census = app.add_subcommand("census",
                                        "single-party binary boxes whose extension is pure");
    c_census->add_option("--max-denominator", max_denominator);

    CLI11_PARSE(app, argc, argv);
    const EnumerationOptions opts{max_support, prune, jobs};

    if (c_validate->parsed()) {
        const auto violations = validate(load_box(box_path));
        emit(Json{{"violations", violations}});
        return violations.empty() ? 0 : 1;
    }
    if (c_ns->parsed()) {
        const bool ok = is_nonsignaling(load_valid_box(box_path));
        emit(Json{{"nonsignaling", ok}});
        return ok ? 0 : 1;
    }
    if (c_vertex->parsed()) {
        emit(vertex_check_to_json(vertex_check(load_valid_box(box_path))));
        return 0;
    }
    if (c_dim->parsed()) {
        const Scenario s = scenario_from_json(load_json(scenario_path));
        Json j;
        j["t"] = std::to_string(s.parameter_count());
        j["ns_dimension"] = std::to_string(ns_dimension(s));
        if (s.parameter_count() <= 4096) {
            const ConstraintSystem cs = constraint_system(s);
            j["equality_rank"] = std::to_string(cs.equality_rank);
        }
        emit(j);
        return 0;
    }
    if (c_vertices->parsed()) {
        Scenario s{{{2, 2}}};
        if (!scenario_path.empty()) s = scenario_from_json(load_json(scenario_path));
        else if (vertices_sel == "builtin:det" || vertices_sel == "enumerate")
            throw format_error("--scenario is required for this selector");
        emit(vertex_set_to_json(resolve_vertices(vertices_sel, s, cap)));
        return 0;
    }
    if (c_minens->parsed()) {
        const Box b = load_valid_box(box_path);
        const VertexSet vs = resolve_vertices(vertices_sel, b.scenario(), cap);
        emit(report_to_json(minimal_ensembles(b, vs, opts)));
        return 0;
    }
    if (c_ce->parsed()) {
        const Box b = load_valid_box(box_path);
        const VertexSet vs = resolve_vertices(vertices_sel, b.scenario(), cap);
        emit(complete_extension_to_json(complete_extension(b, vs, opts)));
        return 0;
    }
    if (c_arb->parsed()) {
        const Box b = load_valid_box(box_path);
        const Json mj = load_json(menu_path);
        if (!mj.is_array()) throw format_error("menu: expected an array of ensembles");
        std::vector<MixedEnsemble> menu;
        for (const Json& entry : mj) {
            MixedEnsemble ensemble;
            if (!entry.is_array()) throw format_error("menu: each entry is an array");
            for (const Json& member : entry) {
                if (!member.contains("weight") || !member.contains("box"))
                    throw format_error("menu member needs 'weight' and 'box'");
                ensemble.emplace_back(parse_rational(member["weight"].get<std::string>()),
                                      box_from_json(member["box"]));
            }
            menu.push_back(std::move(ensemble));
        }
        emit(box_to_json(arbitrary_extension(b, menu)));
        return 0;
    }
    if (c_conj->parsed()) {
        const Box b = load_valid_box(box_path);
        const ConjugateResult result = conjugate_extension(b, party, cap);
        Json j;
        j["conjugate"] = box_to_json(result.conjugate);
        j["vertices"] = vertex_set_to_json(result.conjugate_vertices);
        j["extension"] = complete_extension_to_json(result.extension);
        emit(j);
        return 0;
    }
    if (c_channel->parsed()) {
        const Json spec = load_json(channel_path);
        if (!spec.contains("vertex_set") || !spec.contains("mixture") ||
            !spec.contains("member_weights"))
            throw format_error("channel spec needs vertex_set, mixture, member_weights");
        const VertexSet vs = vertex_set_from_json(spec["vertex_set"]);
        std::vector<std::pair<Rational, Box>> mixture;
        for (const Json& m : spec["mixture"])
            mixture.emplace_back(parse_rational(m["weight"].get<std::string>()),
                                 box_from_json(m["box"]));
        std::vector<RatVector> weights;
        for (const Json& w : spec["member_weights"])
            weights.push_back(rat_array_from_json(w));
        emit(channel_to_json(mixed_ensemble_channel(vs, mixture, weights)));
        return 0;
    }
    if (c_mix->parsed()) {
        const Box b = load_valid_box(box_path);
        const VertexSet vs = resolve_vertices(vertices_sel, b.scenario(), cap);
        const MinimalEnsembleReport report = minimal_ensembles(b, vs, opts);
        const Json ej = load_json(ensemble_path);
        if (!ej.contains("support") || !ej.contains("weights"))
            throw format_error("ensemble file needs 'support' and 'weights'");
        Ensemble target;
        for (const Json& label : ej["support"])
            target.support.push_back(vs.index_of(label.get<std::string>()));
        target.weights = rat_array_from_json(ej["weights"]);
        if (target.support.size() != target.weights.size())
            throw format_error("ensemble file: support/weights length mismatch");
        const RatVector q = express_as_minimal_mix(target, report);
        emit(Json{{"mix", rat_array(q)}});
        return 0;
    }
    if (c_chsh->parsed() || c_cglmp->parsed()) {
        const Box b = load_valid_box(box_path);
        const BellFunctional f =
            c_chsh->parsed() ? BellFunctional::chsh : BellFunctional::cglmp3;
        const BellReport r = relabel_search
                                 ? maximize_over_relabelings(b, f)
                                 : (f == BellFunctional::chsh ? chsh(b) : cglmp3(b));
        emit(bell_report_to_json(r));
        return 0;
    }
    if (c_merge->parsed()) {
        const Box b = load_valid_box(box_path);
        std::vector<std::vector<int>> maps;
        for (const std::string& m : merge_maps) maps.push_back(parse_int_list(m));
        emit(box_to_json(merge_outputs(b, party, maps)));
        return 0;
    }
    if (c_pad->parsed()) {
        emit(box_to_json(pad_outputs(load_valid_box(box_path), party, input, outputs)));
        return 0;
    }
    if (c_iso->parsed()) {
        const Rational eta = parse_rational(eta_text);
        if (eta < Rational(1, 2) || eta > 1)
            std::cerr << "note: eta outside [1/2, 1]; the box leaves the isotropic "
                         "nonlocal segment\n";
        const Box b = isotropic_box(eta);
        if (!validate(b).empty())
            throw domain_error("eta outside [0,1] yields an invalid box");
        emit(box_to_json(b));
        return 0;
    }
    if (c_3c->parsed()) {
        const Rational lambda = parse_rational(lambda_text);
        if (lambda <= 0 || lambda >= Rational(2, 3))
            std::cerr << "note: lambda outside (0, 2/3); the box leaves the "
                         "contextual regime\n";
        const Box b = threecycle_box(lambda);
        if (!validate(b).empty())
            throw domain_error("lambda outside [0,1] yields an invalid box");
        emit(box_to_json(b));
        return 0;
    }
    if (c_census->parsed()) {
        const Scenario s{{{2, 2}}};
        const std::vector<Box> grid = single_party_binary_grid(max_denominator);
        const std::vector<Box> purified =
            purification_census(grid, deterministic_vertices(s));
        Json boxes = Json::array();
        for (const Box& b : purified) boxes.push_back(box_to_json(b));
        emit(Json{{"grid_size", grid.size()}, {"count", purified.size()}, {"boxes", boxes}});
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const nsbox::format_error& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return 3;
    } catch (const nsbox::infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const nsbox::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
