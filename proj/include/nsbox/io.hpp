#ifndef NSBOX_IO_HPP
#define NSBOX_IO_HPP

#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nsbox/bell.hpp"
#include "nsbox/box.hpp"
#include "nsbox/ensembles.hpp"
#include "nsbox/extension.hpp"
#include "nsbox/polytope.hpp"
#include "nsbox/rational.hpp"

namespace nsbox {

using Json = nlohmann::ordered_json;

inline Json scenario_to_json(const Scenario& s) {
    Json parties = Json::array();
    for (const auto& inputs : s.parties) parties.push_back(Json{{"inputs", inputs}});
    return Json{{"parties", parties}};
}

inline Scenario scenario_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("parties") || !j["parties"].is_array())
        throw format_error("scenario: expected object with 'parties' array");
    std::vector<std::vector<int>> parties;
    for (const Json& party : j["parties"]) {
        if (!party.is_object() || !party.contains("inputs") || !party["inputs"].is_array())
            throw format_error("scenario: each party needs an 'inputs' array");
        std::vector<int> inputs;
        for (const Json& d : party["inputs"]) {
            if (!d.is_number_integer() || d.get<int>() < 1)
                throw format_error("scenario: output cardinalities must be integers >= 1");
            inputs.push_back(d.get<int>());
        }
        parties.push_back(std::move(inputs));
    }
    try {
        return Scenario(parties);
    } catch (const domain_error& e) {
        throw format_error(e.what());
    }
}

inline Json rat_array(const RatVector& v) {
    Json a = Json::array();
    for (const Rational& x : v) a.push_back(rational_to_string(x));
    return a;
}

inline RatVector rat_array_from_json(const Json& j) {
    if (!j.is_array()) throw format_error("expected an array of rationals");
    RatVector v;
    for (const Json& x : j) {
        if (!x.is_string()) throw format_error("rationals must be strings like \"1/3\"");
        v.push_back(parse_rational(x.get<std::string>()));
    }
    return v;
}

inline Json box_to_json(const Box& b) {
    Json j = scenario_to_json(b.scenario());
    j["probabilities"] = rat_array(b.flattened());
    return j;
}

inline Box box_from_json(const Json& j) {
    const Scenario s = scenario_from_json(j);
    if (!j.contains("probabilities"))
        throw format_error("box: missing 'probabilities'");
    RatVector table = rat_array_from_json(j["probabilities"]);
    if (table.size() != s.parameter_count())
        throw format_error("box: expected " + std::to_string(s.parameter_count()) +
                           " probabilities, got " + std::to_string(table.size()));
    return Box(s, std::move(table));
}

inline Json vertex_set_to_json(const VertexSet& vs) {
    Json j;
    j["scenario"] = scenario_to_json(vs.scenario);
    Json vertices = Json::array();
    for (std::size_t i = 0; i < vs.size(); ++i)
        vertices.push_back(Json{{"label", vs.labels[i]},
                                {"probabilities", rat_array(vs.vertices[i].flattened())}});
    j["vertices"] = vertices;
    return j;
}

inline VertexSet vertex_set_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("scenario") || !j.contains("vertices"))
        throw format_error("vertex set: expected 'scenario' and 'vertices'");
    VertexSet vs;
    vs.scenario = scenario_from_json(j["scenario"]);
    for (const Json& v : j["vertices"]) {
        if (!v.is_object() || !v.contains("label") || !v.contains("probabilities"))
            throw format_error("vertex set: each vertex needs 'label' and 'probabilities'");
        RatVector table = rat_array_from_json(v["probabilities"]);
        if (table.size() != vs.scenario.parameter_count())
            throw format_error("vertex set: probability length mismatch");
        vs.vertices.push_back(Box(vs.scenario, std::move(table)));
        vs.labels.push_back(v["label"].get<std::string>());
    }
    return vs;
}

inline Json ensemble_to_json(const Ensemble& e, const VertexSet& vs) {
    Json support = Json::array();
    for (std::size_t i : e.support) support.push_back(vs.labels[i]);
    return Json{{"support", support}, {"weights", rat_array(e.weights)}};
}

inline Json report_to_json(const MinimalEnsembleReport& report) {
    Json j;
    j["target"] = box_to_json(report.target);
    j["vertex_set"] = report.vertex_set.labels;
    Json ensembles = Json::array();
    for (const Ensemble& e : report.ensembles)
        ensembles.push_back(ensemble_to_json(e, report.vertex_set));
    j["ensembles"] = ensembles;
    return j;
}

inline Json complete_extension_to_json(const CompleteExtension& ce) {
    Json j = box_to_json(ce.joint);
    Json menu = Json::array();
    for (std::size_t k = 0; k < ce.report.ensembles.size(); ++k) {
        Json entry = ensemble_to_json(ce.report.ensembles[k], ce.report.vertex_set);
        entry["z"] = k;
        menu.push_back(std::move(entry));
    }
    j["menu"] = menu;
    return j;
}

inline Json bell_report_to_json(const BellReport& r) {
    return Json{{"functional", r.functional},
                {"value", rational_to_string(r.value)},
                {"variant", r.variant},
                {"classical_bound", rational_to_string(r.classical_bound)}};
}

inline Json channel_to_json(const MixChannelResult& result) {
    Json j;
    j["r"] = rat_array(result.r);
    Json columns = Json::array();
    for (std::size_t e = 0; e < result.r.size(); ++e) {
        if (!result.channel.column_defined[e]) continue;  // outcome never occurs
        RatVector col(result.channel.p_given_e.rows());
        for (std::size_t m = 0; m < col.size(); ++m)
            col[m] = result.channel.p_given_e.at(m, e);
        columns.push_back(Json{{"e", e}, {"p", rat_array(col)}});
    }
    j["channel"] = columns;
    return j;
}

inline Json vertex_check_to_json(const VertexCheck& c) {
    return Json{{"is_vertex", c.is_vertex},
                {"tight_rank", std::to_string(c.tight_rank)},
                {"t", std::to_string(c.ambient)}};
}

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw format_error("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw format_error("invalid JSON in '" + path + "': " + e.what());
    }
}

}  // namespace nsbox

#endif
