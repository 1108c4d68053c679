// Acceptance suite: one pass/fail line per criterion. Each criterion
// reproduces a published table or invariant end to end from the fixtures.
// --quick samples the long stability scan at two mixing parameters.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "nsbox/bell.hpp"
#include "nsbox/box.hpp"
#include "nsbox/ensembles.hpp"
#include "nsbox/extension.hpp"
#include "nsbox/io.hpp"
#include "nsbox/polytope.hpp"

using namespace nsbox;
using nsbox::testing::load_box;
using nsbox::testing::load_fixture;
using nsbox::testing::load_vertex_set;

namespace {

bool quick = false;
int failures = 0;

struct Criterion {
    int number;
    const char* title;
    std::string detail;
    bool ok = true;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

void run(int number, const char* title, void (*body)(Criterion&)) {
    Criterion c{number, title};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: %s — %s (%.1fs)%s%s\n", number, c.ok ? "PASS" : "FAIL",
                title, secs, c.detail.empty() ? "" : " :: ", c.detail.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
}

// Canonical form of a support list for order-insensitive comparison.
using SupportKey = std::vector<std::string>;

SupportKey support_key(const VertexSet& vs, const std::vector<std::size_t>& support) {
    std::vector<std::size_t> sorted = support;
    std::sort(sorted.begin(), sorted.end());
    SupportKey key;
    for (std::size_t i : sorted) key.push_back(vs.labels[i]);
    return key;
}

std::multiset<SupportKey> fixture_supports(const Json& j, const VertexSet& vs) {
    std::multiset<SupportKey> keys;
    for (const Json& entry : j["supports"]) {
        std::vector<std::size_t> indices;
        for (const Json& label : entry)
            indices.push_back(vs.index_of(label.get<std::string>()));
        keys.insert(support_key(vs, indices));
    }
    return keys;
}

std::multiset<SupportKey> report_supports(const MinimalEnsembleReport& r) {
    std::multiset<SupportKey> keys;
    for (const Ensemble& e : r.ensembles) keys.insert(support_key(r.vertex_set, e.support));
    return keys;
}

std::vector<std::pair<Rational, Box>> mixture_from_json(const Json& j) {
    std::vector<std::pair<Rational, Box>> mixture;
    for (const Json& m : j)
        mixture.emplace_back(parse_rational(m["weight"].get<std::string>()),
                             box_from_json(m["box"]));
    return mixture;
}

std::vector<RatVector> member_weights_from_json(const Json& j) {
    std::vector<RatVector> w;
    for (const Json& row : j) w.push_back(rat_array_from_json(row));
    return w;
}

// ---------------------------------------------------------------- criteria

void c1_uniform_extension(Criterion& c) {
    const VertexSet vs = load_vertex_set("binary_strategy_vertices.json");
    const CompleteExtension ce =
        complete_extension(load_box("uniform_binary_box.json"), vs);
    const Box pr = load_box("pr_box.json");
    c.require(ce.joint == pr, "joint differs from the maximally nonlocal box");
    c.require(ce.report.ensembles.size() == 2, "expected two minimal ensembles");
    c.require(equal_up_to_relabeling(ce.joint, pr).has_value(), "no relabeling witness");
    c.require(chsh(ce.joint).value == 4, "extension is not maximally nonlocal");
}

void c2_skewed_decomposition(Criterion& c) {
    const VertexSet vs = load_vertex_set("binary_strategy_vertices.json");
    const Box skewed = load_box("skewed_binary_box.json");
    const MinimalEnsembleReport report = minimal_ensembles(skewed, vs);

    const Json expected = load_fixture("skewed_minimal_ensembles.json");
    c.require(report.ensembles.size() == expected["ensembles"].size(),
              "ensemble count mismatch");
    for (std::size_t i = 0; i < report.ensembles.size(); ++i) {
        const Json want = expected["ensembles"][i];
        Json got = ensemble_to_json(report.ensembles[i], vs);
        c.require(got == want, "ensemble " + std::to_string(i) + " differs: " + got.dump());
    }

    const CompleteExtension ce = complete_extension(skewed, vs);
    auto rs = std::vector<PartyRelabeling>{PartyRelabeling::identity({2, 2}),
                                           PartyRelabeling::identity({2, 3})};
    rs[1].input_perm = {1, 0};  // published table lists the wider input first
    c.require(relabel(ce.joint, rs) == load_box("skewed_extension.json"),
              "joint differs from the published table");
}

void c3_tight_ranks(Criterion& c) {
    const VertexSet vs = barrett_2222_vertices();
    const ConstraintSystem cs = constraint_system(vs.scenario);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const VertexCheck vc = vertex_check(cs, vs.vertices[i].flattened());
        c.require(vc.tight_rank == 16 && vc.is_vertex,
                  vs.labels[i] + " tight rank " + std::to_string(vc.tight_rank));
    }
    const VertexSet binary = load_vertex_set("binary_strategy_vertices.json");
    const CompleteExtension ce =
        complete_extension(load_box("skewed_binary_box.json"), binary);
    const VertexCheck vc = vertex_check(ce.joint);
    c.require(vc.ambient == 20, "expected 20 coordinates");
    c.require(vc.tight_rank == 19 && !vc.is_vertex,
              "extension tight rank " + std::to_string(vc.tight_rank) + "/20");
}

void c4_channels(Criterion& c) {
    const Json spec_a = load_fixture("mixture_example_a.json");
    const VertexSet vs = vertex_set_from_json(spec_a["vertex_set"]);
    const MixChannelResult a = mixed_ensemble_channel(
        vs, mixture_from_json(spec_a["mixture"]),
        member_weights_from_json(spec_a["member_weights"]));
    c.require(channel_to_json(a) == load_fixture("channel_example_a.json"),
              "first channel differs: " + channel_to_json(a).dump());

    const Json spec_b = load_fixture("mixture_example_b.json");
    const MixChannelResult b = mixed_ensemble_channel(
        vs, mixture_from_json(spec_b["mixture"]),
        member_weights_from_json(spec_b["member_weights"]));
    c.require(channel_to_json(b) == load_fixture("channel_example_b.json"),
              "second channel differs: " + channel_to_json(b).dump());
    c.require(!b.channel.column_defined[2], "column e=2 should be undefined");

    // The first mixture's outcome distribution, read as an ensemble of the
    // base box, is a mix of the two minimal ensembles.
    const Box skewed = load_box("skewed_binary_box.json");
    const MinimalEnsembleReport report = minimal_ensembles(skewed, vs);
    Ensemble r_ensemble;
    for (std::size_t e = 0; e < a.r.size(); ++e)
        if (a.r[e] != 0) {
            r_ensemble.support.push_back(e);
            r_ensemble.weights.push_back(a.r[e]);
        }
    const RatVector q = express_as_minimal_mix(r_ensemble, report);
    c.require(q == RatVector{Rational(59, 135), Rational(76, 135)},
              "mixing dice differ");
}

void c5_arbitrary_extension(Criterion& c) {
    const Box base = load_box("skewed_binary_box.json");
    const Json menu_json = load_fixture("menu_example.json");
    std::vector<MixedEnsemble> menu;
    for (const Json& entry : menu_json) menu.push_back(mixture_from_json(entry));
    const Box joint = arbitrary_extension(base, menu);
    c.require(joint == load_box("menu_extension_box.json"),
              "joint differs from the published table");
    c.require(is_nonsignaling(joint), "joint signals");
    c.require(marginal(joint, {0}) == base, "marginal does not recover the base");
}

void c6_conjugate_pipeline(Criterion& c) {
    const Box joint = load_box("skewed_extension.json");
    const ConjugateResult res = conjugate_extension(joint, 1);
    c.require(res.conjugate == load_box("conjugate_box.json"),
              "conjugate marginal differs");
    c.require(res.conjugate_vertices.size() == 6, "expected 6 enumerated vertices");

    const Json ens = load_fixture("conjugate_minimal_ensembles.json");
    c.require(res.extension.report.ensembles.size() == ens["ensembles"].size(),
              "ensemble count mismatch");
    for (std::size_t i = 0; i < res.extension.report.ensembles.size(); ++i) {
        const Json got =
            ensemble_to_json(res.extension.report.ensembles[i], res.conjugate_vertices);
        c.require(got == ens["ensembles"][i],
                  "conjugate ensemble " + std::to_string(i) + " differs");
    }

    // Published joint table, given with its own input/member ordering; map
    // it onto ours by matching supports.
    const Json table = load_fixture("conjugate_extension.json");
    std::vector<std::size_t> sigma;                    // published k -> our input
    std::vector<std::vector<int>> member_position;     // published (k,i) -> our output
    for (const Json& entry : table["menu"]) {
        std::vector<std::size_t> indices;
        for (const Json& label : entry["support"])
            indices.push_back(res.conjugate_vertices.index_of(label.get<std::string>()));
        std::vector<std::size_t> sorted = indices;
        std::sort(sorted.begin(), sorted.end());
        std::size_t ours = res.extension.report.ensembles.size();
        for (std::size_t j = 0; j < res.extension.report.ensembles.size(); ++j)
            if (res.extension.report.ensembles[j].support == sorted) ours = j;
        c.require(ours < res.extension.report.ensembles.size(), "no matching support");
        if (ours >= res.extension.report.ensembles.size()) return;
        sigma.push_back(ours);
        std::vector<int> positions;
        for (std::size_t idx : indices)
            positions.push_back(static_cast<int>(
                std::find(sorted.begin(), sorted.end(), idx) - sorted.begin()));
        member_position.push_back(std::move(positions));
    }
    for (const Json& entry : table["entries"]) {
        const int z = entry["z"].get<int>();
        const int e = entry["e"].get<int>();
        const RatVector values = rat_array_from_json(entry["values"]);
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i) {
                const Rational got = res.extension.joint.p(
                    {z, static_cast<int>(sigma[k])}, {e, member_position[k][i]});
                c.require(got == values[k * 3 + i],
                          "entry z=" + std::to_string(z) + " e=" + std::to_string(e) +
                              " k=" + std::to_string(k) + " i=" + std::to_string(i));
            }
    }

    // The conjugate side needs one more extending input than the original.
    c.require(joint.scenario().num_inputs(1) == 2, "original offers 2 inputs");
    c.require(res.extension.joint.scenario().num_inputs(1) == 3,
              "conjugate extension offers 3 inputs");
}

void c7_bell_values(Criterion& c) {
    const VertexSet vs = barrett_2222_vertices();
    c.require(chsh(vs.vertices[vs.index_of("B_000")]).value == 4, "extremal box != 4");
    Rational local_max = 0;
    for (std::size_t i = 0; i < 16; ++i)
        local_max = std::max(local_max, chsh(vs.vertices[i]).value);
    c.require(local_max == 2, "deterministic CHSH maximum != 2");

    c.require(chsh(load_box("merged_extension_box.json")).value == Rational(10, 3),
              "merged extension != 10/3");

    c.require(cglmp3(load_box("cglmp_extension_box.json")).value == 3,
              "three-outcome extension != 3");
    const Scenario s33{{{3, 3}, {3, 3}}};
    c.require(cglmp3(Box(s33, RatVector(36, Rational(1, 9)))).value == 0,
              "uniform box != 0");
    Rational det_max = -100;
    for (const Box& d : deterministic_vertices(s33).vertices)
        det_max = std::max(det_max, cglmp3(d).value);
    c.require(det_max == 2, "deterministic three-outcome maximum != 2");
}

void c8_isotropic_family(Criterion& c) {
    const VertexSet vs = barrett_2222_vertices();
    EnumerationOptions opts;
    opts.prune_nonlocal = true;
    opts.jobs = std::max(1u, std::thread::hardware_concurrency());
    const MinimalEnsembleReport report =
        minimal_ensembles(isotropic_box(Rational(4, 5)), vs, opts);
    c.require(report.ensembles.size() == 354,
              "count " + std::to_string(report.ensembles.size()));
    c.require(report_supports(report) ==
                  fixture_supports(load_fixture("isotropic_2222_supports.json"), vs),
              "support family differs from the published list");

    std::size_t total = 0;
    std::vector<int> sizes;
    for (const Ensemble& e : report.ensembles) {
        total += e.support.size();
        sizes.push_back(static_cast<int>(e.support.size()));
        c.require(reconstruct(vs, e) == report.target, "ensemble fails to reconstruct");
    }
    c.require(std::is_sorted(sizes.begin(), sizes.end()), "not in canonical order");

    // Dimension bookkeeping of the complete extension built from this family.
    std::vector<int> extension_inputs;
    for (const Ensemble& e : report.ensembles)
        extension_inputs.push_back(static_cast<int>(e.support.size()));
    const Scenario conjugate_scenario{{extension_inputs}};
    std::vector<std::vector<int>> joint_parties = vs.scenario.parties;
    joint_parties.push_back(extension_inputs);
    const Scenario joint_scenario{joint_parties};
    c.require(ns_dimension(conjugate_scenario) == total - 354,
              "conjugate dimension formula mismatch");
    c.require(joint_scenario.parameter_count() == 16 * total, "joint t mismatch");
    c.require(ns_dimension(joint_scenario) == 9 * (1 + total - 354) - 1,
              "joint dimension formula mismatch");
    c.detail = "354 ensembles, total support " + std::to_string(total) +
               ", conjugate dim " + std::to_string(ns_dimension(conjugate_scenario)) +
               ", joint t " + std::to_string(joint_scenario.parameter_count()) +
               ", joint dim " + std::to_string(ns_dimension(joint_scenario));
}

void c9_interval_stability(Criterion& c) {
    const VertexSet vs = barrett_2222_vertices();
    const auto expected =
        fixture_supports(load_fixture("isotropic_2222_supports.json"), vs);
    std::vector<Rational> etas{Rational(7, 9), Rational(7, 8)};
    if (!quick) etas.insert(etas.begin() + 1, Rational(5, 6));  // 4/5 runs in criterion 8
    EnumerationOptions opts;
    opts.prune_nonlocal = true;
    for (const Rational& eta : etas) {
        const MinimalEnsembleReport report =
            minimal_ensembles(isotropic_box(eta), vs, opts);
        c.require(report_supports(report) == expected,
                  "supports differ at eta = " + rational_to_string(eta));
    }
    c.detail = quick ? "sampled eta in {7/9, 7/8} (--quick)"
                     : "sampled eta in {7/9, 5/6, 7/8}; 4/5 covered by criterion 8";
}

void c10_threecycle(Criterion& c) {
    const VertexSet vs = threecycle_vertices();
    const Box target = threecycle_box(Rational(1, 2));
    const MinimalEnsembleReport report = minimal_ensembles(target, vs);
    const Json ens = load_fixture("threecycle_ensembles_lambda_half.json");
    c.require(report.ensembles.size() == ens["ensembles"].size(), "count mismatch");

    // Published order -> our canonical order, matched by support.
    std::vector<std::size_t> sigma;
    for (const Json& entry : ens["ensembles"]) {
        std::vector<std::size_t> support;
        for (const Json& label : entry["support"])
            support.push_back(vs.index_of(label.get<std::string>()));
        std::sort(support.begin(), support.end());
        std::size_t ours = report.ensembles.size();
        for (std::size_t j = 0; j < report.ensembles.size(); ++j)
            if (report.ensembles[j].support == support) ours = j;
        c.require(ours < report.ensembles.size(),
                  "no ensemble with support " + entry["support"].dump());
        if (ours >= report.ensembles.size()) return;
        // Published member order is ascending too, so weights align.
        c.require(report.ensembles[ours].weights ==
                      rat_array_from_json(entry["weights"]),
                  "weights differ for " + entry["support"].dump());
        sigma.push_back(ours);
    }

    const CompleteExtension ce = complete_extension(target, vs);
    const Json table = load_fixture("threecycle_ce_lambda_half.json");
    const Json& z_outputs = table["z_outputs"];
    for (std::size_t k = 0; k < sigma.size(); ++k)
        c.require(ce.joint.scenario().num_outputs(1, sigma[k]) ==
                      z_outputs[k].get<int>(),
                  "extension cardinality differs at published z=" + std::to_string(k));
    for (const Json& entry : table["entries"]) {
        const int z = entry["z"].get<int>();
        const int e = entry["e"].get<int>();
        const RatVector values = rat_array_from_json(entry["values"]);
        for (int x = 0; x < 3; ++x)
            for (int a = 0; a < 4; ++a) {
                const Rational got =
                    ce.joint.p({x, static_cast<int>(sigma[z])}, {a, e});
                c.require(got == values[x * 4 + a],
                          "entry z=" + std::to_string(z) + " e=" + std::to_string(e) +
                              " x=" + std::to_string(x) + " a=" + std::to_string(a));
            }
    }
}

void c11_binary_grid(Criterion& c) {
    const VertexSet vs = load_vertex_set("binary_strategy_vertices.json");
    const std::vector<Box> grid = single_party_binary_grid(6);
    c.require(grid.size() == 169, "grid size " + std::to_string(grid.size()));
    for (const Box& b : grid) {
        const MinimalEnsembleReport report = minimal_ensembles(b, vs);
        bool interior = true;
        for (const Rational& v : b.flattened())
            if (v == 0 || v == 1) interior = false;
        if (b.is_deterministic()) {
            c.require(report.ensembles.size() == 1 &&
                          report.ensembles[0].support.size() == 1,
                      "deterministic box has a nontrivial ensemble");
        } else if (interior) {
            c.require(report.ensembles.size() == 2, "interior box without 2 ensembles");
            for (const Ensemble& e : report.ensembles)
                c.require(e.support.size() == 2 || e.support.size() == 3,
                          "interior support size " + std::to_string(e.support.size()));
        } else {
            // Boundary, non-deterministic: a face of the square, one ensemble.
            c.require(report.ensembles.size() == 1, "boundary box ensemble count");
        }
    }

    const std::vector<Box> census = purification_census(grid, vs);
    c.require(census.size() == 5, "census size " + std::to_string(census.size()));
    const Box uniform = load_box("uniform_binary_box.json");
    c.require(std::find(census.begin(), census.end(), uniform) != census.end(),
              "uniform box missing from census");
    std::size_t deterministic = 0;
    for (const Box& b : census)
        if (b.is_deterministic()) ++deterministic;
    c.require(deterministic == 4, "census should contain the four corners");
}

void c12_enumeration(Criterion& c) {
    auto as_set = [](const std::vector<Box>& v) {
        std::multiset<RatVector> s;
        for (const Box& b : v) s.insert(b.flattened());
        return s;
    };
    const VertexSet binary = enumerate_vertices(Scenario{{{2, 2}}});
    c.require(as_set(binary.vertices) ==
                  as_set(deterministic_vertices(Scenario{{{2, 2}}}).vertices),
              "binary scenario enumeration differs from strategies");

    const Scenario padded{{{3, 3}}};
    const VertexSet nine = enumerate_vertices(padded);
    c.require(nine.size() == 9, "padded single-party count " + std::to_string(nine.size()));
    c.require(as_set(nine.vertices) == as_set(deterministic_vertices(padded).vertices),
              "padded single-party enumeration differs from strategies");

    const VertexSet joint = enumerate_vertices(Scenario{{{2, 2}, {2, 2}}});
    c.require(joint.size() == 24, "two-party count " + std::to_string(joint.size()));
    c.require(as_set(joint.vertices) == as_set(barrett_2222_vertices().vertices),
              "two-party enumeration differs from the known 24");
}

void c13_properties(Criterion& c) {
    nsbox::testing::Lcg rng(20260823);

    // Random points in a ragged single-party polytope: every reported
    // ensemble reconstructs the target, is minimal, and mixtures of the
    // minimal ensembles are recognized as such.
    const Scenario ragged{{{3, 2}}};
    const VertexSet dvs = deterministic_vertices(ragged);
    for (int trial = 0; trial < 15; ++trial) {
        RatVector weights(dvs.size());
        Rational total = 0;
        for (auto& w : weights) {
            w = Rational(rng.below(5), 1);
            total += w;
        }
        if (total == 0) continue;
        for (auto& w : weights) w /= total;
        RatVector flat(ragged.parameter_count(), Rational(0));
        for (std::size_t i = 0; i < dvs.size(); ++i)
            for (std::size_t k = 0; k < flat.size(); ++k)
                flat[k] += weights[i] * dvs.vertices[i].flattened()[k];
        const Box target(ragged, flat);
        const MinimalEnsembleReport report = minimal_ensembles(target, dvs);
        for (const Ensemble& e : report.ensembles) {
            c.require(reconstruct(dvs, e) == target, "reconstruction failure");
            c.require(is_minimal(e, target, dvs), "non-minimal ensemble reported");
        }
        // Random convex mixture of the minimal ensembles round-trips.
        RatVector q(report.ensembles.size());
        Rational qt = 0;
        for (auto& x : q) {
            x = Rational(1 + rng.below(4), 1);
            qt += x;
        }
        for (auto& x : q) x /= qt;
        Ensemble mixed;
        RatVector full(dvs.size(), Rational(0));
        for (std::size_t m = 0; m < q.size(); ++m) {
            const RatVector fw = report.ensembles[m].full_weights(dvs.size());
            for (std::size_t i = 0; i < full.size(); ++i) full[i] += q[m] * fw[i];
        }
        for (std::size_t i = 0; i < full.size(); ++i)
            if (full[i] != 0) {
                mixed.support.push_back(i);
                mixed.weights.push_back(full[i]);
            }
        const RatVector back = express_as_minimal_mix(mixed, report);
        RatVector rebuilt(dvs.size(), Rational(0));
        for (std::size_t m = 0; m < back.size(); ++m) {
            const RatVector fw = report.ensembles[m].full_weights(dvs.size());
            for (std::size_t i = 0; i < rebuilt.size(); ++i)
                rebuilt[i] += back[m] * fw[i];
        }
        c.require(rebuilt == full, "minimal-mix expression does not reproduce weights");
    }

    // Bell value and vertex status are relabeling-invariant.
    const VertexSet vs = barrett_2222_vertices();
    const ConstraintSystem cs = constraint_system(vs.scenario);
    for (int trial = 0; trial < 6; ++trial) {
        const Box iso = isotropic_box(Rational(1 + rng.below(8), 9));
        const auto rs = nsbox::testing::random_relabeling(rng, iso.scenario());
        c.require(chsh(relabel(iso, rs)).value == chsh(iso).value,
                  "CHSH not relabeling-invariant");
        const Box& v = vs.vertices[rng.below(vs.size())];
        c.require(vertex_check(cs, relabel(v, rs).flattened()).is_vertex,
                  "vertex status not relabeling-invariant");
    }

    // Conditioning a complete extension steers into the ensemble members.
    const VertexSet binary = load_vertex_set("binary_strategy_vertices.json");
    for (int trial = 0; trial < 5; ++trial) {
        const Box base(Scenario{{{2, 2}}},
                       [&] {
                           const Rational p(rng.below(6), 5), r(rng.below(6), 5);
                           return RatVector{p, 1 - p, r, 1 - r};
                       }());
        const CompleteExtension ce = complete_extension(base, binary);
        c.require(marginal(ce.joint, {0}) == base, "extension marginal mismatch");
        for (std::size_t k = 0; k < ce.report.ensembles.size(); ++k) {
            const Ensemble& m = ce.report.ensembles[k];
            for (std::size_t i = 0; i < m.support.size(); ++i) {
                const JointOutcome out =
                    condition(ce.joint, 1, static_cast<int>(k), static_cast<int>(i));
                c.require(out.probability == m.weights[i], "steering weight mismatch");
                c.require(out.residual && *out.residual == binary.vertices[m.support[i]],
                          "steering residual mismatch");
            }
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]) == "--quick") quick = true;

    run(1, "uniform binary box extends to the maximally nonlocal box", c1_uniform_extension);
    run(2, "skewed binary box: minimal ensembles and complete extension",
        c2_skewed_decomposition);
    run(3, "tight-rank vertex tests (16/16 extremal, 19/20 extension)", c3_tight_ranks);
    run(4, "mixed-ensemble channels and mixing dice", c4_channels);
    run(5, "arbitrary extension from a two-entry menu", c5_arbitrary_extension);
    run(6, "conjugate of the skewed extension", c6_conjugate_pipeline);
    run(7, "Bell functional anchor values", c7_bell_values);
    run(8, "isotropic box at 4/5: the 354-ensemble family", c8_isotropic_family);
    run(9, "ensemble family is stable across the nonlocal interval",
        c9_interval_stability);
    run(10, "three-cycle box at 1/2: ensembles and complete extension", c10_threecycle);
    run(11, "binary grid: ensemble counts and purification census", c11_binary_grid);
    run(12, "vertex enumeration recovers the known extreme points", c12_enumeration);
    run(13, "randomized invariants (reconstruction, relabeling, steering)",
        c13_properties);

    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all 13 criteria passed\n");
    return failures == 0 ? 0 : 1;
}
