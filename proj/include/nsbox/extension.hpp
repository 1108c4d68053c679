#ifndef NSBOX_EXTENSION_HPP
#define NSBOX_EXTENSION_HPP

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "nsbox/box.hpp"
#include "nsbox/ensembles.hpp"
#include "nsbox/polytope.hpp"
#include "nsbox/rational.hpp"

namespace nsbox {

/// A menu entry for an arbitrary extension: one ensemble of the base box,
/// members need not be extremal.
using MixedEnsemble = std::vector<std::pair<Rational, Box>>;

struct CompleteExtension {
    Box joint;
    MinimalEnsembleReport report;  // menu behind each extending input, in z order
};

/**
 * The complete extension of `base` over the vertex set `vs`: one extending
 * input z per minimal ensemble (canonical order), whose output cardinality
 * is that ensemble's support size, with
 *   P(a, e=i | x, z=k) = member_i^k(a|x) * weight_i^k.
 * Members within an input are ordered by ascending vertex index.
 */
inline CompleteExtension complete_extension(const Box& base, const VertexSet& vs,
                                            const EnumerationOptions& opts = {}) {
    MinimalEnsembleReport report = minimal_ensembles(base, vs, opts);
    const Scenario& bs = base.scenario();
    std::vector<std::vector<int>> parties = bs.parties;
    std::vector<int> extension_inputs;
    for (const Ensemble& m : report.ensembles)
        extension_inputs.push_back(static_cast<int>(m.support.size()));
    parties.push_back(std::move(extension_inputs));
    Box joint{Scenario(parties)};

    JointIndex base_inputs(bs.num_parties(), 0);
    const std::vector<int> in_radices = detail::input_radices(bs);
    for (std::size_t k = 0; k < report.ensembles.size(); ++k) {
        const Ensemble& m = report.ensembles[k];
        for (std::size_t i = 0; i < m.support.size(); ++i) {
            const Box& member = vs.vertices[m.support[i]];
            std::fill(base_inputs.begin(), base_inputs.end(), 0);
            do {
                JointIndex outputs(bs.num_parties(), 0);
                const std::vector<int> out_radices =
                    detail::output_radices(bs, base_inputs);
                do {
                    const Rational& p = member.p(base_inputs, outputs);
                    if (p == 0) continue;
                    JointIndex jin = base_inputs, jout = outputs;
                    jin.push_back(static_cast<int>(k));
                    jout.push_back(static_cast<int>(i));
                    joint.p(jin, jout) = p * m.weights[i];
                } while (detail::next_tuple(outputs, out_radices));
            } while (detail::next_tuple(base_inputs, in_radices));
        }
    }
    return CompleteExtension{std::move(joint), std::move(report)};
}

/**
 * Extension realizing an arbitrary menu of ensembles: input z' = k steers
 * the base into menu[k], with P(a, m | x, z'=k) = p(m|k) * member_m^k(a|x).
 * Each menu entry must reproduce the base exactly.
 */
inline Box arbitrary_extension(const Box& base, const std::vector<MixedEnsemble>& menu) {
    if (menu.empty()) throw domain_error("arbitrary_extension: empty menu");
    const Scenario& bs = base.scenario();
    for (std::size_t k = 0; k < menu.size(); ++k) {
        Rational total = 0;
        RatVector rebuilt(bs.parameter_count(), Rational(0));
        for (const auto& [p, member] : menu[k]) {
            if (p < 0) throw domain_error("arbitrary_extension: negative weight");
            if (!(member.scenario() == bs))
                throw domain_error("arbitrary_extension: member scenario mismatch");
            total += p;
            for (std::size_t c = 0; c < rebuilt.size(); ++c)
                rebuilt[c] += p * member.flattened()[c];
        }
        if (total != 1 || rebuilt != base.flattened())
            throw domain_error("arbitrary_extension: menu entry " + std::to_string(k) +
                               " is not an ensemble of the base box");
    }
    std::vector<std::vector<int>> parties = bs.parties;
    std::vector<int> extension_inputs;
    for (const MixedEnsemble& entry : menu)
        extension_inputs.push_back(static_cast<int>(entry.size()));
    parties.push_back(std::move(extension_inputs));
    Box joint{Scenario(parties)};

    JointIndex base_inputs(bs.num_parties(), 0);
    const std::vector<int> in_radices = detail::input_radices(bs);
    for (std::size_t k = 0; k < menu.size(); ++k) {
        for (std::size_t m = 0; m < menu[k].size(); ++m) {
            const auto& [pm, member] = menu[k][m];
            std::fill(base_inputs.begin(), base_inputs.end(), 0);
            do {
                JointIndex outputs(bs.num_parties(), 0);
                const std::vector<int> out_radices =
                    detail::output_radices(bs, base_inputs);
                do {
                    const Rational& p = member.p(base_inputs, outputs);
                    if (p == 0) continue;
                    JointIndex jin = base_inputs, jout = outputs;
                    jin.push_back(static_cast<int>(k));
                    jout.push_back(static_cast<int>(m));
                    joint.p(jin, jout) = p * pm;
                } while (detail::next_tuple(outputs, out_radices));
            } while (detail::next_tuple(base_inputs, in_radices));
        }
    }
    return joint;
}

struct ConjugateResult {
    Box conjugate;           // marginal of the extension on the extending party
    VertexSet conjugate_vertices;
    CompleteExtension extension;  // complete extension of the conjugate box
};

/**
 * Marginalizes an extension onto its extending party and completely
 * extends the resulting box over its own (enumerated) vertices. In general
 * the two extensions live in different scenarios: the conjugate box has
 * its own minimal-ensemble count.
 */
inline ConjugateResult conjugate_extension(const Box& extension, std::size_t extending_party,
                                           std::size_t enumeration_cap = 12) {
    Box conjugate = marginal(extension, {extending_party});
    VertexSet vs = enumerate_vertices(conjugate.scenario(), enumeration_cap);
    CompleteExtension ce = complete_extension(conjugate, vs);
    return ConjugateResult{std::move(conjugate), std::move(vs), std::move(ce)};
}

/// All single-party two-binary-input boxes whose entries have denominator
/// at most `max_denominator` (the free coordinates P(0|0) and P(0|1) range
/// over every such fraction in [0,1]).
inline std::vector<Box> single_party_binary_grid(int max_denominator) {
    std::vector<Rational> values;
    for (int d = 1; d <= max_denominator; ++d)
        for (int n = 0; n <= d; ++n) {
            Rational v(n, d);
            if (std::find(values.begin(), values.end(), v) == values.end())
                values.push_back(v);
        }
    std::sort(values.begin(), values.end());
    const Scenario s{{{2, 2}}};
    std::vector<Box> grid;
    for (const Rational& p : values)
        for (const Rational& q : values)
            grid.push_back(Box(s, {p, 1 - p, q, 1 - q}));
    return grid;
}

/**
 * Scans a family of boxes for those whose complete extension is itself a
 * vertex. Deterministic boxes qualify trivially (they extend to
 * themselves); everything else is extended and rank-tested.
 */
inline std::vector<Box> purification_census(const std::vector<Box>& grid,
                                            const VertexSet& vs) {
    std::vector<Box> purified;
    for (const Box& b : grid) {
        if (b.is_deterministic()) {
            purified.push_back(b);
            continue;
        }
        const CompleteExtension ce = complete_extension(b, vs);
        if (vertex_check(ce.joint).is_vertex) purified.push_back(b);
    }
    return purified;
}

}  // namespace nsbox

#endif
