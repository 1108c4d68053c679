#ifndef NSBOX_BOX_HPP
#define NSBOX_BOX_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nsbox/rational.hpp"

namespace nsbox {

struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * A measurement scenario: an ordered list of parties, each with an ordered
 * list of inputs, each input carrying its own output cardinality. Ragged
 * cardinalities are first-class; nothing here assumes a rectangular table.
 */
struct Scenario {
    // parties[i][j] = number of outputs of party i's input j.
    std::vector<std::vector<int>> parties;

    Scenario() = default;
    explicit Scenario(std::vector<std::vector<int>> p) : parties(std::move(p)) {
        if (parties.empty()) throw domain_error("scenario needs at least one party");
        for (const auto& inputs : parties) {
            if (inputs.empty()) throw domain_error("every party needs at least one input");
            for (int d : inputs)
                if (d < 1) throw domain_error("output cardinality must be >= 1");
        }
    }

    std::size_t num_parties() const { return parties.size(); }
    std::size_t num_inputs(std::size_t party) const { return parties[party].size(); }
    int num_outputs(std::size_t party, std::size_t input) const {
        return parties[party][input];
    }

    /// Total parameter count t = prod_i (sum_j d_ij).
    std::size_t parameter_count() const {
        std::size_t t = 1;
        for (const auto& inputs : parties)
            t *= static_cast<std::size_t>(std::accumulate(inputs.begin(), inputs.end(), 0));
        return t;
    }

    std::size_t num_joint_inputs() const {
        std::size_t n = 1;
        for (const auto& inputs : parties) n *= inputs.size();
        return n;
    }

    bool operator==(const Scenario& other) const { return parties == other.parties; }
};

using JointIndex = std::vector<int>;  // one entry per party

namespace detail {

/// Advances a mixed-radix counter (party 0 is the slowest digit).
/// Returns false after wrapping past the last combination.
inline bool next_tuple(JointIndex& tuple, const std::vector<int>& radices) {
    for (std::size_t i = tuple.size(); i-- > 0;) {
        if (++tuple[i] < radices[i]) return true;
        tuple[i] = 0;
    }
    return false;
}

inline std::vector<int> input_radices(const Scenario& s) {
    std::vector<int> r(s.num_parties());
    for (std::size_t i = 0; i < s.num_parties(); ++i)
        r[i] = static_cast<int>(s.num_inputs(i));
    return r;
}

inline std::vector<int> output_radices(const Scenario& s, const JointIndex& inputs) {
    std::vector<int> r(s.num_parties());
    for (std::size_t i = 0; i < s.num_parties(); ++i)
        r[i] = s.num_outputs(i, inputs[i]);
    return r;
}

}  // namespace detail

/**
 * A box: a scenario plus the conditional distribution P(outputs|inputs),
 * stored flattened in the canonical coordinate order used everywhere in
 * this library (joint inputs lexicographic with party 0 slowest, then
 * joint outputs lexicographic within each joint input).
 */
class Box {
  public:
    Box() = default;
    Box(Scenario scenario, RatVector table)
        : scenario_(std::move(scenario)), table_(std::move(table)) {
        build_offsets();
        if (table_.size() != scenario_.parameter_count())
            throw domain_error("box table length does not match scenario");
    }

    /// All-zero table; useful as a builder for constructed boxes.
    explicit Box(Scenario scenario) : scenario_(std::move(scenario)) {
        build_offsets();
        table_.assign(scenario_.parameter_count(), Rational(0));
    }

    const Scenario& scenario() const { return scenario_; }
    const RatVector& flattened() const { return table_; }

    std::size_t flat_index(const JointIndex& inputs, const JointIndex& outputs) const {
        std::size_t joint_input = 0;
        for (std::size_t i = 0; i < scenario_.num_parties(); ++i)
            joint_input = joint_input * scenario_.num_inputs(i) + inputs[i];
        std::size_t output_index = 0;
        for (std::size_t i = 0; i < scenario_.num_parties(); ++i)
            output_index = output_index * scenario_.num_outputs(i, inputs[i]) + outputs[i];
        return block_offsets_[joint_input] + output_index;
    }

    const Rational& p(const JointIndex& inputs, const JointIndex& outputs) const {
        return table_[flat_index(inputs, outputs)];
    }
    Rational& p(const JointIndex& inputs, const JointIndex& outputs) {
        return table_[flat_index(inputs, outputs)];
    }

    bool operator==(const Box& other) const {
        return scenario_ == other.scenario_ && table_ == other.table_;
    }

    /// True iff every entry is 0 or 1 (a deterministic strategy).
    bool is_deterministic() const {
        return std::all_of(table_.begin(), table_.end(),
                           [](const Rational& v) { return v == 0 || v == 1; });
    }

  private:
    void build_offsets() {
        block_offsets_.clear();
        std::size_t offset = 0;
        JointIndex inputs(scenario_.num_parties(), 0);
        const std::vector<int> radices = detail::input_radices(scenario_);
        do {
            block_offsets_.push_back(offset);
            std::size_t block = 1;
            for (std::size_t i = 0; i < scenario_.num_parties(); ++i)
                block *= scenario_.num_outputs(i, inputs[i]);
            offset += block;
        } while (detail::next_tuple(inputs, radices));
    }

    Scenario scenario_;
    RatVector table_;
    std::vector<std::size_t> block_offsets_;
};

inline RatVector flatten(const Box& b) { return b.flattened(); }

inline Box unflatten(const Scenario& s, RatVector v) {
    if (v.size() != s.parameter_count())
        throw domain_error("unflatten: vector length does not match scenario");
    return Box(s, std::move(v));
}

/// Normalization and range checks; violations are returned, not thrown.
inline std::vector<std::string> validate(const Box& b) {
    std::vector<std::string> violations;
    const Scenario& s = b.scenario();
    JointIndex inputs(s.num_parties(), 0);
    const std::vector<int> in_radices = detail::input_radices(s);
    do {
        Rational sum = 0;
        JointIndex outputs(s.num_parties(), 0);
        const std::vector<int> out_radices = detail::output_radices(s, inputs);
        do {
            const Rational& v = b.p(inputs, outputs);
            if (v < 0 || v > 1) {
                std::string where;
                for (std::size_t i = 0; i < inputs.size(); ++i)
                    where += (i ? "," : "") + std::to_string(inputs[i]) + ":" +
                             std::to_string(outputs[i]);
                violations.push_back("entry out of [0,1] at (" + where +
                                     "): " + rational_to_string(v));
            }
            sum += v;
        } while (detail::next_tuple(outputs, out_radices));
        if (sum != 1) {
            std::string where;
            for (std::size_t i = 0; i < inputs.size(); ++i)
                where += (i ? "," : "") + std::to_string(inputs[i]);
            violations.push_back("outputs for input (" + where +
                                 ") sum to " + rational_to_string(sum));
        }
    } while (detail::next_tuple(inputs, in_radices));
    return violations;
}

/**
 * Pairwise non-signaling check: for every party, the marginal on the
 * complement must not depend on that party's input. Checking each party
 * against its complement suffices for full non-signaling.
 */
inline bool is_nonsignaling(const Box& b) {
    const Scenario& s = b.scenario();
    if (s.num_parties() == 1) return true;
    for (std::size_t party = 0; party < s.num_parties(); ++party) {
        // Iterate joint inputs/outputs of the complement; compare the sum
        // over this party's outputs across its inputs.
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < s.num_parties(); ++i)
            if (i != party) rest.push_back(i);
        std::vector<int> rest_in_radices(rest.size());
        for (std::size_t k = 0; k < rest.size(); ++k)
            rest_in_radices[k] = static_cast<int>(s.num_inputs(rest[k]));
        JointIndex rest_inputs(rest.size(), 0);
        do {
            JointIndex inputs(s.num_parties());
            for (std::size_t k = 0; k < rest.size(); ++k)
                inputs[rest[k]] = rest_inputs[k];
            std::vector<int> rest_out_radices(rest.size());
            for (std::size_t k = 0; k < rest.size(); ++k)
                rest_out_radices[k] = s.num_outputs(rest[k], rest_inputs[k]);
            JointIndex rest_outputs(rest.size(), 0);
            do {
                std::optional<Rational> reference;
                for (std::size_t j = 0; j < s.num_inputs(party); ++j) {
                    inputs[party] = static_cast<int>(j);
                    Rational sum = 0;
                    JointIndex outputs(s.num_parties());
                    for (std::size_t k = 0; k < rest.size(); ++k)
                        outputs[rest[k]] = rest_outputs[k];
                    for (int a = 0; a < s.num_outputs(party, j); ++a) {
                        outputs[party] = a;
                        sum += b.p(inputs, outputs);
                    }
                    if (!reference)
                        reference = sum;
                    else if (*reference != sum)
                        return false;
                }
            } while (detail::next_tuple(rest_outputs, rest_out_radices));
        } while (detail::next_tuple(rest_inputs, rest_in_radices));
    }
    return true;
}

/**
 * Marginal box on the given (ordered) subset of parties. Well-defined only
 * for non-signaling boxes, where the removed parties' inputs do not matter;
 * signaling boxes are rejected.
 */
inline Box marginal(const Box& b, const std::vector<std::size_t>& keep) {
    const Scenario& s = b.scenario();
    if (keep.empty() || keep.size() >= s.num_parties())
        throw domain_error("marginal: keep a nonempty proper subset of parties");
    if (!is_nonsignaling(b))
        throw domain_error("marginal of a signaling box is input-dependent");
    std::vector<std::vector<int>> kept_parties;
    for (std::size_t i : keep) kept_parties.push_back(s.parties[i]);
    Box result{Scenario(kept_parties)};

    std::vector<std::size_t> removed;
    for (std::size_t i = 0; i < s.num_parties(); ++i)
        if (std::find(keep.begin(), keep.end(), i) == keep.end()) removed.push_back(i);

    const Scenario& ms = result.scenario();
    JointIndex kin(keep.size(), 0);
    const std::vector<int> kin_radices = detail::input_radices(ms);
    do {
        JointIndex inputs(s.num_parties(), 0);  // removed parties fixed at input 0
        for (std::size_t k = 0; k < keep.size(); ++k) inputs[keep[k]] = kin[k];
        JointIndex kout(keep.size(), 0);
        const std::vector<int> kout_radices = detail::output_radices(ms, kin);
        do {
            Rational sum = 0;
            std::vector<int> rem_radices(removed.size());
            for (std::size_t k = 0; k < removed.size(); ++k)
                rem_radices[k] = s.num_outputs(removed[k], 0);
            JointIndex rem_outputs(removed.size(), 0);
            JointIndex outputs(s.num_parties());
            for (std::size_t k = 0; k < keep.size(); ++k) outputs[keep[k]] = kout[k];
            do {
                for (std::size_t k = 0; k < removed.size(); ++k)
                    outputs[removed[k]] = rem_outputs[k];
                sum += b.p(inputs, outputs);
            } while (detail::next_tuple(rem_outputs, rem_radices));
            result.p(kin, kout) = sum;
        } while (detail::next_tuple(kout, kout_radices));
    } while (detail::next_tuple(kin, kin_radices));
    return result;
}

/**
 * Outcome of measuring one party: the probability of seeing `output` on
 * `input`, and the renormalized conditional box on the remaining parties.
 * The residual is absent when the probability is zero.
 */
struct JointOutcome {
    Rational probability;
    std::optional<Box> residual;
};

inline JointOutcome condition(const Box& b, std::size_t party, int input, int output) {
    const Scenario& s = b.scenario();
    if (party >= s.num_parties() || input < 0 ||
        static_cast<std::size_t>(input) >= s.num_inputs(party) || output < 0 ||
        output >= s.num_outputs(party, input))
        throw domain_error("condition: index out of range");
    if (s.num_parties() < 2)
        throw domain_error("condition: needs at least one remaining party");
    if (!is_nonsignaling(b))
        throw domain_error("condition: box is signaling");

    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < s.num_parties(); ++i)
        if (i != party) rest.push_back(i);
    const Box margin = marginal(b, {party});
    const Rational prob = margin.p({input}, {output});
    JointOutcome outcome{prob, std::nullopt};
    if (prob == 0) return outcome;

    std::vector<std::vector<int>> rest_parties;
    for (std::size_t i : rest) rest_parties.push_back(s.parties[i]);
    Box residual{Scenario(rest_parties)};
    const Scenario& rs = residual.scenario();
    JointIndex rin(rest.size(), 0);
    const std::vector<int> rin_radices = detail::input_radices(rs);
    do {
        JointIndex inputs(s.num_parties());
        inputs[party] = input;
        for (std::size_t k = 0; k < rest.size(); ++k) inputs[rest[k]] = rin[k];
        JointIndex rout(rest.size(), 0);
        const std::vector<int> rout_radices = detail::output_radices(rs, rin);
        do {
            JointIndex outputs(s.num_parties());
            outputs[party] = output;
            for (std::size_t k = 0; k < rest.size(); ++k) outputs[rest[k]] = rout[k];
            residual.p(rin, rout) = b.p(inputs, outputs) / prob;
        } while (detail::next_tuple(rout, rout_radices));
    } while (detail::next_tuple(rin, rin_radices));
    outcome.residual = std::move(residual);
    return outcome;
}

/// Product box: independent parties side by side.
inline Box tensor(const Box& b1, const Box& b2) {
    std::vector<std::vector<int>> parties = b1.scenario().parties;
    parties.insert(parties.end(), b2.scenario().parties.begin(), b2.scenario().parties.end());
    Box result{Scenario(parties)};
    const std::size_t n1 = b1.scenario().num_parties();
    const Scenario& s = result.scenario();
    JointIndex inputs(s.num_parties(), 0);
    const std::vector<int> in_radices = detail::input_radices(s);
    do {
        JointIndex in1(inputs.begin(), inputs.begin() + n1);
        JointIndex in2(inputs.begin() + n1, inputs.end());
        JointIndex outputs(s.num_parties(), 0);
        const std::vector<int> out_radices = detail::output_radices(s, inputs);
        do {
            JointIndex out1(outputs.begin(), outputs.begin() + n1);
            JointIndex out2(outputs.begin() + n1, outputs.end());
            result.p(inputs, outputs) = b1.p(in1, out1) * b2.p(in2, out2);
        } while (detail::next_tuple(outputs, out_radices));
    } while (detail::next_tuple(inputs, in_radices));
    return result;
}

/**
 * Relabeling of one party: a permutation of its inputs plus, per original
 * input, a permutation of that input's outputs. `input_perm[j]` is the new
 * position of original input j; `output_perms[j][a]` is the new label of
 * output a under original input j (the output block travels with its input).
 */
struct PartyRelabeling {
    std::vector<int> input_perm;
    std::vector<std::vector<int>> output_perms;

    static PartyRelabeling identity(const std::vector<int>& outputs_per_input) {
        PartyRelabeling r;
        r.input_perm.resize(outputs_per_input.size());
        for (std::size_t j = 0; j < outputs_per_input.size(); ++j) {
            r.input_perm[j] = static_cast<int>(j);
            std::vector<int> id(outputs_per_input[j]);
            for (int a = 0; a < outputs_per_input[j]; ++a) id[a] = a;
            r.output_perms.push_back(std::move(id));
        }
        return r;
    }
};

namespace detail {

inline bool is_permutation_vector(const std::vector<int>& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || static_cast<std::size_t>(v) >= p.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

}  // namespace detail

inline Box relabel(const Box& b, const std::vector<PartyRelabeling>& relabelings) {
    const Scenario& s = b.scenario();
    if (relabelings.size() != s.num_parties())
        throw domain_error("relabel: one relabeling per party required");
    std::vector<std::vector<int>> new_parties(s.num_parties());
    for (std::size_t i = 0; i < s.num_parties(); ++i) {
        const PartyRelabeling& r = relabelings[i];
        if (r.input_perm.size() != s.num_inputs(i) ||
            !detail::is_permutation_vector(r.input_perm) ||
            r.output_perms.size() != s.num_inputs(i))
            throw domain_error("relabel: inconsistent permutation shapes");
        new_parties[i].resize(s.num_inputs(i));
        for (std::size_t j = 0; j < s.num_inputs(i); ++j) {
            const int d = s.num_outputs(i, j);
            if (r.output_perms[j].size() != static_cast<std::size_t>(d) ||
                !detail::is_permutation_vector(r.output_perms[j]))
                throw domain_error("relabel: inconsistent permutation shapes");
            new_parties[i][r.input_perm[j]] = d;
        }
    }
    Box result{Scenario(new_parties)};
    JointIndex inputs(s.num_parties(), 0);
    const std::vector<int> in_radices = detail::input_radices(s);
    do {
        JointIndex new_inputs(s.num_parties());
        for (std::size_t i = 0; i < s.num_parties(); ++i)
            new_inputs[i] = relabelings[i].input_perm[inputs[i]];
        JointIndex outputs(s.num_parties(), 0);
        const std::vector<int> out_radices = detail::output_radices(s, inputs);
        do {
            JointIndex new_outputs(s.num_parties());
            for (std::size_t i = 0; i < s.num_parties(); ++i)
                new_outputs[i] = relabelings[i].output_perms[inputs[i]][outputs[i]];
            result.p(new_inputs, new_outputs) = b.p(inputs, outputs);
        } while (detail::next_tuple(outputs, out_radices));
    } while (detail::next_tuple(inputs, in_radices));
    return result;
}

}  // namespace nsbox

#endif
