#ifndef NSBOX_BELL_HPP
#define NSBOX_BELL_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nsbox/box.hpp"
#include "nsbox/rational.hpp"

namespace nsbox {

struct BellReport {
    std::string functional;
    Rational value;
    std::string variant;  // witnessing sign pattern / relabeling
    Rational classical_bound;
};

namespace detail {

inline void require_scenario(const Box& b, const Scenario& wanted, const char* what) {
    if (!(b.scenario() == wanted))
        throw domain_error(std::string(what) + ": wrong scenario");
}

}  // namespace detail

/**
 * CHSH family over the two-party binary scenario: with correlators
 * E(x,y) = sum_{a,e} (-1)^{a xor e} P(ae|xy), evaluates the eight signed
 * sums S_rst = sum_{x,y} (-1)^{xy xor rx xor sy xor t} E(x,y) and reports
 * the largest (t covers negation, so no absolute value is taken). Each
 * maximally nonlocal vertex saturates its own variant at 4; local boxes
 * stay at the classical bound 2.
 */
inline BellReport chsh(const Box& b) {
    detail::require_scenario(b, Scenario{{{2, 2}, {2, 2}}}, "chsh");
    Rational correlator[2][2];
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            Rational e = 0;
            for (int a = 0; a < 2; ++a)
                for (int o = 0; o < 2; ++o)
                    e += ((a ^ o) ? -1 : 1) * b.p({x, y}, {a, o});
            correlator[x][y] = e;
        }
    BellReport report{"chsh", 0, "", 2};
    bool first = true;
    for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t) {
                Rational value = 0;
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y) {
                        const int sign = ((x & y) ^ (r & x) ^ (s & y) ^ t) ? -1 : 1;
                        value += sign * correlator[x][y];
                    }
                if (first || value > report.value) {
                    report.value = value;
                    report.variant = "S_" + std::to_string(r) + std::to_string(s) +
                                     std::to_string(t);
                    first = false;
                }
            }
    return report;
}

namespace detail {

using Perm3 = std::array<int, 3>;

inline const std::vector<Perm3>& perms3() {
    static const std::vector<Perm3> all = [] {
        std::vector<Perm3> p;
        Perm3 v{0, 1, 2};
        do p.push_back(v);
        while (std::next_permutation(v.begin(), v.end()));
        return p;
    }();
    return all;
}

// I3 in probability form on outputs relabeled by pa (per input of party 0)
// and pe (per input of party 1). The terms P(A_x = B_y + k) are summed by
// scanning the raw table and testing the relabeled outputs.
inline Rational i3_value(const Box& b, const Perm3& pa0, const Perm3& pa1,
                         const Perm3& pe0, const Perm3& pe1) {
    const Perm3* pa[2] = {&pa0, &pa1};
    const Perm3* pe[2] = {&pe0, &pe1};
    auto a_eq_b = [&](int x, int y, int k) {  // P(A_x = B_y + k mod 3)
        Rational sum = 0;
        for (int a = 0; a < 3; ++a)
            for (int e = 0; e < 3; ++e)
                if ((*pa[x])[a] == ((*pe[y])[e] + k) % 3) sum += b.p({x, y}, {a, e});
        return sum;
    };
    auto b_eq_a = [&](int y, int x, int k) {  // P(B_y = A_x + k mod 3)
        Rational sum = 0;
        for (int a = 0; a < 3; ++a)
            for (int e = 0; e < 3; ++e)
                if ((*pe[y])[e] == ((*pa[x])[a] + k) % 3) sum += b.p({x, y}, {a, e});
        return sum;
    };
    return a_eq_b(0, 0, 0) + b_eq_a(0, 1, 1) + a_eq_b(1, 1, 0) + b_eq_a(1, 0, 0)  //
           - a_eq_b(0, 0, 2) - b_eq_a(0, 1, 0) - a_eq_b(1, 1, 2) - b_eq_a(1, 0, 2);
}

inline std::string perm_digits(const Perm3& p) {
    return std::to_string(p[0]) + std::to_string(p[1]) + std::to_string(p[2]);
}

}  // namespace detail

/**
 * The three-outcome Bell functional I3 on the two-party, two-input,
 * three-output scenario, maximized over per-input output relabelings of
 * both parties. Anchors pinning the convention: the classical maximum is
 * exactly 2 (over all deterministic boxes) and the uniform box scores 0.
 */
inline BellReport cglmp3(const Box& b) {
    detail::require_scenario(b, Scenario{{{3, 3}, {3, 3}}}, "cglmp3");
    BellReport report{"cglmp3", 0, "", 2};
    bool first = true;
    for (const auto& pa0 : detail::perms3())
        for (const auto& pa1 : detail::perms3())
            for (const auto& pe0 : detail::perms3())
                for (const auto& pe1 : detail::perms3()) {
                    const Rational value = detail::i3_value(b, pa0, pa1, pe0, pe1);
                    if (first || value > report.value) {
                        report.value = value;
                        report.variant = "outputs a:" + detail::perm_digits(pa0) + "," +
                                         detail::perm_digits(pa1) + " e:" +
                                         detail::perm_digits(pe0) + "," +
                                         detail::perm_digits(pe1);
                        first = false;
                    }
                }
    return report;
}

/**
 * Collapses outputs of one party: maps[j][old] = new output for input j.
 * Each map must be surjective onto 0..max; probabilities of merged
 * outcomes add up, so normalization and non-signaling survive.
 */
inline Box merge_outputs(const Box& b, std::size_t party,
                         const std::vector<std::vector<int>>& maps) {
    const Scenario& s = b.scenario();
    if (party >= s.num_parties() || maps.size() != s.num_inputs(party))
        throw domain_error("merge_outputs: one map per input of the party required");
    std::vector<std::vector<int>> parties = s.parties;
    for (std::size_t j = 0; j < maps.size(); ++j) {
        if (maps[j].size() != static_cast<std::size_t>(s.num_outputs(party, j)))
            throw domain_error("merge_outputs: map length mismatch");
        const int new_card =
            1 + *std::max_element(maps[j].begin(), maps[j].end());
        std::vector<bool> hit(new_card, false);
        for (int v : maps[j]) {
            if (v < 0) throw domain_error("merge_outputs: negative output label");
            hit[v] = true;
        }
        for (bool h : hit)
            if (!h) throw domain_error("merge_outputs: map is not surjective");
        parties[party][j] = new_card;
    }
    Box result{Scenario(parties)};
    JointIndex inputs(s.num_parties(), 0);
    const std::vector<int> in_radices = detail::input_radices(s);
    do {
        JointIndex outputs(s.num_parties(), 0);
        const std::vector<int> out_radices = detail::output_radices(s, inputs);
        do {
            JointIndex merged = outputs;
            merged[party] = maps[inputs[party]][outputs[party]];
            result.p(inputs, merged) += b.p(inputs, outputs);
        } while (detail::next_tuple(outputs, out_radices));
    } while (detail::next_tuple(inputs, in_radices));
    return result;
}

/// Appends zero-probability outcomes to one input of one party.
inline Box pad_outputs(const Box& b, std::size_t party, std::size_t input,
                       int new_cardinality) {
    const Scenario& s = b.scenario();
    if (party >= s.num_parties() || input >= s.num_inputs(party))
        throw domain_error("pad_outputs: index out of range");
    if (new_cardinality < s.num_outputs(party, input))
        throw domain_error("pad_outputs: shrinking outputs is not allowed");
    std::vector<std::vector<int>> parties = s.parties;
    parties[party][input] = new_cardinality;
    Box result{Scenario(parties)};
    JointIndex inputs(s.num_parties(), 0);
    const std::vector<int> in_radices = detail::input_radices(s);
    do {
        JointIndex outputs(s.num_parties(), 0);
        const std::vector<int> out_radices = detail::output_radices(s, inputs);
        do {
            result.p(inputs, outputs) = b.p(inputs, outputs);
        } while (detail::next_tuple(outputs, out_radices));
    } while (detail::next_tuple(inputs, in_radices));
    return result;
}

namespace detail {

/// All relabelings of one party: every input permutation combined with
/// every choice of output permutation per (original) input.
inline std::vector<PartyRelabeling> party_relabelings(const Scenario& s, std::size_t party) {
    const std::size_t m = s.num_inputs(party);
    std::vector<int> input_perm(m);
    for (std::size_t j = 0; j < m; ++j) input_perm[j] = static_cast<int>(j);
    std::vector<std::vector<std::vector<int>>> output_choices(m);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<int> p(s.num_outputs(party, j));
        for (std::size_t a = 0; a < p.size(); ++a) p[a] = static_cast<int>(a);
        do output_choices[j].push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
    }
    std::vector<PartyRelabeling> result;
    std::sort(input_perm.begin(), input_perm.end());
    do {
        std::vector<std::size_t> pick(m, 0);
        while (true) {
            PartyRelabeling r;
            r.input_perm = input_perm;
            for (std::size_t j = 0; j < m; ++j)
                r.output_perms.push_back(output_choices[j][pick[j]]);
            result.push_back(std::move(r));
            std::size_t j = m;
            bool done = true;
            while (j-- > 0) {
                if (++pick[j] < output_choices[j].size()) {
                    done = false;
                    break;
                }
                pick[j] = 0;
            }
            if (done) break;
        }
    } while (std::next_permutation(input_perm.begin(), input_perm.end()));
    return result;
}

inline void enumerate_relabelings(
    const Scenario& s, const std::function<bool(const std::vector<PartyRelabeling>&)>& visit) {
    std::vector<std::vector<PartyRelabeling>> per_party;
    for (std::size_t i = 0; i < s.num_parties(); ++i)
        per_party.push_back(party_relabelings(s, i));
    std::vector<std::size_t> pick(s.num_parties(), 0);
    while (true) {
        std::vector<PartyRelabeling> combo;
        for (std::size_t i = 0; i < pick.size(); ++i)
            combo.push_back(per_party[i][pick[i]]);
        if (!visit(combo)) return;
        std::size_t i = pick.size();
        while (i-- > 0) {
            if (++pick[i] < per_party[i].size()) break;
            pick[i] = 0;
            if (i == 0) return;
        }
    }
}

inline std::string describe_relabeling(const std::vector<PartyRelabeling>& rs) {
    std::string out;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (i) out += " ";
        out += "party" + std::to_string(i) + " in:";
        for (int v : rs[i].input_perm) out += std::to_string(v);
        out += " out:";
        for (std::size_t j = 0; j < rs[i].output_perms.size(); ++j) {
            if (j) out += ",";
            for (int v : rs[i].output_perms[j]) out += std::to_string(v);
        }
    }
    return out;
}

}  // namespace detail

/// Finds a relabeling carrying `a` onto `b`, if any (exhaustive search;
/// the symmetry groups at play here are tiny).
inline std::optional<std::vector<PartyRelabeling>> equal_up_to_relabeling(const Box& a,
                                                                          const Box& b) {
    if (a.scenario().num_parties() != b.scenario().num_parties()) return std::nullopt;
    std::optional<std::vector<PartyRelabeling>> witness;
    detail::enumerate_relabelings(a.scenario(), [&](const std::vector<PartyRelabeling>& rs) {
        if (relabel(a, rs) == b) {
            witness = rs;
            return false;
        }
        return true;
    });
    return witness;
}

enum class BellFunctional { chsh, cglmp3 };

/**
 * Exhaustive maximum of the functional over the full relabeling group
 * (input permutations and per-input output permutations of every party).
 * Ties break toward the first relabeling in enumeration order, so the
 * report is deterministic.
 */
inline BellReport maximize_over_relabelings(const Box& b, BellFunctional functional) {
    std::optional<BellReport> best;
    std::string best_relabeling;
    detail::enumerate_relabelings(b.scenario(), [&](const std::vector<PartyRelabeling>& rs) {
        // Relabeled ragged scenarios can differ from the original; the
        // functionals' own scenario checks would reject those, so skip.
        const Box candidate = relabel(b, rs);
        if (!(candidate.scenario() == b.scenario())) return true;
        const BellReport r =
            functional == BellFunctional::chsh ? chsh(candidate) : cglmp3(candidate);
        if (!best || r.value > best->value) {
            best = r;
            best_relabeling = detail::describe_relabeling(rs);
        }
        return true;
    });
    if (!best) throw domain_error("maximize_over_relabelings: no admissible relabeling");
    best->variant += " via " + best_relabeling;
    return *best;
}

}  // namespace nsbox

#endif
