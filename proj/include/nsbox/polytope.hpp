#ifndef NSBOX_POLYTOPE_HPP
#define NSBOX_POLYTOPE_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "nsbox/box.hpp"
#include "nsbox/linalg.hpp"
#include "nsbox/rational.hpp"

namespace nsbox {

/**
 * Linear description of a box polytope: equality rows (normalization,
 * non-signaling / no-disturbance) over the canonical flat coordinates,
 * plus the implicit nonnegativity of every coordinate. The equality rank
 * is computed once at construction.
 */
struct ConstraintSystem {
    std::size_t ambient = 0;
    RatMatrix equalities;  // rows x ambient
    RatVector rhs;
    std::size_t equality_rank = 0;

    std::size_t effective_dimension() const { return ambient - equality_rank; }

    bool satisfied_by(const RatVector& v) const {
        for (const Rational& x : v)
            if (x < 0) return false;
        const RatVector lhs = equalities.multiply(v);
        for (std::size_t r = 0; r < lhs.size(); ++r)
            if (lhs[r] != rhs[r]) return false;
        return true;
    }
};

namespace detail {

inline ConstraintSystem finish_system(std::size_t ambient,
                                      std::vector<RatVector> rows, RatVector rhs) {
    ConstraintSystem cs;
    cs.ambient = ambient;
    cs.rhs = std::move(rhs);
    RatMatrix m(rows.size(), ambient);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < ambient; ++c) m.at(r, c) = rows[r][c];
    cs.equalities = std::move(m);
    cs.equality_rank = rank(cs.equalities);
    return cs;
}

}  // namespace detail

/**
 * Equality rows of the non-signaling polytope, in a fixed order:
 * normalization per joint input (lexicographic), then for each party the
 * rows equating its complement marginal under input j>0 with input 0,
 * per complement joint input and joint output. Pairing every input with
 * input 0 spans all pairwise constraints.
 */
inline ConstraintSystem constraint_system(const Scenario& s) {
    const std::size_t t = s.parameter_count();
    const Box probe{s};  // only for flat_index
    std::vector<RatVector> rows;
    RatVector rhs;

    JointIndex inputs(s.num_parties(), 0);
    const std::vector<int> in_radices = detail::input_radices(s);
    do {
        RatVector row(t, Rational(0));
        JointIndex outputs(s.num_parties(), 0);
        const std::vector<int> out_radices = detail::output_radices(s, inputs);
        do {
            row[probe.flat_index(inputs, outputs)] = 1;
        } while (detail::next_tuple(outputs, out_radices));
        rows.push_back(std::move(row));
        rhs.push_back(1);
    } while (detail::next_tuple(inputs, in_radices));

    for (std::size_t party = 0; party < s.num_parties(); ++party) {
        std::vector<std::size_t> rest;
        for (std::size_t i = 0; i < s.num_parties(); ++i)
            if (i != party) rest.push_back(i);
        if (rest.empty()) continue;
        std::vector<int> rest_in_radices(rest.size());
        for (std::size_t k = 0; k < rest.size(); ++k)
            rest_in_radices[k] = static_cast<int>(s.num_inputs(rest[k]));
        for (std::size_t j = 1; j < s.num_inputs(party); ++j) {
            JointIndex rest_inputs(rest.size(), 0);
            do {
                std::vector<int> rest_out_radices(rest.size());
                for (std::size_t k = 0; k < rest.size(); ++k)
                    rest_out_radices[k] = s.num_outputs(rest[k], rest_inputs[k]);
                JointIndex rest_outputs(rest.size(), 0);
                do {
                    RatVector row(t, Rational(0));
                    JointIndex in(s.num_parties()), out(s.num_parties());
                    for (std::size_t k = 0; k < rest.size(); ++k) {
                        in[rest[k]] = rest_inputs[k];
                        out[rest[k]] = rest_outputs[k];
                    }
                    in[party] = static_cast<int>(j);
                    for (int a = 0; a < s.num_outputs(party, j); ++a) {
                        out[party] = a;
                        row[probe.flat_index(in, out)] += 1;
                    }
                    in[party] = 0;
                    for (int a = 0; a < s.num_outputs(party, 0); ++a) {
                        out[party] = a;
                        row[probe.flat_index(in, out)] -= 1;
                    }
                    rows.push_back(std::move(row));
                    rhs.push_back(0);
                } while (detail::next_tuple(rest_outputs, rest_out_radices));
            } while (detail::next_tuple(rest_inputs, rest_in_radices));
        }
    }
    return detail::finish_system(t, std::move(rows), std::move(rhs));
}

/// Closed form Π_i (1 + Σ_j (d_ij − 1)) − 1; equals t − rank(equalities).
inline std::size_t ns_dimension(const Scenario& s) {
    BigInt product = 1;
    for (const auto& inputs : s.parties) {
        BigInt free_params = 1;
        for (int d : inputs) free_params += d - 1;
        product *= free_params;
    }
    product -= 1;
    return static_cast<std::size_t>(product);
}

struct VertexCheck {
    bool is_vertex = false;
    std::size_t tight_rank = 0;
    std::size_t ambient = 0;
};

/**
 * Tight-constraint rank of a feasible point: equality rows plus one unit
 * row per zero coordinate. The unit rows contribute their count directly,
 * and the equalities only need their rank over the nonzero coordinates.
 */
inline VertexCheck vertex_check(const ConstraintSystem& cs, const RatVector& v) {
    std::vector<std::size_t> nonzero;
    for (std::size_t c = 0; c < v.size(); ++c)
        if (v[c] != 0) nonzero.push_back(c);
    RatMatrix restricted(cs.equalities.rows(), nonzero.size());
    for (std::size_t r = 0; r < cs.equalities.rows(); ++r)
        for (std::size_t k = 0; k < nonzero.size(); ++k)
            restricted.at(r, k) = cs.equalities.at(r, nonzero[k]);
    VertexCheck result;
    result.ambient = cs.ambient;
    result.tight_rank = (v.size() - nonzero.size()) + rank(restricted);
    result.is_vertex = result.tight_rank == cs.ambient;
    return result;
}

inline VertexCheck vertex_check(const Box& b) {
    if (!validate(b).empty())
        throw domain_error("vertex_check: box fails validation");
    if (!is_nonsignaling(b))
        throw domain_error("vertex_check: box is signaling");
    return vertex_check(constraint_system(b.scenario()), b.flattened());
}

inline bool is_vertex(const Box& b) { return vertex_check(b).is_vertex; }

struct VertexSet {
    Scenario scenario;
    std::vector<Box> vertices;
    std::vector<std::string> labels;

    std::size_t size() const { return vertices.size(); }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return i;
        throw domain_error("unknown vertex label '" + label + "'");
    }
};

/**
 * All deterministic strategies: one output fixed per input, independently
 * per party. Ordered lexicographically by the concatenated output choices
 * (party 0 slowest); labels carry those digits.
 */
inline VertexSet deterministic_vertices(const Scenario& s) {
    // Radices of the strategy counter: one digit per (party, input).
    std::vector<int> radices;
    for (const auto& inputs : s.parties)
        for (int d : inputs) radices.push_back(d);
    VertexSet vs;
    vs.scenario = s;
    JointIndex strategy(radices.size(), 0);
    do {
        Box b{s};
        JointIndex inputs(s.num_parties(), 0);
        const std::vector<int> in_radices = detail::input_radices(s);
        do {
            JointIndex outputs(s.num_parties());
            std::size_t digit = 0;
            for (std::size_t i = 0; i < s.num_parties(); ++i) {
                outputs[i] = strategy[digit + inputs[i]];
                digit += s.num_inputs(i);
            }
            b.p(inputs, outputs) = 1;
        } while (detail::next_tuple(inputs, in_radices));
        std::string label = "D_";
        for (int digit : strategy) label += std::to_string(digit);
        vs.vertices.push_back(std::move(b));
        vs.labels.push_back(std::move(label));
    } while (detail::next_tuple(strategy, radices));
    return vs;
}

/**
 * The 24 extremal boxes of the two-party binary scenario: 16 local
 * deterministic boxes L_abgd (a = α·x ⊕ β, b = γ·y ⊕ δ) followed by the
 * 8 maximally nonlocal boxes B_rst (uniform over a ⊕ b = x·y ⊕ r·x ⊕ s·y ⊕ t).
 */
inline VertexSet barrett_2222_vertices() {
    const Scenario s{{{2, 2}, {2, 2}}};
    VertexSet vs;
    vs.scenario = s;
    for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta)
            for (int gamma = 0; gamma < 2; ++gamma)
                for (int delta = 0; delta < 2; ++delta) {
                    Box b{s};
                    for (int x = 0; x < 2; ++x)
                        for (int y = 0; y < 2; ++y)
                            b.p({x, y}, {(alpha & x) ^ beta, (gamma & y) ^ delta}) = 1;
                    vs.vertices.push_back(std::move(b));
                    vs.labels.push_back("L_" + std::to_string(alpha) + std::to_string(beta) +
                                        std::to_string(gamma) + std::to_string(delta));
                }
    for (int r = 0; r < 2; ++r)
        for (int t = 0; t < 2; ++t)
            for (int u = 0; u < 2; ++u) {
                Box b{s};
                for (int x = 0; x < 2; ++x)
                    for (int y = 0; y < 2; ++y)
                        for (int a = 0; a < 2; ++a)
                            for (int e = 0; e < 2; ++e)
                                if ((a ^ e) == ((x & y) ^ (r & x) ^ (t & y) ^ u))
                                    b.p({x, y}, {a, e}) = Rational(1, 2);
                vs.vertices.push_back(std::move(b));
                vs.labels.push_back("B_" + std::to_string(r) + std::to_string(t) +
                                    std::to_string(u));
            }
    return vs;
}

/// The isotropic line through the two maximally nonlocal binary boxes:
/// eta·B_000 + (1−eta)·B_001.
inline Box isotropic_box(const Rational& eta) {
    const VertexSet vs = barrett_2222_vertices();
    const Box& pr = vs.vertices[vs.index_of("B_000")];
    const Box& anti = vs.vertices[vs.index_of("B_001")];
    RatVector v(pr.flattened().size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = eta * pr.flattened()[i] + (1 - eta) * anti.flattened()[i];
    return Box(vs.scenario, std::move(v));
}

/// Scenario of the cyclic three-observable box in single-party form: the
/// three contexts become inputs, the two binary readings become one
/// four-valued output.
inline Scenario threecycle_scenario() { return Scenario{{{4, 4, 4}}}; }

/**
 * No-disturbance rows for the three-context cycle: consecutive contexts
 * share an observable, so the shared marginal must agree. With output
 * a = 2·(first reading) + (second reading), context k's second observable
 * is context k+1's first, giving
 *   P(0|k+1) + P(1|k+1) = P(0|k) + P(2|k)   (k mod 3).
 */
inline ConstraintSystem threecycle_system() {
    const Scenario s = threecycle_scenario();
    ConstraintSystem base = constraint_system(s);  // normalization only
    std::vector<RatVector> rows;
    RatVector rhs;
    for (std::size_t r = 0; r < base.equalities.rows(); ++r) {
        RatVector row(base.ambient);
        for (std::size_t c = 0; c < base.ambient; ++c) row[c] = base.equalities.at(r, c);
        rows.push_back(std::move(row));
        rhs.push_back(base.rhs[r]);
    }
    for (int k = 0; k < 3; ++k) {
        const int next = (k + 1) % 3;
        RatVector row(base.ambient, Rational(0));
        row[4 * next + 0] += 1;
        row[4 * next + 1] += 1;
        row[4 * k + 0] -= 1;
        row[4 * k + 2] -= 1;
        rows.push_back(std::move(row));
        rhs.push_back(0);
    }
    return detail::finish_system(base.ambient, std::move(rows), std::move(rhs));
}

/**
 * The 12 extremal points of the three-cycle no-disturbance polytope:
 * 8 non-contextual (deterministic) boxes NC_0..NC_7 and 4 contextual
 * boxes C_0..C_3 (uniform over two anticorrelated readings per context).
 */
inline VertexSet threecycle_vertices() {
    const Scenario s = threecycle_scenario();
    // Rows of 12 flat coordinates (context 0,1,2 by 4 outputs); 2 marks 1/2.
    static const int table[12][12] = {
        {1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0},  // NC_0
        {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0},  // NC_1
        {0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0},  // NC_2
        {0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0},  // NC_3
        {0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0},  // NC_4
        {0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1},  // NC_5
        {0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0},  // NC_6
        {0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1},  // NC_7
        {2, 0, 0, 2, 2, 0, 0, 2, 0, 2, 2, 0},  // C_0
        {2, 0, 0, 2, 0, 2, 2, 0, 2, 0, 0, 2},  // C_1
        {0, 2, 2, 0, 2, 0, 0, 2, 2, 0, 0, 2},  // C_2
        {0, 2, 2, 0, 0, 2, 2, 0, 0, 2, 2, 0},  // C_3
    };
    VertexSet vs;
    vs.scenario = s;
    for (int i = 0; i < 12; ++i) {
        RatVector v(12);
        for (int c = 0; c < 12; ++c)
            v[c] = table[i][c] == 2 ? Rational(1, 2) : Rational(table[i][c]);
        vs.vertices.push_back(Box(s, std::move(v)));
        vs.labels.push_back((i < 8 ? "NC_" + std::to_string(i)
                                   : "C_" + std::to_string(i - 8)));
    }
    return vs;
}

/// The contextual line (1−lambda)·C_0 + lambda·(uniform box).
inline Box threecycle_box(const Rational& lambda) {
    const VertexSet vs = threecycle_vertices();
    const Box& c0 = vs.vertices[vs.index_of("C_0")];
    RatVector v(c0.flattened().size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = (1 - lambda) * c0.flattened()[i] + lambda * Rational(1, 4);
    return Box(vs.scenario, std::move(v));
}

/**
 * Exhaustive vertex enumeration: for every coordinate subset of size
 * (effective dimension), force those coordinates to zero, solve the
 * resulting square-rank system, and keep feasible unique solutions.
 * Vertices with extra tight coordinates are found repeatedly and deduped.
 * Intended as an oracle for small polytopes, hence the dimension cap.
 */
inline std::vector<RatVector> enumerate_vertex_points(const ConstraintSystem& cs,
                                                      std::size_t cap = 12) {
    const std::size_t dim = cs.effective_dimension();
    if (dim > cap)
        throw domain_error("enumerate_vertices: effective dimension " +
                           std::to_string(dim) + " exceeds cap " + std::to_string(cap));
    const std::size_t t = cs.ambient;
    std::vector<RatVector> found;
    std::vector<std::size_t> pick(dim);
    for (std::size_t i = 0; i < dim; ++i) pick[i] = i;
    auto advance = [&]() {
        for (std::size_t i = dim; i-- > 0;) {
            if (++pick[i] <= t - (dim - i)) {
                for (std::size_t j = i + 1; j < dim; ++j) pick[j] = pick[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    if (dim == 0) {
        if (auto x = solve_unique(cs.equalities, cs.rhs); x && cs.satisfied_by(*x))
            found.push_back(*x);
        return found;
    }
    do {
        RatMatrix m(cs.equalities.rows() + dim, t);
        RatVector rhs(cs.equalities.rows() + dim, Rational(0));
        for (std::size_t r = 0; r < cs.equalities.rows(); ++r) {
            for (std::size_t c = 0; c < t; ++c) m.at(r, c) = cs.equalities.at(r, c);
            rhs[r] = cs.rhs[r];
        }
        for (std::size_t i = 0; i < dim; ++i)
            m.at(cs.equalities.rows() + i, pick[i]) = 1;
        const auto x = solve_unique(m, rhs);
        if (!x || !cs.satisfied_by(*x)) continue;
        if (std::find(found.begin(), found.end(), *x) == found.end())
            found.push_back(*x);
    } while (advance());
    std::sort(found.begin(), found.end());
    return found;
}

inline VertexSet enumerate_vertices(const Scenario& s, std::size_t cap = 12) {
    VertexSet vs;
    vs.scenario = s;
    std::size_t n = 0;
    for (RatVector& v : enumerate_vertex_points(constraint_system(s), cap)) {
        vs.vertices.push_back(Box(s, std::move(v)));
        vs.labels.push_back("V_" + std::to_string(n++));
    }
    return vs;
}

}  // namespace nsbox

#endif
