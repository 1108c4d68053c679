#ifndef NSBOX_ENSEMBLES_HPP
#define NSBOX_ENSEMBLES_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "nsbox/box.hpp"
#include "nsbox/linalg.hpp"
#include "nsbox/polytope.hpp"
#include "nsbox/rational.hpp"

namespace nsbox {

struct infeasible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A convex decomposition over a vertex set: strictly positive weights on
/// an ascending index support.
struct Ensemble {
    std::vector<std::size_t> support;
    RatVector weights;  // aligned with support, all > 0

    RatVector full_weights(std::size_t vertex_count) const {
        RatVector w(vertex_count, Rational(0));
        for (std::size_t i = 0; i < support.size(); ++i) w[support[i]] = weights[i];
        return w;
    }

    bool operator==(const Ensemble& other) const {
        return support == other.support && weights == other.weights;
    }
};

struct MinimalEnsembleReport {
    Box target;
    VertexSet vertex_set;
    std::vector<Ensemble> ensembles;
};

namespace detail {

inline RatVector extended_column(const Box& b) {
    RatVector col = b.flattened();
    col.push_back(1);
    return col;
}

inline bool all_zero(const RatVector& v) {
    for (const Rational& x : v)
        if (x != 0) return false;
    return true;
}

// Eliminates `v` against the basis columns in insertion order. Each basis
// column is already reduced against its predecessors, so one pass suffices.
inline void reduce_against(RatVector& v, const std::vector<RatVector>& basis,
                           const std::vector<std::size_t>& pivots) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (v[pivots[i]] == 0) continue;
        const Rational factor = v[pivots[i]] / basis[i][pivots[i]];
        for (std::size_t c = 0; c < v.size(); ++c)
            if (basis[i][c] != 0) v[c] -= factor * basis[i][c];
    }
}

inline bool canonical_less(const Ensemble& a, const Ensemble& b) {
    if (a.support.size() != b.support.size())
        return a.support.size() < b.support.size();
    return a.support < b.support;
}

}  // namespace detail

/// Weights over the given vertex subset reproducing the target exactly —
/// present only when the affine system has a unique, strictly positive
/// solution (the signature of a minimal ensemble's support).
inline std::optional<RatVector> decompose_in_simplex(const VertexSet& vs,
                                                     const std::vector<std::size_t>& subset,
                                                     const Box& target) {
    if (subset.empty()) throw domain_error("decompose_in_simplex: empty subset");
    if (!(target.scenario() == vs.scenario))
        throw domain_error("decompose_in_simplex: scenario mismatch");
    std::vector<RatVector> columns;
    for (std::size_t i : subset) {
        if (i >= vs.size()) throw domain_error("decompose_in_simplex: index out of range");
        columns.push_back(detail::extended_column(vs.vertices[i]));
    }
    const auto weights =
        solve_unique(RatMatrix::from_columns(columns), detail::extended_column(target));
    if (!weights) return std::nullopt;
    for (const Rational& w : *weights)
        if (w <= 0) return std::nullopt;
    return weights;
}

struct EnumerationOptions {
    std::size_t max_support = 0;  // 0 = affine Caratheodory bound of the vertex set
    bool prune_nonlocal = false;  // restrict roots to non-deterministic vertices
                                  // when the target lies outside the local hull
    unsigned jobs = 1;
};

namespace detail {

/**
 * Depth-first search over ascending subsets of the search order,
 * maintaining an incremental elimination of the chosen extended columns
 * ([flattened vertex; 1]) and the reduced target residual. A zero residual
 * means the target lies in the affine span of the current support; the
 * affine coefficients over any independent superset are then the current
 * ones padded with zeros, so no superset is minimal and the subtree is
 * pruned whether or not this support's weights are positive. Columns that
 * reduce to zero are skipped for the same reason.
 */
class EnsembleSearch {
  public:
    EnsembleSearch(const VertexSet& vs, const Box& target) {
        for (const Box& v : vs.vertices) columns_.push_back(extended_column(v));
        target_ = extended_column(target);
        affine_bound_ = rank(RatMatrix::from_columns(columns_));
        for (std::size_t i = 0; i < columns_.size(); ++i) order_.push_back(i);
    }

    void set_order(std::vector<std::size_t> order) { order_ = std::move(order); }
    std::size_t affine_bound() const { return affine_bound_; }

    // Explores the subtrees rooted at the given positions of the search
    // order. In first-hit mode the search stops at the first ensemble.
    std::vector<Ensemble> run(const std::vector<std::size_t>& root_positions,
                              std::size_t max_depth, bool first_hit = false) {
        max_depth_ = std::min(max_depth == 0 ? affine_bound_ : max_depth, affine_bound_);
        first_hit_ = first_hit;
        found_.clear();
        basis_.clear();
        pivots_.clear();
        support_.clear();
        for (std::size_t pos : root_positions)
            if (!descend(pos, target_)) break;
        return std::move(found_);
    }

  private:
    // Tries to extend the current support by the vertex at order position
    // `pos`, then recurses. Returns false once first-hit mode is done.
    bool descend(std::size_t pos, const RatVector& residual_before) {
        const std::size_t vertex = order_[pos];
        RatVector col = columns_[vertex];
        reduce_against(col, basis_, pivots_);
        if (all_zero(col)) return true;  // affinely dependent: no minimal superset
        std::size_t pivot = 0;
        while (col[pivot] == 0) ++pivot;
        RatVector residual = residual_before;
        if (residual[pivot] != 0) {
            const Rational factor = residual[pivot] / col[pivot];
            for (std::size_t c = 0; c < residual.size(); ++c)
                if (col[c] != 0) residual[c] -= factor * col[c];
        }
        support_.push_back(vertex);
        basis_.push_back(std::move(col));
        pivots_.push_back(pivot);
        bool keep_going = true;
        if (all_zero(residual)) {
            record();
            keep_going = !(first_hit_ && !found_.empty());
        } else if (support_.size() < max_depth_) {
            for (std::size_t next = pos + 1; next < order_.size() && keep_going; ++next)
                keep_going = descend(next, residual);
        }
        support_.pop_back();
        basis_.pop_back();
        pivots_.pop_back();
        return keep_going;
    }

    // The residual hit zero: solve for the unique affine weights over the
    // current support and keep them if they form a convex combination.
    void record() {
        std::vector<std::size_t> support = support_;
        std::sort(support.begin(), support.end());
        std::vector<RatVector> cols;
        for (std::size_t i : support) cols.push_back(columns_[i]);
        const auto weights = solve_unique(RatMatrix::from_columns(cols), target_);
        if (!weights) return;
        for (const Rational& w : *weights)
            if (w <= 0) return;
        found_.push_back(Ensemble{std::move(support), *weights});
    }

    std::vector<RatVector> columns_;
    RatVector target_;
    std::vector<std::size_t> order_;
    std::size_t affine_bound_ = 0;
    std::size_t max_depth_ = 0;
    bool first_hit_ = false;

    std::vector<RatVector> basis_;
    std::vector<std::size_t> pivots_;
    std::vector<std::size_t> support_;
    std::vector<Ensemble> found_;
};

}  // namespace detail

/**
 * All minimal ensembles of the target over the vertex set, in canonical
 * order (support size, then support tuple). With prune_nonlocal set, the
 * target is first tested for membership in the hull of the deterministic
 * vertices; if it lies outside, every ensemble must contain at least one
 * non-deterministic vertex, so roots are restricted to those (ordered
 * first), cutting the all-deterministic subtrees. Work is split across
 * jobs by root; the merged result is independent of the worker count.
 */
inline MinimalEnsembleReport minimal_ensembles(const Box& target, const VertexSet& vs,
                                               const EnumerationOptions& opts = {}) {
    if (!(target.scenario() == vs.scenario))
        throw domain_error("minimal_ensembles: scenario mismatch");
    detail::EnsembleSearch search(vs, target);

    std::vector<std::size_t> order;
    std::size_t num_roots = vs.size();
    if (opts.prune_nonlocal) {
        std::vector<std::size_t> det, nondet;
        for (std::size_t i = 0; i < vs.size(); ++i)
            (vs.vertices[i].is_deterministic() ? det : nondet).push_back(i);
        bool local = nondet.empty();
        if (!local && !det.empty()) {
            detail::EnsembleSearch local_test(vs, target);
            local_test.set_order(det);
            std::vector<std::size_t> all_roots(det.size());
            for (std::size_t i = 0; i < det.size(); ++i) all_roots[i] = i;
            local = !local_test.run(all_roots, opts.max_support, true).empty();
        }
        if (!local) {
            order = nondet;
            num_roots = nondet.size();  // deterministic-only supports excluded
            order.insert(order.end(), det.begin(), det.end());
        }
    }
    if (!order.empty()) search.set_order(order);

    std::vector<Ensemble> all;
    const unsigned jobs = std::max(1u, opts.jobs);
    if (jobs == 1) {
        std::vector<std::size_t> roots(num_roots);
        for (std::size_t i = 0; i < num_roots; ++i) roots[i] = i;
        all = search.run(roots, opts.max_support);
    } else {
        std::vector<std::vector<Ensemble>> partial(jobs);
        std::vector<std::thread> workers;
        for (unsigned w = 0; w < jobs; ++w)
            workers.emplace_back([&, w] {
                detail::EnsembleSearch mine(vs, target);
                if (!order.empty()) mine.set_order(order);
                std::vector<std::size_t> roots;
                for (std::size_t r = w; r < num_roots; r += jobs) roots.push_back(r);
                partial[w] = mine.run(roots, opts.max_support);
            });
        for (auto& t : workers) t.join();
        for (auto& part : partial)
            all.insert(all.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
    }
    std::sort(all.begin(), all.end(), detail::canonical_less);
    if (all.empty())
        throw infeasible_error("target is not in the convex hull of the vertex set");
    return MinimalEnsembleReport{target, vs, std::move(all)};
}

/// Exact reconstruction of the box an ensemble describes.
inline Box reconstruct(const VertexSet& vs, const Ensemble& e) {
    RatVector v(vs.scenario.parameter_count(), Rational(0));
    for (std::size_t i = 0; i < e.support.size(); ++i) {
        const RatVector& flat = vs.vertices[e.support[i]].flattened();
        for (std::size_t c = 0; c < v.size(); ++c) v[c] += e.weights[i] * flat[c];
    }
    return Box(vs.scenario, std::move(v));
}

inline bool is_minimal(const Ensemble& e, const Box& target, const VertexSet& vs) {
    if (!(reconstruct(vs, e) == target))
        throw domain_error("is_minimal: ensemble does not reproduce the target");
    const auto weights = decompose_in_simplex(vs, e.support, target);
    return weights && *weights == e.weights;
}

/**
 * Expresses an ensemble of the target as a convex mixture of its minimal
 * ensembles, searching subsets of the report in canonical order — the
 * same Carathéodory search, run in weight space, where the minimal
 * ensembles are the extreme points. Returns the mixture as a full-length
 * distribution over report.ensembles.
 */
inline RatVector express_as_minimal_mix(const Ensemble& target_ensemble,
                                        const MinimalEnsembleReport& report) {
    const std::size_t n = report.vertex_set.size();
    if (!(reconstruct(report.vertex_set, target_ensemble) == report.target))
        throw domain_error("express_as_minimal_mix: ensemble does not reproduce the target");
    RatVector goal = target_ensemble.full_weights(n);
    goal.push_back(1);
    std::vector<RatVector> columns;
    for (const Ensemble& m : report.ensembles) {
        RatVector col = m.full_weights(n);
        col.push_back(1);
        columns.push_back(std::move(col));
    }
    const std::size_t count = columns.size();
    for (std::size_t size = 1; size <= count; ++size) {
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            std::vector<RatVector> sub;
            for (std::size_t i : pick) sub.push_back(columns[i]);
            if (auto q = solve_unique(RatMatrix::from_columns(sub), goal)) {
                bool positive = true;
                for (const Rational& w : *q)
                    if (w <= 0) { positive = false; break; }
                if (positive) {
                    RatVector full(count, Rational(0));
                    for (std::size_t i = 0; i < size; ++i) full[pick[i]] = (*q)[i];
                    return full;
                }
            }
            std::size_t i = size;
            while (i-- > 0) {
                if (++pick[i] <= count - (size - i)) {
                    for (std::size_t j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
                    break;
                }
                if (i == 0) goto next_size;
            }
        }
    next_size:;
    }
    throw infeasible_error(
        "express_as_minimal_mix: no mixture of minimal ensembles found "
        "(internal inconsistency: input is not a pure-members ensemble)");
}

/**
 * Stochastic post-processing map p(m|e): the flag the extending party
 * attaches to each vertex outcome e so that flag m appears with overall
 * probability p_m and steers the base into mixed member m. Columns where
 * the vertex outcome never occurs (r_e = 0) are undefined.
 */
struct Channel {
    RatMatrix p_given_e;              // rows m, columns e
    std::vector<bool> column_defined;  // false where r_e = 0
};

struct MixChannelResult {
    RatVector r;  // distribution over vertex outcomes e
    Channel channel;
};

/**
 * Given a mixture target = sum_m p_m * member_m and one vertex-weight
 * decomposition q^m per member, builds the outcome distribution
 * r_e = sum_m p_m q^m_e and the channel p(m|e) = p_m q^m_e / r_e.
 */
inline MixChannelResult mixed_ensemble_channel(
    const VertexSet& vs, const std::vector<std::pair<Rational, Box>>& mixed,
    const std::vector<RatVector>& vertex_weights) {
    if (mixed.size() != vertex_weights.size() || mixed.empty())
        throw domain_error("mixed_ensemble_channel: one weight vector per member required");
    const std::size_t n = vs.size();
    Rational total = 0;
    for (std::size_t m = 0; m < mixed.size(); ++m) {
        const auto& [pm, member] = mixed[m];
        if (pm < 0) throw domain_error("mixed_ensemble_channel: negative mixture weight");
        total += pm;
        const RatVector& q = vertex_weights[m];
        if (q.size() != n)
            throw domain_error("mixed_ensemble_channel: weight vector length mismatch");
        Rational qsum = 0;
        RatVector rebuilt(vs.scenario.parameter_count(), Rational(0));
        for (std::size_t e = 0; e < n; ++e) {
            if (q[e] < 0) throw domain_error("mixed_ensemble_channel: negative weight");
            qsum += q[e];
            if (q[e] == 0) continue;
            const RatVector& flat = vs.vertices[e].flattened();
            for (std::size_t c = 0; c < rebuilt.size(); ++c) rebuilt[c] += q[e] * flat[c];
        }
        if (qsum != 1 || !(rebuilt == member.flattened()))
            throw domain_error("mixed_ensemble_channel: member " + std::to_string(m) +
                               " does not match its decomposition");
    }
    if (total != 1)
        throw domain_error("mixed_ensemble_channel: mixture weights must sum to 1");

    MixChannelResult result;
    result.r.assign(n, Rational(0));
    for (std::size_t e = 0; e < n; ++e)
        for (std::size_t m = 0; m < mixed.size(); ++m)
            result.r[e] += mixed[m].first * vertex_weights[m][e];
    result.channel.p_given_e = RatMatrix(mixed.size(), n);
    result.channel.column_defined.assign(n, false);
    for (std::size_t e = 0; e < n; ++e) {
        if (result.r[e] == 0) continue;
        result.channel.column_defined[e] = true;
        for (std::size_t m = 0; m < mixed.size(); ++m)
            result.channel.p_given_e.at(m, e) =
                mixed[m].first * vertex_weights[m][e] / result.r[e];
    }
    return result;
}

}  // namespace nsbox

#endif
