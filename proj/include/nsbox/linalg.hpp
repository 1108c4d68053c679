#ifndef NSBOX_LINALG_HPP
#define NSBOX_LINALG_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nsbox/rational.hpp"

namespace nsbox {

/**
 * Dense row-major matrix of exact rationals. Immutable in spirit: every
 * operation below works on copies, so values can be shared freely across
 * threads.
 */
class RatMatrix {
  public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    RatMatrix(std::size_t rows, std::size_t cols, RatVector entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows_ * cols_ != entries_.size())
            throw std::invalid_argument("RatMatrix: rows*cols != entry count");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const RatVector& entries() const { return entries_; }

    RatMatrix transpose() const {
        RatMatrix result(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                result.at(c, r) = at(r, c);
        return result;
    }

    RatVector multiply(const RatVector& x) const {
        if (x.size() != cols_)
            throw std::invalid_argument("RatMatrix::multiply: size mismatch");
        RatVector y(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            Rational sum = 0;
            for (std::size_t c = 0; c < cols_; ++c)
                if (at(r, c) != 0) sum += at(r, c) * x[c];
            y[r] = sum;
        }
        return y;
    }

    static RatMatrix from_columns(const std::vector<RatVector>& columns) {
        if (columns.empty()) return RatMatrix(0, 0);
        RatMatrix result(columns.front().size(), columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c].size() != result.rows_)
                throw std::invalid_argument("from_columns: ragged columns");
            for (std::size_t r = 0; r < result.rows_; ++r)
                result.at(r, c) = columns[c][r];
        }
        return result;
    }

  private:
    std::size_t rows_, cols_;
    RatVector entries_;
};

namespace detail {

// Row echelon reduction in place. Returns the pivot columns. The pivot row
// within each column is the one whose entry has the smallest bit size.
inline std::vector<std::size_t> echelonize(RatMatrix& m) {
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t best = m.rows();
        std::size_t best_size = 0;
        for (std::size_t r = row; r < m.rows(); ++r) {
            if (m.at(r, col) == 0) continue;
            std::size_t size = rational_bit_size(m.at(r, col));
            if (best == m.rows() || size < best_size) {
                best = r;
                best_size = size;
            }
        }
        if (best == m.rows()) continue;
        if (best != row)
            for (std::size_t c = col; c < m.cols(); ++c)
                std::swap(m.at(row, c), m.at(best, c));
        const Rational pivot = m.at(row, col);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            const Rational factor = m.at(r, col) / pivot;
            for (std::size_t c = col; c < m.cols(); ++c)
                if (m.at(row, c) != 0) m.at(r, c) -= factor * m.at(row, c);
        }
        pivot_cols.push_back(col);
        ++row;
    }
    return pivot_cols;
}

}  // namespace detail

/// Exact rank over the rationals.
inline std::size_t rank(RatMatrix m) {
    return detail::echelonize(m).size();
}

/**
 * Solves a.x = c and returns the solution only when it exists and is
 * unique, i.e. rank(a) = rank([a|c]) = a.cols(). Inconsistent and
 * underdetermined systems both map to nullopt; callers that need to tell
 * the two apart use rank directly.
 */
inline std::optional<RatVector> solve_unique(const RatMatrix& a, const RatVector& c) {
    if (a.rows() != c.size())
        throw std::invalid_argument("solve_unique: rhs size mismatch");
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t col = 0; col < a.cols(); ++col) aug.at(r, col) = a.at(r, col);
        aug.at(r, a.cols()) = c[r];
    }
    const std::vector<std::size_t> pivots = detail::echelonize(aug);
    // Inconsistent iff the rhs column became a pivot; underdetermined iff
    // some variable column did not.
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    if (pivots.size() != a.cols()) return std::nullopt;
    RatVector x(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = aug.at(i, a.cols()) / aug.at(i, pivots[i]);
    return x;
}

/// Basis of the right nullspace; empty iff the columns are independent.
inline std::vector<RatVector> nullspace(RatMatrix m) {
    const std::size_t n = m.cols();
    const std::vector<std::size_t> pivots = detail::echelonize(m);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t col : pivots) is_pivot[col] = true;
    std::vector<RatVector> basis;
    for (std::size_t free_col = 0; free_col < n; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVector v(n);
        v[free_col] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -m.at(i, free_col) / m.at(i, pivots[i]);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace nsbox

#endif
