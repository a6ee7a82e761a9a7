#pragma once

#include <cstdlib>
#include <optional>

#include "wreathlab/matrix.hpp"

namespace wreathlab {

/// Result of a Smith normal form computation: non-negative diagonal with
/// d_i | d_{i+1}, and, when requested, unimodular U, V with U * M * V = D.
struct SmithForm {
    std::vector<Int> diagonal; // length min(rows, cols)
    std::optional<IntMatrix> left;  // U, rows x rows
    std::optional<IntMatrix> right; // V, cols x cols

    int rank() const {
        int r = 0;
        for (const Int& d : diagonal)
            if (d != 0) ++r;
        return r;
    }
};

/// Smith normal form by unimodular row/column reduction. Pivot choice is the
/// least-absolute-value nonzero entry of the working submatrix, ties broken
/// row-major; this keeps intermediate entries small at desk scale.
inline SmithForm smith_normal_form(const IntMatrix& m, bool want_transforms = false) {
    IntMatrix a = m;
    const int r = a.rows(), c = a.cols();
    IntMatrix u, v;
    if (want_transforms) {
        u = IntMatrix::identity(r);
        v = IntMatrix::identity(c);
    }

    auto row_op = [&](int i, int j, const Int& q) {
        a.add_row(i, j, q);
        if (want_transforms) u.add_row(i, j, q);
    };
    auto col_op = [&](int i, int j, const Int& q) {
        a.add_col(i, j, q);
        if (want_transforms) v.add_col(i, j, q);
    };

    const int bound = std::min(r, c);
    int t = 0;
    for (; t < bound; ++t) {
        // least |entry| nonzero pivot in the trailing submatrix
        int pi = -1, pj = -1;
        for (int i = t; i < r; ++i)
            for (int j = t; j < c; ++j) {
                const Int& x = a(i, j);
                if (x == 0) continue;
                if (pi < 0 || abs(x) < abs(a(pi, pj))) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break; // submatrix is zero

        a.swap_rows(t, pi);
        if (want_transforms) u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if (want_transforms) v.swap_cols(t, pj);

        for (;;) {
            bool clean = true;
            for (int i = t + 1; i < r; ++i) {
                if (a(i, t) == 0) continue;
                Int q = a(i, t) / a(t, t); // truncated: remainder strictly smaller
                row_op(i, t, -q);
                if (a(i, t) != 0) {
                    a.swap_rows(t, i);
                    if (want_transforms) u.swap_rows(t, i);
                    clean = false;
                    break;
                }
            }
            if (!clean) continue;
            for (int j = t + 1; j < c; ++j) {
                if (a(t, j) == 0) continue;
                Int q = a(t, j) / a(t, t);
                col_op(j, t, -q);
                if (a(t, j) != 0) {
                    a.swap_cols(t, j);
                    if (want_transforms) v.swap_cols(t, j);
                    clean = false;
                    break;
                }
            }
            if (!clean) continue;
            // pivot now alone in its row and column; enforce divisibility
            bool divides_all = true;
            for (int i = t + 1; i < r && divides_all; ++i)
                for (int j = t + 1; j < c; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        row_op(t, i, 1);
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            if (want_transforms) u.negate_row(t);
        }
    }

    SmithForm out;
    out.diagonal.resize(static_cast<size_t>(bound));
    for (int i = 0; i < bound; ++i) out.diagonal[static_cast<size_t>(i)] = a(i, i);
    if (want_transforms) {
        out.left = std::move(u);
        out.right = std::move(v);
    }
    return out;
}

/// Rank over Q, read off the Smith form.
inline int matrix_rank(const IntMatrix& m) { return smith_normal_form(m).rank(); }

/// A square integer matrix is unimodular iff its Smith form is the identity.
inline bool is_unimodular(const IntMatrix& m) {
    if (m.rows() != m.cols()) return false;
    for (const Int& d : smith_normal_form(m).diagonal)
        if (d != 1) return false;
    return true;
}

} // namespace wreathlab
