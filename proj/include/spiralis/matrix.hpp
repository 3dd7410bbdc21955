#pragma once

// Dense exact matrices over a runtime field, plus the subspace lattice
// (sum, intersection, complements) used throughout the decomposition and
// jump-function pipelines.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "spiralis/field.hpp"

namespace spiralis {

template <class F>
struct Matrix {
    using Elem = typename F::Elem;

    F field{};
    std::size_t rows = 0, cols = 0;
    std::vector<Elem> a;  // row-major

    Matrix() = default;
    Matrix(F f, std::size_t r, std::size_t c)
        : field(std::move(f)), rows(r), cols(c), a(r * c, field.zero()) {}

    Elem& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Elem& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    static Matrix identity(F f, std::size_t n) {
        Matrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
        return m;
    }

    Matrix transpose() const {
        Matrix t(field, cols, rows);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c) t.at(c, r) = at(r, c);
        return t;
    }

    bool same_field(const Matrix& o) const { return field == o.field; }

    bool operator==(const Matrix& o) const {
        if (rows != o.rows || cols != o.cols || !(field == o.field)) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!field.eq(a[i], o.a[i])) return false;
        return true;
    }
};

template <class F>
void check_same_field(const Matrix<F>& x, const Matrix<F>& y) {
    if (!x.same_field(y)) throw invalid_input("mixed-field operands");
}

template <class F>
Matrix<F> mat_mul(const Matrix<F>& x, const Matrix<F>& y) {
    check_same_field(x, y);
    if (x.cols != y.rows) throw internal_error("mat_mul: shape mismatch");
    const F& k = x.field;
    Matrix<F> z(k, x.rows, y.cols);
    for (std::size_t r = 0; r < x.rows; ++r)
        for (std::size_t m = 0; m < x.cols; ++m) {
            if (k.is_zero(x.at(r, m))) continue;
            for (std::size_t c = 0; c < y.cols; ++c)
                z.at(r, c) = k.add(z.at(r, c), k.mul(x.at(r, m), y.at(m, c)));
        }
    return z;
}

template <class F>
Matrix<F> mat_add(const Matrix<F>& x, const Matrix<F>& y) {
    check_same_field(x, y);
    if (x.rows != y.rows || x.cols != y.cols) throw internal_error("mat_add: shape mismatch");
    Matrix<F> z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = x.field.add(x.a[i], y.a[i]);
    return z;
}

template <class F>
Matrix<F> mat_scale(const Matrix<F>& x, const typename F::Elem& s) {
    Matrix<F> z = x;
    for (auto& v : z.a) v = x.field.mul(v, s);
    return z;
}

template <class F>
Matrix<F> mat_neg(const Matrix<F>& x) {
    Matrix<F> z = x;
    for (auto& v : z.a) v = x.field.neg(v);
    return z;
}

// [X | Y]
template <class F>
Matrix<F> hcat(const Matrix<F>& x, const Matrix<F>& y) {
    check_same_field(x, y);
    if (x.rows != y.rows) throw internal_error("hcat: row mismatch");
    Matrix<F> z(x.field, x.rows, x.cols + y.cols);
    for (std::size_t r = 0; r < x.rows; ++r) {
        for (std::size_t c = 0; c < x.cols; ++c) z.at(r, c) = x.at(r, c);
        for (std::size_t c = 0; c < y.cols; ++c) z.at(r, x.cols + c) = y.at(r, c);
    }
    return z;
}

template <class F>
Matrix<F> vcat(const Matrix<F>& x, const Matrix<F>& y) {
    check_same_field(x, y);
    if (x.cols != y.cols) throw internal_error("vcat: col mismatch");
    Matrix<F> z(x.field, x.rows + y.rows, x.cols);
    for (std::size_t r = 0; r < x.rows; ++r)
        for (std::size_t c = 0; c < x.cols; ++c) z.at(r, c) = x.at(r, c);
    for (std::size_t r = 0; r < y.rows; ++r)
        for (std::size_t c = 0; c < y.cols; ++c) z.at(x.rows + r, c) = y.at(r, c);
    return z;
}

template <class F>
Matrix<F> submatrix_rows(const Matrix<F>& x, std::size_t r0, std::size_t r1) {
    Matrix<F> z(x.field, r1 - r0, x.cols);
    for (std::size_t r = r0; r < r1; ++r)
        for (std::size_t c = 0; c < x.cols; ++c) z.at(r - r0, c) = x.at(r, c);
    return z;
}

template <class F>
Matrix<F> submatrix_cols(const Matrix<F>& x, std::size_t c0, std::size_t c1) {
    Matrix<F> z(x.field, x.rows, c1 - c0);
    for (std::size_t r = 0; r < x.rows; ++r)
        for (std::size_t c = c0; c < c1; ++c) z.at(r, c - c0) = x.at(r, c);
    return z;
}

// In-place reduced row echelon form. Returns the pivot columns in order.
// Pivot choice within a column follows the field's pivot_cost (first nonzero
// over F_p, smallest-fraction over Q) so downstream bases are deterministic.
template <class F>
std::vector<std::size_t> rref_inplace(Matrix<F>& m) {
    const F& k = m.field;
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t best = m.rows;
        int best_cost = 0;
        for (std::size_t r = row; r < m.rows; ++r) {
            if (k.is_zero(m.at(r, col))) continue;
            int cost = k.pivot_cost(m.at(r, col));
            if (best == m.rows || cost < best_cost) {
                best = r;
                best_cost = cost;
                if (cost == 0) break;
            }
        }
        if (best == m.rows) continue;
        if (best != row)
            for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(row, c), m.at(best, c));
        auto piv_inv = k.inv(m.at(row, col));
        for (std::size_t c = col; c < m.cols; ++c) m.at(row, c) = k.mul(m.at(row, c), piv_inv);
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row || k.is_zero(m.at(r, col))) continue;
            auto f = m.at(r, col);
            for (std::size_t c = col; c < m.cols; ++c)
                m.at(r, c) = k.sub(m.at(r, c), k.mul(f, m.at(row, c)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
    Matrix<F> c = m;
    return rref_inplace(c).size();
}

// Columns span {x : Mx = 0}; dimension = cols - rank, in echelon order.
template <class F>
Matrix<F> kernel_basis_matrix(const Matrix<F>& m) {
    const F& k = m.field;
    Matrix<F> r = m;
    auto pivots = rref_inplace(r);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::size_t dim = m.cols - pivots.size();
    Matrix<F> ker(k, m.cols, dim);
    std::size_t j = 0;
    for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        ker.at(free_col, j) = k.one();
        for (std::size_t pr = 0; pr < pivots.size(); ++pr)
            ker.at(pivots[pr], j) = k.neg(r.at(pr, free_col));
        ++j;
    }
    return ker;
}

// Any solution of M x = rhs (columnwise); nullopt if inconsistent.
template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& m, const Matrix<F>& rhs) {
    check_same_field(m, rhs);
    if (m.rows != rhs.rows) throw internal_error("solve: shape mismatch");
    Matrix<F> aug = hcat(m, rhs);
    auto pivots = rref_inplace(aug);
    const F& k = m.field;
    for (auto p : pivots)
        if (p >= m.cols) return std::nullopt;  // pivot in rhs block -> inconsistent
    Matrix<F> x(k, m.cols, rhs.cols);
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
        for (std::size_t c = 0; c < rhs.cols; ++c) x.at(pivots[pr], c) = aug.at(pr, m.cols + c);
    return x;
}

template <class F>
bool is_invertible(const Matrix<F>& m) {
    return m.rows == m.cols && rank(m) == m.rows;
}

template <class F>
Matrix<F> inverse(const Matrix<F>& m) {
    auto x = solve(m, Matrix<F>::identity(m.field, m.rows));
    if (!x || m.rows != m.cols || rank(m) != m.rows) throw internal_error("inverse of singular matrix");
    return *x;
}

// ---------------------------------------------------------------------------
// Subspaces of k^n, stored with a canonical reduced-echelon column basis so
// that equal subspaces compare equal and all derived bases are deterministic.

template <class F>
struct Subspace {
    std::size_t ambient = 0;
    Matrix<F> basis;  // ambient x dim, canonical

    std::size_t dim() const { return basis.cols; }
    const F& field() const { return basis.field; }
};

// Canonicalize the column space of m: RREF of the transpose, transposed back.
template <class F>
Matrix<F> column_space_canonical(const Matrix<F>& m) {
    Matrix<F> t = m.transpose();
    auto pivots = rref_inplace(t);
    Matrix<F> basis(m.field, m.rows, pivots.size());
    for (std::size_t r = 0; r < pivots.size(); ++r)
        for (std::size_t c = 0; c < m.rows; ++c) basis.at(c, r) = t.at(r, c);
    return basis;
}

template <class F>
Subspace<F> subspace_from_columns(const Matrix<F>& m) {
    return Subspace<F>{m.rows, column_space_canonical(m)};
}

template <class F>
Subspace<F> subspace_zero(F f, std::size_t ambient) {
    return Subspace<F>{ambient, Matrix<F>(f, ambient, 0)};
}

template <class F>
Subspace<F> subspace_full(F f, std::size_t ambient) {
    return Subspace<F>{ambient, Matrix<F>::identity(f, ambient)};
}

template <class F>
void check_same_ambient(const Subspace<F>& x, const Subspace<F>& y) {
    if (x.ambient != y.ambient) throw invalid_input("subspace ambient mismatch");
    check_same_field(x.basis, y.basis);
}

template <class F>
bool subspace_equal(const Subspace<F>& x, const Subspace<F>& y) {
    check_same_ambient(x, y);
    return x.basis == y.basis;
}

template <class F>
Subspace<F> subspace_sum(const Subspace<F>& x, const Subspace<F>& y) {
    check_same_ambient(x, y);
    return subspace_from_columns(hcat(x.basis, y.basis));
}

// Intersection via the kernel of [A | -B]: solutions A u = B v.
template <class F>
Subspace<F> subspace_intersection(const Subspace<F>& x, const Subspace<F>& y) {
    check_same_ambient(x, y);
    const F& k = x.basis.field;
    if (x.dim() == 0 || y.dim() == 0) return subspace_zero(k, x.ambient);
    Matrix<F> sys = hcat(x.basis, mat_neg(y.basis));
    Matrix<F> ker = kernel_basis_matrix(sys);
    Matrix<F> coeffs = submatrix_rows(ker, 0, x.dim());
    return subspace_from_columns(mat_mul(x.basis, coeffs));
}

template <class F>
bool subspace_contains(const Subspace<F>& s, const Matrix<F>& vec_col) {
    if (s.dim() == 0) {
        for (auto& v : vec_col.a)
            if (!vec_col.field.is_zero(v)) return false;
        return true;
    }
    return solve(s.basis, vec_col).has_value();
}

template <class F>
bool subspace_leq(const Subspace<F>& x, const Subspace<F>& y) {
    check_same_ambient(x, y);
    if (x.dim() == 0) return true;
    return solve(y.basis, x.basis).has_value();
}

// Elimination-ordered complement of `inner` inside `outer` (inner <= outer):
// greedily keeps outer basis columns independent of inner.
template <class F>
Matrix<F> complement_in(const Subspace<F>& inner, const Subspace<F>& outer) {
    check_same_ambient(inner, outer);
    const F& k = inner.basis.field;
    Matrix<F> acc = inner.basis;
    Matrix<F> comp(k, inner.ambient, 0);
    std::size_t current_rank = rank(acc);
    for (std::size_t c = 0; c < outer.dim(); ++c) {
        Matrix<F> col = submatrix_cols(outer.basis, c, c + 1);
        Matrix<F> trial = hcat(acc, col);
        if (rank(trial) > current_rank) {
            acc = trial;
            ++current_rank;
            comp = comp.cols == 0 ? col : hcat(comp, col);
        }
    }
    if (current_rank != outer.dim() + inner.dim() - subspace_intersection(inner, outer).dim())
        throw internal_error("complement_in: inner not contained in outer");
    return comp;
}

// Coordinates of vec in terms of [inner-basis | section]; returns the
// section part, i.e. the class of vec modulo inner.
template <class F>
Matrix<F> reduce_mod(const Subspace<F>& inner, const Matrix<F>& section, const Matrix<F>& vec_col) {
    Matrix<F> sysm = inner.dim() == 0 ? section : hcat(inner.basis, section);
    auto sol = solve(sysm, vec_col);
    if (!sol) throw internal_error("reduce_mod: vector outside span");
    return submatrix_rows(*sol, inner.dim(), inner.dim() + section.cols);
}

}  // namespace spiralis
