#pragma once

// Linear relations R: V ~> W as subspaces of V x W, their calculus, the
// limit subspaces K-/K+/D-/D+/D of an endo-relation, and the regular part
// R_reg, an honest automorphism of V_reg = D / ((K- + K+) ∩ D).

#include <utility>
#include <vector>

#include "spiralis/canonical.hpp"
#include "spiralis/matrix.hpp"

namespace spiralis {

template <class F>
struct Relation {
    std::size_t dim_v = 0, dim_w = 0;
    Subspace<F> graph;  // ambient dim_v + dim_w, canonical basis

    const F& field() const { return graph.basis.field; }
};

template <class F>
Relation<F> rel_from_graph_columns(std::size_t dim_v, std::size_t dim_w, const Matrix<F>& cols) {
    if (cols.rows != dim_v + dim_w) throw internal_error("relation graph ambient mismatch");
    return Relation<F>{dim_v, dim_w, subspace_from_columns(cols)};
}

// Graph of a linear map A: V -> W, as {(v, Av)}.
template <class F>
Relation<F> rel_graph(const Matrix<F>& a) {
    const F& k = a.field;
    Matrix<F> cols(k, a.cols + a.rows, a.cols);
    for (std::size_t c = 0; c < a.cols; ++c) cols.at(c, c) = k.one();
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t c = 0; c < a.cols; ++c) cols.at(a.cols + r, c) = a.at(r, c);
    return rel_from_graph_columns(a.cols, a.rows, cols);
}

template <class F>
Relation<F> rel_identity(F k, std::size_t n) {
    return rel_graph(Matrix<F>::identity(k, n));
}

// {(v,w) : alpha v = beta w}, the elementary relation of a (alpha, beta) pair
// sharing a target.
template <class F>
Relation<F> rel_from_pair(const Matrix<F>& alpha, const Matrix<F>& beta) {
    check_same_field(alpha, beta);
    if (alpha.rows != beta.rows) throw internal_error("rel_from_pair: target mismatch");
    Matrix<F> sys = hcat(alpha, mat_neg(beta));
    Matrix<F> ker = kernel_basis_matrix(sys);  // (cols_alpha + cols_beta) x d
    return rel_from_graph_columns(alpha.cols, beta.cols, ker);
}

template <class F>
Relation<F> rel_zero(F k, std::size_t dim_v, std::size_t dim_w) {
    return Relation<F>{dim_v, dim_w, subspace_zero(k, dim_v + dim_w)};
}

template <class F>
Relation<F> rel_full(F k, std::size_t dim_v, std::size_t dim_w) {
    return Relation<F>{dim_v, dim_w, subspace_full(k, dim_v + dim_w)};
}

template <class F>
bool rel_equal(const Relation<F>& x, const Relation<F>& y) {
    return x.dim_v == y.dim_v && x.dim_w == y.dim_w && subspace_equal(x.graph, y.graph);
}

template <class F>
Matrix<F> rel_v_block(const Relation<F>& r) {
    return submatrix_rows(r.graph.basis, 0, r.dim_v);
}

template <class F>
Matrix<F> rel_w_block(const Relation<F>& r) {
    return submatrix_rows(r.graph.basis, r.dim_v, r.dim_v + r.dim_w);
}

// dagger: swap the V and W coordinates.
template <class F>
Relation<F> rel_dagger(const Relation<F>& r) {
    Matrix<F> cols = vcat(rel_w_block(r), rel_v_block(r));
    return rel_from_graph_columns(r.dim_w, r.dim_v, cols);
}

// Composition SR: V ~> U of R: V ~> W and S: W ~> U ("S after R").
template <class F>
Relation<F> rel_compose(const Relation<F>& s, const Relation<F>& r) {
    if (r.dim_w != s.dim_v) throw invalid_input("relation composition dimension mismatch");
    const F& k = r.field();
    Matrix<F> rw = rel_w_block(r);
    Matrix<F> sv = rel_v_block(s);
    // coefficients (x, y) with R_w x = S_v y
    Matrix<F> ker = kernel_basis_matrix(hcat(rw, mat_neg(sv)));
    Matrix<F> xs = submatrix_rows(ker, 0, r.graph.dim());
    Matrix<F> ys = submatrix_rows(ker, r.graph.dim(), r.graph.dim() + s.graph.dim());
    Matrix<F> cols = vcat(mat_mul(rel_v_block(r), xs), mat_mul(rel_w_block(s), ys));
    return rel_from_graph_columns(r.dim_v, s.dim_w, cols);
}

template <class F>
struct RelationParts {
    Subspace<F> dom, img, ker, mul;
};

template <class F>
RelationParts<F> rel_parts(const Relation<F>& r) {
    const F& k = r.field();
    RelationParts<F> p;
    p.dom = subspace_from_columns(rel_v_block(r));
    p.img = subspace_from_columns(rel_w_block(r));
    // ker: v-parts of graph vectors with zero w-part
    Matrix<F> kw = kernel_basis_matrix(rel_w_block(r));
    p.ker = subspace_from_columns(mat_mul(rel_v_block(r), kw));
    Matrix<F> kv = kernel_basis_matrix(rel_v_block(r));
    p.mul = subspace_from_columns(mat_mul(rel_w_block(r), kv));
    if (p.dom.dim() + p.mul.dim() != r.graph.dim() || p.img.dim() + p.ker.dim() != r.graph.dim())
        throw internal_error("relation parts dimension identity failed");
    return p;
}

// Lemma: a relation between equal finite dims is an isomorphism of modules
// iff dom = V and ker = 0 (iff img = W and mul = 0).
template <class F>
bool rel_is_isomorphism(const Relation<F>& r) {
    if (r.dim_v != r.dim_w) return false;
    auto p = rel_parts(r);
    return p.dom.dim() == r.dim_v && p.ker.dim() == 0 && p.img.dim() == r.dim_w && p.mul.dim() == 0;
}

template <class F>
struct LimitSpaces {
    Subspace<F> k_minus, k_plus, d_minus, d_plus, d;
};

// K+ = ker(R^k) and D+ = dom(R^k) for stabilizing k <= dim V; the minus
// versions via dagger, D = D- ∩ D+.
template <class F>
LimitSpaces<F> rel_limit_spaces(const Relation<F>& r) {
    if (r.dim_v != r.dim_w) throw invalid_input("limit spaces need a square relation");
    const F& k = r.field();
    LimitSpaces<F> ls;
    auto sweep = [&](const Relation<F>& rel) {
        Relation<F> power = rel;
        Subspace<F> kk = rel_parts(power).ker;
        Subspace<F> dd = rel_parts(power).dom;
        for (std::size_t i = 0; i + 1 < rel.dim_v + 1; ++i) {
            power = rel_compose(rel, power);
            auto parts = rel_parts(power);
            bool same = subspace_equal(parts.ker, kk) && subspace_equal(parts.dom, dd);
            kk = parts.ker;
            dd = parts.dom;
            if (same) break;
        }
        return std::pair<Subspace<F>, Subspace<F>>(kk, dd);
    };
    auto [kp, dp] = sweep(r);
    ls.k_plus = kp;
    ls.d_plus = dp;
    auto [km, dm] = sweep(rel_dagger(r));
    ls.k_minus = km;
    ls.d_minus = dm;
    ls.d = subspace_intersection(ls.d_minus, ls.d_plus);
    return ls;
}

template <class F>
struct RegularPart {
    std::size_t dim_reg = 0;
    Matrix<F> section;       // columns: representatives in V of a basis of V_reg
    Matrix<F> automorphism;  // dim_reg x dim_reg, invertible
    LimitSpaces<F> limits;
};

// R_reg: V_reg -> V_reg with V_reg = D / ((K- + K+) ∩ D). Two classes are
// related iff they admit representatives in D related by R; this is a
// well-defined automorphism.
template <class F>
RegularPart<F> rel_regular_part(const Relation<F>& r) {
    const F& k = r.field();
    RegularPart<F> rp;
    rp.limits = rel_limit_spaces(r);
    Subspace<F> cut = subspace_intersection(subspace_sum(rp.limits.k_minus, rp.limits.k_plus), rp.limits.d);
    Matrix<F> section = complement_in(cut, rp.limits.d);
    rp.dim_reg = section.cols;
    rp.section = section;
    rp.automorphism = Matrix<F>(k, rp.dim_reg, rp.dim_reg);
    if (rp.dim_reg == 0) return rp;

    Matrix<F> gv = rel_v_block(r);
    Matrix<F> gw = rel_w_block(r);
    Matrix<F> dbasis = rp.limits.d.basis;
    for (std::size_t j = 0; j < rp.dim_reg; ++j) {
        // find w in D with (section_j, w) in R: solve gv x = d, gw x = D y
        Matrix<F> lhs_top = hcat(gv, Matrix<F>(k, r.dim_v, dbasis.cols));
        Matrix<F> lhs_bot = hcat(gw, mat_neg(dbasis));
        Matrix<F> lhs = vcat(lhs_top, lhs_bot);
        Matrix<F> rhs(k, r.dim_v + r.dim_w, 1);
        for (std::size_t i = 0; i < r.dim_v; ++i) rhs.at(i, 0) = section.at(i, j);
        auto sol = solve(lhs, rhs);
        if (!sol) throw internal_error("regular part: no related representative in D");
        Matrix<F> y = submatrix_rows(*sol, r.graph.dim(), r.graph.dim() + dbasis.cols);
        Matrix<F> w = mat_mul(dbasis, y);
        Matrix<F> coords = reduce_mod(cut, section, w);
        for (std::size_t i = 0; i < rp.dim_reg; ++i) rp.automorphism.at(i, j) = coords.at(i, 0);
    }
    if (!is_invertible(rp.automorphism)) throw internal_error("regular part automorphism singular");
    return rp;
}

// Direct sum of relations (block-wise on V and W coordinates).
template <class F>
Relation<F> rel_direct_sum(const Relation<F>& x, const Relation<F>& y) {
    const F& k = x.field();
    std::size_t dv = x.dim_v + y.dim_v, dw = x.dim_w + y.dim_w;
    Matrix<F> cols(k, dv + dw, x.graph.dim() + y.graph.dim());
    for (std::size_t c = 0; c < x.graph.dim(); ++c) {
        for (std::size_t i = 0; i < x.dim_v; ++i) cols.at(i, c) = x.graph.basis.at(i, c);
        for (std::size_t i = 0; i < x.dim_w; ++i)
            cols.at(dv + i, c) = x.graph.basis.at(x.dim_v + i, c);
    }
    for (std::size_t c = 0; c < y.graph.dim(); ++c) {
        for (std::size_t i = 0; i < y.dim_v; ++i)
            cols.at(x.dim_v + i, x.graph.dim() + c) = y.graph.basis.at(i, c);
        for (std::size_t i = 0; i < y.dim_w; ++i)
            cols.at(dv + x.dim_w + i, x.graph.dim() + c) = y.graph.basis.at(y.dim_v + i, c);
    }
    return rel_from_graph_columns(dv, dw, cols);
}

}  // namespace spiralis
