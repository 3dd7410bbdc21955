#pragma once

// Canonical forms of invertible matrices. A block is a pair
// (monic irreducible poly, power); the multiset of blocks is a complete
// conjugacy invariant, and for a linear poly (λ-u) the block is the
// classical Jordan cell of eigenvalue u.

#include <algorithm>
#include <string>
#include <vector>

#include "spiralis/matrix.hpp"
#include "spiralis/poly.hpp"

namespace spiralis {

template <class F>
struct CanonicalBlock {
    Poly<F> poly;  // monic irreducible
    int power = 1;

    int dim(const F&) const { return (static_cast<int>(poly.size()) - 1) * power; }
};

// Sorted multiset (repeats allowed).
template <class F>
using CanonicalBlocks = std::vector<CanonicalBlock<F>>;

template <class F>
void sort_blocks(const F& k, CanonicalBlocks<F>& blocks) {
    std::sort(blocks.begin(), blocks.end(), [&](const CanonicalBlock<F>& x, const CanonicalBlock<F>& y) {
        if (poly_less(k, x.poly, y.poly)) return true;
        if (poly_less(k, y.poly, x.poly)) return false;
        return x.power < y.power;
    });
}

template <class F>
bool blocks_equal(const F& k, const CanonicalBlocks<F>& x, const CanonicalBlocks<F>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].power != y[i].power || !poly_eq(k, x[i].poly, y[i].poly)) return false;
    return true;
}

// det(xI - A) by Hessenberg reduction; works over any field.
template <class F>
Poly<F> charpoly(const Matrix<F>& a_in) {
    const F& k = a_in.field;
    if (a_in.rows != a_in.cols) throw internal_error("charpoly: not square");
    std::size_t n = a_in.rows;
    Matrix<F> h = a_in;
    // similarity reduction to upper Hessenberg
    for (std::size_t col = 0; col + 2 <= n; ++col) {
        std::size_t piv = n;
        for (std::size_t r = col + 1; r < n; ++r)
            if (!k.is_zero(h.at(r, col))) {
                piv = r;
                break;
            }
        if (piv == n) continue;
        if (piv != col + 1) {
            for (std::size_t c = 0; c < n; ++c) std::swap(h.at(piv, c), h.at(col + 1, c));
            for (std::size_t r = 0; r < n; ++r) std::swap(h.at(r, piv), h.at(r, col + 1));
        }
        auto inv = k.inv(h.at(col + 1, col));
        for (std::size_t r = col + 2; r < n; ++r) {
            if (k.is_zero(h.at(r, col))) continue;
            auto f = k.mul(h.at(r, col), inv);
            for (std::size_t c = 0; c < n; ++c) h.at(r, c) = k.sub(h.at(r, c), k.mul(f, h.at(col + 1, c)));
            for (std::size_t rr = 0; rr < n; ++rr)
                h.at(rr, col + 1) = k.add(h.at(rr, col + 1), k.mul(f, h.at(rr, r)));
        }
    }
    // char polys of leading principal Hessenberg minors
    std::vector<Poly<F>> p(n + 1);
    p[0] = poly_const(k, k.one());
    for (std::size_t m = 1; m <= n; ++m) {
        // p_m = (x - h[m-1][m-1]) p_{m-1} - sum_i (prod of subdiag) h[i][m-1] p_i
        Poly<F> x_minus = poly_x_minus(k, h.at(m - 1, m - 1));
        p[m] = poly_mul(k, x_minus, p[m - 1]);
        auto beta_prod = k.one();
        for (std::size_t i = m - 1; i-- > 0;) {
            beta_prod = k.mul(beta_prod, h.at(i + 1, i));
            if (k.is_zero(beta_prod)) break;
            auto coef = k.mul(beta_prod, h.at(i, m - 1));
            if (!k.is_zero(coef)) p[m] = poly_sub(k, p[m], poly_scale(k, p[i], coef));
        }
    }
    return p[n];
}

// Evaluates q(A).
template <class F>
Matrix<F> poly_at_matrix(const F& k, const Poly<F>& q, const Matrix<F>& a) {
    std::size_t n = a.rows;
    Matrix<F> r(k, n, n);
    for (std::size_t i = q.size(); i-- > 0;) {
        r = mat_mul(r, a);
        for (std::size_t d = 0; d < n; ++d) r.at(d, d) = k.add(r.at(d, d), q[i]);
    }
    return r;
}

// Primary canonical decomposition of an invertible matrix. Two matrices are
// conjugate iff their block multisets coincide.
template <class F>
CanonicalBlocks<F> canonical_form(const Matrix<F>& a) {
    const F& k = a.field;
    if (a.rows != a.cols) throw invalid_input("canonical_form requires a square matrix");
    std::size_t n = a.rows;
    CanonicalBlocks<F> out;
    if (n == 0) return out;
    Poly<F> chi = charpoly(a);
    if (k.is_zero(chi.empty() ? k.zero() : chi.front()))
        throw invalid_input("canonical_form requires an invertible matrix");
    auto factors = poly_factor(k, chi);
    for (auto& [irr, mult] : factors) {
        int d = poly_deg<F>(irr);
        // kernel dimension jumps of irr(A)^j give the block power profile
        std::vector<int> kdim{0};
        Matrix<F> fa = poly_at_matrix(k, irr, a);
        Matrix<F> power = fa;
        for (int j = 1; j <= mult; ++j) {
            kdim.push_back(static_cast<int>(n - rank(power)));
            if (kdim.back() == d * mult) break;
            power = mat_mul(power, fa);
        }
        // blocks with power >= j: (kdim[j]-kdim[j-1]) / d
        std::vector<int> at_least;
        for (std::size_t j = 1; j < kdim.size(); ++j) at_least.push_back((kdim[j] - kdim[j - 1]) / d);
        for (std::size_t j = 0; j < at_least.size(); ++j) {
            int exact = at_least[j] - (j + 1 < at_least.size() ? at_least[j + 1] : 0);
            for (int c = 0; c < exact; ++c)
                out.push_back(CanonicalBlock<F>{irr, static_cast<int>(j + 1)});
        }
    }
    sort_blocks(k, out);
    int total = 0;
    for (auto& b : out) total += b.dim(k);
    if (total != static_cast<int>(n)) throw internal_error("canonical_form: block dims do not sum");
    return out;
}

// Companion matrix of a monic polynomial.
template <class F>
Matrix<F> companion(const F& k, const Poly<F>& monic) {
    int n = poly_deg<F>(monic);
    if (n < 1) throw internal_error("companion of constant");
    Matrix<F> c(k, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 1; i < n; ++i) c.at(static_cast<std::size_t>(i), static_cast<std::size_t>(i - 1)) = k.one();
    for (int i = 0; i < n; ++i)
        c.at(static_cast<std::size_t>(i), static_cast<std::size_t>(n - 1)) = k.neg(monic[static_cast<std::size_t>(i)]);
    return c;
}

// The matrix of one canonical block: companion of poly^power.
template <class F>
Matrix<F> block_matrix(const F& k, const CanonicalBlock<F>& b) {
    Poly<F> q = poly_const(k, k.one());
    for (int i = 0; i < b.power; ++i) q = poly_mul(k, q, b.poly);
    return companion(k, q);
}

}  // namespace spiralis
