#pragma once

// G_2m (circular) and windowed-Z (linear) quiver representations: the block
// matrix M(ρ), twisting ρ_u, truncation, unrolling to the infinite cyclic
// covering, interval decomposition of windows via generalized ranks, and the
// full bar-code / Jordan-block extraction for circle representations.
//
// Vertex conventions follow the paper: vertices x_1..x_2m, odd = regular
// fiber, even = singular fiber, alpha_i: x_{2i-1} -> x_{2i},
// beta_i: x_{2i+1} -> x_{2i} (indices mod 2m, so beta_m: x_1 -> x_{2m}).

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "spiralis/canonical.hpp"
#include "spiralis/matrix.hpp"
#include "spiralis/relation.hpp"

namespace spiralis {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline bool vertex_is_odd(long v) {
    return ((v % 2) + 2) % 2 == 1;
}

template <class F>
struct GRep {
    F field{};
    std::size_t m = 1;
    int degree = 0;
    std::vector<std::size_t> dims;    // 2m entries, dims[r-1] = dim V_r
    std::vector<Matrix<F>> alpha;     // alpha[i-1]: V_{2i-1} -> V_{2i}
    std::vector<Matrix<F>> beta;      // beta[i-1]:  V_{2i+1} -> V_{2i}
    std::vector<double> angles;       // m strictly increasing angles in (0, 2pi]

    std::size_t total_dim() const {
        std::size_t n = 0;
        for (auto d : dims) n += d;
        return n;
    }
};

template <class F>
void validate(const GRep<F>& g) {
    if (g.m < 1 || g.dims.size() != 2 * g.m || g.alpha.size() != g.m || g.beta.size() != g.m)
        throw invalid_input("rep: wrong field sizes for m");
    for (std::size_t i = 1; i <= g.m; ++i) {
        const auto& a = g.alpha[i - 1];
        if (a.rows != g.dims[2 * i - 1] || a.cols != g.dims[2 * i - 2])
            throw invalid_input("rep: alpha[" + std::to_string(i) + "] shape mismatch");
        const auto& b = g.beta[i - 1];
        std::size_t src = g.dims[(2 * i) % (2 * g.m)];
        if (b.rows != g.dims[2 * i - 1] || b.cols != src)
            throw invalid_input("rep: beta[" + std::to_string(i) + "] shape mismatch");
    }
    if (g.angles.size() != g.m) throw invalid_input("rep: angles size mismatch");
    for (std::size_t i = 0; i + 1 < g.angles.size(); ++i)
        if (!(g.angles[i] < g.angles[i + 1])) throw invalid_input("rep: angles not increasing");
    if (!g.angles.empty() && !(g.angles.front() > 0.0 && g.angles.back() <= two_pi + 1e-12))
        throw invalid_input("rep: angles outside (0, 2pi]");
}

inline std::vector<double> default_angles(std::size_t m) {
    std::vector<double> a(m);
    for (std::size_t i = 0; i < m; ++i) a[i] = two_pi * static_cast<double>(i + 1) / static_cast<double>(m);
    return a;
}

// A window [lo, hi] of a Z-representation. edges[v-lo] sits between vertices
// v and v+1: forward (alpha) when v is odd, backward (beta) when v is even.
template <class F>
struct ZWindowRep {
    F field{};
    long lo = 0, hi = 0;
    int degree = 0;
    std::vector<std::size_t> dims;   // hi-lo+1 entries
    std::vector<Matrix<F>> edges;    // hi-lo entries
    std::vector<double> values;      // per-vertex; even vertices carry critical values

    std::size_t dim_at(long v) const { return dims[static_cast<std::size_t>(v - lo)]; }
    const Matrix<F>& edge_at(long v) const { return edges[static_cast<std::size_t>(v - lo)]; }
    std::size_t total_dim() const {
        std::size_t n = 0;
        for (auto d : dims) n += d;
        return n;
    }
};

template <class F>
void validate(const ZWindowRep<F>& w) {
    if (w.lo > w.hi) throw invalid_input("window: lo > hi");
    std::size_t n = static_cast<std::size_t>(w.hi - w.lo + 1);
    if (w.dims.size() != n || w.edges.size() + 1 != n)
        throw invalid_input("window: sizes mismatch");
    for (long v = w.lo; v < w.hi; ++v) {
        const auto& e = w.edge_at(v);
        bool forward = vertex_is_odd(v);
        std::size_t sr = forward ? w.dim_at(v) : w.dim_at(v + 1);
        std::size_t tr = forward ? w.dim_at(v + 1) : w.dim_at(v);
        if (e.cols != sr || e.rows != tr) throw invalid_input("window: edge shape mismatch");
    }
}

// ---------------------------------------------------------------------------
// M(ρ)

// Circular block matrix with rows alpha_i, -beta_i and -beta_m bottom-left.
template <class F>
Matrix<F> m_matrix(const GRep<F>& g) {
    const F& k = field_of(g);
    std::size_t m = g.m;
    std::vector<std::size_t> row_off(m + 1, 0), col_off(m + 1, 0);
    for (std::size_t i = 1; i <= m; ++i) {
        row_off[i] = row_off[i - 1] + g.dims[2 * i - 1];  // targets V_{2i}
        col_off[i] = col_off[i - 1] + g.dims[2 * i - 2];  // sources V_{2i-1}
    }
    Matrix<F> mm(k, row_off[m], col_off[m]);
    auto put = [&](std::size_t bi, std::size_t bj, const Matrix<F>& blk, bool negate) {
        for (std::size_t r = 0; r < blk.rows; ++r)
            for (std::size_t c = 0; c < blk.cols; ++c) {
                auto v = negate ? k.neg(blk.at(r, c)) : blk.at(r, c);
                auto& cell = mm.at(row_off[bi] + r, col_off[bj] + c);
                cell = k.add(cell, v);
            }
    };
    for (std::size_t i = 1; i <= m; ++i) {
        put(i - 1, i - 1, g.alpha[i - 1], false);
        put(i - 1, i % m, g.beta[i - 1], true);  // -beta_i; wraps to column 1 for i = m
    }
    return mm;
}

// Window (bidiagonal) block matrix; rows = even vertices, cols = odd.
template <class F>
Matrix<F> m_matrix(const ZWindowRep<F>& w) {
    const F& k = field_of(w);
    std::vector<long> evens, odds;
    for (long v = w.lo; v <= w.hi; ++v) (vertex_is_odd(v) ? odds : evens).push_back(v);
    std::map<long, std::size_t> row_off, col_off;
    std::size_t rows = 0, cols = 0;
    for (long v : evens) {
        row_off[v] = rows;
        rows += w.dim_at(v);
    }
    for (long v : odds) {
        col_off[v] = cols;
        cols += w.dim_at(v);
    }
    Matrix<F> mm(k, rows, cols);
    auto put = [&](long ev, long ov, const Matrix<F>& blk) {
        for (std::size_t r = 0; r < blk.rows; ++r)
            for (std::size_t c = 0; c < blk.cols; ++c) mm.at(row_off[ev] + r, col_off[ov] + c) = blk.at(r, c);
    };
    for (long v = w.lo; v < w.hi; ++v) {
        if (vertex_is_odd(v))
            put(v + 1, v, w.edge_at(v));  // alpha: odd v -> even v+1
        else
            put(v, v + 1, w.edge_at(v));  // beta: odd v+1 -> even v
    }
    return mm;
}

template <class F>
std::size_t d_ker(const Matrix<F>& mm) {
    return mm.cols - rank(mm);
}

template <class F>
std::size_t d_coker(const Matrix<F>& mm) {
    return mm.rows - rank(mm);
}

// ---------------------------------------------------------------------------
// twist, truncate, unroll

template <class F>
GRep<F> twist(const GRep<F>& g, const typename F::Elem& u) {
    const F& k = field_of(g);
    if (k.is_zero(u)) throw invalid_input("twist by zero");
    GRep<F> out = g;
    out.alpha[0] = mat_scale(g.alpha[0], u);
    return out;
}

// T_{k,l}: keeps vertices 2k..2l.
template <class F>
ZWindowRep<F> truncate(const GRep<F>& g, long kk, long ll) {
    if (!(1 <= kk && kk <= ll && ll <= static_cast<long>(g.m)))
        throw invalid_input("truncate: need 1 <= k <= l <= m");
    ZWindowRep<F> w;
    w.field = g.field;
    w.lo = 2 * kk;
    w.hi = 2 * ll;
    w.degree = g.degree;
    for (long v = w.lo; v <= w.hi; ++v) {
        w.dims.push_back(g.dims[static_cast<std::size_t>(v - 1)]);
        w.values.push_back(vertex_is_odd(v) ? 0.0 : g.angles[static_cast<std::size_t>(v / 2 - 1)]);
    }
    for (long v = w.lo; v < w.hi; ++v) {
        if (vertex_is_odd(v))
            w.edges.push_back(g.alpha[static_cast<std::size_t>((v + 1) / 2 - 1)]);
        else
            w.edges.push_back(g.beta[static_cast<std::size_t>(v / 2 - 1)]);
    }
    validate(w);
    return w;
}

template <class F>
ZWindowRep<F> truncate(const ZWindowRep<F>& in, long kk, long ll) {
    if (kk > ll) throw invalid_input("truncate: need k <= l");
    const F& k = in.field;
    ZWindowRep<F> w;
    w.field = in.field;
    w.lo = 2 * kk;
    w.hi = 2 * ll;
    w.degree = in.degree;
    auto dim_of = [&](long v) { return (v >= in.lo && v <= in.hi) ? in.dim_at(v) : std::size_t(0); };
    for (long v = w.lo; v <= w.hi; ++v) {
        w.dims.push_back(dim_of(v));
        w.values.push_back((v >= in.lo && v <= in.hi) ? in.values[static_cast<std::size_t>(v - in.lo)] : 0.0);
    }
    for (long v = w.lo; v < w.hi; ++v) {
        bool fwd = vertex_is_odd(v);
        std::size_t rows = fwd ? dim_of(v + 1) : dim_of(v);
        std::size_t cols = fwd ? dim_of(v) : dim_of(v + 1);
        if (v >= in.lo && v + 1 <= in.hi && rows == (fwd ? in.dim_at(v + 1) : in.dim_at(v)) &&
            cols == (fwd ? in.dim_at(v) : in.dim_at(v + 1)))
            w.edges.push_back(in.edge_at(v));
        else
            w.edges.push_back(Matrix<F>(k, rows, cols));
    }
    validate(w);
    return w;
}

// Infinite cyclic covering, truncated to `periods` copies: vertices
// 1 .. 2m*periods with dims/maps repeated, critical values theta_i + 2*pi*k.
template <class F>
ZWindowRep<F> unroll(const GRep<F>& g, std::size_t periods) {
    if (periods < 1) throw invalid_input("unroll: periods >= 1");
    std::size_t m = g.m;
    ZWindowRep<F> w;
    w.field = g.field;
    w.lo = 1;
    w.hi = static_cast<long>(2 * m * periods);
    w.degree = g.degree;
    for (long v = w.lo; v <= w.hi; ++v) {
        std::size_t circ = static_cast<std::size_t>((v - 1) % static_cast<long>(2 * m));  // 0-based circle vertex
        w.dims.push_back(g.dims[circ]);
        if (!vertex_is_odd(v)) {
            long j = v / 2;  // global critical index
            std::size_t i = static_cast<std::size_t>((j - 1) % static_cast<long>(m));
            w.values.push_back(g.angles[i] + two_pi * static_cast<double>((j - 1) / static_cast<long>(m)));
        } else {
            // regular value between the neighbouring critical angles (midpoint)
            long j = (v + 1) / 2;  // fiber sits just below critical index j
            std::size_t i = static_cast<std::size_t>((j - 1) % static_cast<long>(m));
            double hi_ang = g.angles[i] + two_pi * static_cast<double>((j - 1) / static_cast<long>(m));
            double lo_ang;
            if (j == 1) {
                lo_ang = g.angles[m - 1] - two_pi;
            } else {
                std::size_t ip = static_cast<std::size_t>((j - 2) % static_cast<long>(m));
                lo_ang = g.angles[ip] + two_pi * static_cast<double>((j - 2) / static_cast<long>(m));
            }
            w.values.push_back(0.5 * (lo_ang + hi_ang));
        }
    }
    for (long v = w.lo; v < w.hi; ++v) {
        if (vertex_is_odd(v)) {
            long j = (v + 1) / 2;
            w.edges.push_back(g.alpha[static_cast<std::size_t>((j - 1) % static_cast<long>(m))]);
        } else {
            long j = v / 2;
            w.edges.push_back(g.beta[static_cast<std::size_t>((j - 1) % static_cast<long>(m))]);
        }
    }
    validate(w);
    return w;
}

// ---------------------------------------------------------------------------
// Generalized rank and window decomposition

// The elementary step relation between window vertices v and v+1.
template <class F>
Relation<F> step_relation(const ZWindowRep<F>& w, long v) {
    const F& k = field_of(w);
    if (vertex_is_odd(v)) return rel_graph(w.edge_at(v));
    return rel_dagger(rel_graph(w.edge_at(v)));
}

// Literal limit -> colimit rank of the zigzag restricted to [p, q]:
// the limit is the kernel of the difference system, the colimit the cokernel
// of the gluing system, the map sends a compatible tuple to the class of its
// first component.
template <class F>
std::size_t generalized_rank(const ZWindowRep<F>& w, long p, long q) {
    if (!(w.lo <= p && p <= q && q <= w.hi)) throw invalid_input("generalized_rank: range violation");
    const F& k = field_of(w);
    std::vector<std::size_t> off;
    std::size_t total = 0;
    for (long v = p; v <= q; ++v) {
        off.push_back(total);
        total += w.dim_at(v);
    }
    auto slot = [&](long v) { return off[static_cast<std::size_t>(v - p)]; };

    // constraint matrix C for the limit
    std::size_t crow = 0;
    for (long v = p; v < q; ++v) crow += vertex_is_odd(v) ? w.dim_at(v + 1) : w.dim_at(v);
    Matrix<F> C(k, crow, total);
    std::size_t r0 = 0;
    for (long v = p; v < q; ++v) {
        const Matrix<F>& e = w.edge_at(v);
        if (vertex_is_odd(v)) {
            // f x_v - x_{v+1} = 0, rows in V_{v+1}
            for (std::size_t r = 0; r < e.rows; ++r) {
                for (std::size_t c = 0; c < e.cols; ++c) C.at(r0 + r, slot(v) + c) = e.at(r, c);
                C.at(r0 + r, slot(v + 1) + r) = k.neg(k.one());
            }
            r0 += e.rows;
        } else {
            // x_v - g x_{v+1} = 0, rows in V_v
            for (std::size_t r = 0; r < e.rows; ++r) {
                C.at(r0 + r, slot(v) + r) = k.one();
                for (std::size_t c = 0; c < e.cols; ++c) C.at(r0 + r, slot(v + 1) + c) = k.neg(e.at(r, c));
            }
            r0 += e.rows;
        }
    }
    Matrix<F> lim = kernel_basis_matrix(C);

    // colimit relations D: identify along each arrow
    std::size_t dcols = 0;
    for (long v = p; v < q; ++v) dcols += vertex_is_odd(v) ? w.dim_at(v) : w.dim_at(v + 1);
    Matrix<F> D(k, total, dcols);
    std::size_t c0 = 0;
    for (long v = p; v < q; ++v) {
        const Matrix<F>& e = w.edge_at(v);
        if (vertex_is_odd(v)) {
            // source V_v, iota_v(x) - iota_{v+1}(f x)
            for (std::size_t c = 0; c < e.cols; ++c) {
                D.at(slot(v) + c, c0 + c) = k.one();
                for (std::size_t r = 0; r < e.rows; ++r) D.at(slot(v + 1) + r, c0 + c) = k.neg(e.at(r, c));
            }
            c0 += e.cols;
        } else {
            // source V_{v+1}, iota_{v+1}(x) - iota_v(g x)
            for (std::size_t c = 0; c < e.cols; ++c) {
                D.at(slot(v + 1) + c, c0 + c) = k.one();
                for (std::size_t r = 0; r < e.rows; ++r) D.at(slot(v) + r, c0 + c) = k.neg(e.at(r, c));
            }
            c0 += e.cols;
        }
    }

    // canonical map: first components of limit vectors, modulo im D
    Matrix<F> first(k, total, lim.cols);
    for (std::size_t c = 0; c < lim.cols; ++c)
        for (std::size_t r = 0; r < w.dim_at(p); ++r) first.at(slot(p) + r, c) = lim.at(r, c);
    if (D.cols == 0) return rank(first);
    return rank(hcat(first, D)) - rank(D);
}

struct WindowBar {
    long p = 0, q = 0;  // vertex support, inclusive
    std::size_t multiplicity = 1;

    bool operator==(const WindowBar&) const = default;
};

// Full generalized-rank table via incremental relation composition:
// grk(p, q) = dim dom - dim ker of the composed step relation, which agrees
// with generalized_rank on every interval-decomposable window (checked in
// tests against the literal definition).
template <class F>
class GrkTable {
public:
    explicit GrkTable(const ZWindowRep<F>& w) : w_(&w) {
        rows_.resize(static_cast<std::size_t>(w.hi - w.lo + 1));
        for (long p = w.lo; p <= w.hi; ++p) {
            auto& row = rows_[static_cast<std::size_t>(p - w.lo)];
            if (w.dim_at(p) == 0) continue;
            const F& k = field_of(w);
            Relation<F> rel = rel_identity(k, w.dim_at(p));
            row.push_back(w.dim_at(p));
            for (long q = p + 1; q <= w.hi; ++q) {
                rel = rel_compose(step_relation(w, q - 1), rel);
                auto parts = rel_parts(rel);
                std::size_t val = parts.dom.dim() - parts.ker.dim();
                if (val == 0) break;
                row.push_back(val);
            }
        }
    }

    std::size_t at(long p, long q) const {
        if (p < w_->lo || q > w_->hi || p > q) return 0;
        const auto& row = rows_[static_cast<std::size_t>(p - w_->lo)];
        std::size_t idx = static_cast<std::size_t>(q - p);
        return idx < row.size() ? row[idx] : 0;
    }

    long row_extent(long p) const {  // rightmost q with grk > 0, or p-1
        if (p < w_->lo || p > w_->hi) return p - 1;
        const auto& row = rows_[static_cast<std::size_t>(p - w_->lo)];
        return p + static_cast<long>(row.size()) - 1;
    }

private:
    const ZWindowRep<F>* w_;
    std::vector<std::vector<std::size_t>> rows_;
};

// Interval multiplicities by inclusion-exclusion over the grk table, with
// the per-vertex dimension bookkeeping enforced.
template <class F>
std::vector<WindowBar> decompose_window(const ZWindowRep<F>& w) {
    validate(w);
    GrkTable<F> g(w);
    std::vector<WindowBar> bars;
    for (long p = w.lo; p <= w.hi; ++p) {
        long qmax = std::max(g.row_extent(p), g.row_extent(p - 1));
        for (long q = p; q <= qmax; ++q) {
            long mult = static_cast<long>(g.at(p, q)) - static_cast<long>(g.at(p - 1, q)) -
                        static_cast<long>(g.at(p, q + 1)) + static_cast<long>(g.at(p - 1, q + 1));
            if (mult < 0) throw internal_error("decompose_window: negative multiplicity");
            if (mult > 0) bars.push_back(WindowBar{p, q, static_cast<std::size_t>(mult)});
        }
    }
    // bookkeeping: bar supports must tile the dimension vector exactly
    std::vector<std::size_t> cover(w.dims.size(), 0);
    for (const auto& b : bars)
        for (long v = b.p; v <= b.q; ++v) cover[static_cast<std::size_t>(v - w.lo)] += b.multiplicity;
    if (cover != w.dims) throw internal_error("decompose_window: dimension bookkeeping failed");
    return bars;
}

// ---------------------------------------------------------------------------
// Circle relation and the G_2m decomposition

// Composite relation V_{2i-1} ~> V_{2i-1} around the circle, built from the
// elementary relations {(v, w) : alpha_j v = beta_j w}.
template <class F>
Relation<F> circle_relation(const GRep<F>& g, std::size_t start_i = 1) {
    if (start_i < 1 || start_i > g.m) throw invalid_input("circle_relation: bad start vertex");
    const F& k = field_of(g);
    Relation<F> rel = rel_identity(k, g.dims[2 * start_i - 2]);
    for (std::size_t j = 0; j < g.m; ++j) {
        std::size_t i = (start_i - 1 + j) % g.m;
        rel = rel_compose(rel_from_pair(g.alpha[i], g.beta[i]), rel);
    }
    return rel;
}

// An angle-interval bar code. Right endpoint = angles[right_index-1] + 2π*wraps
// in the circle case; plain critical values in the real case (wraps = 0).
struct BarCode {
    int degree = 0;
    int left_index = 0, right_index = 0;  // 1-based critical indices
    int wraps = 0;
    bool left_closed = true, right_closed = true;
    double left = 0.0, right = 0.0;
    std::size_t multiplicity = 1;
};

inline auto bar_key(const BarCode& b) {
    return std::tuple(b.degree, b.left_index, b.wraps, b.right_index, b.left_closed, b.right_closed);
}

inline void canonicalize_bars(std::vector<BarCode>& bars) {
    std::sort(bars.begin(), bars.end(), [](const BarCode& x, const BarCode& y) { return bar_key(x) < bar_key(y); });
    std::vector<BarCode> out;
    for (auto& b : bars) {
        if (!out.empty() && bar_key(out.back()) == bar_key(b))
            out.back().multiplicity += b.multiplicity;
        else
            out.push_back(b);
    }
    bars = std::move(out);
}

inline bool bars_equal(const std::vector<BarCode>& x, const std::vector<BarCode>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (bar_key(x[i]) != bar_key(y[i]) || x[i].multiplicity != y[i].multiplicity) return false;
    return true;
}

template <class F>
struct JordanBlock {
    int degree = 0;
    Poly<F> poly;  // monic irreducible, nonzero constant term
    int power = 1;
    std::size_t multiplicity = 1;
};

template <class F>
void canonicalize_jordans(const F& k, std::vector<JordanBlock<F>>& js) {
    std::sort(js.begin(), js.end(), [&](const JordanBlock<F>& x, const JordanBlock<F>& y) {
        if (x.degree != y.degree) return x.degree < y.degree;
        if (poly_less(k, x.poly, y.poly)) return true;
        if (poly_less(k, y.poly, x.poly)) return false;
        return x.power < y.power;
    });
    std::vector<JordanBlock<F>> out;
    for (auto& j : js) {
        if (!out.empty() && out.back().degree == j.degree && out.back().power == j.power &&
            poly_eq(k, out.back().poly, j.poly))
            out.back().multiplicity += j.multiplicity;
        else
            out.push_back(j);
    }
    js = std::move(out);
}

template <class F>
bool jordans_equal(const F& k, const std::vector<JordanBlock<F>>& x, const std::vector<JordanBlock<F>>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].degree != y[i].degree || x[i].power != y[i].power ||
            x[i].multiplicity != y[i].multiplicity || !poly_eq(k, x[i].poly, y[i].poly))
            return false;
    return true;
}

template <class F>
std::size_t jordan_total_dim(const std::vector<JordanBlock<F>>& js) {
    std::size_t n = 0;
    for (auto& j : js) n += static_cast<std::size_t>(j.power * (static_cast<int>(j.poly.size()) - 1)) * j.multiplicity;
    return n;
}

// Converts a window bar (on an unrolled circle rep) to an angle bar code.
// Left/right endpoints are critical-angle indices; odd support endpoints are
// open, even closed, per the four interval support cases.
template <class F>
BarCode window_bar_to_circle_bar(const GRep<F>& g, const WindowBar& wb) {
    long m = static_cast<long>(g.m);
    long jl = vertex_is_odd(wb.p) ? (wb.p - 1) / 2 : wb.p / 2;
    long jr = vertex_is_odd(wb.q) ? (wb.q + 1) / 2 : wb.q / 2;
    BarCode b;
    b.degree = g.degree;
    b.left_closed = !vertex_is_odd(wb.p);
    b.right_closed = !vertex_is_odd(wb.q);
    b.multiplicity = wb.multiplicity;
    long shift = (jl - 1) / m;  // translate so the left critical index lands in 1..m
    long jls = jl - shift * m, jrs = jr - shift * m;
    b.left_index = static_cast<int>(jls);
    b.right_index = static_cast<int>(((jrs - 1) % m) + 1);
    b.wraps = static_cast<int>((jrs - 1) / m);
    b.left = g.angles[static_cast<std::size_t>(b.left_index - 1)];
    b.right = g.angles[static_cast<std::size_t>(b.right_index - 1)] + two_pi * b.wraps;
    return b;
}

// Converts a window bar of a real-valued (interval) window rep.
template <class F>
BarCode window_bar_to_real_bar(const ZWindowRep<F>& w, const WindowBar& wb) {
    long jl = vertex_is_odd(wb.p) ? (wb.p - 1) / 2 : wb.p / 2;
    long jr = vertex_is_odd(wb.q) ? (wb.q + 1) / 2 : wb.q / 2;
    BarCode b;
    b.degree = w.degree;
    b.left_closed = !vertex_is_odd(wb.p);
    b.right_closed = !vertex_is_odd(wb.q);
    b.multiplicity = wb.multiplicity;
    b.left_index = static_cast<int>(jl);
    b.right_index = static_cast<int>(jr);
    b.wraps = 0;
    b.left = w.values[static_cast<std::size_t>(2 * jl - w.lo)];
    b.right = w.values[static_cast<std::size_t>(2 * jr - w.lo)];
    return b;
}

template <class F>
struct Decomposition {
    std::vector<BarCode> bars;
    std::vector<JordanBlock<F>> jordans;
};

// Bars via the unrolled window anchored at a central period, Jordan blocks
// via the regular part of the circle relation. The window only cross-checks
// the total Jordan dimension; it cannot see eigenvalues.
template <class F>
Decomposition<F> decompose_g2m(const GRep<F>& g) {
    validate(g);
    const F& k = field_of(g);
    Decomposition<F> out;

    auto rp = rel_regular_part(circle_relation(g, 1));
    if (rp.dim_reg > 0) {
        for (auto& blk : canonical_form(rp.automorphism))
            out.jordans.push_back(JordanBlock<F>{g.degree, blk.poly, blk.power, 1});
    }
    canonicalize_jordans(k, out.jordans);

    std::size_t n = g.total_dim();
    if (n == 0) return out;
    std::size_t periods = 2 * (n + 2);
    long central = static_cast<long>(n) + 2;  // 0-based period index
    auto w = unroll(g, periods);
    auto window_bars = decompose_window(w);

    std::size_t spanning = 0;
    long m = static_cast<long>(g.m);
    for (const auto& wb : window_bars) {
        if (wb.p == w.lo && wb.q == w.hi) spanning += wb.multiplicity;
        long jl = vertex_is_odd(wb.p) ? (wb.p - 1) / 2 : wb.p / 2;
        if (jl < 1) continue;  // clipped at the window edge
        if ((jl - 1) / m != central) continue;
        out.bars.push_back(window_bar_to_circle_bar(g, wb));
    }
    canonicalize_bars(out.bars);

    if (spanning != jordan_total_dim(out.jordans))
        throw internal_error("decompose_g2m: Jordan dimension cross-check failed");
    return out;
}

// ---------------------------------------------------------------------------
// Field access helpers (the reps carry matrices; an empty rep still needs a
// field object, so take it from any matrix present or default-construct).

template <class F>
const F& field_of(const GRep<F>& g) {
    return g.field;
}

template <class F>
const F& field_of(const ZWindowRep<F>& w) {
    return w.field;
}

}  // namespace spiralis
