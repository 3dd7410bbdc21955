#pragma once

// Concrete models of the indecomposable representations: the four interval
// types (as spirals folded onto the circle, or as supports of a window) and
// the Jordan-block representations, plus direct sums and base changes.

#include <random>

#include "spiralis/quiver.hpp"

namespace spiralis {

// Interval specification {i, j + m*wraps} with endpoint closures.
struct IntervalSpec {
    int i = 1, j = 1, wraps = 0;
    bool left_closed = true, right_closed = true;
};

// Z-support of the interval: [2i, 2(j+mk)] with an end shifted inward by one
// when open, matching the displayed support cases.
inline std::pair<long, long> interval_support(const IntervalSpec& s, long m) {
    long left = 2 * s.i + (s.left_closed ? 0 : 1);
    long right = 2 * (s.j + m * s.wraps) - (s.right_closed ? 0 : 1);
    return {left, right};
}

inline bool interval_valid(const IntervalSpec& s, long m) {
    if (s.i < 1 || s.i > m || s.j < 1 || s.j > m || s.wraps < 0) return false;
    auto [l, r] = interval_support(s, m);
    return l <= r;
}

// rho^I(interval): fold the Z-interval onto the circle. Basis vectors of
// V_r are the support vertices congruent to r; alpha/beta send a generator to
// the neighbour it is connected to along the spiral.
template <class F>
GRep<F> bar_model(F k, std::size_t m, int degree, const IntervalSpec& spec,
                  std::vector<double> angles = {}) {
    if (!interval_valid(spec, static_cast<long>(m))) throw invalid_input("bar_model: bad interval");
    auto [lo, hi] = interval_support(spec, static_cast<long>(m));
    GRep<F> g;
    g.field = k;
    g.m = m;
    g.degree = degree;
    g.angles = angles.empty() ? default_angles(m) : std::move(angles);
    g.dims.assign(2 * m, 0);
    std::vector<std::vector<long>> members(2 * m);  // support vertices per circle vertex
    for (long v = lo; v <= hi; ++v) {
        std::size_t r = static_cast<std::size_t>((v - 1) % static_cast<long>(2 * m));
        ++g.dims[r];
        members[r].push_back(v);
    }
    auto index_in = [&](std::size_t r, long v) {
        auto& ms = members[r];
        return static_cast<std::size_t>(std::find(ms.begin(), ms.end(), v) - ms.begin());
    };
    for (std::size_t i = 1; i <= m; ++i) {
        std::size_t rs = 2 * i - 2, rt = 2 * i - 1;
        Matrix<F> a(k, g.dims[rt], g.dims[rs]);
        for (long v : members[rs])
            if (v + 1 <= hi && ((v + 1 - 1) % static_cast<long>(2 * m)) == static_cast<long>(rt))
                a.at(index_in(rt, v + 1), index_in(rs, v)) = k.one();
        g.alpha.push_back(a);
        std::size_t rb = (2 * i) % (2 * m);
        Matrix<F> b(k, g.dims[rt], g.dims[rb]);
        for (long v : members[rb])
            if (v - 1 >= lo && ((v - 1 - 1) % static_cast<long>(2 * m)) == static_cast<long>(rt))
                b.at(index_in(rt, v - 1), index_in(rb, v)) = k.one();
        g.beta.push_back(b);
    }
    validate(g);
    return g;
}

// rho^II(V, T): every space V, alpha_1 = T, all other maps the identity.
template <class F>
GRep<F> jordan_model(F k, std::size_t m, int degree, const Matrix<F>& t,
                     std::vector<double> angles = {}) {
    if (t.rows != t.cols || !is_invertible(t)) throw invalid_input("jordan_model: T must be invertible");
    GRep<F> g;
    g.field = k;
    g.m = m;
    g.degree = degree;
    g.angles = angles.empty() ? default_angles(m) : std::move(angles);
    g.dims.assign(2 * m, t.rows);
    for (std::size_t i = 1; i <= m; ++i) {
        g.alpha.push_back(i == 1 ? t : Matrix<F>::identity(k, t.rows));
        g.beta.push_back(Matrix<F>::identity(k, t.rows));
    }
    validate(g);
    return g;
}

// The window rep of a Z-interval with the given support, inside [lo, hi].
template <class F>
ZWindowRep<F> window_interval_model(F k, long lo, long hi, long sup_l, long sup_r, int degree = 0) {
    if (!(lo <= sup_l && sup_l <= sup_r && sup_r <= hi)) throw invalid_input("interval outside window");
    ZWindowRep<F> w;
    w.field = k;
    w.lo = lo;
    w.hi = hi;
    w.degree = degree;
    for (long v = lo; v <= hi; ++v) {
        w.dims.push_back(v >= sup_l && v <= sup_r ? 1 : 0);
        w.values.push_back(static_cast<double>(v));
    }
    for (long v = lo; v < hi; ++v) {
        bool fwd = vertex_is_odd(v);
        std::size_t rows = fwd ? w.dim_at(v + 1) : w.dim_at(v);
        std::size_t cols = fwd ? w.dim_at(v) : w.dim_at(v + 1);
        Matrix<F> e(k, rows, cols);
        if (rows == 1 && cols == 1) e.at(0, 0) = k.one();
        w.edges.push_back(e);
    }
    validate(w);
    return w;
}

template <class F>
GRep<F> grep_direct_sum(const GRep<F>& x, const GRep<F>& y) {
    if (x.m != y.m) throw invalid_input("direct sum: m mismatch");
    const F& k = x.field;
    GRep<F> g;
    g.field = k;
    g.m = x.m;
    g.degree = x.degree;
    g.angles = x.angles;
    g.dims.resize(2 * g.m);
    for (std::size_t r = 0; r < 2 * g.m; ++r) g.dims[r] = x.dims[r] + y.dims[r];
    auto block_diag = [&](const Matrix<F>& a, const Matrix<F>& b) {
        Matrix<F> z(k, a.rows + b.rows, a.cols + b.cols);
        for (std::size_t r = 0; r < a.rows; ++r)
            for (std::size_t c = 0; c < a.cols; ++c) z.at(r, c) = a.at(r, c);
        for (std::size_t r = 0; r < b.rows; ++r)
            for (std::size_t c = 0; c < b.cols; ++c) z.at(a.rows + r, a.cols + c) = b.at(r, c);
        return z;
    };
    for (std::size_t i = 0; i < g.m; ++i) {
        g.alpha.push_back(block_diag(x.alpha[i], y.alpha[i]));
        g.beta.push_back(block_diag(x.beta[i], y.beta[i]));
    }
    validate(g);
    return g;
}

template <class F>
ZWindowRep<F> window_direct_sum(const ZWindowRep<F>& x, const ZWindowRep<F>& y) {
    if (x.lo != y.lo || x.hi != y.hi) throw invalid_input("direct sum: window mismatch");
    const F& k = x.field;
    ZWindowRep<F> w;
    w.field = k;
    w.lo = x.lo;
    w.hi = x.hi;
    w.degree = x.degree;
    w.values = x.values;
    for (std::size_t i = 0; i < x.dims.size(); ++i) w.dims.push_back(x.dims[i] + y.dims[i]);
    for (long v = x.lo; v < x.hi; ++v) {
        const auto& a = x.edge_at(v);
        const auto& b = y.edge_at(v);
        Matrix<F> z(k, a.rows + b.rows, a.cols + b.cols);
        for (std::size_t r = 0; r < a.rows; ++r)
            for (std::size_t c = 0; c < a.cols; ++c) z.at(r, c) = a.at(r, c);
        for (std::size_t r = 0; r < b.rows; ++r)
            for (std::size_t c = 0; c < b.cols; ++c) z.at(a.rows + r, a.cols + c) = b.at(r, c);
        w.edges.push_back(z);
    }
    validate(w);
    return w;
}

// Base change by invertible P_r at every vertex: alpha'_i = P_{2i} a_i P_{2i-1}^{-1}.
template <class F>
GRep<F> grep_conjugate(const GRep<F>& g, const std::vector<Matrix<F>>& p) {
    if (p.size() != 2 * g.m) throw invalid_input("conjugate: need 2m base changes");
    GRep<F> out = g;
    for (std::size_t i = 1; i <= g.m; ++i) {
        out.alpha[i - 1] = mat_mul(mat_mul(p[2 * i - 1], g.alpha[i - 1]), inverse(p[2 * i - 2]));
        std::size_t src = (2 * i) % (2 * g.m);
        out.beta[i - 1] = mat_mul(mat_mul(p[2 * i - 1], g.beta[i - 1]), inverse(p[src]));
    }
    validate(out);
    return out;
}

template <class F>
ZWindowRep<F> window_conjugate(const ZWindowRep<F>& w, const std::vector<Matrix<F>>& p) {
    if (p.size() != w.dims.size()) throw invalid_input("conjugate: base change count");
    ZWindowRep<F> out = w;
    for (long v = w.lo; v < w.hi; ++v) {
        std::size_t ie = static_cast<std::size_t>(v - w.lo);
        std::size_t isrc = vertex_is_odd(v) ? ie : ie + 1;
        std::size_t itgt = vertex_is_odd(v) ? ie + 1 : ie;
        out.edges[ie] = mat_mul(mat_mul(p[itgt], w.edges[ie]), inverse(p[isrc]));
    }
    validate(out);
    return out;
}

// ---------------------------------------------------------------------------
// Random generators for the verification suites (deterministic given the rng).

template <class F>
Matrix<F> random_matrix(const F& k, std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                        long long lo = -3, long long hi = 3) {
    std::uniform_int_distribution<long long> d(lo, hi);
    Matrix<F> m(k, rows, cols);
    for (auto& v : m.a) v = k.from_int(d(rng));
    return m;
}

template <class F>
Matrix<F> random_invertible(const F& k, std::size_t n, std::mt19937_64& rng) {
    if (n == 0) return Matrix<F>(k, 0, 0);
    while (true) {
        auto m = random_matrix(k, n, n, rng);
        if (is_invertible(m)) return m;
    }
}

inline IntervalSpec random_interval(std::size_t m, int max_wraps, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> di(1, static_cast<int>(m));
    std::uniform_int_distribution<int> dw(0, max_wraps);
    std::uniform_int_distribution<int> dc(0, 1);
    while (true) {
        IntervalSpec s;
        s.i = di(rng);
        s.j = di(rng);
        s.wraps = dw(rng);
        s.left_closed = dc(rng) == 1;
        s.right_closed = dc(rng) == 1;
        if (interval_valid(s, static_cast<long>(m))) return s;
    }
}

// Known-summand random representation: a direct sum of interval and Jordan
// models conjugated by random base changes. Returns the rep together with the
// ground-truth bars and Jordan blocks.
template <class F>
struct RandomRep {
    GRep<F> rep;
    std::vector<BarCode> bars;
    std::vector<JordanBlock<F>> jordans;
};

template <class F>
RandomRep<F> random_grep(const F& k, std::size_t m, int degree, std::size_t n_bars,
                         std::size_t n_jordans, std::mt19937_64& rng, int max_wraps = 2,
                         std::size_t max_vertex_dim = 4) {
    RandomRep<F> out;
    std::vector<GRep<F>> summands;
    std::uniform_int_distribution<int> eig(1, 4);
    std::uniform_int_distribution<int> pow_d(1, 2);
    for (std::size_t b = 0; b < n_bars; ++b) {
        auto spec = random_interval(m, max_wraps, rng);
        auto model = bar_model(k, m, degree, spec);
        summands.push_back(model);
        out.bars.push_back(window_bar_to_circle_bar(
            model, WindowBar{interval_support(spec, static_cast<long>(m)).first,
                             interval_support(spec, static_cast<long>(m)).second, 1}));
    }
    for (std::size_t j = 0; j < n_jordans; ++j) {
        int power = pow_d(rng);
        auto u = k.from_int(eig(rng));
        CanonicalBlock<F> blk{poly_x_minus(k, u), power};
        summands.push_back(jordan_model(k, m, degree, block_matrix(k, blk)));
        out.jordans.push_back(JordanBlock<F>{degree, blk.poly, blk.power, 1});
    }
    if (summands.empty()) summands.push_back(bar_model(k, m, degree, IntervalSpec{1, 1, 0, true, true}));
    if (summands.size() > n_bars + n_jordans)
        out.bars.push_back(BarCode{degree, 1, 1, 0, true, true, 0, 0, 1});
    GRep<F> total = summands.front();
    for (std::size_t i = 1; i < summands.size(); ++i) total = grep_direct_sum(total, summands[i]);
    // cap the per-vertex dimension by regenerating would be awkward; callers
    // choose n_bars/n_jordans so dims stay small
    (void)max_vertex_dim;
    std::vector<Matrix<F>> base;
    for (std::size_t r = 0; r < 2 * m; ++r) base.push_back(random_invertible(k, total.dims[r], rng));
    out.rep = grep_conjugate(total, base);
    for (auto& b : out.bars) {
        b.left = out.rep.angles[static_cast<std::size_t>(b.left_index - 1)];
        b.right = out.rep.angles[static_cast<std::size_t>(b.right_index - 1)] + two_pi * b.wraps;
    }
    canonicalize_bars(out.bars);
    canonicalize_jordans(k, out.jordans);
    return out;
}

}  // namespace spiralis
