#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spiralis/models.hpp"
#include "support/oracles.hpp"

using namespace spiralis;

namespace {

template <class F>
Matrix<F> mat_from(const F& k, std::size_t rows, std::size_t cols, std::vector<long long> vals) {
    Matrix<F> m(k, rows, cols);
    for (std::size_t i = 0; i < vals.size(); ++i) m.a[i] = k.from_int(vals[i]);
    return m;
}

// dims (1, 2, 1) with both maps the fold: the degree-0 zigzag of the height
// function on the circle.
template <class F>
ZWindowRep<F> height_fixture(const F& k) {
    ZWindowRep<F> w;
    w.field = k;
    w.lo = 2;
    w.hi = 4;
    w.degree = 0;
    w.dims = {1, 2, 1};
    w.values = {0.0, 0.5, 1.0};
    w.edges.push_back(mat_from(k, 1, 2, {1, 1}));  // beta: V_3 -> V_2
    w.edges.push_back(mat_from(k, 1, 2, {1, 1}));  // alpha: V_3 -> V_4
    validate(w);
    return w;
}

std::vector<WindowBar> sorted(std::vector<WindowBar> v) {
    std::sort(v.begin(), v.end(), [](const WindowBar& a, const WindowBar& b) {
        return std::tuple(a.p, a.q, a.multiplicity) < std::tuple(b.p, b.q, b.multiplicity);
    });
    return v;
}

}  // namespace

TEST_CASE("P23 kernel/cokernel table for the G_2m interval models") {
    PrimeField f5(5);
    auto check = [&](IntervalSpec s, std::size_t dk, std::size_t dc) {
        auto mm = m_matrix(bar_model(f5, 2, 0, s));
        CHECK(d_ker(mm) == dk);
        CHECK(d_coker(mm) == dc);
    };
    check(IntervalSpec{1, 2, 0, true, true}, 0, 1);    // [i,j]
    check(IntervalSpec{1, 2, 0, true, false}, 0, 0);   // [i,j)
    check(IntervalSpec{1, 2, 0, false, true}, 0, 0);   // (i,j]
    check(IntervalSpec{1, 2, 0, false, false}, 1, 0);  // (i,j)
}

TEST_CASE("P23 table for Z interval models") {
    RationalField q;
    auto check = [&](long sl, long sr, std::size_t dk, std::size_t dc) {
        auto mm = m_matrix(window_interval_model(q, 1, 12, sl, sr));
        CHECK(d_ker(mm) == dk);
        CHECK(d_coker(mm) == dc);
    };
    check(4, 8, 0, 1);  // [2,4] closed
    check(4, 7, 0, 0);  // [2,4) closed-open
    check(5, 8, 0, 0);  // (2,4] open-closed
    check(5, 7, 1, 0);  // (2,4) open
}

TEST_CASE("P23 for Jordan models: only eigenvalue 1 contributes") {
    PrimeField f5(5);
    for (int k = 1; k <= 3; ++k) {
        CanonicalBlock<PrimeField> one{poly_x_minus(f5, f5.one()), k};
        auto m1 = m_matrix(jordan_model(f5, 2, 0, block_matrix(f5, one)));
        CHECK(d_ker(m1) == 1);
        CHECK(d_coker(m1) == 1);
        CanonicalBlock<PrimeField> two{poly_x_minus(f5, f5.from_int(2)), k};
        auto m2 = m_matrix(jordan_model(f5, 2, 0, block_matrix(f5, two)));
        CHECK(d_ker(m2) == 0);
        CHECK(d_coker(m2) == 0);
    }
}

TEST_CASE("d ker and d coker are additive over direct sums") {
    std::mt19937_64 rng(31);
    PrimeField f5(5);
    for (int it = 0; it < 10; ++it) {
        auto a = random_grep(f5, 3, 0, 2, 1, rng).rep;
        auto b = random_grep(f5, 3, 0, 1, 1, rng).rep;
        auto s = grep_direct_sum(a, b);
        CHECK(d_ker(m_matrix(s)) == d_ker(m_matrix(a)) + d_ker(m_matrix(b)));
        CHECK(d_coker(m_matrix(s)) == d_coker(m_matrix(a)) + d_coker(m_matrix(b)));
    }
}

TEST_CASE("twist basics") {
    std::mt19937_64 rng(5);
    PrimeField f5(5);
    auto r = random_grep(f5, 3, 1, 2, 1, rng).rep;
    SECTION("twist by one is the identity") {
        auto t = twist(r, f5.one());
        CHECK(t.alpha[0] == r.alpha[0]);
    }
    SECTION("twist by zero is rejected") {
        CHECK_THROWS_AS(twist(r, f5.zero()), invalid_input);
    }
    SECTION("twist distributes over direct sums") {
        auto a = random_grep(f5, 3, 0, 1, 1, rng).rep;
        auto b = random_grep(f5, 3, 0, 1, 0, rng).rep;
        auto u = f5.from_int(3);
        auto lhs = twist(grep_direct_sum(a, b), u);
        auto rhs = grep_direct_sum(twist(a, u), twist(b, u));
        CHECK(lhs.alpha[0] == rhs.alpha[0]);
        CHECK(lhs.beta[2] == rhs.beta[2]);
    }
    SECTION("twisting a Jordan model scales the eigenvalue") {
        CanonicalBlock<PrimeField> blk{poly_x_minus(f5, f5.from_int(2)), 2};
        auto rho = jordan_model(f5, 3, 1, block_matrix(f5, blk));
        auto dec = decompose_g2m(twist(rho, f5.from_int(3)));
        REQUIRE(dec.jordans.size() == 1);
        // eigenvalue 2*3 = 6 = 1 mod 5
        CHECK(poly_eq(f5, dec.jordans[0].poly, poly_x_minus(f5, f5.one())));
        CHECK(dec.jordans[0].power == 2);
        CHECK(dec.bars.empty());
    }
}

TEST_CASE("truncation matches the displayed cases") {
    RationalField q;
    SECTION("T of an interval window is the intersected interval") {
        auto w = window_interval_model(q, 2, 16, 6, 13);  // interval [3,7) say
        auto t = truncate(w, 2, 5);                        // keep vertices [4,10]
        auto expect = window_interval_model(q, 4, 10, 6, 10);
        CHECK(t.dims == expect.dims);
    }
    SECTION("truncating a Jordan model gives full-window closed bars") {
        PrimeField f5(5);
        CanonicalBlock<PrimeField> blk{poly_x_minus(f5, f5.from_int(3)), 1};
        auto rho = jordan_model(f5, 3, 0, block_matrix(f5, blk));
        auto t = truncate(rho, 1, 3);
        auto bars = decompose_window(t);
        REQUIRE(bars.size() == 1);
        CHECK(bars[0].p == 2);
        CHECK(bars[0].q == 6);
        CHECK(bars[0].multiplicity == 1);
    }
    SECTION("full-range truncation keeps all dims") {
        PrimeField f5(5);
        std::mt19937_64 rng(3);
        auto r = random_grep(f5, 3, 0, 2, 1, rng).rep;
        auto t = truncate(r, 1, 3);
        for (long v = 2; v <= 6; ++v) CHECK(t.dim_at(v) == r.dims[static_cast<std::size_t>(v - 1)]);
    }
    SECTION("range violations are rejected") {
        PrimeField f5(5);
        std::mt19937_64 rng(4);
        auto r = random_grep(f5, 3, 0, 1, 0, rng).rep;
        CHECK_THROWS_AS(truncate(r, 2, 1), invalid_input);
        CHECK_THROWS_AS(truncate(r, 0, 2), invalid_input);
    }
}

TEST_CASE("unroll produces the periodic covering window") {
    PrimeField f5(5);
    std::mt19937_64 rng(9);
    auto r = random_grep(f5, 2, 0, 1, 1, rng).rep;
    SECTION("one period reproduces the dimensions") {
        auto w = unroll(r, 1);
        for (long v = 1; v <= 4; ++v) CHECK(w.dim_at(v) == r.dims[static_cast<std::size_t>(v - 1)]);
    }
    SECTION("a Jordan model unrolls to spanning bars only") {
        CanonicalBlock<PrimeField> blk{poly_x_minus(f5, f5.from_int(2)), 2};
        auto rho = jordan_model(f5, 2, 0, block_matrix(f5, blk));
        auto w = unroll(rho, 3);
        auto bars = decompose_window(w);
        REQUIRE(bars.size() == 1);
        CHECK(bars[0].p == w.lo);
        CHECK(bars[0].q == w.hi);
        CHECK(bars[0].multiplicity == 2);  // dim V copies of rho_infinity, truncated
    }
    SECTION("a bar model unrolls to its translates") {
        auto rho = bar_model(f5, 2, 0, IntervalSpec{1, 2, 0, true, true});
        auto w = unroll(rho, 3);
        auto bars = sorted(decompose_window(w));
        // support [2,4] and translates by 2m = 4
        REQUIRE(bars.size() == 3);
        CHECK(bars[0] == WindowBar{2, 4, 1});
        CHECK(bars[1] == WindowBar{6, 8, 1});
        CHECK(bars[2] == WindowBar{10, 12, 1});
    }
}

TEST_CASE("generalized rank: definition, additivity, and the fast table") {
    PrimeField f5(5);
    SECTION("single interval: 1 inside the support, 0 outside") {
        auto w = window_interval_model(f5, 1, 10, 3, 7);
        CHECK(generalized_rank(w, 3, 7) == 1);
        CHECK(generalized_rank(w, 4, 6) == 1);
        CHECK(generalized_rank(w, 2, 7) == 0);
        CHECK(generalized_rank(w, 3, 8) == 0);
        CHECK(generalized_rank(w, 8, 9) == 0);
        CHECK_THROWS_AS(generalized_rank(w, 0, 5), invalid_input);
    }
    SECTION("direct sums add and count intervals containing the range") {
        std::mt19937_64 rng(17);
        for (int it = 0; it < 10; ++it) {
            std::uniform_int_distribution<long> d(1, 8);
            std::vector<std::pair<long, long>> sups;
            ZWindowRep<PrimeField> acc = window_interval_model(f5, 1, 8, d(rng), 8);
            sups.push_back({acc.lo, 8});
            long sl = sups.back().first;
            sups.back() = {sl, 8};
            ZWindowRep<PrimeField> w = acc;
            sups.clear();
            // rebuild cleanly: 3 random intervals
            std::vector<ZWindowRep<PrimeField>> parts;
            for (int b = 0; b < 3; ++b) {
                long x = d(rng), y = d(rng);
                if (x > y) std::swap(x, y);
                parts.push_back(window_interval_model(f5, 1, 8, x, y));
                sups.push_back({x, y});
            }
            w = parts[0];
            for (int b = 1; b < 3; ++b) w = window_direct_sum(w, parts[b]);
            // conjugate by random base changes
            std::vector<Matrix<PrimeField>> base;
            for (auto dd : w.dims) base.push_back(random_invertible(f5, dd, rng));
            w = window_conjugate(w, base);
            GrkTable<PrimeField> table(w);
            for (long p = 1; p <= 8; ++p)
                for (long q = p; q <= 8; ++q) {
                    std::size_t expect = 0;
                    for (auto& s : sups)
                        if (s.first <= p && q <= s.second) ++expect;
                    CHECK(table.at(p, q) == expect);
                    CHECK(generalized_rank(w, p, q) == expect);
                }
        }
    }
}

TEST_CASE("window decomposition fixtures") {
    SECTION("single interval window") {
        RationalField q;
        auto w = window_interval_model(q, 1, 9, 4, 6);
        auto bars = decompose_window(w);
        REQUIRE(bars.size() == 1);
        CHECK(bars[0] == WindowBar{4, 6, 1});
    }
    SECTION("height fixture splits into closed bar plus middle open bar") {
        PrimeField f5(5);
        auto bars = sorted(decompose_window(height_fixture(f5)));
        REQUIRE(bars.size() == 2);
        CHECK(bars[0] == WindowBar{2, 4, 1});
        CHECK(bars[1] == WindowBar{3, 3, 1});
    }
}

TEST_CASE("window decomposition round-trips random conjugated sums") {
    std::mt19937_64 rng(23);
    PrimeField f5(5);
    RationalField qq;
    auto run = [&](auto k) {
        using FF = decltype(k);
        std::uniform_int_distribution<long> d(1, 10);
        std::uniform_int_distribution<int> nb(1, 4);
        std::vector<WindowBar> truth;
        std::vector<ZWindowRep<FF>> parts;
        int n = nb(rng);
        for (int b = 0; b < n; ++b) {
            long x = d(rng), y = d(rng);
            if (x > y) std::swap(x, y);
            parts.push_back(window_interval_model(k, 1, 10, x, y));
            truth.push_back(WindowBar{x, y, 1});
        }
        ZWindowRep<FF> w = parts[0];
        for (int b = 1; b < n; ++b) w = window_direct_sum(w, parts[b]);
        std::vector<Matrix<FF>> base;
        for (auto dd : w.dims) base.push_back(random_invertible(k, dd, rng));
        w = window_conjugate(w, base);
        // canonical multiset of truth
        std::sort(truth.begin(), truth.end(), [](auto& a, auto& b) {
            return std::tuple(a.p, a.q) < std::tuple(b.p, b.q);
        });
        std::vector<WindowBar> merged;
        for (auto& t : truth) {
            if (!merged.empty() && merged.back().p == t.p && merged.back().q == t.q)
                ++merged.back().multiplicity;
            else
                merged.push_back(t);
        }
        CHECK(sorted(decompose_window(w)) == merged);
    };
    for (int it = 0; it < 25; ++it) run(f5);
    for (int it = 0; it < 6; ++it) run(qq);
}

TEST_CASE("window decomposition agrees with the brute-force peel oracle") {
    std::mt19937_64 rng(29);
    PrimeField f3(3);
    for (int it = 0; it < 15; ++it) {
        std::uniform_int_distribution<long> d(1, 8);
        std::uniform_int_distribution<int> nb(1, 3);
        int n = nb(rng);
        std::vector<ZWindowRep<PrimeField>> parts;
        for (int b = 0; b < n; ++b) {
            long x = d(rng), y = d(rng);
            if (x > y) std::swap(x, y);
            parts.push_back(window_interval_model(f3, 1, 8, x, y));
        }
        ZWindowRep<PrimeField> w = parts[0];
        for (int b = 1; b < n; ++b) w = window_direct_sum(w, parts[b]);
        std::vector<Matrix<PrimeField>> base;
        for (auto dd : w.dims) base.push_back(random_invertible(f3, dd, rng));
        w = window_conjugate(w, base);
        CHECK(sorted(decompose_window(w)) == sorted(testing::peel_decompose(w)));
    }
}

TEST_CASE("circle relation of a regular representation is the monodromy graph") {
    std::mt19937_64 rng(37);
    PrimeField f5(5);
    for (int it = 0; it < 5; ++it) {
        // random regular rep: all maps invertible 2x2
        GRep<PrimeField> g;
        g.field = f5;
        g.m = 3;
        g.degree = 0;
        g.angles = default_angles(3);
        g.dims.assign(6, 2);
        for (int i = 0; i < 3; ++i) {
            g.alpha.push_back(random_invertible(f5, 2, rng));
            g.beta.push_back(random_invertible(f5, 2, rng));
        }
        validate(g);
        // T = beta_m^{-1} alpha_m ... beta_1^{-1} alpha_1
        Matrix<PrimeField> t = Matrix<PrimeField>::identity(f5, 2);
        for (int i = 0; i < 3; ++i) t = mat_mul(mat_mul(inverse(g.beta[i]), g.alpha[i]), t);
        auto rel = circle_relation(g, 1);
        CHECK(rel_equal(rel, rel_graph(t)));
        // start vertex only changes the conjugacy representative
        for (std::size_t s = 2; s <= 3; ++s) {
            auto rp = rel_regular_part(circle_relation(g, s));
            CHECK(blocks_equal(f5, canonical_form(rp.automorphism), canonical_form(t)));
        }
    }
}

TEST_CASE("bar representations have trivial regular part") {
    PrimeField f5(5);
    auto rho = bar_model(f5, 3, 0, IntervalSpec{2, 1, 1, false, true});
    auto rp = rel_regular_part(circle_relation(rho, 1));
    CHECK(rp.dim_reg == 0);
}

TEST_CASE("decompose_g2m on basic models") {
    PrimeField f5(5);
    SECTION("rank-one regular rep has one Jordan block and no bars") {
        auto rho = jordan_model(f5, 1, 0, Matrix<PrimeField>::identity(f5, 1));
        auto dec = decompose_g2m(rho);
        CHECK(dec.bars.empty());
        REQUIRE(dec.jordans.size() == 1);
        CHECK(dec.jordans[0].power == 1);
        CHECK(poly_eq(f5, dec.jordans[0].poly, poly_x_minus(f5, f5.one())));
    }
    SECTION("a single bar model returns exactly its interval") {
        IntervalSpec spec{2, 1, 1, true, false};
        auto rho = bar_model(f5, 3, 1, spec);
        auto dec = decompose_g2m(rho);
        CHECK(dec.jordans.empty());
        REQUIRE(dec.bars.size() == 1);
        CHECK(dec.bars[0].left_index == 2);
        CHECK(dec.bars[0].right_index == 1);
        CHECK(dec.bars[0].wraps == 1);
        CHECK(dec.bars[0].left_closed);
        CHECK_FALSE(dec.bars[0].right_closed);
        CHECK(dec.bars[0].degree == 1);
    }
    SECTION("unipotent mapping-torus representation") {
        RationalField q;
        auto t = mat_from(q, 2, 2, {1, 1, 0, 1});
        auto rho = jordan_model(q, 3, 1, t);
        auto dec = decompose_g2m(rho);
        CHECK(dec.bars.empty());
        REQUIRE(dec.jordans.size() == 1);
        CHECK(dec.jordans[0].power == 2);
        CHECK(poly_eq(q, dec.jordans[0].poly, poly_x_minus(q, q.one())));
    }
}

TEST_CASE("decompose_g2m round-trips random sums (the central invariant)") {
    std::mt19937_64 rng(41);
    PrimeField f5(5);
    RationalField q;
    for (int it = 0; it < 20; ++it) {
        auto rr = random_grep(f5, 1 + it % 4, 0, 1 + it % 3, it % 2, rng);
        auto dec = decompose_g2m(rr.rep);
        CHECK(bars_equal(dec.bars, rr.bars));
        CHECK(jordans_equal(f5, dec.jordans, rr.jordans));
    }
    for (int it = 0; it < 5; ++it) {
        auto rr = random_grep(q, 2, 1, 2, 1, rng);
        auto dec = decompose_g2m(rr.rep);
        CHECK(bars_equal(dec.bars, rr.bars));
        CHECK(jordans_equal(q, dec.jordans, rr.jordans));
    }
}

TEST_CASE("bars are invariant under twisting") {
    std::mt19937_64 rng(47);
    PrimeField f5(5);
    for (int it = 0; it < 8; ++it) {
        auto rr = random_grep(f5, 3, 0, 2, 1, rng);
        auto dec = decompose_g2m(twist(rr.rep, f5.from_int(2)));
        CHECK(bars_equal(dec.bars, rr.bars));
    }
}

TEST_CASE("O45 identities: M(rho) kernel and cokernel count bars and unit Jordan blocks") {
    std::mt19937_64 rng(53);
    PrimeField f5(5);
    for (int it = 0; it < 12; ++it) {
        auto rr = random_grep(f5, 2 + it % 3, 0, 2, 2, rng);
        auto mm = m_matrix(rr.rep);
        std::size_t closed = 0, open = 0, unit = 0;
        for (auto& b : rr.bars) {
            if (b.left_closed && b.right_closed) closed += b.multiplicity;
            if (!b.left_closed && !b.right_closed) open += b.multiplicity;
        }
        for (auto& j : rr.jordans)
            if (poly_eq(f5, j.poly, poly_x_minus(f5, f5.one()))) unit += j.multiplicity;
        CHECK(d_coker(mm) == closed + unit);
        CHECK(d_ker(mm) == open + unit);
    }
}

TEST_CASE("bars of the covering are the translates of the circle bars") {
    PrimeField f5(5);
    std::mt19937_64 rng(59);
    auto rr = random_grep(f5, 2, 0, 2, 1, rng);
    // compare anchored multisets extracted from two window sizes
    auto count_anchored = [&](std::size_t periods, long central) {
        auto w = unroll(rr.rep, periods);
        std::vector<BarCode> bars;
        for (auto& wb : decompose_window(w)) {
            long jl = vertex_is_odd(wb.p) ? (wb.p - 1) / 2 : wb.p / 2;
            if (jl < 1 || (jl - 1) / 2 != central) continue;
            bars.push_back(window_bar_to_circle_bar(rr.rep, wb));
        }
        canonicalize_bars(bars);
        return bars;
    };
    std::size_t n = rr.rep.total_dim();
    auto a = count_anchored(2 * (n + 2), static_cast<long>(n) + 2);
    auto b = count_anchored(2 * (n + 2) + 2, static_cast<long>(n) + 2);
    CHECK(bars_equal(a, b));
    CHECK(bars_equal(a, rr.bars));
}
