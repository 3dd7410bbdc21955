#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spiralis/field.hpp"
#include "spiralis/matrix.hpp"
#include "spiralis/poly.hpp"

using namespace spiralis;

namespace {

template <class F>
Matrix<F> mat_from(const F& k, std::size_t rows, std::size_t cols, std::vector<long long> vals) {
    Matrix<F> m(k, rows, cols);
    for (std::size_t i = 0; i < vals.size(); ++i) m.a[i] = k.from_int(vals[i]);
    return m;
}

template <class F>
Matrix<F> random_matrix(const F& k, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    Matrix<F> m(k, rows, cols);
    std::uniform_int_distribution<long long> d(-4, 4);
    for (auto& v : m.a) v = k.from_int(d(rng));
    return m;
}

template <class F>
Matrix<F> random_invertible(const F& k, std::size_t n, std::mt19937_64& rng) {
    while (true) {
        Matrix<F> m = random_matrix(k, n, n, rng);
        if (is_invertible(m)) return m;
    }
}

}  // namespace

TEST_CASE("prime field arithmetic is closed and exact") {
    PrimeField f5(5);
    CHECK(f5.add(3, 4) == 2);
    CHECK(f5.mul(3, 4) == 2);
    CHECK(f5.inv(2) == 3);
    CHECK(f5.from_int(-7) == 3);
    CHECK(f5.from_string("3/2") == f5.mul(3, f5.inv(2)));
    // re-reducing any entry is the identity
    for (std::uint64_t v = 0; v < 5; ++v) CHECK(f5.from_int(static_cast<long long>(v)) == v);
    CHECK_THROWS_AS(PrimeField(6), invalid_input);
}

TEST_CASE("rational field keeps lowest terms") {
    RationalField q;
    auto v = q.div(q.from_int(2), q.from_int(6));
    CHECK(q.to_string(v) == "1/3");
    CHECK(q.from_string("-4/6") == q.from_string("-2/3"));
}

TEST_CASE("rank of identity, zero and hand-reduced matrices") {
    PrimeField f5(5), f2(2);
    CHECK(rank(Matrix<PrimeField>::identity(f5, 3)) == 3);
    CHECK(rank(Matrix<PrimeField>(f2, 2, 4)) == 0);
    CHECK(rank(mat_from(f2, 2, 2, {1, 1, 1, 1})) == 1);
}

TEST_CASE("kernel dimensions and the hand-solved one-equation kernel") {
    PrimeField f5(5);
    CHECK(kernel_basis_matrix(Matrix<PrimeField>::identity(f5, 4)).cols == 0);
    CHECK(kernel_basis_matrix(Matrix<PrimeField>(f5, 3, 3)).cols == 3);
    auto m = mat_from(f5, 1, 2, {1, 2});
    auto ker = kernel_basis_matrix(m);
    REQUIRE(ker.cols == 1);
    // span{(3,1)}: (3,1) must solve and be a scalar multiple of the basis vector
    auto probe = mat_from(f5, 2, 1, {3, 1});
    CHECK(subspace_contains(subspace_from_columns(ker), probe));
}

TEST_CASE("rank equals rank of transpose and rank-nullity, randomized") {
    std::mt19937_64 rng(7);
    PrimeField f5(5);
    RationalField q;
    for (int it = 0; it < 40; ++it) {
        auto m = random_matrix(f5, 3 + it % 3, 2 + it % 4, rng);
        CHECK(rank(m) == rank(m.transpose()));
        CHECK(kernel_basis_matrix(m).cols + rank(m) == m.cols);
        auto mq = random_matrix(q, 3, 4, rng);
        CHECK(rank(mq) == rank(mq.transpose()));
        CHECK(kernel_basis_matrix(mq).cols + rank(mq) == mq.cols);
    }
}

TEST_CASE("subspace sum and intersection") {
    PrimeField f5(5);
    RationalField q;

    SECTION("A = B gives sum = A and intersection = A") {
        std::mt19937_64 rng(3);
        auto a = subspace_from_columns(random_matrix(f5, 4, 2, rng));
        CHECK(subspace_equal(subspace_sum(a, a), a));
        CHECK(subspace_equal(subspace_intersection(a, a), a));
    }
    SECTION("two distinct lines in F_5^2") {
        auto l1 = subspace_from_columns(mat_from(f5, 2, 1, {1, 0}));
        auto l2 = subspace_from_columns(mat_from(f5, 2, 1, {1, 1}));
        CHECK(subspace_sum(l1, l2).dim() == 2);
        CHECK(subspace_intersection(l1, l2).dim() == 0);
    }
    SECTION("span{e1,e2} meets span{e2,e3} in span{e2}") {
        auto a = subspace_from_columns(mat_from(q, 3, 2, {1, 0, 0, 1, 0, 0}));
        auto b = subspace_from_columns(mat_from(q, 3, 2, {0, 0, 1, 0, 0, 1}));
        auto meet = subspace_intersection(a, b);
        REQUIRE(meet.dim() == 1);
        CHECK(subspace_contains(meet, mat_from(q, 3, 1, {0, 1, 0})));
    }
    SECTION("dimension formula on random pairs") {
        std::mt19937_64 rng(11);
        for (int it = 0; it < 60; ++it) {
            auto a = subspace_from_columns(random_matrix(f5, 5, 1 + it % 4, rng));
            auto b = subspace_from_columns(random_matrix(f5, 5, 1 + (it / 4) % 4, rng));
            CHECK(subspace_sum(a, b).dim() + subspace_intersection(a, b).dim() == a.dim() + b.dim());
        }
    }
    SECTION("ambient mismatch is rejected") {
        auto a = subspace_zero(f5, 2);
        auto b = subspace_zero(f5, 3);
        CHECK_THROWS_AS(subspace_sum(a, b), invalid_input);
    }
    SECTION("mixed-field operands are rejected") {
        PrimeField f7(7);
        auto a = Matrix<PrimeField>::identity(f5, 2);
        auto b = Matrix<PrimeField>::identity(f7, 2);
        CHECK_THROWS_AS(mat_mul(a, b), invalid_input);
    }
}

TEST_CASE("solve and inverse") {
    RationalField q;
    auto a = mat_from(q, 2, 2, {1, 2, 3, 5});
    auto inv = inverse(a);
    CHECK(mat_mul(a, inv) == Matrix<RationalField>::identity(q, 2));
    auto bad = mat_from(q, 2, 2, {1, 2, 2, 4});
    auto rhs = mat_from(q, 2, 1, {1, 0});
    CHECK_FALSE(solve(bad, rhs).has_value());
}

TEST_CASE("polynomial factorization over F_p") {
    PrimeField f5(5);
    // (x-1)^2 (x^2+2) over F_5 ; x^2+2 irreducible mod 5 (squares are 0,1,4)
    Poly<PrimeField> xm1 = poly_x_minus(f5, f5.one());
    Poly<PrimeField> quad{f5.from_int(2), f5.zero(), f5.one()};
    auto f = poly_mul(f5, poly_mul(f5, xm1, xm1), quad);
    auto fac = poly_factor(f5, f);
    REQUIRE(fac.size() == 2);
    bool saw_lin = false, saw_quad = false;
    for (auto& [p, m] : fac) {
        if (poly_eq(f5, p, xm1)) {
            saw_lin = true;
            CHECK(m == 2);
        }
        if (poly_eq(f5, p, quad)) {
            saw_quad = true;
            CHECK(m == 1);
        }
    }
    CHECK(saw_lin);
    CHECK(saw_quad);
}

TEST_CASE("polynomial factorization over F_2 with repeated factors") {
    PrimeField f2(2);
    // (x^2+x+1)^2 * (x+1)
    Poly<PrimeField> irr{f2.one(), f2.one(), f2.one()};
    Poly<PrimeField> lin{f2.one(), f2.one()};
    auto f = poly_mul(f2, poly_mul(f2, irr, irr), lin);
    auto fac = poly_factor(f2, f);
    REQUIRE(fac.size() == 2);
    for (auto& [p, m] : fac) {
        if (poly_eq(f2, p, irr)) CHECK(m == 2);
        if (poly_eq(f2, p, lin)) CHECK(m == 1);
    }
}

TEST_CASE("polynomial factorization over Q") {
    RationalField q;
    auto lift = [&](std::vector<long long> coeffs) {
        Poly<RationalField> p(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i) p[i] = q.from_int(coeffs[i]);
        poly_trim(q, p);
        return p;
    };

    SECTION("rational roots and quadratics") {
        // (x - 1/2)(x + 3)(x^2 + 1), scaled by 2
        auto f = poly_mul(q, poly_mul(q, lift({-1, 2}), lift({3, 1})), lift({1, 0, 1}));
        auto fac = poly_factor(q, f);
        REQUIRE(fac.size() == 3);
        for (auto& [p, m] : fac) CHECK(m == 1);
    }
    SECTION("product of two irreducible quadratics needs recombination") {
        // (x^2 - 2)(x^2 - 3)
        auto f = poly_mul(q, lift({-2, 0, 1}), lift({-3, 0, 1}));
        auto fac = poly_factor(q, f);
        REQUIRE(fac.size() == 2);
        CHECK(poly_eq(q, fac[0].first, lift({-3, 0, 1})));
        CHECK(poly_eq(q, fac[1].first, lift({-2, 0, 1})));
    }
    SECTION("x^4 + 1 stays irreducible despite splitting mod every prime") {
        auto fac = poly_factor(q, lift({1, 0, 0, 0, 1}));
        REQUIRE(fac.size() == 1);
        CHECK(poly_deg<RationalField>(fac[0].first) == 4);
    }
    SECTION("repeated factors via Yun") {
        // (x-2)^3 (x^2+x+1)
        auto f = poly_mul(q, poly_mul(q, poly_mul(q, lift({-2, 1}), lift({-2, 1})), lift({-2, 1})),
                          lift({1, 1, 1}));
        auto fac = poly_factor(q, f);
        REQUIRE(fac.size() == 2);
        for (auto& [p, m] : fac) {
            if (poly_deg<RationalField>(p) == 1) CHECK(m == 3);
            if (poly_deg<RationalField>(p) == 2) CHECK(m == 1);
        }
    }
    SECTION("degree-5 with cubic factor") {
        // (x^3 - 2)(x^2 + x + 1)
        auto f = poly_mul(q, lift({-2, 0, 0, 1}), lift({1, 1, 1}));
        auto fac = poly_factor(q, f);
        REQUIRE(fac.size() == 2);
    }
}

TEST_CASE("factors multiply back to the input, randomized") {
    std::mt19937_64 rng(23);
    PrimeField f3(3);
    std::uniform_int_distribution<int> d(0, 2);
    for (int it = 0; it < 30; ++it) {
        Poly<PrimeField> f(1 + it % 7 + 1, f3.zero());
        for (auto& c : f) c = static_cast<std::uint64_t>(d(rng));
        f.back() = f3.one();
        if (poly_deg<PrimeField>(f) < 1) continue;
        auto fac = poly_factor(f3, f);
        Poly<PrimeField> prod = poly_const(f3, f3.one());
        for (auto& [p, m] : fac)
            for (int i = 0; i < m; ++i) prod = poly_mul(f3, prod, p);
        CHECK(poly_eq(f3, prod, poly_monic(f3, f)));
    }
}
