#include <doctest.h>

#include "ehrhart/errors.hpp"
#include "ehrhart/polynomial.hpp"

#include <random>

using namespace ehrhart;

namespace {

Rational q(long num, long den = 1) { return make_rational(num, den); }

// i(Q_m, n) written out independently of the library's constructors.
Polynomial reeve_poly(long m) { return Polynomial({q(1), q(12 - m, 6), q(1), q(m, 6)}); }

// Distinct positive roots of m n^2 + (6-m) n + 6 from the discriminant.
// Both roots share the sign of (m-6)/m when real, and the factor (n+1)
// contributes no positive root.
int quadratic_positive_roots(long m) {
    long disc = (6 - m) * (6 - m) - 24 * m;
    if (disc < 0) return 0;
    if (m - 6 <= 0) return 0;
    return disc == 0 ? 1 : 2;
}

Polynomial random_poly(std::mt19937& rng, int max_deg) {
    std::uniform_int_distribution<int> deg(-1, max_deg), num(-20, 20), den(1, 7);
    std::vector<Rational> c(static_cast<std::size_t>(deg(rng) + 1));
    for (auto& x : c) x = q(num(rng), den(rng));
    return Polynomial(std::move(c));
}

}  // namespace

TEST_CASE("rational invariants") {
    Rational r = make_rational(6, -4);
    CHECK(r.get_num() == -3);
    CHECK(r.get_den() == 2);
    CHECK_THROWS_AS(make_rational(1, 0), InputError);
}

TEST_CASE("polynomial canonical form") {
    Polynomial z({q(0), q(0)});
    CHECK(z.is_zero());
    CHECK(z.degree() == -1);
    CHECK(z == Polynomial{});
    CHECK(z.to_string() == "0");
    CHECK(Polynomial({q(1), q(2), q(0)}).degree() == 1);
}

TEST_CASE("poly_eval") {
    CHECK(poly_eval(Polynomial::linear(1, 1), 3) == 4);
    CHECK(poly_eval(Polynomial({q(1), q(-1, 6), q(1), q(13, 6)}), 1) == 4);
    CHECK(poly_eval(Polynomial{}, q(17, 3)) == 0);
}

TEST_CASE("poly_mul") {
    const Polynomial n1 = Polynomial::linear(1, 1);
    CHECK(poly_mul(n1, n1) == Polynomial({q(1), q(2), q(1)}));
    CHECK(poly_mul(n1, reeve_poly(19)) == Polynomial({q(1), q(-1, 6), q(-1, 6), q(25, 6), q(19, 6)}));
    CHECK(poly_mul(n1, Polynomial{}).is_zero());
}

TEST_CASE("poly_mul is compatible with evaluation") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        Polynomial p = random_poly(rng, 6), r = random_poly(rng, 6);
        Rational x = q(num(rng), den(rng));
        CHECK(poly_eval(poly_mul(p, r), x) == poly_eval(p, x) * poly_eval(r, x));
    }
}

TEST_CASE("poly_pow_linear") {
    CHECK(poly_pow_linear(2, 1, 2) == Polynomial({q(1), q(4), q(4)}));
    CHECK(poly_pow_linear(1, 1, 0) == Polynomial({q(1)}));
    CHECK(poly_pow_linear(3, 1, 1) == Polynomial({q(1), q(3)}));
    // repeated multiplication agrees with the binomial expansion
    for (long a = -3; a <= 3; ++a)
        for (long b = -2; b <= 2; ++b) {
            Polynomial acc = Polynomial::constant(1);
            for (unsigned e = 0; e <= 6; ++e) {
                CHECK(poly_pow_linear(a, b, e) == acc);
                acc = acc * Polynomial::linear(a, b);
            }
        }
}

TEST_CASE("binomial") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(1, 2) == 0);
    CHECK(binomial(2, 0) == 1);
    CHECK(binomial(3, -1) == 0);
    CHECK_THROWS_AS(binomial(-1, 0), InputError);

    // Pascal table built here, independent of GMP.
    std::vector<std::vector<BigInt>> pascal{{1}};
    for (long n = 1; n <= 40; ++n) {
        std::vector<BigInt> row(static_cast<std::size_t>(n + 1));
        for (long k = 0; k <= n; ++k) {
            BigInt left = k > 0 ? pascal[n - 1][k - 1] : BigInt(0);
            BigInt right = k < n ? pascal[n - 1][k] : BigInt(0);
            row[k] = left + right;
        }
        pascal.push_back(row);
    }
    for (long n = 0; n <= 40; ++n)
        for (long k = -2; k <= n + 2; ++k) {
            BigInt expected = (k < 0 || k > n) ? BigInt(0) : pascal[n][k];
            CHECK(binomial(n, k) == expected);
            if (n >= 1) CHECK(binomial(n, k) == binomial(n - 1, k) + binomial(n - 1, k - 1));
        }
}

TEST_CASE("interpolate") {
    std::vector<Sample> line{{0, 1}, {1, 2}};
    CHECK(interpolate(line) == Polynomial::linear(1, 1));

    std::vector<Sample> counts13{{0, 1}, {1, 4}, {2, 22}, {3, 68}};
    CHECK(interpolate(counts13) == Polynomial({q(1), q(-1, 6), q(1), q(13, 6)}));
    CHECK(interpolate(counts13).to_string() == "13/6*n^3 + n^2 - 1/6*n + 1");

    std::vector<Sample> square{{0, 1}, {1, 4}, {2, 9}};
    CHECK(interpolate(square) == Polynomial({q(1), q(2), q(1)}));

    std::vector<Sample> dup{{0, 1}, {2, 5}, {2, 5}};
    CHECK_THROWS_AS(interpolate(dup), InputError);
    CHECK_THROWS_AS(interpolate(std::span<const Sample>{}), InputError);
}

TEST_CASE("interpolate is a left inverse of sampling") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coef(-50, 50), offset(-5, 5);
    for (int trial = 0; trial < 100; ++trial) {
        // integer-valued at integers so the samples fit the Sample type
        const int deg = trial % 8;
        std::vector<Rational> c(static_cast<std::size_t>(deg + 1));
        for (auto& x : c) x = coef(rng);
        Polynomial p(c);
        std::vector<Sample> samples;
        const int start = offset(rng);
        for (int i = 0; i <= deg; ++i) {
            // non-consecutive abscissae
            BigInt x = start + 3 * i;
            samples.push_back({x, p(Rational(x)).get_num()});
        }
        CHECK(interpolate(samples) == p);
    }
}

TEST_CASE("string form") {
    CHECK(Polynomial({q(1), q(2), q(1)}).to_string() == "n^2 + 2*n + 1");
    CHECK(Polynomial({q(0), q(-1)}).to_string() == "-n");
    CHECK(Polynomial({q(-7, 3)}).to_string() == "-7/3");
    CHECK(Polynomial({q(1), q(0), q(0), q(-1)}).to_string() == "-n^3 + 1");
}

TEST_CASE("json round trip") {
    Polynomial p({q(1), q(-1, 6), q(1), q(13, 6)});
    auto j = to_json(p);
    CHECK(j.dump() == "[[1,1],[-1,6],[1,1],[13,6]]");
    CHECK(polynomial_from_json(nlohmann::json::parse(j.dump())) == p);

    BigInt huge("123456789012345678901234567890");
    Polynomial big({Rational(huge), make_rational(1, huge)});
    CHECK(polynomial_from_json(nlohmann::json::parse(to_json(big).dump())) == big);
    CHECK_THROWS_AS(polynomial_from_json(nlohmann::json::parse("[[1,0]]")), InputError);
}

TEST_CASE("count_positive_real_roots") {
    CHECK(count_positive_real_roots(Polynomial::linear(1, 1)) == 0);
    CHECK(count_positive_real_roots(reeve_poly(35)) == 2);
    CHECK(count_positive_real_roots(reeve_poly(13)) == 0);
    CHECK_THROWS_AS(count_positive_real_roots(Polynomial{}), InputError);

    // root at zero is not positive; double root counts once
    CHECK(count_positive_real_roots(Polynomial({q(0), q(-1), q(1)})) == 1);
    CHECK(count_positive_real_roots(Polynomial({q(4), q(-4), q(1)})) == 1);
    CHECK(count_positive_real_roots(Polynomial::constant(5)) == 0);
    // (n-1)(n-2)(n-3)(n+4)
    Polynomial four = Polynomial::linear(1, -1) * Polynomial::linear(1, -2) * Polynomial::linear(1, -3) *
                      Polynomial::linear(1, 4);
    CHECK(count_positive_real_roots(four) == 3);
}

TEST_CASE("root counts on the Reeve family match the discriminant") {
    for (long m = 1; m <= 80; ++m) {
        CAPTURE(m);
        CHECK(count_positive_real_roots(reeve_poly(m)) == static_cast<std::size_t>(quadratic_positive_roots(m)));
    }
}

TEST_CASE("root count is invariant under positive scaling") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> num(1, 30), den(1, 9);
    for (int trial = 0; trial < 100; ++trial) {
        Polynomial p = random_poly(rng, 6);
        if (p.is_zero()) continue;
        Rational c = q(num(rng), den(rng));
        CHECK(count_positive_real_roots(c * p) == count_positive_real_roots(p));
    }
}

TEST_CASE("isolating intervals") {
    auto ivs = isolate_positive_real_roots(reeve_poly(35));
    REQUIRE(ivs.size() == 2);
    for (const auto& iv : ivs) CHECK(iv.lo < iv.hi);
    CHECK(ivs[0].lo < q(2, 5));
    CHECK(q(2, 5) <= ivs[0].hi);
    CHECK(ivs[1].lo < q(3, 7));
    CHECK(q(3, 7) <= ivs[1].hi);
    CHECK(ivs[0].hi <= ivs[1].lo);

    // roots exactly at candidate split points
    Polynomial p = Polynomial::linear(1, -1) * Polynomial::linear(2, -1) * Polynomial::linear(1, -4);
    auto r = isolate_positive_real_roots(p);
    REQUIRE(r.size() == 3);
    const Rational roots[] = {q(1, 2), q(1), q(4)};
    for (int i = 0; i < 3; ++i) {
        CHECK(r[i].lo < roots[i]);
        CHECK(roots[i] <= r[i].hi);
    }
}

TEST_CASE("divmod") {
    Polynomial p({q(-1), q(0), q(0), q(1)});
    auto [quot, rem] = divmod(p, Polynomial::linear(1, -1));
    CHECK(quot == Polynomial({q(1), q(1), q(1)}));
    CHECK(rem.is_zero());
    CHECK_THROWS_AS(divmod(p, Polynomial{}), InputError);
}

TEST_CASE("refine_root narrows without losing the root") {
    // roots 1/3, 2/5 and 2, built from linear factors
    const Polynomial p = Polynomial({q(-1), q(3)}) * Polynomial({q(-2), q(5)}) * Polynomial({q(-2), q(1)});
    const auto ivs = isolate_positive_real_roots(p);
    REQUIRE(ivs.size() == 3);
    const Rational roots[] = {q(1, 3), q(2, 5), q(2)};
    const Rational width = make_rational(1, BigInt("1000000000000000000000000000000"));
    for (std::size_t i = 0; i < 3; ++i) {
        const RootInterval fine = refine_root(p, ivs[i], width);
        CHECK(fine.hi - fine.lo <= width);
        CHECK(fine.lo < roots[i]);
        CHECK(roots[i] <= fine.hi);
    }
    CHECK_THROWS_AS(refine_root(p, {q(0), q(3)}, width), InputError);
    CHECK_THROWS_AS(refine_root(p, ivs[0], q(0)), InputError);
}
