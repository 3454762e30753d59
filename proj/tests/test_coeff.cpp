#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fdolb/fdolb.hpp>

using namespace fdolb;

TEST_CASE("scalar arithmetic is exact field arithmetic in Q(i)") {
    Scalar one_plus_i(Rational(1), Rational(1));
    Scalar one_minus_i(Rational(1), Rational(-1));
    CHECK(one_plus_i * one_minus_i == Scalar(2));
    Scalar x = scalar_from_parts(3, 7, -2, 5);
    CHECK(x + Scalar() == x);
    CHECK(Scalar(2).inv() == Scalar(Rational(1, 2)));
    CHECK(x * x.inv() == Scalar(1));
    CHECK_THROWS_AS(Scalar().inv(), DivisionByZero);
}

TEST_CASE("formal_mul is the quotient ring product") {
    auto z1 = TruncatedFormalCoeff::variable(1, 1, 0);
    CHECK(formal_mul(z1, z1).is_zero());

    // (1 + z1)(1 - z1) = 1 - z1^2 at r = 2
    auto one = TruncatedFormalCoeff::one(1, 2);
    auto z = TruncatedFormalCoeff::variable(1, 2, 0);
    auto prod = formal_mul(one + z, one - z);
    auto expect = one;
    expect.add(MultiIndex{2}, Scalar(-1));
    CHECK(prod == expect);

    auto p = TruncatedFormalCoeff::variable(2, 3, 1);
    CHECK(formal_mul(p, TruncatedFormalCoeff::one(2, 3)) == p);
}

TEST_CASE("formal_mul ring laws hold exactly") {
    Rng rng(11);
    ModelConfig cfg{0, 2, 3, 0};
    auto rand_fc = [&] {
        TruncatedFormalCoeff p(2, 3);
        for (int t = 0; t < 3; ++t) {
            MultiIndex a{std::uint32_t(rand_int(rng, 0, 3)), std::uint32_t(rand_int(rng, 0, 3))};
            p.add(a, random_scalar(rng));
        }
        return p;
    };
    for (int trial = 0; trial < 200; ++trial) {
        auto p = rand_fc(), q = rand_fc(), s = rand_fc();
        CHECK(formal_mul(p, q) == formal_mul(q, p));
        CHECK(formal_mul(formal_mul(p, q), s) == formal_mul(p, formal_mul(q, s)));
        CHECK(formal_mul(p, q + s) == formal_mul(p, q) + formal_mul(p, s));
    }
}

TEST_CASE("base_mul drops monomials above the degree cap") {
    auto w = BasePoly::w(0, 2);
    auto wb = BasePoly::wbar(0, 2);
    auto prod = base_mul(w, wb);
    BasePoly expect(0, 2);
    expect.add(BaseMono{1, 1, MultiIndex(std::size_t(0))}, Scalar(1));
    CHECK(prod == expect);

    CHECK(base_mul(BasePoly::w(0, 2, 2), wb).is_zero());
    CHECK(base_mul(w, BasePoly(0, 2)).is_zero());
}

TEST_CASE("base_mul commutative; associative on budget-respecting triples") {
    Rng rng(12);
    int d_cap = 6;
    auto rand_bp = [&](int budget) {
        BasePoly p(1, d_cap);
        for (int t = 0; t < 2; ++t) {
            std::uint32_t a = std::uint32_t(rand_int(rng, 0, budget));
            std::uint32_t rest = std::uint32_t(budget) - a;
            std::uint32_t b = std::uint32_t(rand_int(rng, 0, int(rest)));
            MultiIndex zb{rest - b > 0 ? std::uint32_t(rand_int(rng, 0, int(rest - b))) : 0};
            p.add(BaseMono{a, b, zb}, random_scalar(rng));
        }
        return p;
    };
    for (int trial = 0; trial < 200; ++trial) {
        auto p = rand_bp(2), q = rand_bp(2), s = rand_bp(2);
        CHECK(base_mul(p, q) == base_mul(q, p));
        CHECK(base_mul(base_mul(p, q), s) == base_mul(p, base_mul(q, s)));
    }
}

TEST_CASE("multi-index enumeration is graded and complete") {
    auto all = multi_indices_up_to(2, 2);
    CHECK(all.size() == 6);  // 1 + 2 + 3
    for (std::size_t i = 0; i + 1 < all.size(); ++i)
        CHECK(all[i].order() <= all[i + 1].order());
    CHECK(all[0].is_zero());
    MultiIndex a{2, 1}, b{1, 0};
    CHECK((a - b) == MultiIndex{1, 1});
    CHECK(a.dominates(b));
    CHECK(!b.dominates(a));
    CHECK(MultiIndex{3, 2}.factorial() == 12);
}

TEST_CASE("coeff multiplication respects both truncations") {
    ModelConfig cfg{1, 1, 1, 2};
    auto z = Coeff::z(cfg, 0);
    CHECK((z * z).is_zero());
    auto w = Coeff::w(cfg);
    auto wb = Coeff::wbar(cfg);
    CHECK((w * w * wb).is_zero());
    auto zw = z * w;
    FnMono m{BaseMono{1, 0, MultiIndex{0}}, MultiIndex{1}};
    CHECK(zw.coeff(m) == Scalar(1));
    CHECK(zw.derivative(Coeff::Var::W) == z);
    CHECK(zw.derivative(Coeff::Var::Z, 0) == w);
    CHECK(zw.derivative(Coeff::Var::Wbar).is_zero());
}
