#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fdolb/fdolb.hpp>

using namespace fdolb;

namespace {

const ModelConfig kAmb{1, 2, 3, 4};

/// Independent oracle: T_r(w) = sum_{|alpha| <= r} (1/alpha!) (d^alpha w)|_{z=zb=0} (x) z^alpha,
/// computed literally from repeated z-derivatives instead of monomial filtering.
TruncatedForm taylor_oracle(const TruncatedForm& a, int r) {
    ModelConfig cfg = a.config();
    ModelConfig out_cfg = cfg;
    out_cfg.r = r;
    TruncatedForm out(out_cfg, Space::Quotient);
    for (const auto& alpha : multi_indices_up_to(cfg.n, r)) {
        Scalar inv_fact = Scalar(Rational(1, long(alpha.factorial())));
        for (const auto& [mask, c] : a.components()) {
            if (mask & (dwb_bit(cfg) - 1)) continue;
            Coeff d = c;
            for (std::size_t j = 0; j < std::size_t(cfg.n); ++j)
                for (std::uint32_t k = 0; k < alpha[j]; ++k) d = d.derivative(Coeff::Var::Z, j);
            Coeff res(out_cfg);
            for (const auto& [mono, s] : d.terms().terms()) {
                if (mono.z.order() || mono.base.zb.order()) continue;
                FnMono m = mono;
                m.z = alpha;
                res.add(m, s * inv_fact);
            }
            out.add_component(mask, res);
        }
    }
    return out;
}

} // namespace

TEST_CASE("taylor map on basic inputs") {
    ModelConfig q1 = kAmb;
    q1.r = 1;

    auto z1 = TruncatedForm::function(Space::Ambient, Coeff::z(kAmb, 0));
    CHECK(taylor_map(z1, 1) == TruncatedForm::function(Space::Quotient, Coeff::z(q1, 0)));

    auto one = TruncatedForm::function(Space::Ambient, Coeff::one(kAmb));
    CHECK(taylor_map(one, 1) == TruncatedForm::function(Space::Quotient, Coeff::one(q1)));

    ModelConfig q2 = kAmb;
    q2.r = 2;
    auto wz2 = TruncatedForm::function(Space::Ambient, Coeff::w(kAmb) * Coeff::z(kAmb, 0, 2));
    CHECK(taylor_map(wz2, 2) ==
          TruncatedForm::function(Space::Quotient, Coeff::w(q2) * Coeff::z(q2, 0, 2)));

    // dzb components and zbar multiples die
    auto dzb1 = TruncatedForm::generator(kAmb, Space::Ambient, 0);
    CHECK(taylor_map(dzb1, 2).is_zero());
    auto zbw = TruncatedForm::function(Space::Ambient, Coeff::zbar(kAmb, 0) * Coeff::w(kAmb));
    CHECK(taylor_map(zbw, 2).is_zero());

    CHECK_THROWS_AS(taylor_map(TruncatedForm::function(Space::Quotient, Coeff::one(kAmb)), 1),
                    QuotientSpaceUnsupported);
}

TEST_CASE("taylor map matches the derivative-formula oracle") {
    Rng rng(31);
    for (int trial = 0; trial < 400; ++trial) {
        auto a = random_form(kAmb, Space::Ambient, rng, kAmb.d_cap);
        for (int r = 0; r <= kAmb.r; ++r) CHECK(taylor_map(a, r) == taylor_oracle(a, r));
    }
}

TEST_CASE("taylor map is a dga homomorphism") {
    Rng rng(32);
    for (int trial = 0; trial < 300; ++trial) {
        auto a = random_form(kAmb, Space::Ambient, rng, kAmb.d_cap / 2);
        auto b = random_form(kAmb, Space::Ambient, rng, kAmb.d_cap / 2);
        int r = rand_int(rng, 0, kAmb.r);
        CHECK(taylor_map(wedge(a, b), r) == wedge(taylor_map(a, r), taylor_map(b, r)));
        CHECK(taylor_map(dbar(a), r) == dbar(taylor_map(a, r)));
    }
}

TEST_CASE("ideal membership and dg-ideal closure") {
    CHECK(ideal_member(TruncatedForm::function(Space::Ambient, Coeff::z(kAmb, 0, 2)), 1));
    CHECK(!ideal_member(TruncatedForm::function(Space::Ambient, Coeff::z(kAmb, 0)), 1));
    CHECK(ideal_member(TruncatedForm::function(Space::Ambient, Coeff::z(kAmb, 0, 3)), 2));

    Rng rng(33);
    auto z2 = Coeff::z(kAmb, 0, 2);
    for (int trial = 0; trial < 200; ++trial) {
        // generators of a^k_1: zbar h, dzb ^ g, and z-order >= 2 multiples
        auto h = random_form(kAmb, Space::Ambient, rng, 2);
        TruncatedForm member(kAmb, Space::Ambient);
        switch (rand_int(rng, 0, 2)) {
            case 0:
                member = wedge(TruncatedForm::function(Space::Ambient, Coeff::zbar(kAmb, 1)), h);
                break;
            case 1:
                member = wedge(TruncatedForm::generator(kAmb, Space::Ambient, 0), h);
                break;
            default:
                member = wedge(TruncatedForm::function(Space::Ambient, z2), h);
                break;
        }
        CHECK(ideal_member(member, 1));
        CHECK(ideal_member(dbar(member), 1));  // dg-ideal: closed under dbar
        auto g = random_form(kAmb, Space::Ambient, rng, 1);
        CHECK(ideal_member(wedge(member, g), 1));  // and under multiplication
        CHECK(ideal_member(wedge(g, member), 1));
    }
}
