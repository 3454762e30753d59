#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include <fdolb/fdolb.hpp>

using namespace fdolb;

namespace {
const ModelConfig kAmb{1, 2, 2, 3};
const ModelConfig kExact{0, 2, 2, 0};
} // namespace

TEST_CASE("scalar json round trip is bit exact") {
    Rng rng(61);
    for (int trial = 0; trial < 300; ++trial) {
        Scalar s = random_scalar(rng);
        CHECK(scalar_from_json(to_json(s)) == s);
    }
    CHECK_THROWS_AS(scalar_from_json(Json::array({1, 0, 0, 1})), Error);
    CHECK_THROWS_AS(scalar_from_json(Json::array({1, 2, 3})), Error);
}

TEST_CASE("config round trip and validation") {
    CHECK(config_from_json(to_json(kAmb)) == kAmb);
    Json bad = to_json(kAmb);
    bad["m"] = 2;
    CHECK_THROWS_AS(config_from_json(bad), Error);
    bad["m"] = 1;
    bad["r"] = -1;
    CHECK_THROWS_AS(config_from_json(bad), Error);
}

TEST_CASE("coeff and form round trips") {
    Rng rng(62);
    for (int trial = 0; trial < 200; ++trial) {
        auto c = random_coeff(kAmb, rng, 4, kAmb.d_cap);
        CHECK(coeff_from_json(to_json(c), kAmb) == c);
        auto f = random_form(kAmb, Space::Ambient, rng, kAmb.d_cap);
        CHECK(form_from_json(to_json(f)) == f);
        auto q = random_form(kAmb, Space::Quotient, rng, kAmb.d_cap);
        CHECK(form_from_json(to_json(q)) == q);
    }
    CHECK_THROWS_AS(generator_from_name("dzb9", kAmb), Error);
    CHECK_THROWS_AS(generator_from_name("bogus", kAmb), Error);
    CHECK(generator_from_name("dwb", kAmb) == unsigned(kAmb.n));
    CHECK(generator_name(0, kAmb) == "dzb1");
}

TEST_CASE("module and hom round trips preserve everything") {
    Rng rng(63);
    for (int trial = 0; trial < 60; ++trial) {
        auto e = random_integrable_module(kExact, rng);
        auto back = module_from_json(to_json(e));
        CHECK(back.ranks == e.ranks);
        CHECK(back.conn == e.conn);
        // serialization is stable: same bytes both times
        CHECK(to_json(back).dump() == to_json(e).dump());

        auto f = random_integrable_module(kExact, rng);
        auto phi = random_hom(e, f, rng, rand_int(rng, -1, 1));
        auto phi2 = hom_from_json(to_json(phi), e, f);
        CHECK(phi2.degree == phi.degree);
        CHECK(phi2.comps == phi.comps);
        CHECK(to_json(phi2).dump() == to_json(phi).dump());
    }
}

TEST_CASE("multi index round trip") {
    MultiIndex a{3, 0, 2};
    CHECK(multi_index_from_json(to_json(a)) == a);
}

TEST_CASE("grid field binary files round trip bit exactly") {
    Rng rng(64);
    auto tmp = std::filesystem::temp_directory_path() / "fdolb_field_test.bin";
    GridField f(17, 2);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (auto& v : f.data) v = Cplx(u(rng), u(rng));
    write_field(tmp.string(), f, 1.25);
    double radius = 0;
    auto g = read_field(tmp.string(), &radius);
    CHECK(radius == 1.25);
    CHECK(g.resolution == f.resolution);
    CHECK(g.d == f.d);
    CHECK(g.data == f.data);
    std::filesystem::remove(tmp);

    CHECK_THROWS_AS(read_field("/nonexistent/field.bin"), Error);
}
