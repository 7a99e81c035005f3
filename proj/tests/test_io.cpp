#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "synaptic/io.hpp"
#include "test_util.hpp"

using namespace synaptic;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/synaptic_io_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("matrix json round trip") {
    std::mt19937_64 rng(80);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = testutil::random_hermitian(3, rng);
        const auto back = io::matrix_from_json(io::to_json(a));
        CHECK(frobenius_distance(a, back) < 1e-15);
    }
    // real matrices serialize without an "im" block
    const auto d = Hermitian::diagonal({1, 2, 3});
    const auto j = io::to_json(d);
    CHECK_FALSE(j.contains("im"));
    CHECK(frobenius_distance(io::matrix_from_json(j), d) < 1e-15);
}

TEST_CASE("matrix json validation") {
    using io::Json;
    CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"dim": 2})")), ParseError);
    CHECK_THROWS_AS(
        io::matrix_from_json(Json::parse(R"({"dim": 2, "re": [[1, 2], [3, 4]]})")),
        ParseError);
    CHECK_THROWS_AS(io::matrix_from_json(Json::parse(R"({"dim": 2, "re": [[1, 0]]})")),
                    ParseError);
    CHECK_NOTHROW(io::matrix_from_json(Json::parse(R"({"dim": 2, "re": [[1, 2], [2, 4]]})")));
}

TEST_CASE("observable json round trip") {
    std::mt19937_64 rng(81);
    const auto xi = testutil::random_commuting_povm(3, 2, 3, rng);
    const auto back = io::observable_from_json(io::to_json(xi));
    REQUIRE(back.size() == xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        CHECK(back.label(i) == xi.label(i));
        CHECK(frobenius_distance(back.atom(i), xi.atom(i)) < 1e-15);
    }
    CHECK_THROWS_AS(io::observable_from_json(io::Json::parse(R"({"outcomes": ["a"]})")),
                    ParseError);
}

TEST_CASE("kernel json round trip") {
    std::mt19937_64 rng(82);
    const auto nu = testutil::random_markov_kernel({"a", "b", "c"}, 2, rng);
    const auto back = io::kernel_from_json(io::to_json(nu));
    CHECK(back.source == nu.source);
    CHECK(back.target == nu.target);
    CHECK((back.rows - nu.rows).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(back.null_ideal == nu.null_ideal);

    // null ideal survives as labels
    WeakMarkovKernel weak = nu;
    weak.null_ideal = {1};
    const auto j = io::to_json(weak);
    CHECK(j["null"][0] == "b");
    CHECK(io::kernel_from_json(j).null_ideal == std::set<std::size_t>{1});
}

TEST_CASE("effect table json round trip") {
    RawEffectTable t;
    t.size = 3;
    t.zero = 0;
    t.one = 2;
    t.osum.assign(3, std::vector<int>(3, -1));
    t.osum[0][0] = 0;
    t.osum[0][1] = 1;
    t.osum[1][0] = 1;
    t.osum[0][2] = 2;
    t.osum[2][0] = 2;
    t.osum[1][1] = 2;
    const auto back = io::effect_table_from_json(io::to_json(t));
    CHECK(back.size == t.size);
    CHECK(back.zero == t.zero);
    CHECK(back.one == t.one);
    CHECK(back.osum == t.osum);

    CHECK_THROWS_AS(io::effect_table_from_json(io::Json::parse(R"({"size": 2})")), ParseError);
    CHECK_THROWS_AS(
        io::effect_table_from_json(
            io::Json::parse(R"({"size": 2, "zero": 0, "one": 1, "osum": [[0, 0, 5]]})")),
        ParseError);
}

TEST_CASE("file io") {
    TempFile f("roundtrip.json");
    const auto a = Hermitian::diagonal({1, 2, 2, 5});
    io::save_json(f.path, io::to_json(a));
    CHECK(frobenius_distance(io::load_matrix(f.path), a) < 1e-15);

    CHECK_THROWS_AS(io::load_json("/tmp/synaptic_io_does_not_exist.json"), ParseError);

    TempFile g("garbage.json");
    std::ofstream(g.path) << "not json {";
    CHECK_THROWS_AS(io::load_json(g.path), ParseError);

    // a non-Hermitian matrix file is rejected at load time
    TempFile h("nonherm.json");
    std::ofstream(h.path) << R"({"dim": 2, "re": [[1, 2], [3, 4]]})";
    CHECK_THROWS_AS(io::load_matrix(h.path), ParseError);
}

TEST_CASE("as_real") {
    const auto p = Hermitian::diagonal({1, 0});
    const auto q = Hermitian::diagonal({0, 1});
    const Observable xi({"2.5", "-1"}, {p, q});
    const auto r = io::as_real(xi);
    CHECK(r.value(0) == doctest::Approx(-1.0));
    CHECK(r.value(1) == doctest::Approx(2.5));
    CHECK(frobenius_distance(r.atom(0), q) < 1e-15);

    const Observable named({"low", "high"}, {p, q});
    CHECK_THROWS_AS(io::as_real(named), ParseError);
}

TEST_CASE("serialization is deterministic") {
    std::mt19937_64 rng(83);
    const auto xi = testutil::random_commuting_povm(3, 2, 3, rng);
    const auto s1 = io::to_json(xi).dump(2);
    const auto s2 = io::to_json(xi).dump(2);
    CHECK(s1 == s2);
    // round-tripped content re-serializes identically
    const auto s3 = io::to_json(io::observable_from_json(io::to_json(xi))).dump(2);
    CHECK(s1 == s3);
}
