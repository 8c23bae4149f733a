#include "corpus.hpp"

#include "ncample/errors.hpp"
#include "ncample/json_io.hpp"

#include <doctest.h>

#include <filesystem>

using namespace ncample;

TEST_CASE("rational parsing") {
    CHECK(parse_rational(Json("3/6")) == Rational(1, 2));
    CHECK(parse_rational(Json("-7")) == Rational(-7));
    CHECK(parse_rational(Json("0.25")) == Rational(1, 4));
    CHECK(parse_rational(Json("-1.5/3")) == Rational(-1, 2));
    CHECK(parse_rational(Json(4)) == Rational(4));
    CHECK_THROWS_AS(parse_rational(Json("1/0")), ParseError);
    CHECK_THROWS_AS(parse_rational(Json("abc")), ParseError);
    CHECK_THROWS_AS(parse_rational(Json(0.5)), ParseError);
    CHECK(parse_integer(Json("123456789012345678901234567890")).get_str() == "123456789012345678901234567890");
    CHECK_THROWS_AS(parse_integer(Json("1/2")), ParseError);
}

TEST_CASE("inline scheme equals the built-in") {
    const Json doc = Json::parse(R"({"name": "P2", "dim": 2, "rho": 1,
        "euler": [{"coeff": "1/2", "exponents": [2]}, {"coeff": "3/2", "exponents": [1]}, {"coeff": 1, "exponents": [0]}],
        "ample_cone": [[1]]})");
    const NumericalScheme s = load_scheme(doc);
    const NumericalScheme b = builtin_scheme("P2");
    CHECK(s.euler() == b.euler());
    CHECK(s.cone() == b.cone());
    CHECK(load_scheme(Json::parse(R"({"scheme": "builtin:P1xP1"})")).rho() == 2);
    CHECK_THROWS_AS(load_scheme(Json::parse(R"({"scheme": "P2"})")), ParseError);
    CHECK_THROWS_AS(load_scheme(Json::parse(R"({"name": "x", "dim": 1, "rho": 1,
        "euler": [{"coeff": "1/2", "exponents": [1]}], "ample_cone": [[1]]})")),
                    NotIntegerValued);
    CHECK_THROWS_AS(load_scheme(Json::parse(R"({"name": "x", "dim": 1, "rho": 1,
        "euler": [], "ample_cone": [[1], [-1]]})")),
                    EmptyCone);
    CHECK_THROWS_AS(load_scheme(Json::parse(R"({"name": "x", "dim": 1})")), ParseError);
}

TEST_CASE("documents round trip") {
    for (const auto& e : corpus::geometric_corpus(81, 40)) {
        const Json doc = system_to_json(e.sys);
        const Document back = load_document(Json::parse(doc.dump()));
        CHECK(back.system == e.sys);
        CHECK(system_to_json(back.system) == doc);
    }
    const BimoduleSystem p = product(corpus::geometric_corpus(82, 1)[0].sys, corpus::geometric_corpus(83, 1)[0].sys);
    CHECK(load_document(system_to_json(p)).system.notes() == p.notes());
}

TEST_CASE("oracle member") {
    const Json doc = Json::parse(R"({"scheme": "builtin:P1xP1",
        "bimodules": [{"divisor": [1, 0]}],
        "oracle": {"d": 2, "automorphisms": [{"perm": [2, 1]}]}})");
    const Document d = load_document(doc);
    REQUIRE(d.oracle.has_value());
    CHECK(d.system[0].action == Matrix{{0, 1}, {1, 0}});

    Json bad = doc;
    bad["bimodules"][0]["matrix"] = Json::parse("[[1, 0], [0, 1]]");
    CHECK_THROWS_AS(load_document(bad), ParseError);
    Json no_matrix = doc;
    no_matrix.erase("oracle");
    CHECK_THROWS_AS(load_document(no_matrix), ParseError);
    Json zero_based = doc;
    zero_based["oracle"]["automorphisms"][0]["perm"] = Json::parse("[0, 1]");
    CHECK_THROWS_AS(load_document(zero_based), ParseError);
}

TEST_CASE("scheme override and shipped data files") {
    const Json doc = Json::parse(R"({"bimodules": [{"divisor": [1], "matrix": [[1]]}]})");
    CHECK_THROWS_AS(load_document(doc), ParseError);
    CHECK(load_document(doc, builtin_scheme("P2")).system.scheme().name() == "P2");
    int files = 0;
    for (const auto& entry : std::filesystem::directory_iterator("data")) {
        CAPTURE(entry.path().string());
        CHECK_NOTHROW(load_document_file(entry.path().string()));
        ++files;
    }
    CHECK(files >= 8);
}
