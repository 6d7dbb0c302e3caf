#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rdk/catalog.hpp"
#include "rdk/json_io.hpp"
#include "rdk/morphism.hpp"

using namespace rdk;
namespace cat = rdk::catalog;
using io::json;

TEST_CASE("integer serialization") {
    SUBCASE("small values are JSON numbers") {
        json j = io::int_to_json(Int(-42));
        CHECK(j.is_number_integer());
        CHECK(io::int_from_json(j, "$") == -42);
    }
    SUBCASE("values beyond 2^53 become decimal strings and round-trip") {
        Int big = (Int(1) << 77) + 5;
        json j = io::int_to_json(big);
        CHECK(j.is_string());
        CHECK(io::int_from_json(j, "$") == big);
        CHECK(io::int_from_json(io::int_to_json(-big), "$") == -big);
    }
    SUBCASE("garbage strings are rejected") {
        CHECK_THROWS_AS(io::int_from_json(json("12x"), "$"), io::SchemaError);
        CHECK_THROWS_AS(io::int_from_json(json(1.5), "$"), io::SchemaError);
    }
}

TEST_CASE("matrix round-trip") {
    IntMatrix M = IntMatrix::from_rows({{1, -2, 3}, {0, 5, 7}});
    M(1, 2) = (Int(1) << 90) * 3;
    json j = io::to_json(M);
    IntMatrix back = io::matrix_from_json(j);
    CHECK(back == M);

    SUBCASE("dimension mismatches are schema errors with a path") {
        json bad = j;
        bad["data"][0].erase(2);
        try {
            io::matrix_from_json(bad);
            FAIL("expected SchemaError");
        } catch (const io::SchemaError& e) {
            CHECK(e.path == "$.data[0]");
        }
    }
    SUBCASE("missing fields are schema errors") {
        json bad = j;
        bad.erase("cols");
        CHECK_THROWS_AS(io::matrix_from_json(bad), io::SchemaError);
    }
}

TEST_CASE("root datum round-trip over the catalog") {
    for (const char* label : {"A2", "B3", "C2", "D4", "G2"}) {
        for (const char* sel : {"sc", "ad"}) {
            RootDatum R = cat::lookup(label, sel);
            RootDatum back = io::datum_from_json(io::to_json(R));
            CHECK(back == R);
            CHECK(back.name == R.name);
        }
    }
    RootDatum g = cat::gl(3);
    CHECK(io::datum_from_json(io::to_json(g)) == g);

    SUBCASE("length mismatches are rejected") {
        json j = io::to_json(cat::lookup("A2", "sc"));
        j["roots"][0].erase(1);
        CHECK_THROWS_AS(io::datum_from_json(j), io::SchemaError);
        json j2 = io::to_json(cat::lookup("A2", "sc"));
        j2["coroots"].erase(0);
        CHECK_THROWS_AS(io::datum_from_json(j2), io::SchemaError);
    }
}

TEST_CASE("morphism round-trip") {
    RootDatum R = cat::lookup("C2", "sc");
    PMorphism m = identity_morphism(R);
    m.p = 2;
    json j = io::to_json(m);
    PMorphism back = io::morphism_from_json(j);
    CHECK(back.f == m.f);
    CHECK(back.p == m.p);
    CHECK(back.q == m.q);
    CHECK(back.tau == m.tau);

    SUBCASE("q/tau length mismatch rejected") {
        json bad = j;
        bad["tau"].erase(0);
        CHECK_THROWS_AS(io::morphism_from_json(bad), io::SchemaError);
    }
}

TEST_CASE("central product spec round-trip") {
    CentralProductSpec spec;
    spec.R1 = cat::lookup("A1", "sc");
    spec.R2 = torus(1);
    spec.A = zlattice::FinAbPresentation::cyclic(2);
    spec.h1 = IntMatrix::from_rows({{1}});
    spec.h2 = IntMatrix::from_rows({{1}});
    json j = io::to_json(spec);
    CentralProductSpec back = io::central_spec_from_json(j);
    CHECK(back.R1 == spec.R1);
    CHECK(back.R2 == spec.R2);
    CHECK(back.A.invariant_factors == spec.A.invariant_factors);
    CHECK(back.h1 == spec.h1);
    CHECK(back.h2 == spec.h2);
    CHECK(validate_central_spec(back).ok);
}
