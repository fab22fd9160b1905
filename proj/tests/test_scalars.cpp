#include <catch2/catch_amalgamated.hpp>

#include "flagvar/field.hpp"

using namespace flagvar;

TEST_CASE("field spec validates characteristics") {
    CHECK(FieldSpec::prime(2).characteristic == 2);
    CHECK(FieldSpec::prime(13).characteristic == 13);
    CHECK_THROWS_AS(FieldSpec::prime(1), Error);
    CHECK_THROWS_AS(FieldSpec::prime(4), Error);
    CHECK_THROWS_AS(FieldSpec::prime(9), Error);
    CHECK(FieldSpec::rationals().characteristic == 0);
    CHECK_FALSE(FieldSpec::rationals().finite());
    CHECK(FieldSpec::prime(5).finite());
}

TEST_CASE("field tags parse and round-trip") {
    CHECK(FieldSpec::parse("2") == FieldSpec::prime(2));
    CHECK(FieldSpec::parse("7") == FieldSpec::prime(7));
    CHECK(FieldSpec::parse("q") == FieldSpec::rationals());
    CHECK(FieldSpec::parse("Q") == FieldSpec::rationals());
    CHECK_THROWS_AS(FieldSpec::parse("six"), Error);
    CHECK_THROWS_AS(FieldSpec::parse("15"), Error);
    CHECK(FieldSpec::parse(FieldSpec::prime(11).tag()) == FieldSpec::prime(11));
    CHECK(FieldSpec::parse(FieldSpec::rationals().tag()) == FieldSpec::rationals());
    CHECK(FieldSpec::prime(3).name() == "GF(3)");
    CHECK(FieldSpec::rationals().name() == "Q");
}

TEST_CASE("prime field arithmetic matches integer arithmetic mod p") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u}) {
        FieldSpec f = FieldSpec::prime(p);
        const std::int64_t m = p;
        for (std::int64_t a = 0; a < m; ++a)
            for (std::int64_t b = 0; b < m; ++b) {
                GFp x = GFp::from_int(f, a), y = GFp::from_int(f, b);
                CHECK((x + y).residue() == (a + b) % m);
                CHECK((x - y).residue() == ((a - b) % m + m) % m);
                CHECK((x * y).residue() == (a * b) % m);
            }
    }
}

TEST_CASE("prime field elements are canonical residues") {
    FieldSpec f = FieldSpec::prime(7);
    CHECK(GFp::from_int(f, -1).residue() == 6);
    CHECK(GFp::from_int(f, 7).residue() == 0);
    CHECK(GFp::from_int(f, 23).residue() == 2);
    CHECK(GFp::from_int(f, -1) == GFp::from_int(f, 13));
    CHECK((-GFp::from_int(f, 3)).residue() == 4);
    CHECK(GFp::from_int(f, 5).str() == "5");
}

TEST_CASE("prime field inverses") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 101u}) {
        FieldSpec f = FieldSpec::prime(p);
        for (std::int64_t a = 1; a < static_cast<std::int64_t>(p); ++a) {
            GFp x = GFp::from_int(f, a);
            CHECK(x * x.inverse() == GFp::one(f));
            CHECK((GFp::one(f) / x) * x == GFp::one(f));
        }
    }
    CHECK_THROWS_AS(GFp::zero(FieldSpec::prime(5)).inverse(), DivisionByZeroError);
    CHECK_THROWS_AS(GFp::one(FieldSpec::prime(5)) / GFp::zero(FieldSpec::prime(5)),
                    DivisionByZeroError);
}

TEST_CASE("mixed-field operations are rejected") {
    GFp a = GFp::from_int(FieldSpec::prime(3), 2);
    GFp b = GFp::from_int(FieldSpec::prime(5), 2);
    CHECK_THROWS_AS(a + b, FieldMismatchError);
    CHECK_THROWS_AS(a * b, FieldMismatchError);
    CHECK_THROWS_AS(GFp() + a, FieldMismatchError);
    CHECK_THROWS_AS(GFp::zero(FieldSpec::rationals()), FieldMismatchError);
    CHECK_THROWS_AS(Rat::one(FieldSpec::prime(3)), FieldMismatchError);
}

TEST_CASE("rational arithmetic is exact") {
    Rat third(1, 3), sixth(1, 6);
    CHECK(third + sixth == Rat(1, 2));
    CHECK(third - sixth == sixth);
    CHECK(third * sixth == Rat(1, 18));
    CHECK(third / sixth == Rat(2));
    CHECK((Rat(2, 4)) == Rat(1, 2));
    CHECK(Rat(3, -6) == Rat(-1, 2));
    CHECK(Rat(7).inverse() == Rat(1, 7));
    CHECK_THROWS_AS(Rat().inverse(), DivisionByZeroError);
    CHECK_THROWS_AS(Rat(1) / Rat(), DivisionByZeroError);
    CHECK_THROWS_AS(Rat(1, 0), DivisionByZeroError);

    // no silent overflow: (2^40)^2 stays exact
    Rat big(1099511627776, 1);
    CHECK((big * big).str() == "1208925819614629174706176");
}

TEST_CASE("rational rendering and parsing") {
    CHECK(Rat(3, 4).str() == "3/4");
    CHECK(Rat(-3, 4).str() == "-3/4");
    CHECK(Rat(8, 4).str() == "2");
    CHECK(Rat().str() == "0");
    CHECK(Rat::parse("3/4") == Rat(3, 4));
    CHECK(Rat::parse("-12") == Rat(-12));
    CHECK(Rat::parse("10/-4") == Rat(-5, 2));
    CHECK_THROWS_AS(Rat::parse("x/2"), Error);
    for (const Rat& r : {Rat(0), Rat(-7, 3), Rat(22, 11), Rat(5, 8)})
        CHECK(Rat::parse(r.str()) == r);
}

TEST_CASE("field element enumeration") {
    auto e5 = field_elements<GFp>(FieldSpec::prime(5));
    REQUIRE(e5.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(e5[i].residue() == static_cast<std::int64_t>(i));
    CHECK_THROWS_AS(field_elements<Rat>(FieldSpec::rationals()), EnumerationError);
}
