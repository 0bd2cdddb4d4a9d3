#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "field.hpp"

using namespace gentle;

TEST_CASE("rational arithmetic stays canonical") {
    Field Q;
    FVal a = Q.parse_value("2/6");
    CHECK(Field::to_string(a) == "1/3");
    FVal b = Q.add(a, Q.parse_value("1/3"));
    CHECK(Field::to_string(b) == "2/3");
    CHECK(Field::to_string(Q.neg(b)) == "-2/3");
    CHECK(Field::eq(Q.mul(b, Q.inv(b)), Q.one()));
    CHECK_THROWS_AS(Q.inv(Q.zero()), domain_error);
}

TEST_CASE("F_p residues reduced into [0, p)") {
    Field F(7);
    CHECK(Field::to_string(F.from_long(-1)) == "6");
    CHECK(Field::to_string(F.add(F.from_long(5), F.from_long(4))) == "2");
    CHECK(Field::eq(F.mul(F.from_long(3), F.inv(F.from_long(3))), F.one()));
    CHECK(Field::to_string(F.parse_value("1/2")) == "4");
}

TEST_CASE("field spec parsing") {
    CHECK(Field::parse("Q").is_rational());
    CHECK(Field::parse("Fp:101").characteristic() == 101);
    CHECK_THROWS_AS(Field::parse("Fp:4"), domain_error);
    CHECK_THROWS_AS(Field::parse("R"), domain_error);
    CHECK(Field::parse("Fp:101").spec() == "Fp:101");
}
