#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gq/ext_int.hpp"

using gq::ExtInt;

TEST_CASE("total order puts every finite integer below infinity") {
    CHECK(ExtInt(5) < ExtInt::infinity());
    CHECK(ExtInt(-1000000) < ExtInt::infinity());
    CHECK(ExtInt::infinity() == ExtInt::infinity());
    CHECK(ExtInt(3) < ExtInt(4));
    CHECK(ExtInt(4) == ExtInt(4));
    CHECK_FALSE(ExtInt::infinity() < ExtInt::infinity());
}

TEST_CASE("translation fixes infinity and is exact on finite values") {
    CHECK(ExtInt(3) + 4 == ExtInt(7));
    CHECK(ExtInt::infinity() + 12345 == ExtInt::infinity());
    CHECK((ExtInt(2) + ExtInt::infinity()).is_infinite());
    CHECK((ExtInt(2) + ExtInt(3)).finite_value() == 5);
}

TEST_CASE("overflow is an error, never a wrap") {
    CHECK_THROWS_AS(ExtInt(INT64_MAX) + 1, std::overflow_error);
    CHECK_THROWS_AS(gq::checked_add(INT64_MIN, -1), std::overflow_error);
    CHECK_THROWS_AS(gq::checked_neg(INT64_MIN), std::overflow_error);
    CHECK(gq::checked_neg(7) == -7);
}

TEST_CASE("finite_value of infinity is a domain error") {
    CHECK_THROWS_AS(ExtInt::infinity().finite_value(), std::domain_error);
}
