#include "doctest.h"

#include "bicx/errors.hpp"
#include "bicx/scalar.hpp"

using bicx::Rational;
using bicx::Scalar;

TEST_SUITE("scalar") {

TEST_CASE("arithmetic is exact over the Gaussian rationals") {
    Scalar a = Scalar(1) + Scalar(2) * Scalar::i();
    Scalar b = Scalar(3) - Scalar::i();
    CHECK(a * b == Scalar(5) + Scalar(5) * Scalar::i());
    CHECK((a * b) / a == b);
    CHECK(a - a == Scalar(0));
    CHECK(Scalar(Rational(1, 3)) + Scalar(Rational(1, 6)) == Scalar(Rational(1, 2)));
    CHECK(Scalar(Rational(1, 3)) * Scalar(3) == Scalar(1));
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
}

TEST_CASE("conjugation and predicates") {
    Scalar z(Rational(2), Rational(-3));
    CHECK(z.conj() == Scalar(Rational(2), Rational(3)));
    CHECK((z * z.conj()).im() == 0);
    CHECK(Scalar(0).is_zero());
    CHECK(Scalar(1).is_one());
    CHECK(!Scalar::i().is_one());
    CHECK((-Scalar::i()) * Scalar::i() == Scalar(1));
}

TEST_CASE("division by zero is rejected") {
    Scalar z(5);
    CHECK_THROWS_AS(z /= Scalar(0), bicx::error);
}

TEST_CASE("text form round trips and is canonical") {
    const char* forms[] = {"0",          "1",       "-1",         "i",
                           "-i",         "1/2",     "-2/3",       "2*i",
                           "-1/2*i",     "1+i",     "1/2-3/4*i",  "-5+2/7*i",
                           "3-i"};
    for (const char* f : forms) {
        Scalar z = Scalar::parse(f);
        CHECK(z.str() == f);
        CHECK(Scalar::parse(z.str()) == z);
    }
    CHECK(Scalar(Rational(2, 4)).str() == "1/2");
    CHECK((Scalar(0) - Scalar::i()).str() == "-i");
    CHECK(Scalar(Rational(0), Rational(1, 2)).str() == "1/2*i");
}

TEST_CASE("malformed scalars are rejected with parse_error") {
    const char* bad[] = {"",     "foo",  "1+",     "+1",    "1/0", "i*2",
                         "1+2",  "i+i",  "1+1+i",  "2i",    "1/",  "--1",
                         "1x",   "*i",   "1 + i"};
    for (const char* f : bad) {
        CAPTURE(f);
        CHECK_THROWS_AS(Scalar::parse(f), bicx::parse_error);
    }
}

} // TEST_SUITE
