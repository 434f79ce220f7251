#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "trihopf/fields.hpp"

using namespace trihopf;

TEST_CASE("rationals stay in lowest terms with positive denominator") {
    Rational a = Rational::parse("6/8");
    CHECK(a.str() == "3/4");
    Rational b = Rational::parse("-6/4");
    CHECK(b.str() == "-3/2");
    CHECK((a + b).str() == "-3/4");
    CHECK((a * b).str() == "-9/8");
    CHECK((a - a).is_zero());
    CHECK(Rational::parse("4/2").str() == "2");
    CHECK((Rational(1) / Rational(3)).str() == "1/3");
}

TEST_CASE("rational parse rejects malformed literals") {
    CHECK_THROWS_AS(Rational::parse("1/0"), parse_error);
    CHECK_THROWS_AS(Rational::parse(""), parse_error);
    CHECK_THROWS_AS(Rational::parse("a"), parse_error);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), parse_error);
    CHECK_THROWS_AS(Rational::parse("1.5"), parse_error);
    CHECK_THROWS_AS(Rational::parse("1/-2"), parse_error);
    CHECK(Rational::parse("-0").is_zero());
}

TEST_CASE("rational arithmetic is exact over long alternating sums") {
    Rational forward;
    Rational backward;
    for (int k = 1; k <= 40; ++k) forward += Rational(k % 2 ? 1 : -1, k);
    for (int k = 40; k >= 1; --k) backward += Rational(k % 2 ? 1 : -1, k);
    CHECK(forward == backward);
    CHECK(!forward.is_zero());
}

TEST_CASE("prime field arithmetic is canonical in [0, p)") {
    Fp a(5, 7), b(4, 7);
    CHECK((a + b).value() == 2);
    CHECK((a * b).value() == 6);
    CHECK((a - b).value() == 1);
    CHECK((-a).value() == 2);
    CHECK(a.inv().value() == 3); // 5·3 = 15 ≡ 1 (mod 7)
    CHECK((a * a.inv()).value() == 1);
    CHECK(Fp::parse("-1", 7).value() == 6);
    CHECK(Fp::parse("14", 7).is_zero());
    CHECK_THROWS_AS(Fp::parse("1/2", 7), parse_error);
    CHECK_THROWS_AS(Fp(0, 5).inv(), std::domain_error);
}

TEST_CASE("default-constructed prime-field zero mixes with any modulus") {
    Fp zero;
    Fp a(2, 5);
    CHECK((zero + a) == a);
    CHECK((a + zero) == a);
    CHECK((zero * a).is_zero());
    CHECK(zero == Fp(0, 5));
    CHECK(Fp::one_like(a).value() == 1);
}

TEST_CASE("every prime-field inverse is two-sided") {
    for (std::uint64_t v = 1; v < 11; ++v) {
        Fp x(v, 11);
        CHECK((x * x.inv()).value() == 1);
        CHECK((x.inv() * x).value() == 1);
    }
}

TEST_CASE("small_scalar builds signed multiples of one") {
    CHECK(small_scalar(3, Rational(1)) == Rational(3));
    CHECK(small_scalar(-2, Rational(1)) == Rational(-2));
    CHECK(small_scalar(0, Rational(1)).is_zero());
    CHECK(small_scalar(5, Fp(1, 3)) == Fp(2, 3));
    CHECK(small_scalar(-1, Fp(1, 3)) == Fp(2, 3));
}

TEST_CASE("primality scan") {
    CHECK(is_prime_u64(2));
    CHECK(is_prime_u64(3));
    CHECK(is_prime_u64(97));
    CHECK(!is_prime_u64(1));
    CHECK(!is_prime_u64(0));
    CHECK(!is_prime_u64(91));
}
