#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "asymcheck/cubic.hpp"
#include "asymcheck/fixtures.hpp"
#include "asymcheck/rng.hpp"

using namespace asymcheck;

TEST_CASE("single monomials") {
    CubicPolynomial p = parse_cubic("x1^3", 1);
    CHECK(p.terms.size() == 1);
    CHECK(p.terms.at({1, 1, 1}) == 1);

    CubicPolynomial q = parse_cubic("  7 x2 * x3 x4 ", 4);
    CHECK(q.terms.at({2, 3, 4}) == 7);
}

TEST_CASE("scalar distributes over a parenthesized sum") {
    CubicPolynomial p = parse_cubic("6(x1*x4^2 - x1^2*x4)", 4);
    CHECK(p.terms.size() == 2);
    CHECK(p.terms.at({1, 4, 4}) == 6);
    CHECK(p.terms.at({1, 1, 4}) == -6);
}

TEST_CASE("repeated monomials merge and cancel") {
    CubicPolynomial p = parse_cubic("x1x2x3 + x1x2x3", 3);
    CHECK(p.terms.at({1, 2, 3}) == 2);
    CubicPolynomial q = parse_cubic("x1x2x3 - x1*x2*x3", 3);
    CHECK(q.terms.empty());
}

TEST_CASE("the bundled literal text parses with its duplicate classes doubled") {
    CubicPolynomial literal = parse_cubic(fixtures::kIarrobinoLiteralText, 6);
    CHECK(literal.terms.size() == 19); // 21 written terms, two duplicated classes merge
    CHECK(literal.terms.at({2, 4, 4}) == 12);
    CHECK(literal.terms.at({4, 5, 6}) == 12);
    CHECK(literal.terms.at({1, 2, 4}) == 6);

    CubicPolynomial canonical = fixtures::iarrobino_polynomial();
    CHECK(canonical.terms.size() == 19);
    CHECK(canonical.terms.at({4, 5, 6}) == 6);
}

TEST_CASE("printer round-trips through the parser") {
    for (const char* text : {fixtures::kIarrobinoLiteralText, fixtures::kIarrobinoCanonicalText}) {
        CubicPolynomial p = parse_cubic(text, 6);
        CHECK(parse_cubic(to_string(p), 6) == p);
    }
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        CubicPolynomial p;
        p.m = 4;
        for (const Triple& t : all_triples(4)) {
            Scalar c = static_cast<Scalar>(rng.below(21)) - 10;
            if (c != 0) p.terms[t] = c;
        }
        CHECK(parse_cubic(to_string(p), 4) == p);
    }
}

TEST_CASE("the zero polynomial still round-trips") {
    CubicPolynomial zero;
    zero.m = 2;
    CHECK(parse_cubic(to_string(zero), 2).terms.empty());
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_cubic("x1^2", 1), ParseError);         // degree 2
    CHECK_THROWS_AS(parse_cubic("x1^4", 1), ParseError);         // degree 4
    CHECK_THROWS_AS(parse_cubic("x5^3", 4), ParseError);         // index out of range
    CHECK_THROWS_AS(parse_cubic("x1^3 + ", 1), ParseError);      // dangling operator
    CHECK_THROWS_AS(parse_cubic("3", 1), ParseError);            // constant term
    CHECK_THROWS_AS(parse_cubic("x1^3)", 1), ParseError);        // trailing input
    CHECK_THROWS_AS(parse_cubic("2(x1^3", 1), ParseError);       // missing ')'
    try {
        parse_cubic("x1^3 + x9^3", 4);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position >= 8);
    }
}

TEST_CASE("form extraction applies the 3/6 conventions") {
    CubicPolynomial cube = parse_cubic("x1^3", 1);
    CHECK(form_from_cubic(cube, Field::integers()).at(1, 1, 1) == 1);

    CubicPolynomial square = parse_cubic("3x1^2x2", 2);
    CHECK(form_from_cubic(square, Field::integers()).at(1, 1, 2) == 1);

    CubicPolynomial distinct = parse_cubic("6x1x2x3", 3);
    CHECK(form_from_cubic(distinct, Field::integers()).at(1, 2, 3) == 1);

    // indivisible coefficients fail over Z, F2 and F3 but divide over F5
    CubicPolynomial bad = parse_cubic("x1^2x2", 2);
    CHECK_THROWS_AS(form_from_cubic(bad, Field::integers()), std::invalid_argument);
    CHECK_THROWS_AS(form_from_cubic(bad, Field::f2()), std::invalid_argument);
    CHECK_THROWS_AS(form_from_cubic(bad, Field::fp(3)), std::invalid_argument);
    CHECK(form_from_cubic(bad, Field::fp(5)).at(1, 1, 2) == 2); // 1/3 = 2 mod 5
}

TEST_CASE("cubic evaluation matches the cubic form on the diagonal") {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        CubicPolynomial p;
        p.m = 4;
        for (const Triple& t : all_triples(4)) {
            Scalar c = 6 * (static_cast<Scalar>(rng.below(7)) - 3);
            if (c != 0) p.terms[t] = c;
        }
        TrilinearForm mu = form_from_cubic(p, Field::integers());
        for (int v = 0; v < 10; ++v) {
            Vec x(4);
            for (int i = 0; i < 4; ++i) x[i] = static_cast<Scalar>(rng.below(9)) - 4;
            CHECK(mu.evaluate(x, x, x) == p.evaluate(x));
        }
    }
    // and over F5 with direct division
    CubicPolynomial p = parse_cubic("x1^3 + x1^2x2 + x1x2x3", 3);
    TrilinearForm mu5 = form_from_cubic(p, Field::fp(5));
    Field f5 = Field::fp(5);
    for (std::uint64_t code = 0; code < 125; code += 11) {
        Vec x{static_cast<Scalar>(code % 5), static_cast<Scalar>(code / 5 % 5),
              static_cast<Scalar>(code / 25 % 5)};
        CHECK(mu5.evaluate(x, x, x) == f5.canon(p.evaluate(x)));
    }
}
