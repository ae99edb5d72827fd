#include <doctest.h>

#include "mwk/error.hpp"
#include "mwk/field.hpp"

using namespace mwk;

namespace {

Element el(const Field& f, const char* s) { return f.parse(s); }

}  // namespace

TEST_CASE("field specs") {
  CHECK(make_field("GF(9)").name() == make_field("GF(3^2)").name());
  CHECK(make_field("GF(4)(t,u)").name() == "GF(2^2)(t,u)");
  CHECK(make_field("GF(2)(t)").is_function_field());
  CHECK_THROWS_AS(make_field("GF(3)(t)"), MathError);
  CHECK_THROWS(make_field("GF(2)(t,u,v)"));
  CHECK_THROWS(make_field("GF(4)(x)"));
  CHECK_THROWS(make_field("GF(2)(t,t)"));
}

TEST_CASE("element arithmetic examples") {
  Field f5 = make_field("GF(5)");
  CHECK((f5.from_int(2) * f5.from_int(3)).is_one());
  Field f = make_field("GF(2)(t)");
  Element a = el(f, "t+1");
  CHECK((a + a).is_zero());
  Element i = el(f, "t^2+t").inv();
  CHECK(i.numerator() == f.one().numerator());
  CHECK(i.denominator() == el(f, "t^2+t").numerator());
  CHECK(i.to_string() == "1/(t^2+t)");
  CHECK_THROWS_AS(f.zero().inv(), MathError);
}

TEST_CASE("fractions are canonical") {
  Field f = make_field("GF(2)(t,u)");
  Element a = el(f, "(t^2+u^2)/(t+u)");
  CHECK(a == el(f, "t+u"));
  CHECK(el(f, "(t*u+t)/(u+1)") == el(f, "t"));
  Field g = make_field("GF(4)(t)");
  CHECK(el(g, "(x*t)/(x*t+x)") == el(g, "t/(t+1)"));
}

TEST_CASE("ring axioms on random elements") {
  for (const char* spec : {"GF(2)(t)", "GF(4)(t)", "GF(2)(t,u)", "GF(7)", "GF(9)"}) {
    Field f = make_field(spec);
    for (std::uint64_t s = 0; s < 40; ++s) {
      Element a = random_unit(f, 3 * s, 2), b = random_unit(f, 3 * s + 1, 2), c = random_unit(f, 3 * s + 2, 2);
      CHECK((a + b) * c == a * c + b * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a / b) * b == a);
      CHECK(a - a == f.zero());
      CHECK(a.pow(3) == a * a * a);
      CHECK(a.pow(-2) * a * a == f.one());
    }
  }
}

TEST_CASE("squares") {
  Field f5 = make_field("GF(5)");
  CHECK_FALSE(is_square(f5.from_int(2)));
  Field f4 = make_field("GF(4)");
  for (const auto& x : f4.elements()) CHECK(is_square(x));
  Field f = make_field("GF(2)(t)");
  CHECK(is_square(el(f, "t^2+1")));
  CHECK(sqrt(el(f, "t^2+1")) == el(f, "t+1"));
  CHECK_FALSE(is_square(el(f, "t")));
  CHECK_THROWS_AS(sqrt(el(f, "t")), MathError);
  Field g = make_field("GF(4)(t,u)");
  for (std::uint64_t s = 0; s < 30; ++s) {
    Element a = random_unit(g, s, 3);
    CHECK(is_square(a * a));
    CHECK(sqrt(a * a) == a);
  }
}

TEST_CASE("Frobenius coordinates") {
  Field f = make_field("GF(2)(t)");
  auto c = frobenius_coords(el(f, "t^3+t"));
  CHECK(c.coords.at(0).is_zero());
  CHECK(c.coords.at(1) == el(f, "t+1"));
  auto one = frobenius_coords(f.one());
  CHECK(one.coords.at(0).is_one());
  CHECK(one.coords.at(1).is_zero());
  Field g = make_field("GF(2)(t,u)");
  auto tu = frobenius_coords(el(g, "t*u"));
  CHECK(tu.coords.at(3).is_one());
  CHECK(tu.coords.at(0).is_zero());
  for (std::uint64_t s = 0; s < 30; ++s) {
    Element a = random_unit(g, s, 3);
    CHECK(frobenius_coords(a).reconstruct(g) == a);
  }
}

TEST_CASE("square dependence") {
  Field f = make_field("GF(2)(t)");
  CHECK_FALSE(square_dependence({f.one(), el(f, "t")}));
  auto d = square_dependence({el(f, "t"), el(f, "t^3")});
  REQUIRE(d);
  CHECK((*d)[0] == el(f, "t"));
  CHECK((*d)[1].is_one());
  auto e = square_dependence({el(f, "t"), el(f, "t+1"), f.one()});
  REQUIRE(e);
  for (const auto& x : *e) CHECK(x.is_one());
  // Over GF(2)(t) two units are dependent exactly when their product is a square.
  for (std::uint64_t s = 0; s < 60; ++s) {
    Element a = random_unit(f, 2 * s, 3), b = random_unit(f, 2 * s + 1, 3);
    CHECK(square_dependence({a, b}).has_value() == is_square(a * b));
  }
  Field g = make_field("GF(4)(t,u)");
  for (std::uint64_t s = 0; s < 30; ++s) {
    std::vector<Element> v;
    for (int i = 0; i < 5; ++i) v.push_back(random_unit(g, 5 * s + i, 2));
    auto c = square_dependence(v);
    REQUIRE(c);  // [F : F^2] = 4
    Element acc = g.zero();
    bool nonzero = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      acc = acc + (*c)[i] * (*c)[i] * v[i];
      nonzero = nonzero || !(*c)[i].is_zero();
    }
    CHECK(acc.is_zero());
    CHECK(nonzero);
  }
  CHECK_FALSE(square_dependence({el(g, "1"), el(g, "t"), el(g, "u"), el(g, "t*u")}));
}

TEST_CASE("square_reduce picks one representative per class") {
  for (const char* spec : {"GF(2)(t)", "GF(2)(t,u)", "GF(4)(t)"}) {
    Field f = make_field(spec);
    for (std::uint64_t s = 0; s < 40; ++s) {
      Element a = random_unit(f, 2 * s, 3), r = random_unit(f, 2 * s + 1, 3);
      Element red = square_reduce(a);
      CHECK(is_square(red / a));
      CHECK(square_reduce(a * r * r) == red);
      CHECK(red.denominator() == f.one().numerator());
    }
  }
  Field f7 = make_field("GF(7)");
  CHECK(square_reduce(f7.from_int(4)).is_one());
  CHECK(square_reduce(f7.from_int(5)) == square_reduce(f7.from_int(3)));
}

TEST_CASE("random units are deterministic and bounded") {
  Field f5 = make_field("GF(5)");
  CHECK(random_unit(f5, 0) == random_unit(f5, 0));
  CHECK_FALSE(random_unit(f5, 0).is_zero());
  Field f = make_field("GF(2)(t)");
  Element a = random_unit(f, 1);
  CHECK(a == random_unit(f, 1));
  CHECK(poly::total_degree(a.numerator()) <= 4);
  CHECK(poly::total_degree(a.denominator()) <= 4);
}

TEST_CASE("element parser") {
  Field f = make_field("GF(4)(t,u)");
  CHECK(el(f, "t^2 u") == el(f, "t*t*u"));
  CHECK(el(f, "x^2") == el(f, "x+1"));
  CHECK(el(f, "t^-1") == el(f, "1/t"));
  CHECK(el(f, "(t+u)^2") == el(f, "t^2+u^2"));
  Bindings b{{"a", el(f, "t+1")}};
  CHECK(f.parse("a^2", b) == el(f, "t^2+1"));
  try {
    f.parse("t + * u");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(f.parse("1/0"), ParseError);
  CHECK_THROWS_AS(f.parse("v"), ParseError);
  Field f5 = make_field("GF(5)");
  CHECK(f5.parse("-1") == f5.from_int(4));
  CHECK(f5.parse("3/2") == f5.from_int(4));
}
