#include <doctest.h>

#include "mwk/error.hpp"
#include "mwk/kmw.hpp"
#include "oracle.hpp"

using namespace mwk;

namespace {

MWExpr px(const Field& f, const char* s, const Bindings& b = {}) { return parse_expr(f, s, b); }

Verdict eq(const Field& f, const char* a, const char* b, const Bindings& bind = {}) {
  return kmw_equal(px(f, a, bind), px(f, b, bind)).verdict;
}

Bindings vars(const Field& f, std::initializer_list<std::pair<const char*, const char*>> kv) {
  Bindings b;
  for (auto [k, v] : kv) b.emplace(k, f.parse(v));
  return b;
}

const char* kFields[] = {"GF(2)", "GF(3)", "GF(5)", "GF(7)", "GF(4)", "GF(8)", "GF(9)", "GF(2)(t)", "GF(4)(t)",
                         "GF(2)(t,u)"};

}  // namespace

TEST_CASE("parsing") {
  Field f = make_field("GF(2)(t)");
  MWExpr e = px(f, "eta [t] + 2");
  REQUIRE(e.kind() == MWKind::Sum);
  REQUIRE(e.children().size() == 2);
  CHECK(e.children()[0].kind() == MWKind::Product);
  CHECK(e.children()[0].children()[0].kind() == MWKind::Eta);
  CHECK(e.children()[0].children()[1].kind() == MWKind::Bracket);
  CHECK(e.children()[1].kind() == MWKind::Integer);
  CHECK(e.children()[1].value() == 2);

  CHECK_THROWS_AS(px(f, "[0]"), ParseError);
  CHECK_THROWS_AS(px(f, "[t"), ParseError);
  CHECK_THROWS_AS(px(f, "eta +"), ParseError);
  CHECK_THROWS_AS(px(f, "[w]"), ParseError);
  CHECK(flatten(px(f, "<t>")) == flatten(px(f, "1 + eta [t]")));
  CHECK(flatten(px(f, "[a]", vars(f, {{"a", "t+1"}}))) == flatten(px(f, "[t+1]")));
  try {
    px(f, "[t] + * 2");
    FAIL("no error");
  } catch (const ParseError& err) {
    CHECK(err.position() == 6);
  }
}

TEST_CASE("printing round trips") {
  for (const char* spec : {"GF(2)(t)", "GF(5)", "GF(2)(t,u)", "GF(9)"}) {
    Field f = make_field(spec);
    for (const char* text : {"eta [t] + 2", "-[t][t+1] - 3 eta", "<t>^2 - h", "eps [t] (eta - 1)", "n_eps(-3) [t]",
                             "-(-[t])", "2 - -1"}) {
      if (!f.is_function_field() && std::string(text).find('t') != std::string::npos) continue;
      MWExpr e = px(f, text);
      CHECK(flatten(px(f, print(e).c_str())) == flatten(e));
    }
  }
}

TEST_CASE("monomial expansion") {
  Field f = make_field("GF(2)(t,u)");
  Element a = f.parse("t"), b = f.parse("u");
  auto m = monomial_expand(angle(a) * angle(b));
  REQUIRE(m.size() == 1);
  const auto& s = m.at(0);
  std::map<Monomial, long long> expect{
      {Monomial{0, {}}, 1}, {Monomial{1, {a}}, 1}, {Monomial{1, {b}}, 1}, {Monomial{2, {a, b}}, 1}};
  CHECK(s.terms == expect);

  Field f5 = make_field("GF(5)");
  auto h = monomial_expand(MWExpr::eta(f5) * hyperbolic(f5));
  REQUIRE(h.count(-1));
  std::map<Monomial, long long> eh{{Monomial{2, {f5.from_int(-1)}}, 1}, {Monomial{1, {}}, 2}};
  CHECK(h.at(-1).terms == eh);

  auto br = monomial_expand(MWExpr::bracket(a));
  CHECK(br.at(1).terms == std::map<Monomial, long long>{{Monomial{0, {a}}, 1}});

  // η commutes past brackets.
  auto c = monomial_expand(px(f, "[t] eta [u]"));
  CHECK(c.at(1).terms == std::map<Monomial, long long>{{Monomial{1, {a, b}}, 1}});

  CHECK_THROWS_AS(homogeneous_degree(px(f, "[t] + eta")), MathError);
  CHECK(homogeneous_degree(px(f, "[t] eta [u] [t]")) == 2);
}

TEST_CASE("normalize examples") {
  Field f = make_field("GF(2)(t)");
  auto one = normalize(px(f, "[1]"));
  CHECK(one.degree == 1);
  CHECK(one.is_zero());
  Field f5 = make_field("GF(5)");
  auto eh = normalize(px(f5, "eta h"));
  CHECK(eh.degree == -1);
  CHECK(eh.is_zero());
  for (const char* spec : kFields) {
    Field k = make_field(spec);
    for (std::uint64_t s = 0; s < 10; ++s) {
      Bindings b{{"a", random_unit(k, s, 2)}};
      auto n = normalize(px(k, "[a][-a]", b));
      CHECK(n.degree == 2);
      CHECK(n.is_zero());
    }
  }
  CHECK_THROWS_AS(normalize(px(f, "[t] + 1")), MathError);
  CHECK(normalize(px(f, "<t>")).kind() == "GW");
  CHECK(normalize(px(f, "eta")).kind() == "W");
}

TEST_CASE("equality examples") {
  for (const char* spec : kFields) {
    Field f = make_field(spec);
    for (std::uint64_t s = 0; s < 10; ++s) {
      Bindings b{{"a", random_unit(f, 2 * s, 2)}, {"b", random_unit(f, 2 * s + 1, 2)}};
      CHECK(eq(f, "[a*b]", "[a] + [b] + eta [a][b]", b) == Verdict::Equal);
      CHECK(eq(f, "[a][b]", "eps [b][a]", b) == Verdict::Equal);
      CHECK(eq(f, "<a><1/a>", "1", b) == Verdict::Equal);
      CHECK(eq(f, "[a/b]", "[a] - <a/b>[b]", b) == Verdict::Equal);
      CHECK(eq(f, "eps^2", "1", b) == Verdict::Equal);
      CHECK(eq(f, "eps eta", "eta", b) == Verdict::Equal);
      CHECK(eq(f, "eta [a]", "[a] eta", b) == Verdict::Equal);
    }
  }
  Field f3 = make_field("GF(3)");
  CHECK(eq(f3, "eta^2 <2>", "eta^2 <1>") == Verdict::NotEqual);
  CHECK_FALSE(oracle::witt_equivalent(f3.base(), {2}, {1}));
  CHECK_THROWS_AS(kmw_equal(px(f3, "[2]"), px(f3, "eta")), MathError);
  Field f = make_field("GF(2)(t)");
  CHECK(eq(f, "[t]", "[t+1]") == Verdict::NotEqual);
  CHECK(eq(f, "<t>", "<t^3>") == Verdict::Equal);
  CHECK(eq(f, "<t>", "<t+1>") == Verdict::NotEqual);
}

TEST_CASE("negative degrees agree with the Witt oracle") {
  for (const char* spec : {"GF(3)", "GF(5)", "GF(7)", "GF(9)", "GF(4)"}) {
    Field f = make_field(spec);
    const FiniteField& F = f.base();
    auto forms = oracle::unit_multisets(F, 1);
    auto pairs = oracle::unit_multisets(F, 2);
    forms.insert(forms.end(), pairs.begin(), pairs.end());
    for (const auto& a : forms)
      for (const auto& b : forms) {
        MWExpr x = MWExpr::integer(f, 0), y = MWExpr::integer(f, 0);
        for (auto v : a) x = x + angle(Element::make_finite(f.data(), v));
        for (auto v : b) y = y + angle(Element::make_finite(f.data(), v));
        MWExpr e2 = MWExpr::power(MWExpr::eta(f), 2);
        bool same = oracle::witt_equivalent(F, a, b);
        CHECK((kmw_equal(e2 * x, e2 * y).verdict == Verdict::Equal) == same);
      }
  }
}

TEST_CASE("theta") {
  Field f = make_field("GF(2)(t,u)");
  Element t = f.parse("t"), u = f.parse("u");
  auto a = theta(px(f, "[t]"));
  CHECK(a.degree == 1);
  CHECK(witt_equal(a.cls.witt, witt_class(DiagonalForm(f, {f.one(), t}))));
  auto b = theta(px(f, "[t][u]"));
  CHECK(b.degree == 2);
  CHECK(witt_equal(b.cls.witt, witt_class(DiagonalForm(f, {f.one(), t, u, t * u}))));
  auto n = theta(px(f, "eta"));
  CHECK(n.degree == -1);
  CHECK(witt_equal(n.cls.witt, witt_class(DiagonalForm(f, {f.one()}))));
  CHECK_FALSE(a.partial);
  CHECK(theta(px(make_field("GF(5)"), "[2]")).partial);

  CHECK(kw_equal(px(f, "h"), px(f, "0")).verdict == Verdict::Equal);
  CHECK(kw_equal(px(f, "eps"), px(f, "-1")).verdict == Verdict::Equal);
  CHECK(kw_equal(px(f, "[t][t]"), px(f, "0")).verdict == Verdict::Equal);
  CHECK(kw_equal(px(f, "[t^2+u^2]"), px(f, "0")).verdict == Verdict::Equal);
  CHECK(kw_equal(px(f, "[t][u]"), px(f, "0")).verdict == Verdict::NotEqual);

  // Degree-1 round trip through the Pfister decomposition.
  for (const char* spec : {"GF(2)(t)", "GF(4)(t)", "GF(2)(t,u)"}) {
    Field k = make_field(spec);
    for (std::uint64_t s = 0; s < 40; ++s) {
      Element x = random_unit(k, s, 2);
      auto th = theta(MWExpr::bracket(x));
      CHECK(witt_equal(th.cls.witt, witt_class(pfister(k, {x}))));
      auto parts = pfister_decompose(th.cls);
      MWExpr back = MWExpr::integer(k, 0);
      for (const auto& p : parts) back = back + MWExpr::bracket(p[0]);
      CHECK(kw_equal(back, MWExpr::bracket(x)).verdict == Verdict::Equal);
    }
  }
}

TEST_CASE("phi_neg") {
  Field f = make_field("GF(3)");
  WittClass w2 = witt_class(DiagonalForm(f, {f.from_int(2)}));
  CHECK(flatten(phi_neg(w2, 2)) == flatten(px(f, "eta^2 <2>")));
  CHECK(flatten(phi_neg(WittClass(f), 3)) == flatten(px(f, "0")));
  CHECK(kmw_equal(phi_neg(witt_class(DiagonalForm(f, {f.one()})), 1), px(f, "eta")).verdict == Verdict::Equal);
  for (const char* spec : kFields) {
    Field k = make_field(spec);
    for (std::uint64_t s = 0; s < 10; ++s) {
      std::vector<Element> e;
      for (std::uint64_t i = 0; i < 1 + s % 3; ++i) e.push_back(random_unit(k, 10 * s + i, 2));
      WittClass w = witt_class(DiagonalForm(k, e));
      for (unsigned n = 1; n <= 3; ++n) {
        if (witt_is_zero(w)) {
          CHECK(flatten(phi_neg(w, n)) == flatten(MWExpr::integer(k, 0)));
          continue;
        }
        auto c = normalize(phi_neg(w, n));
        REQUIRE(c.degree == -static_cast<int>(n));
        CHECK(witt_equal(std::get<WittClass>(c.payload), w));
      }
    }
  }
}

TEST_CASE("localization") {
  Field f = make_field("GF(2)(t)");
  Element t = f.parse("t");
  auto b = localize_eta(px(f, "[t]"));
  REQUIRE(b.size() == 1);
  REQUIRE(b.count(-1));
  CHECK(witt_equal(b.at(-1), witt_class(DiagonalForm(f, {t})) - witt_class(DiagonalForm(f, {f.one()}))));
  CHECK(localize_eta(px(f, "h")).empty());
  auto e = localize_eta(px(f, "eta"));
  REQUIRE(e.count(1));
  CHECK(witt_equal(e.at(1), witt_class(DiagonalForm(f, {f.one()}))));
  Field f5 = make_field("GF(5)");
  CHECK(localize_eta(px(f5, "h")).empty());
  CHECK(localize_eta(px(f5, "eta h [2]")).empty());
}

TEST_CASE("constants") {
  for (const char* spec : {"GF(2)(t)", "GF(4)", "GF(2)"}) {
    Field f = make_field(spec);
    for (long long n = -4; n <= 4; ++n)
      CHECK(kmw_equal(n_epsilon(f, n), MWExpr::integer(f, n)).verdict == Verdict::Equal);
  }
  for (const char* spec : {"GF(3)", "GF(5)", "GF(2)(t)"}) {
    Field f = make_field(spec);
    CHECK(kmw_equal(n_epsilon(f, 2), hyperbolic(f)).verdict == Verdict::Equal);
    CHECK(kmw_equal(n_epsilon(f, 0), MWExpr::integer(f, 0)).verdict == Verdict::Equal);
    CHECK(kmw_equal(epsilon(f), -angle(-f.one())).verdict == Verdict::Equal);
    CHECK(kmw_equal(n_epsilon(f, -1), px(f, "eps")).verdict == Verdict::Equal);
  }
  Field f3 = make_field("GF(3)");
  CHECK(kmw_equal(n_epsilon(f3, 2), MWExpr::integer(f3, 2)).verdict == Verdict::NotEqual);
}

TEST_CASE("all units squares collapse eta on brackets") {
  for (const char* spec : {"GF(2)", "GF(4)", "GF(8)"}) {
    Field f = make_field(spec);
    for (const auto& u : f.elements()) {
      if (u.is_zero()) continue;
      MWExpr b = MWExpr::bracket(u);
      CHECK(kmw_equal(MWExpr::eta(f) * b, MWExpr::integer(f, 0)).verdict == Verdict::Equal);
      CHECK(kmw_equal(angle(u), MWExpr::integer(f, 1)).verdict == Verdict::Equal);
      CHECK(kmw_equal(MWExpr::integer(f, 2) * MWExpr::eta(f), MWExpr::integer(f, 0)).verdict == Verdict::Equal);
    }
  }
}
