#include <doctest.h>

#include "mwk/error.hpp"
#include "mwk/serialize.hpp"

using namespace mwk;

TEST_CASE("diagonal and gram round trips") {
  for (const char* spec : {"GF(2)(t,u)", "GF(9)", "GF(4)(t)"}) {
    Field f = make_field(spec);
    for (std::uint64_t s = 0; s < 20; ++s) {
      std::vector<Element> e;
      for (std::uint64_t i = 0; i < 1 + s % 4; ++i) e.push_back(random_unit(f, 10 * s + i, 2));
      DiagonalForm d(f, e);
      Json j = to_json(d);
      CHECK(j.is_array());
      CHECK(j.size() == e.size());
      CHECK(diagonal_from_json(f, Json::parse(j.dump())) == d);
      GramMatrix g = GramMatrix::from_diagonal(d);
      CHECK(gram_from_json(f, Json::parse(to_json(g).dump())).matrix() == g.matrix());
    }
  }
  Field f = make_field("GF(2)(t)");
  CHECK(to_json(DiagonalForm(f, {f.parse("t"), f.one()})) == Json::parse(R"(["t","1"])"));
  CHECK_THROWS(diagonal_from_json(f, Json::parse(R"(["t","0"])")));
  CHECK_THROWS(diagonal_from_json(f, Json::parse(R"({"a":1})")));
  CHECK_THROWS(gram_from_json(f, Json::parse(R"([["1","1"],["1","1"]])")));
}

TEST_CASE("gw and witt round trips") {
  Field f = make_field("GF(2)(t,u)");
  for (std::uint64_t s = 0; s < 20; ++s) {
    GWElement x(f);
    for (std::uint64_t i = 0; i < 1 + s % 4; ++i)
      x += GWElement::generator(random_unit(f, 10 * s + i, 2), static_cast<long long>(i) - 1);
    GWElement y = gw_from_json(f, Json::parse(to_json(x).dump()));
    CHECK(y.terms() == x.terms());
    WittClass w = witt_class(x);
    Json jw = to_json(w, -2);
    CHECK(jw["degree"] == -2);
    CHECK(witt_equal(witt_from_json(f, jw), w));
  }
}

TEST_CASE("symbol round trips") {
  Field f = make_field("GF(4)(t)");
  for (std::uint64_t s = 0; s < 20; ++s) {
    MilnorSymbolSum m = MilnorSymbolSum::symbol(f, {random_unit(f, 3 * s, 2), random_unit(f, 3 * s + 1, 2)}, 2) +
                        MilnorSymbolSum::symbol(f, {random_unit(f, 3 * s + 2, 2), f.generator()}, -1);
    MilnorSymbolSum back = symbols_from_json(f, Json::parse(to_json(m).dump()));
    CHECK(back.degree() == 2);
    CHECK(back.terms() == m.terms());
  }
}

TEST_CASE("canonical results") {
  Field f = make_field("GF(2)(t)");
  Json z = to_json(normalize(parse_expr(f, "[t][1-t]")));
  CHECK(z["degree"] == 2);
  CHECK(z["kind"] == "J");
  CHECK(z.contains("payload"));
  Json g = to_json(normalize(parse_expr(f, "<t> + 1")));
  CHECK(g["degree"] == 0);
  CHECK(g["kind"] == "GW");
  Json w = to_json(normalize(parse_expr(f, "eta <t>")));
  CHECK(w["degree"] == -1);
  CHECK(w["kind"] == "W");
  Json d = to_json(kmw_equal(parse_expr(f, "[t]"), parse_expr(f, "[t]")));
  CHECK(d["verdict"] == "Equal");
  // Output is deterministic.
  CHECK(to_json(normalize(parse_expr(f, "[t][t+1] + eta [t][t][t+1]"))).dump() ==
        to_json(normalize(parse_expr(f, "[t][t+1] + eta [t][t][t+1]"))).dump());
}
