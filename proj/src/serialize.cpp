#include "mwk/serialize.hpp"

#include "mwk/error.hpp"

namespace mwk {

namespace {

Json elements(const std::vector<Element>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

std::vector<Element> parse_elements(const Field& field, const Json& j) {
  if (!j.is_array()) throw MathError("expected a JSON array of elements");
  std::vector<Element> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw MathError("expected an element string");
    out.push_back(field.parse(x.get<std::string>()));
  }
  return out;
}

}  // namespace

Json to_json(const DiagonalForm& f) { return elements(f.entries()); }

Json to_json(const GramMatrix& g) {
  Json a = Json::array();
  for (const auto& row : g.matrix()) a.push_back(elements(row));
  return a;
}

Json to_json(const GWElement& x) {
  Json a = Json::array();
  for (const auto& [u, m] : x.terms()) a.push_back({{"unit", u.to_string()}, {"multiplicity", m}});
  return a;
}

Json to_json(const WittClass& w, int degree) { return {{"form", to_json(w.representative())}, {"degree", degree}}; }

Json to_json(const IFiltClass& c) {
  Json j = to_json(c.witt, c.degree);
  j["certificate"] = c.certificate;
  return j;
}

Json to_json(const MilnorSymbolSum& s) {
  Json terms = Json::array();
  for (const auto& [k, c] : s.terms()) terms.push_back({{"symbol", elements(k)}, {"coeff", c}});
  return {{"degree", s.degree()}, {"terms", terms}};
}

Json to_json(const JElement& j) {
  return {{"milnor", to_json(j.milnor)}, {"witt", to_json(j.witt)}, {"certificate", j.certificate}};
}

Json to_json(const CanonicalKMW& c) {
  Json payload;
  if (const auto* w = std::get_if<WittClass>(&c.payload)) {
    payload = {{"witt", to_json(w->representative())}};
  } else if (const auto* g = std::get_if<GWCanonical>(&c.payload)) {
    payload = {{"rank", g->rank}, {"witt", to_json(g->witt.representative())}};
  } else {
    payload = to_json(std::get<JElement>(c.payload));
    payload["milnor_decidable"] = c.milnor_decidable;
  }
  return {{"degree", c.degree}, {"kind", c.kind()}, {"zero", c.is_zero()}, {"payload", payload}};
}

Json to_json(const Decision& d) { return {{"verdict", to_string(d.verdict)}, {"report", d.report}}; }

DiagonalForm diagonal_from_json(const Field& field, const Json& j) {
  return DiagonalForm(field, parse_elements(field, j));
}

GramMatrix gram_from_json(const Field& field, const Json& j) {
  if (!j.is_array()) throw MathError("expected a JSON array of rows");
  Matrix m;
  for (const auto& row : j) m.push_back(parse_elements(field, row));
  return GramMatrix(field, std::move(m));
}

GWElement gw_from_json(const Field& field, const Json& j) {
  if (!j.is_array()) throw MathError("expected a JSON array of generators");
  GWElement x(field);
  for (const auto& t : j) {
    if (!t.contains("unit") || !t.contains("multiplicity")) throw MathError("generator needs unit and multiplicity");
    x += GWElement::generator(field.parse(t.at("unit").get<std::string>()), t.at("multiplicity").get<long long>());
  }
  return x;
}

WittClass witt_from_json(const Field& field, const Json& j) {
  const Json& form = j.is_object() ? j.at("form") : j;
  return witt_class(diagonal_from_json(field, form));
}

MilnorSymbolSum symbols_from_json(const Field& field, const Json& j) {
  MilnorSymbolSum s(field, j.at("degree").get<int>());
  for (const auto& t : j.at("terms")) s.add_term(parse_elements(field, t.at("symbol")), t.at("coeff").get<long long>());
  return s;
}

}  // namespace mwk
