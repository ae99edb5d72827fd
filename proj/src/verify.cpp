#include "mwk/verify.hpp"

#include <algorithm>
#include <map>

#include "mwk/error.hpp"

namespace mwk {

std::uint64_t mix_seed(std::uint64_t seed, const std::string& name, std::uint64_t index) {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::uint64_t z = seed ^ h ^ (index * 0x9E3779B97F4A7C15ull);
  // splitmix64 finalizer
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// ---------------------------------------------------------------- random expressions

MWExpr random_monomial(const Field& field, Rng& rng, unsigned max_len, unsigned degree_bound) {
  const unsigned r = static_cast<unsigned>(rng.range(0, max_len));
  const unsigned m = static_cast<unsigned>(rng.range(0, max_len));
  std::vector<MWExpr> f;
  for (unsigned i = 0; i < m; ++i) f.push_back(MWExpr::eta(field));
  for (unsigned i = 0; i < r; ++i) f.push_back(MWExpr::bracket(rng.unit(field, degree_bound)));
  if (f.empty()) return MWExpr::integer(field, 1);
  if (f.size() == 1) return f[0];
  return MWExpr::product(field, std::move(f));
}

MWExpr random_expr(const Field& field, Rng& rng, unsigned depth, unsigned degree_bound) {
  const long long choice = rng.range(0, depth == 0 ? 3 : 8);
  switch (choice) {
    case 0:
      return MWExpr::bracket(rng.unit(field, degree_bound));
    case 1:
      return MWExpr::eta(field);
    case 2:
      return MWExpr::integer(field, rng.range(-3, 3));
    case 3:
      return angle(rng.unit(field, degree_bound));
    case 4:
    case 5: {
      std::vector<MWExpr> t;
      const long long n = rng.range(2, 3);
      for (long long i = 0; i < n; ++i) t.push_back(random_expr(field, rng, depth - 1, degree_bound));
      return MWExpr::sum(field, std::move(t));
    }
    case 6: {
      std::vector<MWExpr> t;
      const long long n = rng.range(2, 3);
      for (long long i = 0; i < n; ++i) t.push_back(random_expr(field, rng, depth - 1, degree_bound));
      return MWExpr::product(field, std::move(t));
    }
    case 7:
      return MWExpr::neg(random_expr(field, rng, depth - 1, degree_bound));
    default:
      return MWExpr::power(random_expr(field, rng, depth - 1, degree_bound), static_cast<unsigned>(rng.range(0, 3)));
  }
}

// ---------------------------------------------------------------- reports

bool SuiteReport::ok() const {
  return std::all_of(identities.begin(), identities.end(), [](const IdentityReport& r) { return r.failures.empty(); });
}

Json SuiteReport::to_json() const {
  Json ids = Json::array();
  for (const auto& r : identities) {
    Json fails = Json::array();
    for (const auto& f : r.failures) fails.push_back({{"inputs", f.inputs}, {"expected", f.expected}, {"got", f.got}});
    ids.push_back({{"schema", "mwk.verify.v1"},
                   {"field", field},
                   {"suite", suite},
                   {"identity", r.identity},
                   {"cases", r.cases},
                   {"passed", r.passed},
                   {"skipped", r.skipped},
                   {"failures", fails}});
  }
  return {{"schema", "mwk.verify.v1"}, {"field", field}, {"suite", suite}, {"seed", seed},
          {"cases", cases},            {"ok", ok()},     {"identities", ids}};
}

// ---------------------------------------------------------------- identity builders

namespace {

using Outcome = CaseOutcome;
using Status = CaseOutcome::Status;

Json bindings_json(const Bindings& b) {
  Json j = Json::object();
  for (const auto& [k, v] : b) j[k] = v.to_string();
  return j;
}

Outcome pass(Json inputs = Json::object()) { return Outcome{Status::Pass, std::move(inputs), "", ""}; }
Outcome fail(Json inputs, std::string expected, std::string got) {
  return Outcome{Status::Fail, std::move(inputs), std::move(expected), std::move(got)};
}
Outcome skip(Json inputs = Json::object()) { return Outcome{Status::Skip, std::move(inputs), "", ""}; }
Outcome check(bool ok, Json inputs, std::string expected, std::string got) {
  return ok ? pass(std::move(inputs)) : fail(std::move(inputs), std::move(expected), std::move(got));
}

enum class Mode { KMW, KW };

using Pred = std::function<bool(Bindings&)>;

constexpr int kAttempts = 32;

// Samples the named units until `pred` (which may add derived bindings) holds.
std::optional<Bindings> sample(const Field& f, Rng& rng, unsigned bound, const std::vector<std::string>& vars,
                               const Pred& pred) {
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Bindings b;
    for (const auto& v : vars) b.emplace(v, rng.unit(f, bound));
    if (!pred || pred(b)) return b;
  }
  return std::nullopt;
}

IdentityCheck expr_id(std::string name, std::vector<std::string> vars, std::string lhs, std::string rhs,
                      Mode mode = Mode::KMW, Pred pred = {}) {
  auto run = [=](const Field& f, Rng& rng, unsigned bound) -> Outcome {
    auto b = sample(f, rng, bound, vars, pred);
    if (!b) return skip();
    Json in = bindings_json(*b);
    in["lhs"] = lhs;
    in["rhs"] = rhs;
    MWExpr x = parse_expr(f, lhs, *b), y = parse_expr(f, rhs, *b);
    Decision d = mode == Mode::KMW ? kmw_equal(x, y) : kw_equal(x, y);
    return check(d.verdict == Verdict::Equal, in, "Equal", to_string(d.verdict) + ": " + d.report);
  };
  return IdentityCheck{std::move(name), run};
}

Pred not_one(const std::string& v) {
  return [v](Bindings& b) { return !b.at(v).is_one(); };
}

Pred sum_nonzero(const std::string& x, const std::string& y) {
  return [x, y](Bindings& b) { return !(b.at(x) + b.at(y)).is_zero(); };
}

bool char2(const Field& f) { return f.characteristic() == 2; }

// ---------------------------------------------------------------- suites

std::vector<IdentityCheck> kmw_suite(const Field&) {
  return {expr_id("KMW1", {"a"}, "[a][1-a]", "0", Mode::KMW, not_one("a")),
          expr_id("KMW2", {"a", "b"}, "[a b]", "[a] + [b] + eta [a][b]"),
          expr_id("KMW3", {"a"}, "eta [a]", "[a] eta"),
          expr_id("KMW4", {}, "eta h", "0")};
}

std::vector<IdentityCheck> lemma1_suite(const Field&) {
  return {expr_id("lemma1.a.left", {"a", "b"}, "[a b]", "[a] + <a>[b]"),
          expr_id("lemma1.a.right", {"a", "b"}, "[a b]", "[a]<b> + [b]"),
          expr_id("lemma1.b.multiplicative", {"a", "b"}, "<a b>", "<a><b>"),
          expr_id("lemma1.b.central", {"a", "b"}, "<a>[b]", "[b]<a>"),
          expr_id("lemma1.c.angle_one", {}, "<1>", "1"),
          expr_id("lemma1.c.bracket_one", {}, "[1]", "0"),
          expr_id("lemma1.d.inverse", {"a"}, "<a><a^-1>", "1"),
          expr_id("lemma1.d.inverse_right", {"a"}, "<a^-1><a>", "1"),
          expr_id("lemma1.e.quotient", {"a", "b"}, "[a/b]", "[a] - <a/b>[b]"),
          expr_id("lemma1.e.reciprocal", {"a"}, "[a^-1]", "-<a^-1>[a]")};
}

std::vector<IdentityCheck> lemma2_suite(const Field&) {
  return {expr_id("lemma2.a", {"a"}, "[a][-a]", "0"),
          expr_id("lemma2.b.1", {"a"}, "[a][a]", "[a][-1]"),
          expr_id("lemma2.b.2", {"a"}, "[a][a]", "eps [a][-1]"),
          expr_id("lemma2.b.3", {"a"}, "[a][a]", "[-1][a]"),
          expr_id("lemma2.b.4", {"a"}, "[a][a]", "eps [-1][a]"),
          expr_id("lemma2.c", {"a"}, "<a^2>", "1"),
          expr_id("lemma2.d", {"a"}, "<a> + <-a>", "h"),
          expr_id("lemma2.e", {"a", "b"}, "[a][b]", "eps [b][a]"),
          expr_id("lemma2.eps_square", {}, "eps eps", "1"),
          expr_id("lemma2.eps_eta", {}, "eps eta", "eta")};
}

std::vector<IdentityCheck> puissances_suite(const Field&) {
  std::vector<IdentityCheck> out;
  for (int n = -5; n <= 5; ++n)
    out.push_back(expr_id("puissances.n=" + std::to_string(n), {"a"}, "[a^" + std::to_string(n) + "]",
                          "n_eps(" + std::to_string(n) + ")[a]"));
  return out;
}

GWElement gen(const Element& u, long long m = 1) { return GWElement::generator(u, m); }

IdentityCheck gw_form_id(std::string name, std::vector<std::string> vars, Pred pred,
                         std::function<std::pair<GWElement, GWElement>(const Bindings&)> sides) {
  auto run = [=](const Field& f, Rng& rng, unsigned bound) -> Outcome {
    auto b = sample(f, rng, bound, vars, pred);
    if (!b) return skip();
    auto [x, y] = sides(*b);
    Json in = bindings_json(*b);
    in["lhs"] = x.to_string();
    in["rhs"] = y.to_string();
    return check(gw_equal(x, y), in, "gw_equal", "classes differ");
  };
  return IdentityCheck{std::move(name), run};
}

std::vector<IdentityCheck> gw_suite(const Field& f) {
  const Element one = f.one();
  return {
      expr_id("GW1", {"a", "b"}, "<a b^2>", "<a>"),
      expr_id("GW2", {"a"}, "<a> + <-a>", "1 + <-1>"),
      expr_id("GW3", {"a", "b"}, "<a> + <b>", "<a+b> + <(a+b) a b>", Mode::KMW, sum_nonzero("a", "b")),
      gw_form_id("GW1.forms", {"a", "b"}, {},
                 [](const Bindings& b) {
                   return std::pair{gen(b.at("a") * b.at("b") * b.at("b")), gen(b.at("a"))};
                 }),
      gw_form_id("GW2.forms", {"a"}, {},
                 [one](const Bindings& b) {
                   return std::pair{gen(b.at("a")) + gen(-b.at("a")), gen(one) + gen(-one)};
                 }),
      gw_form_id("GW3.forms", {"a", "b"}, sum_nonzero("a", "b"),
                 [](const Bindings& b) {
                   const Element &a = b.at("a"), &c = b.at("b");
                   return std::pair{gen(a) + gen(c), gen(a + c) + gen((a + c) * a * c)};
                 }),
  };
}

std::vector<IdentityCheck> kw_char2_suite(const Field& f) {
  if (!char2(f)) return {};
  auto derive_ii = [](Bindings& b) {
    Element c = b.at("u") * b.at("u") + b.at("v") * b.at("v") * b.at("a");
    if (c.is_zero()) return false;
    b.insert_or_assign("c", c);
    return true;
  };
  auto derive_iii = [](Bindings& b) {
    Element c = b.at("u") * b.at("u") * b.at("a") + b.at("v") * b.at("v") * b.at("b");
    if (c.is_zero()) return false;
    b.insert_or_assign("c", c);
    return true;
  };
  std::vector<IdentityCheck> out = {
      expr_id("simpl_1.i", {}, "h", "2"),
      expr_id("simpl_1.ii", {}, "eps", "-1"),
      expr_id("simpl_1.iv", {"a"}, "[a]^2", "0"),
      expr_id("square_in_brack", {"a"}, "[a^2]", "0", Mode::KW),
      expr_id("GW_relations_in_KW.i", {"a", "b"}, "[a^2 b]", "[b]", Mode::KW),
      expr_id("GW_relations_in_KW.ii", {"a"}, "[a] + [-a]", "[1] + [-1]", Mode::KW),
      expr_id("GW_relations_in_KW.iii", {"a", "b"}, "[a] + [b]", "[a+b] + [a b (a+b)]", Mode::KW,
              sum_nonzero("a", "b")),
      expr_id("product_lemma.i", {"a", "b"}, "[a][b]", "[a][a b]", Mode::KW),
      expr_id("product_lemma.ii", {"a", "b", "u", "v"}, "[a][b]", "[a][b c]", Mode::KW, derive_ii),
      expr_id("product_lemma.iii", {"a", "b", "u", "v"}, "[a][b]", "[a b][c]", Mode::KW, derive_iii),
      expr_id("KW_commutative", {"a", "b"}, "[a][b]", "[b][a]", Mode::KW),
  };
  for (int n = -5; n <= 5; ++n)
    out.push_back(expr_id("simpl_1.iii.n=" + std::to_string(n), {}, "n_eps(" + std::to_string(n) + ")",
                          std::to_string(n)));
  return out;
}

Outcome phi_psi_case(const Field& f, Rng& rng, unsigned bound, unsigned n) {
  const long long r = rng.range(1, 4);
  std::vector<Element> e;
  for (long long i = 0; i < r; ++i) e.push_back(rng.unit(f, bound));
  WittClass w = witt_class(DiagonalForm(f, e));
  MWExpr x = phi_neg(w, n);
  Json in = {{"form", to_json(DiagonalForm(f, e))}, {"n", n}, {"phi", print(x)}};
  CanonicalKMW c = normalize(x);
  if (w.is_zero()) return check(c.is_zero(), in, "0", c.to_string());
  const auto* back = std::get_if<WittClass>(&c.payload);
  if (!back) return fail(in, "W payload", c.kind());
  return check(c.degree == -static_cast<int>(n) && witt_equal(*back, w), in, w.to_string(), back->to_string());
}

WittClass payload_witt(const CanonicalKMW& c) {
  if (const auto* w = std::get_if<WittClass>(&c.payload)) return *w;
  if (const auto* g = std::get_if<GWCanonical>(&c.payload)) return g->witt;
  return std::get<JElement>(c.payload).witt.witt;
}

// η^m[u₁]⋯[u_r] with r ≥ m + 1 (positive degree).
MWExpr positive_monomial(const Field& f, Rng& rng, unsigned bound) {
  const long long m = rng.range(0, 1);
  const long long r = rng.range(m + 1, m + 2);
  std::vector<MWExpr> fs;
  for (long long i = 0; i < m; ++i) fs.push_back(MWExpr::eta(f));
  for (long long i = 0; i < r; ++i) fs.push_back(MWExpr::bracket(rng.unit(f, bound)));
  return fs.size() == 1 ? fs[0] : MWExpr::product(f, std::move(fs));
}

std::vector<IdentityCheck> prop_iso_suite(const Field& f) {
  std::vector<IdentityCheck> out;
  for (unsigned n = 1; n <= 3; ++n)
    out.push_back({"phi_psi.n=" + std::to_string(n),
                   [n](const Field& f, Rng& rng, unsigned bound) { return phi_psi_case(f, rng, bound, n); }});
  out.push_back({"psi_certified", [](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                   MWExpr x = positive_monomial(f, rng, bound);
                   Json in = {{"expr", print(x)}};
                   CanonicalKMW c = normalize(x);
                   return check(std::holds_alternative<JElement>(c.payload), in, "J payload", c.kind());
                 }});
  out.push_back({"eta_act", [](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                   MWExpr x = positive_monomial(f, rng, bound);
                   Json in = {{"expr", print(x)}};
                   JElement j = std::get<JElement>(normalize(x).payload);
                   JElement k = eta_act(j);
                   CanonicalKMW direct = normalize(MWExpr::eta(f) * x);
                   bool ok = direct.degree == k.degree && witt_equal(payload_witt(direct), k.witt.witt);
                   return check(ok, in, k.witt.witt.to_string(), payload_witt(direct).to_string());
                 }});
  out.push_back({"eta_squared", [](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                   MWExpr x = positive_monomial(f, rng, bound);
                   Json in = {{"expr", print(x)}};
                   JElement k = eta_act(eta_act(std::get<JElement>(normalize(x).payload)));
                   CanonicalKMW direct = normalize(MWExpr::power(MWExpr::eta(f), 2) * x);
                   bool ok = direct.degree == k.degree && witt_equal(payload_witt(direct), k.witt.witt);
                   return check(ok, in, k.witt.witt.to_string(), payload_witt(direct).to_string());
                 }});
  // Fields in which every unit is a square.
  if (f.is_finite() && char2(f)) {
    out.push_back(expr_id("all_squares.eta_bracket", {"a"}, "eta [a]", "0"));
    out.push_back(expr_id("all_squares.two_eta", {}, "2 eta", "0"));
    out.push_back(expr_id("all_squares.additive", {"a", "b"}, "[a b]", "[a] + [b]"));
  }
  return out;
}

std::vector<IdentityCheck> kato_suite(const Field& f) {
  if (!char2(f)) return {};
  auto sym = [](const Field& f, std::vector<Element> e, long long c = 1) {
    return MilnorSymbolSum::symbol(f, e, c);
  };
  std::vector<IdentityCheck> out;
  out.push_back({"s1_square_classes", [sym](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                   Element a = rng.unit(f, bound), b = rng.unit(f, bound);
                   if (rng.range(0, 1) == 0) {
                     Element s = rng.unit(f, bound);
                     b = a * s * s;
                   }
                   Json in = {{"a", a.to_string()}, {"b", b.to_string()}};
                   bool k = kato_equal(sym(f, {a}), sym(f, {b}));
                   bool sq = is_square(a * b);
                   return check(k == sq, in, sq ? "equal" : "distinct", k ? "equal" : "distinct");
                 }});
  out.push_back({"steinberg", [sym](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                   auto s = sample(f, rng, bound, {"a"}, not_one("a"));
                   if (!s) return skip();
                   const Element a = s->at("a");
                   Json in = {{"a", a.to_string()}};
                   MilnorSymbolSum x = sym(f, {a, f.one() - a});
                   bool k = kato_equal(x, MilnorSymbolSum(f, 2));
                   Decision d = milnor_equal(x, MilnorSymbolSum(f, 2));
                   return check(k && d.verdict == Verdict::Equal, in, "0", to_string(d.verdict));
                 }});
  out.push_back({"multilinear_rewrite", [sym](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                   Element a = rng.unit(f, bound), b = rng.unit(f, bound), c = rng.unit(f, bound);
                   Json in = {{"a", a.to_string()}, {"b", b.to_string()}, {"c", c.to_string()}};
                   MilnorSymbolSum x = sym(f, {a * b, c});
                   MilnorSymbolSum y = sym(f, {a, c}) + sym(f, {b, c});
                   Decision d = milnor_equal(x, y);
                   return check(kato_equal(x, y) && d.verdict != Verdict::NotEqual, in, "equal",
                                to_string(d.verdict));
                 }});
  out.push_back({"anticommutative", [sym](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                   Element a = rng.unit(f, bound), b = rng.unit(f, bound);
                   Json in = {{"a", a.to_string()}, {"b", b.to_string()}};
                   Decision d = milnor_equal(sym(f, {a, b}), sym(f, {b, a}, -1));
                   return check(d.verdict == Verdict::Equal, in, "Equal", to_string(d.verdict));
                 }});
  out.push_back({"top_degree", [sym](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                   const unsigned n = f.num_variables() + 1;
                   std::vector<Element> e;
                   for (unsigned i = 0; i < n; ++i) e.push_back(rng.unit(f, bound));
                   Json in = {{"symbol", to_json(DiagonalForm(f, e))}};
                   bool k = kato_equal(sym(f, e), MilnorSymbolSum(f, static_cast<int>(n)));
                   return check(k, in, "0 mod 2", "nonzero mod 2");
                 }});
  return out;
}

std::vector<IdentityCheck> vanishing_suite(const Field& f) {
  const unsigned n = char2(f) ? f.num_variables() + 1 : 2;
  std::vector<IdentityCheck> out;
  out.push_back({"theta_product.n=" + std::to_string(n), [n](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                   std::vector<MWExpr> fs;
                   for (unsigned i = 0; i < n; ++i) fs.push_back(MWExpr::bracket(rng.unit(f, bound)));
                   MWExpr x = fs.size() == 1 ? fs[0] : MWExpr::product(f, fs);
                   Json in = {{"expr", print(x)}};
                   GradedIClass t = theta(x);
                   bool ok = witt_is_zero(t.cls.witt);
                   if (ok && char2(f)) ok = kw_equal(x, MWExpr::integer(f, 0)).verdict == Verdict::Equal;
                   return check(ok, in, "0", t.cls.witt.to_string());
                 }});
  out.push_back({"pfister_in_I^" + std::to_string(n), [n](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                   PfisterSpec s;
                   for (unsigned i = 0; i < n; ++i) s.push_back(rng.unit(f, bound));
                   WittClass w = witt_class(pfister(f, s));
                   Json in = {{"slots", to_json(DiagonalForm(f, s))}};
                   return check(in_ideal_power(w, static_cast<int>(n)) && witt_is_zero(w), in, "0", w.to_string());
                 }});
  return out;
}

GWElement random_gw(const Field& f, Rng& rng, unsigned bound) {
  GWElement x(f);
  const long long k = rng.range(1, 4);
  for (long long i = 0; i < k; ++i) {
    long long m = rng.range(-2, 2);
    if (m == 0) m = 1;
    x += GWElement::generator(rng.unit(f, bound), m);
  }
  return x;
}

// A GW element that is zero by one relation instance.
GWElement random_relation(const Field& f, Rng& rng, unsigned bound) {
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Element a = rng.unit(f, bound), b = rng.unit(f, bound);
    switch (rng.range(0, 2)) {
      case 0:
        return gen(a * b * b) - gen(a);
      case 1:
        return gen(a) + gen(-a) - gen(f.one()) - gen(-f.one());
      default:
        if ((a + b).is_zero()) continue;
        return gen(a) + gen(b) - gen(a + b) - gen((a + b) * a * b);
    }
  }
  return GWElement(f);
}

std::vector<IdentityCheck> cartesian_suite(const Field& f) {
  std::vector<IdentityCheck> out;
  out.push_back({"gw_equal_vs_rank_and_witt", [](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                   GWElement x = random_gw(f, rng, bound);
                   GWElement y = rng.range(0, 1) == 0 ? random_gw(f, rng, bound)
                                                      : x + random_relation(f, rng, bound) * random_gw(f, rng, bound);
                   Json in = {{"x", to_json(x)}, {"y", to_json(y)}};
                   bool g = gw_equal(x, y);
                   bool split = x.rank() == y.rank() && witt_equal(witt_class(x), witt_class(y));
                   return check(g == split, in, split ? "equal" : "distinct", g ? "equal" : "distinct");
                 }});
  out.push_back({"relations_preserve_class", [](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                   GWElement x = random_gw(f, rng, bound);
                   GWElement y = x + random_relation(f, rng, bound) * random_gw(f, rng, bound);
                   Json in = {{"x", to_json(x)}, {"y", to_json(y)}};
                   return check(gw_equal(x, y), in, "equal", "distinct");
                 }});
  if (f.is_finite() && !char2(f) && f.base().order() <= 5) {
    out.push_back({"chain_search", [](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                     const long long r = rng.range(1, 3);
                     std::vector<Element> t1, t2;
                     for (long long i = 0; i < r; ++i) {
                       t1.push_back(rng.unit(f, bound));
                       t2.push_back(rng.unit(f, bound));
                     }
                     Json in = {{"t1", to_json(DiagonalForm(f, t1))}, {"t2", to_json(DiagonalForm(f, t2))}};
                     ChainResult c = chain_equiv_search(f, t1, t2, 4);
                     bool eq = gw_equal(GWElement::of(DiagonalForm(f, t1)), GWElement::of(DiagonalForm(f, t2)));
                     if (eq != c.classes_equal) return fail(in, eq ? "equal" : "distinct", "chain disagrees");
                     if (!eq) return check(!c.path, in, "no path", "path");
                     if (!c.path) return fail(in, "path", c.exhausted ? "budget exhausted" : "none");
                     std::vector<Element> cur = t1;
                     std::sort(cur.begin(), cur.end());
                     for (const auto& s : *c.path) {
                       GWElement before = gen(s.a) + gen(s.b), after = gen(s.c) + gen(s.d);
                       if (!gw_equal(before, after)) return fail(in, "stepwise equal", s.relation + " step changed class");
                       cur = s.after;
                     }
                     std::vector<Element> goal = t2;
                     std::sort(goal.begin(), goal.end());
                     return check(cur == goal, in, "reaches t2", "ends elsewhere");
                   }});
  }
  return out;
}

bool laurent_equal(const std::map<int, WittClass>& x, const std::map<int, WittClass>& y, const Field& f) {
  std::set<int> keys;
  for (const auto& [k, v] : x) keys.insert(k);
  for (const auto& [k, v] : y) keys.insert(k);
  for (int k : keys) {
    WittClass a = x.count(k) ? x.at(k) : WittClass(f);
    WittClass b = y.count(k) ? y.at(k) : WittClass(f);
    if (!witt_equal(a, b)) return false;
  }
  return true;
}

std::map<int, WittClass> laurent_mul(const std::map<int, WittClass>& x, const std::map<int, WittClass>& y,
                                     const Field& f) {
  std::map<int, WittClass> out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) {
      auto it = out.find(i + j);
      if (it == out.end())
        out.emplace(i + j, a * b);
      else
        it->second = it->second + a * b;
    }
  (void)f;
  return out;
}

std::string laurent_string(const std::map<int, WittClass>& x) {
  std::string s;
  for (const auto& [k, v] : x) s += (s.empty() ? "" : " + ") + v.to_string() + " t^" + std::to_string(k);
  return s.empty() ? "0" : s;
}

std::vector<IdentityCheck> localize_suite(const Field& f) {
  std::vector<IdentityCheck> out;
  out.push_back({"ring_morphism", [](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                   MWExpr x = random_expr(f, rng, 1, bound);
                   MWExpr y = random_expr(f, rng, 1, bound);
                   Json in = {{"x", print(x)}, {"y", print(y)}};
                   auto lhs = localize_eta(x * y);
                   auto rhs = laurent_mul(localize_eta(x), localize_eta(y), f);
                   return check(laurent_equal(lhs, rhs, f), in, laurent_string(rhs), laurent_string(lhs));
                 }});
  out.push_back({"additive", [](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                   MWExpr x = random_expr(f, rng, 1, bound);
                   MWExpr y = random_expr(f, rng, 1, bound);
                   Json in = {{"x", print(x)}, {"y", print(y)}};
                   auto lhs = localize_eta(x + y);
                   auto lx = localize_eta(x), ly = localize_eta(y);
                   for (const auto& [k, v] : ly) {
                     auto it = lx.find(k);
                     if (it == lx.end())
                       lx.emplace(k, v);
                     else
                       it->second = it->second + v;
                   }
                   return check(laurent_equal(lhs, lx, f), in, laurent_string(lx), laurent_string(lhs));
                 }});
  out.push_back({"h_vanishes", [](const Field& f, Rng&, unsigned) -> Outcome {
                   auto l = localize_eta(hyperbolic(f));
                   return check(l.empty(), Json::object(), "0", laurent_string(l));
                 }});
  out.push_back({"bracket_image", [](const Field& f, Rng& rng, unsigned bound) -> Outcome {
                   Element u = rng.unit(f, bound);
                   Json in = {{"u", u.to_string()}};
                   auto l = localize_eta(MWExpr::bracket(u));
                   std::map<int, WittClass> want;
                   WittClass w = witt_class(DiagonalForm(f, {u, -f.one()}));
                   if (!w.is_zero()) want.emplace(-1, w);
                   return check(laurent_equal(l, want, f), in, laurent_string(want), laurent_string(l));
                 }});
  out.push_back({"eta_image", [](const Field& f, Rng&, unsigned) -> Outcome {
                   auto l = localize_eta(MWExpr::eta(f));
                   std::map<int, WittClass> want{{1, witt_class(DiagonalForm(f, {f.one()}))}};
                   return check(laurent_equal(l, want, f), Json::object(), "t", laurent_string(l));
                 }});
  (void)f;
  return out;
}

std::vector<IdentityCheck> roundtrip_suite(const Field&) {
  return {{"parse_print", [](const Field& f, Rng& rng, unsigned bound) -> Outcome {
             MWExpr x = random_expr(f, rng, 3, bound);
             std::string s = print(x);
             Json in = {{"printed", s}};
             MWExpr y = x;
             try {
               y = parse_expr(f, s);
             } catch (const ParseError& e) {
               return fail(in, "parses", e.what());
             }
             return check(flatten(y) == flatten(x), in, print(flatten(x)), print(flatten(y)));
           }}};
}

using SuiteFn = std::vector<IdentityCheck> (*)(const Field&);

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> s = {
      {"kmw", kmw_suite},           {"lemma1", lemma1_suite},     {"lemma2", lemma2_suite},
      {"puissances", puissances_suite}, {"gw", gw_suite},          {"prop_iso", prop_iso_suite},
      {"kw_char2", kw_char2_suite}, {"kato", kato_suite},         {"vanishing", vanishing_suite},
      {"cartesian", cartesian_suite}, {"localize", localize_suite}, {"roundtrip", roundtrip_suite},
  };
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : suites()) n.push_back(k);
    return n;
  }();
  return names;
}

std::vector<IdentityCheck> suite_identities(const std::string& suite, const Field& field) {
  auto it = suites().find(suite);
  if (it == suites().end()) {
    std::string known;
    for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
    throw MathError("unknown suite '" + suite + "' (known: " + known + ")");
  }
  auto ids = it->second(field);
  std::sort(ids.begin(), ids.end(), [](const IdentityCheck& a, const IdentityCheck& b) { return a.name < b.name; });
  return ids;
}

bool suite_applies(const std::string& suite, const Field& field) { return !suite_identities(suite, field).empty(); }

IdentityReport run_identity(const IdentityCheck& id, const Field& field, const VerifyConfig& config) {
  IdentityReport r;
  r.identity = id.name;
  r.cases = config.cases;
  for (std::size_t i = 0; i < config.cases; ++i) {
    Rng rng(mix_seed(config.seed, id.name, i));
    CaseOutcome o;
    try {
      o = id.run(field, rng, config.degree_bound);
    } catch (const std::exception& e) {
      o = fail(Json{{"case", i}}, "no error", e.what());
    }
    if (o.status == Status::Pass) ++r.passed;
    if (o.status == Status::Skip) ++r.skipped;
    if (o.status == Status::Fail) {
      o.inputs["case"] = i;
      r.failures.push_back(std::move(o));
    }
  }
  return r;
}

SuiteReport run_suite(const std::string& suite, const Field& field, const VerifyConfig& config) {
  SuiteReport rep;
  rep.field = field.name();
  rep.suite = suite;
  rep.seed = config.seed;
  rep.cases = config.cases;
  for (const auto& id : suite_identities(suite, field)) rep.identities.push_back(run_identity(id, field, config));
  return rep;
}

}  // namespace mwk
