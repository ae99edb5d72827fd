// mwk: command-line front end for the mwk library.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mwk/error.hpp"
#include "mwk/forms.hpp"
#include "mwk/kmw.hpp"
#include "mwk/serialize.hpp"
#include "mwk/verify.hpp"
#include "mwk/wittring.hpp"

namespace {

using namespace mwk;

struct CliConfig {
  std::string field = "GF(2)(t)";
  std::uint64_t seed = 0;
  std::size_t cases = 100;
  unsigned degree_bound = 2;
  bool json = false;
  std::vector<std::string> suites;
  std::vector<std::string> lets;
};

// Splits on commas outside parentheses.
std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

Bindings read_lets(const Field& f, const std::vector<std::string>& lets) {
  Bindings b;
  for (const auto& l : lets) {
    auto eq = l.find('=');
    if (eq == std::string::npos || eq == 0) throw MathError("--let expects name=value, got '" + l + "'");
    std::string name = l.substr(0, eq);
    b.insert_or_assign(name, f.parse(l.substr(eq + 1), b));
  }
  return b;
}

std::vector<Element> read_entries(const Field& f, const std::string& list, const Bindings& b) {
  std::vector<Element> out;
  for (const auto& s : split_list(list)) out.push_back(f.parse(s, b));
  return out;
}

void emit(const CliConfig& cfg, const Json& j, const std::string& text) {
  if (cfg.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text << "\n";
}

int cmd_normalize(const CliConfig& cfg, const std::string& expr) {
  Field f = make_field(cfg.field);
  CanonicalKMW c = normalize(parse_expr(f, expr, read_lets(f, cfg.lets)));
  Json j = to_json(c);
  j["field"] = f.name();
  emit(cfg, j,
       "degree " + std::to_string(c.degree) + ", " + c.kind() + (c.is_zero() ? ", zero" : ", nonzero") + "\n" +
           c.to_string());
  return 0;
}

int cmd_equal(const CliConfig& cfg, const std::string& a, const std::string& b, bool witt) {
  Field f = make_field(cfg.field);
  Bindings lets = read_lets(f, cfg.lets);
  MWExpr x = parse_expr(f, a, lets), y = parse_expr(f, b, lets);
  Decision d = witt ? kw_equal(x, y) : kmw_equal(x, y);
  Json j = to_json(d);
  j["field"] = f.name();
  emit(cfg, j, to_string(d.verdict) + "\n" + d.report);
  return 0;
}

int cmd_theta(const CliConfig& cfg, const std::string& expr) {
  Field f = make_field(cfg.field);
  GradedIClass t = theta(parse_expr(f, expr, read_lets(f, cfg.lets)));
  Json j = to_json(t.cls);
  j["field"] = f.name();
  j["partial"] = t.partial;
  std::string text = "I^" + std::to_string(t.degree) + " class " + t.cls.witt.to_string() +
                     (witt_is_zero(t.cls.witt) ? " (zero)" : "") + "\n" + t.cls.certificate;
  if (t.partial) text += "\nmembership not certified by a closed-form rule";
  emit(cfg, j, text);
  return 0;
}

int cmd_decompose(const CliConfig& cfg, const std::string& witt, const std::string& gram, int degree) {
  Field f = make_field(cfg.field);
  Bindings lets = read_lets(f, cfg.lets);
  WittDecomposition d{DiagonalForm(f, {}), 0};
  Json input;
  if (!gram.empty()) {
    GramMatrix g = gram_from_json(f, Json::parse(gram));
    d = witt_decompose(g);
    input = to_json(g);
  } else {
    DiagonalForm q(f, read_entries(f, witt, lets));
    d = witt_decompose(q);
    input = to_json(q);
  }
  Json j = {{"field", f.name()},
            {"input", input},
            {"anisotropic", to_json(d.anisotropic)},
            {"anisotropic_rank", d.anisotropic.rank()},
            {"metabolic_rank", d.metabolic_rank}};
  std::string text = "anisotropic " + d.anisotropic.to_string() + " (rank " + std::to_string(d.anisotropic.rank()) +
                     "), metabolic rank " + std::to_string(d.metabolic_rank);
  if (degree > 0) {
    WittClass w = witt_class(d.anisotropic);
    IFiltClass c = make_ifilt(w, degree);
    Json slots = Json::array();
    text += "\nPfister decomposition in I^" + std::to_string(degree) + ":";
    for (const auto& s : pfister_decompose(c)) {
      slots.push_back(to_json(DiagonalForm(f, s)));
      text += "\n  <<" + DiagonalForm(f, s).to_string() + ">>";
    }
    j["pfister"] = slots;
    j["verified"] = true;
    text += "\nverified";
  }
  emit(cfg, j, text);
  return 0;
}

int cmd_chain(const CliConfig& cfg, const std::string& a, const std::string& b, int depth) {
  Field f = make_field(cfg.field);
  Bindings lets = read_lets(f, cfg.lets);
  auto t1 = read_entries(f, a, lets), t2 = read_entries(f, b, lets);
  ChainResult r = chain_equiv_search(f, t1, t2, depth);
  Json steps = Json::array();
  std::string text = std::string(r.classes_equal ? "same GW class" : "different GW classes");
  if (r.path) {
    text += ", chain of " + std::to_string(r.path->size()) + " steps";
    for (const auto& s : *r.path) {
      steps.push_back({{"i", s.i},
                       {"j", s.j},
                       {"relation", s.relation},
                       {"from", {s.a.to_string(), s.b.to_string()}},
                       {"to", {s.c.to_string(), s.d.to_string()}},
                       {"after", to_json(DiagonalForm(f, s.after))}});
      if (s.i == s.j)
        text += "\n  " + s.relation + ": <" + s.a.to_string() + "> -> <" + s.c.to_string() + ">";
      else
        text += "\n  " + s.relation + ": <" + s.a.to_string() + ", " + s.b.to_string() + "> -> <" + s.c.to_string() +
                ", " + s.d.to_string() + ">";
      text += "  gives " + DiagonalForm(f, s.after).to_string();
    }
  } else if (r.classes_equal) {
    text += r.exhausted ? ", search budget exhausted" : ", no chain within depth";
  }
  Json j = {{"field", f.name()}, {"classes_equal", r.classes_equal}, {"exhausted", r.exhausted}};
  j["path"] = r.path ? steps : Json(nullptr);
  emit(cfg, j, text);
  return 0;
}

int cmd_verify(const CliConfig& cfg) {
  Field f = make_field(cfg.field);
  VerifyConfig vc{cfg.seed, cfg.cases, cfg.degree_bound};
  std::vector<std::string> names = cfg.suites;
  if (names.empty()) {
    for (const auto& s : suite_names())
      if (suite_applies(s, f)) names.push_back(s);
  }
  for (const auto& s : names) suite_identities(s, f);  // reject unknown names before running
  bool ok = true;
  Json reports = Json::array();
  std::string text;
  for (const auto& s : names) {
    SuiteReport r = run_suite(s, f, vc);
    ok = ok && r.ok();
    reports.push_back(r.to_json());
    for (const auto& id : r.identities) {
      text += s + "/" + id.identity + ": " + std::to_string(id.passed) + "/" + std::to_string(id.cases) + " passed";
      if (id.skipped) text += ", " + std::to_string(id.skipped) + " skipped";
      if (!id.failures.empty()) text += ", " + std::to_string(id.failures.size()) + " FAILED";
      text += "\n";
      for (std::size_t k = 0; k < id.failures.size() && k < 3; ++k) {
        const auto& fl = id.failures[k];
        text += "    inputs " + fl.inputs.dump() + "\n    expected " + fl.expected + "\n    got " + fl.got + "\n";
      }
    }
  }
  text += ok ? "all checks passed" : "FAILURES";
  Json j = reports.size() == 1 ? reports[0] : Json{{"schema", "mwk.verify.v1"}, {"field", f.name()}, {"ok", ok},
                                                  {"suites", reports}};
  emit(cfg, j, text);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Milnor-Witt K-theory of fields: normal forms, comparisons and identity checks"};
  app.require_subcommand(1);
  CliConfig cfg;
  app.add_option("--field", cfg.field, "field, e.g. GF(7), GF(3^2), GF(2)(t), GF(4)(t,u)");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--cases", cfg.cases, "cases per identity")->check(CLI::NonNegativeNumber);
  app.add_option("--degree-bound", cfg.degree_bound, "degree bound for random function-field units");
  app.add_flag("--json", cfg.json, "JSON output");
  app.add_option("--suite", cfg.suites, "verification suite (repeatable)");
  app.add_option("--let", cfg.lets, "bind a letter: name=value (repeatable)");

  std::string expr, lhs, rhs, witt_list, gram, t1, t2;
  bool witt_mode = false;
  int pf_degree = 0, depth = 4;

  auto* norm = app.add_subcommand("normalize", "canonical form of an expression");
  norm->add_option("expr", expr)->required();
  auto* eq = app.add_subcommand("equal", "decide equality of two expressions");
  eq->add_option("lhs", lhs)->required();
  eq->add_option("rhs", rhs)->required();
  eq->add_flag("--kw", witt_mode, "compare in K^W (mod h) via theta");
  auto* th = app.add_subcommand("theta", "image in the graded fundamental-ideal ring");
  th->add_option("expr", expr)->required();
  auto* dec = app.add_subcommand("decompose", "Witt decomposition of a form");
  auto* wopt = dec->add_option("--witt", witt_list, "comma-separated diagonal entries");
  auto* gopt = dec->add_option("--gram", gram, "Gram matrix as JSON rows of element strings");
  wopt->excludes(gopt);
  dec->add_option("--pfister", pf_degree, "also write the class as a sum of n-fold Pfister forms");
  auto* ch = app.add_subcommand("chain", "search for a chain of two-entry rewrites preserving the GW class");
  ch->add_option("from", t1)->required();
  ch->add_option("to", t2)->required();
  ch->add_option("--depth", depth, "maximum chain length");
  auto* ver = app.add_subcommand("verify", "run identity suites on random instances");
  for (auto* s : {norm, eq, th, dec, ch, ver}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*norm) return cmd_normalize(cfg, expr);
    if (*eq) return cmd_equal(cfg, lhs, rhs, witt_mode);
    if (*th) return cmd_theta(cfg, expr);
    if (*dec) {
      if (witt_list.empty() && gram.empty()) throw MathError("decompose needs --witt or --gram");
      return cmd_decompose(cfg, witt_list, gram, pf_degree);
    }
    if (*ch) return cmd_chain(cfg, t1, t2, depth);
    if (*ver) return cmd_verify(cfg);
  } catch (const ParseError& e) {
    std::cerr << "parse error " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
