#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mwk/serialize.hpp"

namespace mwk {

/// Deterministic generator; draws are raw 64-bit outputs reduced by hand so
/// results do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next() { return gen_(); }
  /// Uniform-ish in [lo, hi].
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Element unit(const Field& f, unsigned degree_bound) { return random_unit(f, gen_(), degree_bound); }

 private:
  std::mt19937_64 gen_;
};

std::uint64_t mix_seed(std::uint64_t seed, const std::string& name, std::uint64_t index);

/// Random expression tree of bounded depth (for round-trip and morphism tests).
MWExpr random_expr(const Field& field, Rng& rng, unsigned depth, unsigned degree_bound);
/// Random η^m[u₁]⋯[u_r] with r, m ≤ max_len.
MWExpr random_monomial(const Field& field, Rng& rng, unsigned max_len, unsigned degree_bound);

struct CaseOutcome {
  enum class Status { Pass, Fail, Skip } status = Status::Pass;
  Json inputs = Json::object();
  std::string expected;
  std::string got;
};

struct IdentityCheck {
  std::string name;
  std::function<CaseOutcome(const Field&, Rng&, unsigned degree_bound)> run;
};

struct IdentityReport {
  std::string identity;
  std::size_t cases = 0, passed = 0, skipped = 0;
  std::vector<CaseOutcome> failures;
};

struct SuiteReport {
  std::string field, suite;
  std::uint64_t seed = 0;
  std::size_t cases = 0;
  std::vector<IdentityReport> identities;

  bool ok() const;
  Json to_json() const;
};

struct VerifyConfig {
  std::uint64_t seed = 0;
  std::size_t cases = 100;
  unsigned degree_bound = 2;
};

const std::vector<std::string>& suite_names();
/// Whether the suite has any identity for this field.
bool suite_applies(const std::string& suite, const Field& field);
/// Identities of a suite for a field, sorted by name. Throws MathError on an
/// unknown suite name.
std::vector<IdentityCheck> suite_identities(const std::string& suite, const Field& field);
SuiteReport run_suite(const std::string& suite, const Field& field, const VerifyConfig& config);
IdentityReport run_identity(const IdentityCheck& id, const Field& field, const VerifyConfig& config);

}  // namespace mwk
