#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mwk {

bool is_prime(std::uint64_t n);

/// Polynomials over F_p are coefficient vectors, lowest degree first.
using PrimePoly = std::vector<std::uint32_t>;

bool is_irreducible(std::uint32_t p, const PrimePoly& f);

/// Least monic irreducible polynomial of degree k over F_p, ordering
/// candidates by the integer sum_i c_i p^i of their lower coefficients.
PrimePoly least_irreducible(std::uint32_t p, std::uint32_t k);

/// GF(p^k) with log/exp tables. Elements are encoded as integers whose
/// base-p digits are the coefficients of the residue polynomial in x.
class FiniteField {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 16;

  FiniteField(std::uint32_t p, std::uint32_t k, PrimePoly modulus);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return k_; }
  std::uint32_t order() const { return q_; }
  const PrimePoly& modulus() const { return modulus_; }

  std::uint32_t from_int(long long n) const;
  /// The class of x (equal to from_int(0..p-1) when k == 1 is not meaningful).
  std::uint32_t generator() const { return k_ == 1 ? 0 : p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    std::uint32_t s = log_[a] + log_[b];
    return exp_[s];
  }
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
  std::uint32_t pow(std::uint32_t a, long long e) const;

  bool is_square(std::uint32_t a) const;
  /// Requires is_square(a).
  std::uint32_t sqrt(std::uint32_t a) const;

  /// Index of a in the cyclic group (discrete log to the primitive element).
  std::uint32_t log(std::uint32_t a) const { return log_[a]; }
  std::uint32_t exp(std::uint32_t i) const { return exp_[i % (q_ - 1)]; }

  std::vector<std::uint32_t> digits(std::uint32_t a) const;
  std::uint32_t from_digits(const std::vector<std::uint32_t>& d) const;

  /// "3", "x^2+2*x+1", ... parseable back by the element parser.
  std::string to_string(std::uint32_t a, const std::string& gen_name = "x") const;

  bool operator==(const FiniteField& o) const { return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_; }

 private:
  std::uint32_t raw_mul(std::uint32_t a, std::uint32_t b) const;

  std::uint32_t p_, k_, q_;
  PrimePoly modulus_;
  std::vector<std::uint32_t> exp_;  // length 2(q-1) so mul needs no reduction
  std::vector<std::uint32_t> log_;
};

}  // namespace mwk
