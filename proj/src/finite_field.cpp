#include "mwk/finite_field.hpp"

#include <algorithm>
#include <sstream>

#include "mwk/error.hpp"

namespace mwk {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

void trim(PrimePoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// Remainder of f modulo monic g over F_p.
PrimePoly poly_mod(PrimePoly f, const PrimePoly& g, std::uint32_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    std::uint32_t c = f.back();
    std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + (p - c) * static_cast<std::uint64_t>(g[i])) % p);
    }
    trim(f);
  }
  return f;
}

}  // namespace

bool is_irreducible(std::uint32_t p, const PrimePoly& f_in) {
  PrimePoly f = f_in;
  trim(f);
  if (f.size() < 2) return false;
  if (f.back() != 1) return false;
  const std::uint32_t k = static_cast<std::uint32_t>(f.size() - 1);
  // Trial division by every monic polynomial of degree 1..k/2.
  for (std::uint32_t d = 1; 2 * d <= k; ++d) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      PrimePoly g(d + 1, 0);
      std::uint64_t v = idx;
      for (std::uint32_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

PrimePoly least_irreducible(std::uint32_t p, std::uint32_t k) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    PrimePoly g(k + 1, 0);
    std::uint64_t v = idx;
    for (std::uint32_t i = 0; i < k; ++i) {
      g[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    g[k] = 1;
    if (is_irreducible(p, g)) return g;
  }
  throw MathError("no irreducible polynomial of degree " + std::to_string(k));
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t k, PrimePoly modulus)
    : p_(p), k_(k), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw MathError("characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw MathError("extension degree must be positive");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxOrder) throw MathError("field order exceeds " + std::to_string(kMaxOrder));
  }
  q_ = static_cast<std::uint32_t>(q);
  if (modulus_.empty()) {
    modulus_ = k == 1 ? PrimePoly{0, 1} : least_irreducible(p, k);
  }
  trim(modulus_);
  if (modulus_.size() != k + 1) throw MathError("modulus must have degree " + std::to_string(k));
  if (!is_irreducible(p, modulus_)) throw MathError("modulus is reducible over F_" + std::to_string(p));

  // Find a primitive element by brute force.
  log_.assign(q_, 0);
  exp_.assign(2 * (q_ - 1), 0);
  for (std::uint32_t g = 1; g < q_; ++g) {
    std::uint32_t x = 1;
    std::uint32_t order = 0;
    do {
      x = raw_mul(x, g);
      ++order;
    } while (x != 1);
    if (order != q_ - 1) continue;
    x = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = x;
      exp_[i + q_ - 1] = x;
      log_[x] = i;
      x = raw_mul(x, g);
    }
    return;
  }
  throw MathError("no primitive element found");
}

std::vector<std::uint32_t> FiniteField::digits(std::uint32_t a) const {
  std::vector<std::uint32_t> d(k_, 0);
  for (std::uint32_t i = 0; i < k_; ++i) {
    d[i] = a % p_;
    a /= p_;
  }
  return d;
}

std::uint32_t FiniteField::from_digits(const std::vector<std::uint32_t>& d) const {
  std::uint32_t v = 0;
  for (std::size_t i = d.size(); i-- > 0;) v = v * p_ + d[i] % p_;
  return v;
}

std::uint32_t FiniteField::raw_mul(std::uint32_t a, std::uint32_t b) const {
  PrimePoly da = digits(a), db = digits(b);
  PrimePoly prod(2 * k_, 0);
  for (std::uint32_t i = 0; i < k_; ++i)
    for (std::uint32_t j = 0; j < k_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p_);
  PrimePoly r = poly_mod(prod, modulus_, p_);
  r.resize(k_, 0);
  return from_digits(r);
}

std::uint32_t FiniteField::from_int(long long n) const {
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t FiniteField::add(std::uint32_t a, std::uint32_t b) const {
  if (p_ == 2) return a ^ b;
  if (k_ == 1) return (a + b) % p_;
  std::uint32_t r = 0, scale = 1;
  while (a != 0 || b != 0) {
    r += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

std::uint32_t FiniteField::neg(std::uint32_t a) const {
  if (p_ == 2) return a;
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  std::uint32_t r = 0, scale = 1;
  while (a != 0) {
    r += ((p_ - a % p_) % p_) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

std::uint32_t FiniteField::inv(std::uint32_t a) const {
  if (a == 0) throw MathError("division by zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t FiniteField::pow(std::uint32_t a, long long e) const {
  if (a == 0) {
    if (e < 0) throw MathError("division by zero");
    return e == 0 ? 1 : 0;
  }
  long long n = q_ - 1;
  long long r = (static_cast<long long>(log_[a]) * (e % n)) % n;
  if (r < 0) r += n;
  return exp_[r];
}

bool FiniteField::is_square(std::uint32_t a) const {
  if (a == 0 || p_ == 2) return true;
  // Euler's criterion.
  return pow(a, (q_ - 1) / 2) == 1;
}

std::uint32_t FiniteField::sqrt(std::uint32_t a) const {
  if (a == 0) return 0;
  std::uint32_t l = log_[a];
  if (p_ == 2) {
    // q - 1 is odd, so halve modulo q - 1.
    if (l % 2 == 1) l += q_ - 1;
    return exp_[l / 2];
  }
  if (l % 2 != 0) throw MathError("square root of a non-square");
  return exp_[l / 2];
}

std::string FiniteField::to_string(std::uint32_t a, const std::string& gen_name) const {
  if (k_ == 1) return std::to_string(a);
  if (a == 0) return "0";
  auto d = digits(a);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0) {
      os << d[i];
      continue;
    }
    if (d[i] != 1) os << d[i] << '*';
    os << gen_name;
    if (i > 1) os << '^' << i;
  }
  return os.str();
}

}  // namespace mwk
