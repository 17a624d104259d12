#include "tilekit/gf.hpp"

#include <stdexcept>
#include <string>

namespace tilekit {
namespace {

using Poly = std::vector<uint32_t>;  // coefficients, low degree first, trimmed

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo m over F_p; m monic.
Poly poly_mod(Poly a, const Poly& m, uint32_t p) {
  trim(a);
  const size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const uint32_t lead = a.back();
    const size_t shift = a.size() - 1 - dm;
    if (lead != 0) {
      for (size_t i = 0; i <= dm; ++i) {
        uint64_t t = static_cast<uint64_t>(m[i]) * lead % p;
        a[shift + i] = static_cast<uint32_t>((a[shift + i] + p - t) % p);
      }
    }
    a.pop_back();
    trim(a);
  }
  trim(a);
  return a;
}

bool divides(const Poly& d, const Poly& f, uint32_t p) {
  return poly_mod(f, d, p).empty();
}

bool poly_irreducible(const Poly& f, uint32_t p) {
  const size_t deg = f.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  // Trial division by every monic polynomial of degree 1..deg/2.
  for (size_t e = 1; e <= deg / 2; ++e) {
    uint64_t count = 1;
    for (size_t i = 0; i < e; ++i) count *= p;
    for (uint64_t j = 0; j < count; ++j) {
      Poly d(e + 1, 0);
      uint64_t t = j;
      for (size_t i = 0; i < e; ++i) {
        d[i] = static_cast<uint32_t>(t % p);
        t /= p;
      }
      d[e] = 1;
      if (divides(d, f, p)) return false;
    }
  }
  return true;
}

std::vector<uint32_t> to_digits(Elem e, uint32_t p, uint32_t k) {
  std::vector<uint32_t> d(k);
  for (uint32_t i = 0; i < k; ++i) {
    d[i] = e % p;
    e /= p;
  }
  return d;
}

Elem from_digits(const std::vector<uint32_t>& d, uint32_t p) {
  Elem e = 0;
  for (size_t i = d.size(); i-- > 0;) e = e * p + d[i];
  return e;
}

}  // namespace

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field::Field(uint32_t p, uint32_t k, uint32_t order_ceiling)
    : p_(p), k_(k) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
  uint64_t q = 1;
  for (uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > order_ceiling)
      throw std::invalid_argument("field order exceeds ceiling " + std::to_string(order_ceiling));
  }
  q_ = static_cast<uint32_t>(q);
  if (k > 1) {
    // Candidates enumerated in ascending lexicographic order of
    // (a_0, ..., a_{k-1}); a_0 is the most significant digit of j.
    bool found = false;
    for (uint64_t j = 0; j < q && !found; ++j) {
      Poly f(k + 1, 0);
      uint64_t t = j;
      for (uint32_t i = k; i-- > 1;) {  // a_{k-1} least significant
        f[i] = static_cast<uint32_t>(t % p);
        t /= p;
      }
      f[0] = static_cast<uint32_t>(t % p);
      f[k] = 1;
      if (poly_irreducible(f, p)) {
        modulus_.assign(f.begin(), f.end());
        found = true;
      }
    }
    if (!found) throw std::logic_error("no irreducible polynomial found");
  }
  init(order_ceiling);
}

Field::Field(uint32_t p, const std::vector<Elem>& modulus, uint32_t order_ceiling)
    : p_(p), modulus_(modulus) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  if (modulus.size() < 2) throw std::invalid_argument("modulus must have degree >= 1");
  k_ = static_cast<uint32_t>(modulus.size() - 1);
  if (modulus.back() != 1) throw std::invalid_argument("modulus must be monic");
  for (Elem c : modulus)
    if (c >= p) throw std::invalid_argument("modulus coefficient out of range");
  uint64_t q = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    q *= p;
    if (q > order_ceiling)
      throw std::invalid_argument("field order exceeds ceiling " + std::to_string(order_ceiling));
  }
  q_ = static_cast<uint32_t>(q);
  Poly f(modulus.begin(), modulus.end());
  if (!poly_irreducible(f, p))
    throw std::invalid_argument("modulus is reducible over F_p");
  if (k_ == 1) modulus_.clear();
  init(order_ceiling);
}

void Field::init(uint32_t) {
  if (q_ > 256) return;
  auto t = std::make_shared<Tables>();
  t->mul.resize(static_cast<size_t>(q_) * q_);
  t->inv.assign(q_, 0);
  for (Elem a = 0; a < q_; ++a)
    for (Elem b = 0; b < q_; ++b) {
      Elem m = mul_poly(a, b);
      t->mul[static_cast<size_t>(a) * q_ + b] = static_cast<uint16_t>(m);
      if (m == 1) t->inv[a] = static_cast<uint16_t>(b);
    }
  tables_ = std::move(t);
}

Elem Field::add(Elem a, Elem b) const {
  if (k_ == 1) return (a + b) % p_;
  Elem r = 0, pw = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    r += (a % p_ + b % p_) % p_ * pw;
    a /= p_;
    b /= p_;
    pw *= p_;
  }
  return r;
}

Elem Field::neg(Elem a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  Elem r = 0, pw = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    uint32_t d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * pw;
    a /= p_;
    pw *= p_;
  }
  return r;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul_poly(Elem a, Elem b) const {
  if (k_ == 1) return static_cast<Elem>(static_cast<uint64_t>(a) * b % p_);
  auto da = to_digits(a, p_, k_);
  auto db = to_digits(b, p_, k_);
  Poly prod(2 * k_ - 1, 0);
  for (uint32_t i = 0; i < k_; ++i)
    for (uint32_t j = 0; j < k_; ++j)
      prod[i + j] = static_cast<uint32_t>(
          (prod[i + j] + static_cast<uint64_t>(da[i]) * db[j]) % p_);
  Poly m(modulus_.begin(), modulus_.end());
  Poly rem = poly_mod(std::move(prod), m, p_);
  rem.resize(k_, 0);
  return from_digits(rem, p_);
}

Elem Field::mul(Elem a, Elem b) const {
  if (tables_) return tables_->mul[static_cast<size_t>(a) * q_ + b];
  return mul_poly(a, b);
}

Elem Field::pow(Elem a, uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("division by zero in F_q");
  if (tables_) return tables_->inv[a];
  return pow(a, q_ - 2);
}

Elem Field::div(Elem a, Elem b) const { return mul(a, inv(b)); }

}  // namespace tilekit
