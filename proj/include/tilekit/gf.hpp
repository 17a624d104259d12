#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace tilekit {

/// Element of F_q encoded as an integer in [0, q): e = sum a_i p^i where
/// (a_0, ..., a_{k-1}) is the coefficient vector of its polynomial
/// representative over F_p. 0 is the zero element, 1 the multiplicative
/// identity.
using Elem = uint32_t;

bool is_prime(uint32_t n);

/// Finite field F_{p^k}. Immutable after construction; all operations are
/// pure, so a Field can be shared freely between threads.
class Field {
public:
  static constexpr uint32_t kDefaultOrderCeiling = 1u << 16;

  /// F_{p^k} with the deterministic modulus: the lexicographically smallest
  /// monic irreducible polynomial of degree k over F_p, comparing coefficient
  /// tuples (a_0, ..., a_{k-1}) in ascending order.
  explicit Field(uint32_t p, uint32_t k = 1,
                 uint32_t order_ceiling = kDefaultOrderCeiling);

  /// F_{p^k} with an explicit modulus given as a coefficient list, low degree
  /// first, monic, of degree k = modulus.size() - 1. Irreducibility is
  /// verified.
  Field(uint32_t p, const std::vector<Elem>& modulus,
        uint32_t order_ceiling = kDefaultOrderCeiling);

  uint32_t p() const { return p_; }
  uint32_t k() const { return k_; }
  uint32_t q() const { return q_; }
  /// Empty iff k == 1.
  const std::vector<Elem>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  // throws on a == 0
  Elem div(Elem a, Elem b) const;
  Elem pow(Elem a, uint64_t e) const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.p_ == b.p_ && a.k_ == b.k_ && a.modulus_ == b.modulus_;
  }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

private:
  struct Tables {
    std::vector<uint16_t> mul;  // q*q entries
    std::vector<uint16_t> inv;  // q entries, inv[0] unused
  };

  void init(uint32_t order_ceiling);
  Elem mul_poly(Elem a, Elem b) const;

  uint32_t p_ = 0;
  uint32_t k_ = 0;
  uint32_t q_ = 0;
  std::vector<Elem> modulus_;               // empty for k == 1
  std::shared_ptr<const Tables> tables_;    // present when q <= 256
};

}  // namespace tilekit
