#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tilekit/gf.hpp"

using namespace tilekit;

namespace {

// Independent oracle: a monic polynomial of degree 2 or 3 over F_p is
// irreducible iff it has no root. Coefficients low degree first.
bool no_root(uint32_t p, const std::vector<Elem>& coeffs) {
  for (Elem x = 0; x < p; ++x) {
    uint64_t acc = 0, pw = 1;
    for (Elem c : coeffs) {
      acc = (acc + static_cast<uint64_t>(c) * pw) % p;
      pw = (pw * x) % p;
    }
    if (acc == 0) return false;
  }
  return true;
}

void check_axioms(const Field& f) {
  const uint32_t q = f.q();
  // identities and inverses
  for (Elem a = 0; a < q; ++a) {
    CHECK(f.add(a, 0) == a);
    CHECK(f.mul(a, 1) == a);
    CHECK(f.mul(a, 0) == 0);
    CHECK(f.add(a, f.neg(a)) == 0);
    CHECK(f.sub(a, a) == 0);
    if (a != 0) {
      CHECK(f.mul(a, f.inv(a)) == 1);
      CHECK(f.div(a, a) == 1);
      CHECK(f.pow(a, q - 1) == 1);
    }
  }
  // commutativity, associativity, distributivity
  for (Elem a = 0; a < q; ++a)
    for (Elem b = 0; b < q; ++b) {
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      for (Elem c = 0; c < q; ++c) {
        CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
        CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      }
    }
}

}  // namespace

TEST_CASE("primality helper") {
  CHECK(!is_prime(0));
  CHECK(!is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(3));
  CHECK(!is_prime(4));
  CHECK(is_prime(7919));
  CHECK(!is_prime(7917));
}

TEST_CASE("prime fields are arithmetic mod p") {
  Field f(7);
  CHECK(f.q() == 7);
  CHECK(f.k() == 1);
  CHECK(f.modulus().empty());
  for (Elem a = 0; a < 7; ++a)
    for (Elem b = 0; b < 7; ++b) {
      CHECK(f.add(a, b) == (a + b) % 7);
      CHECK(f.mul(a, b) == (a * b) % 7);
    }
}

TEST_CASE("field axioms hold exhaustively for small orders") {
  for (auto [p, k] : {std::pair<uint32_t, uint32_t>{2, 1}, {3, 1}, {2, 2},
                      {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1}, {2, 4}})
    check_axioms(Field(p, k));
}

TEST_CASE("deterministic modulus is the lexicographically smallest irreducible") {
  // Frozen: for F_4 the only irreducible quadratic over F_2 is x^2+x+1; for
  // F_9 candidates in (a0, a1) order are x^2 (a0=0 reducible), x^2+1 which
  // has no root in F_3 and so wins; for F_8, 1+x^3 and its predecessors have
  // roots, 1+x^2+x^3 does not.
  CHECK(Field(2, 2).modulus() == std::vector<Elem>{1, 1, 1});
  CHECK(Field(3, 2).modulus() == std::vector<Elem>{1, 0, 1});
  CHECK(Field(2, 3).modulus() == std::vector<Elem>{1, 0, 1, 1});
  // Property: the chosen modulus is monic, degree k, and root-free (degree
  // <= 3, so root-free is equivalent to irreducible).
  for (auto [p, k] : {std::pair<uint32_t, uint32_t>{5, 2}, {7, 2}, {5, 3}, {3, 3}}) {
    Field f(p, k);
    auto m = f.modulus();
    REQUIRE(m.size() == k + 1);
    CHECK(m.back() == 1);
    CHECK(no_root(p, m));
  }
}

TEST_CASE("extension arithmetic spot values") {
  // F_4: elements 0,1,x=2,x+1=3; x*x = x+1.
  Field f4(2, 2);
  CHECK(f4.mul(2, 2) == 3);
  CHECK(f4.mul(2, 3) == 1);  // x(x+1) = x^2+x = 1
  CHECK(f4.add(2, 3) == 1);
  CHECK(f4.inv(2) == 3);
  // F_9 with modulus x^2+1: x = 3, x*x = -1 = 2.
  Field f9(3, 2);
  CHECK(f9.mul(3, 3) == 2);
  CHECK(f9.mul(3, 2) == 6);  // x*2 = 2x
  CHECK(f9.add(4, 8) == 0);  // (1+x) + (2+2x)
}

TEST_CASE("explicit modulus constructor") {
  // Same field as the deterministic one.
  Field a(3, std::vector<Elem>{1, 0, 1});
  CHECK(a == Field(3, 2));
  // A different irreducible gives a different (but valid) representation.
  Field b(3, std::vector<Elem>{2, 1, 1});  // x^2+x+2, no root in F_3
  CHECK(b != a);
  check_axioms(b);
  // Reducible modulus is rejected: x^2+2 = (x+1)(x+2) over F_3.
  CHECK_THROWS(Field(3, std::vector<Elem>{2, 0, 1}));
  // Non-monic rejected.
  CHECK_THROWS(Field(3, std::vector<Elem>{1, 0, 2}));
}

TEST_CASE("constructor errors") {
  CHECK_THROWS(Field(4));        // p not prime
  CHECK_THROWS(Field(1));
  CHECK_THROWS(Field(0));
  CHECK_THROWS(Field(2, 17));    // 2^17 above the default order ceiling
  CHECK_THROWS(Field(3).inv(0));
  CHECK_THROWS(Field(3, 2).inv(0));
  CHECK_THROWS(Field(3).div(1, 0));
}

TEST_CASE("large fields work without lookup tables") {
  Field f(257);  // q > 256: inversion goes through exponentiation
  for (Elem a = 1; a < 257; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  Field f512(2, 9);
  CHECK(f512.q() == 512);
  for (Elem a : {Elem{1}, Elem{2}, Elem{100}, Elem{511}})
    CHECK(f512.mul(a, f512.inv(a)) == 1);
  CHECK(f512.pow(2, 511) == 1);
}

TEST_CASE("Frobenius endomorphism") {
  for (auto [p, k] : {std::pair<uint32_t, uint32_t>{3, 2}, {2, 3}, {5, 2}}) {
    Field f(p, k);
    for (Elem a = 0; a < f.q(); ++a)
      for (Elem b = 0; b < f.q(); ++b)
        CHECK(f.pow(f.add(a, b), p) == f.add(f.pow(a, p), f.pow(b, p)));
  }
}

TEST_CASE("power laws") {
  Field f(3, 2);
  for (Elem a = 1; a < 9; ++a) {
    CHECK(f.pow(a, 0) == 1);
    Elem acc = 1;
    for (uint64_t e = 1; e < 20; ++e) {
      acc = f.mul(acc, a);
      CHECK(f.pow(a, e) == acc);
    }
  }
  CHECK(f.pow(0, 0) == 1);  // empty product convention
  CHECK(f.pow(0, 5) == 0);
}
