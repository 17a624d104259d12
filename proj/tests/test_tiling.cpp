#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tilekit/tiling.hpp"

using namespace tilekit;

namespace {

// Brute-force oracle: count every sum u+v and demand each vector of the
// space appears exactly once.
bool oracle_is_tiling(const Field& f, const VSet& u, const VSet& v) {
  uint64_t total = *space_size(f.q(), u.n());
  std::vector<uint32_t> counts(total, 0);
  for (const FVec& a : u.members())
    for (const FVec& b : v.members()) counts[add(f, a, b).key()]++;
  for (uint64_t k = 0; k < total; ++k)
    if (counts[k] != 1) return false;
  return true;
}

VSet full_space(uint32_t q, uint32_t n) {
  VSet s(q, n);
  for (uint64_t k = 0; k < *space_size(q, n); ++k)
    s.insert(FVec::from_key(q, n, k));
  return s;
}

VSet singleton_zero(uint32_t q, uint32_t n) {
  VSet s(q, n);
  s.insert(FVec(q, n));
  return s;
}

}  // namespace

TEST_CASE("verify_tiling on hand-built cases") {
  Field f(3);
  SUBCASE("trivial tiling: whole space and {0}") {
    TilingVerdict tv = verify_tiling(f, full_space(3, 2), singleton_zero(3, 2));
    CHECK(tv.valid);
  }
  SUBCASE("subspace pair") {
    VSet u(3, 4), v(3, 4);
    for (Elem a = 0; a < 3; ++a)
      for (Elem b = 0; b < 3; ++b) {
        u.insert(FVec::from_coords(3, {a, b, 0, 0}));
        v.insert(FVec::from_coords(3, {0, 0, a, b}));
      }
    CHECK(verify_tiling(f, u, v).valid);
  }
  SUBCASE("nonlinear projective tiling of F_3^2") {
    VSet u(3, 2), v(3, 2);
    for (Elem a = 0; a < 3; ++a) u.insert(FVec::from_coords(3, {a, 0}));
    v.insert(FVec::from_coords(3, {0, 0}));
    v.insert(FVec::from_coords(3, {0, 1}));
    v.insert(FVec::from_coords(3, {1, 2}));
    TilingVerdict tv = verify_tiling(f, u, v);
    CHECK(tv.valid);
    CHECK(is_projective(f, u));
    CHECK(!is_projective(f, v));
  }
  SUBCASE("cardinality mismatch is reported as such") {
    VSet u(3, 2), v(3, 2);
    u.insert(FVec(3, 2));
    v.insert(FVec(3, 2));
    TilingVerdict tv = verify_tiling(f, u, v);
    CHECK(!tv.valid);
    CHECK(tv.size_mismatch);
    CHECK(!tv.collision);
  }
  SUBCASE("collision carries a genuine witness") {
    VSet u(3, 2), v(3, 2);
    for (Elem a = 0; a < 3; ++a) u.insert(FVec::from_coords(3, {a, 0}));
    for (Elem a = 0; a < 3; ++a) v.insert(FVec::from_coords(3, {a, 1}));
    TilingVerdict tv = verify_tiling(f, u, v);
    CHECK(!tv.valid);
    CHECK(!tv.size_mismatch);
    REQUIRE(tv.collision);
    const auto& w = *tv.collision;
    CHECK(u.contains(w[0]));
    CHECK(v.contains(w[1]));
    CHECK(u.contains(w[2]));
    CHECK(v.contains(w[3]));
    CHECK(add(f, w[0], w[1]) == add(f, w[2], w[3]));
    CHECK((w[0] != w[2] || w[1] != w[3]));
  }
}

TEST_CASE("verify_tiling agrees with the brute-force oracle on random pairs") {
  std::mt19937 rng(7);
  for (uint32_t q : {2u, 3u, 4u}) {
    Field f = q == 4 ? Field(2, 2) : Field(q);
    const uint32_t n = 4;
    uint64_t total = *space_size(q, n);
    for (int trial = 0; trial < 60; ++trial) {
      // random sizes with |U|*|V| = q^n most of the time, arbitrary otherwise
      uint32_t du = rng() % (n + 1);
      uint64_t su = 1;
      for (uint32_t i = 0; i < du; ++i) su *= q;
      uint64_t sv = (trial % 5 == 0) ? 1 + rng() % 8 : total / su;
      VSet u(q, n), v(q, n);
      while (u.size() < su) u.insert(FVec::from_key(q, n, rng() % total));
      while (v.size() < sv) v.insert(FVec::from_key(q, n, rng() % total));
      CHECK(verify_tiling(f, u, v).valid == oracle_is_tiling(f, u, v));
    }
    // constructed valid case: subspace + coset representatives
    VSet u(q, n), v(q, n);
    for (uint64_t k = 0; k < total; ++k) {
      FVec x = FVec::from_key(q, n, k);
      if (x.get(2) == 0 && x.get(3) == 0) u.insert(x);
      if (x.get(0) == 0 && x.get(1) == 0) {
        // perturb the representative within its coset, pseudo-randomly
        FVec y = x;
        y.set(0, static_cast<Elem>((x.get(2) + x.get(3)) % q));
        v.insert(y);
      }
    }
    CHECK(verify_tiling(f, u, v).valid);
    CHECK(oracle_is_tiling(f, u, v));
  }
}

TEST_CASE("periods") {
  Field f(3);
  SUBCASE("a subspace is its own period set") {
    VSet s(3, 3);
    for (Elem a = 0; a < 3; ++a)
      for (Elem b = 0; b < 3; ++b) s.insert(FVec::from_coords(3, {a, b, 0}));
    VSet per = periods(f, s);
    CHECK(per.size() == 9);
    for (const FVec& v : s.members()) CHECK(per.contains(v));
  }
  SUBCASE("coset of a subspace has the subspace as periods") {
    VSet s(3, 3);
    for (Elem a = 0; a < 3; ++a) s.insert(FVec::from_coords(3, {a, 1, 2}));
    VSet per = periods(f, s);
    CHECK(per.size() == 3);
    CHECK(per.contains(FVec::from_coords(3, {1, 0, 0})));
  }
  SUBCASE("aperiodic set") {
    VSet s(3, 2);
    s.insert(FVec::from_coords(3, {0, 0}));
    s.insert(FVec::from_coords(3, {0, 1}));
    s.insert(FVec::from_coords(3, {1, 2}));
    VSet per = periods(f, s);
    CHECK(per.size() == 1);
    CHECK(per.contains(FVec(3, 2)));
  }
  SUBCASE("periods form a group even for non-subspace sets") {
    // union of two parallel lines: periods = direction subspace
    VSet s(3, 2);
    for (Elem a = 0; a < 3; ++a) {
      s.insert(FVec::from_coords(3, {a, 0}));
      s.insert(FVec::from_coords(3, {a, 2}));
    }
    VSet per = periods(f, s);
    CHECK(per.size() == 3);
    CHECK(per.contains(FVec::from_coords(3, {2, 0})));
  }
}

TEST_CASE("kernel distinguishes p-periods from q-linearity") {
  // Inside F_9^1, the F_3-line {0,1,2} is fully periodic under F_3 shifts
  // but is not an F_9-subspace, so the q-kernel is trivial.
  Field f(3, 2);
  VSet s(9, 1);
  for (Elem a = 0; a < 3; ++a) s.insert(FVec::from_coords(9, {a}));
  CHECK(periods(f, s).size() == 3);
  CHECK(kernel(f, s).dim == 0);

  // The whole line F_9 is an F_9-subspace: kernel dim 1.
  VSet line(9, 1);
  for (Elem a = 0; a < 9; ++a) line.insert(FVec::from_coords(9, {a}));
  KernelInfo ki = kernel(f, line);
  CHECK(ki.dim == 1);
  CHECK(periods(f, line).size() == 9);
}

TEST_CASE("is_projective") {
  Field f(3);
  VSet s(3, 2);
  CHECK(!is_projective(f, s));  // empty: no zero
  s.insert(FVec(3, 2));
  CHECK(is_projective(f, s));  // {0}
  s.insert(FVec::from_coords(3, {1, 2}));
  CHECK(!is_projective(f, s));  // missing 2*(1,2)
  s.insert(FVec::from_coords(3, {2, 1}));
  CHECK(is_projective(f, s));
}

TEST_CASE("semiprojective construction (q=3, m=3) full checklist") {
  Field f(3);
  Tiling t = construct_semiprojective(f, 3);
  CHECK(t.n == 6);
  CHECK(t.u.size() == 27);
  CHECK(t.v.size() == 27);
  CHECK(verify_tiling(t).valid);
  CHECK(is_projective(f, t.u));
  CHECK(!is_projective(f, t.v));
  CHECK(rank_affine(f, t.u) == 6);
  CHECK(rank_affine(f, t.v) == 6);
  CHECK(periods(f, t.u).size() == 1);
  CHECK(periods(f, t.v).size() == 1);

  // Frozen membership spot checks (x-block coords 0..2, y-block coords 3..5):
  CHECK(t.u.contains(FVec::from_coords(3, {0, 0, 0, 0, 0, 0})));
  // x_1 + y_1 + x_2: the gamma=1, lambda=1 element of the first surgery piece
  CHECK(t.u.contains(FVec::from_coords(3, {1, 1, 0, 1, 0, 0})));
  // x_1 + x_2 lies in a removed slice of the x-hyperplane
  CHECK(!t.u.contains(FVec::from_coords(3, {1, 1, 0, 0, 0, 0})));
  // x_1 itself sits in a removed slice too (it is x_1 + 0*x_3... seen from
  // the wrap-around slice through x_3)
  CHECK(!t.u.contains(FVec::from_coords(3, {1, 0, 0, 0, 0, 0})));
  // V: component sums with each y_i coefficient != 1 unless paired with x_i
  CHECK(t.v.contains(FVec::from_coords(3, {0, 0, 0, 2, 0, 0})));    // 2y_1
  CHECK(t.v.contains(FVec::from_coords(3, {1, 0, 0, 1, 0, 0})));    // y_1+x_1
  CHECK(!t.v.contains(FVec::from_coords(3, {0, 0, 0, 1, 0, 0})));   // bare y_1
}

TEST_CASE("semiprojective construction over F_4 and F_5") {
  for (auto make : {+[] { return Field(2, 2); }, +[] { return Field(5); }}) {
    Field f = make();
    Tiling t = construct_semiprojective(f, 3);
    uint64_t qm = static_cast<uint64_t>(f.q()) * f.q() * f.q();
    CHECK(t.u.size() == qm);
    CHECK(t.v.size() == qm);
    CHECK(verify_tiling(t).valid);
    CHECK(is_projective(f, t.u));
    CHECK(rank_affine(f, t.u) == 6);
    CHECK(rank_affine(f, t.v) == 6);
    CHECK(periods(f, t.u).size() == 1);
    CHECK(periods(f, t.v).size() == 1);
  }
}

TEST_CASE("projective construction (q=3, m=5) full checklist") {
  Field f(3);
  Tiling t = construct_projective(f, 5);
  CHECK(t.n == 10);
  CHECK(t.u.size() == 243);
  CHECK(t.v.size() == 243);
  CHECK(verify_tiling(t).valid);
  CHECK(is_projective(f, t.u));
  CHECK(is_projective(f, t.v));
  CHECK(rank_affine(f, t.u) == 10);
  CHECK(rank_affine(f, t.v) == 10);
  CHECK(periods(f, t.u).size() == 1);
  CHECK(periods(f, t.v).size() == 1);

  // Frozen images of the y -> x companion map (x coords 0..4, y coords 5..9):
  // z = y_1 keeps x_1 because z_2 = 0.
  CHECK(t.v.contains(FVec::from_coords(3, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0})));
  // z = y_1 + y_2 suppresses x_1 (z_2 != 0) and keeps x_2 (z_3 = 0).
  CHECK(t.v.contains(FVec::from_coords(3, {0, 1, 0, 0, 0, 1, 1, 0, 0, 0})));
  // the same y-part appears exactly once in V, so the naive image is absent
  CHECK(!t.v.contains(FVec::from_coords(3, {1, 1, 0, 0, 0, 1, 1, 0, 0, 0})));
}

TEST_CASE("construction argument validation") {
  CHECK_THROWS(construct_semiprojective(Field(2), 3));  // q >= 3
  CHECK_THROWS(construct_semiprojective(Field(3), 2));  // m >= 3
  CHECK_THROWS(construct_projective(Field(2), 5));      // q >= 3
  CHECK_THROWS(construct_projective(Field(3), 4));      // m >= 5
  CHECK_THROWS(construct_projective(Field(3), 3));
}
