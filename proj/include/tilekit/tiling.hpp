#pragma once

#include <array>
#include <optional>
#include <string>

#include "tilekit/linalg.hpp"

namespace tilekit {

/// A pair of tiles (U, V) in F_q^n. |U|*|V| = q^n is a property checked by
/// verify_tiling, not enforced by the type.
struct Tiling {
  Field field;
  uint32_t n = 0;
  VSet u;
  VSet v;
};

struct TilingVerdict {
  bool valid = false;
  bool size_mismatch = false;
  uint64_t size_u = 0;
  uint64_t size_v = 0;
  /// First collision in key order: u1 + v1 == u2 + v2, (u1,v1) != (u2,v2).
  std::optional<std::array<FVec, 4>> collision;
  std::string message;
};

/// Valid iff every vector of F_q^n has exactly one representation u + v.
TilingVerdict verify_tiling(const Field& f, const VSet& u, const VSet& v);
TilingVerdict verify_tiling(const Tiling& t);

/// per(S) = {v : S + v = S}. Candidates are pruned to {s - s0 : s in S}.
VSet periods(const Field& f, const VSet& s);

struct KernelInfo {
  std::vector<FVec> basis;  // RREF rows over F_q
  uint32_t dim = 0;
};

/// The q-kernel: the maximal F_q-subspace contained in per(S).
KernelInfo kernel(const Field& f, const VSet& s);

/// True iff 0 is in S and S is closed under nonzero scalar multiplication.
bool is_projective(const Field& f, const VSet& s);

/// The full-rank aperiodic semiprojective tiling of F_q^{2m} (projective U,
/// |U| = |V| = q^m). Requires q >= 3 and m >= 3. Basis convention:
/// x_1..x_m are coordinates 0..m-1, y_1..y_m are coordinates m..2m-1.
Tiling construct_semiprojective(const Field& f, uint32_t m);

/// The full-rank aperiodic projective tiling of F_q^{2m} (both tiles
/// projective). Requires q >= 3 and m >= 5. Disjointness of all surgery
/// pieces is verified at construction time.
Tiling construct_projective(const Field& f, uint32_t m);

}  // namespace tilekit
