#pragma once

#include <optional>
#include <string>

#include "tilekit/tiling.hpp"

namespace tilekit {

/// Explicit set of codewords of length N over F_q.
struct Code {
  Field field;
  uint32_t length = 0;
  VSet words;
  std::string meta;  // provenance: construction parameters or source file
};

struct Ball {
  uint32_t n = 0;
  uint32_t radius = 0;
  FVec center;
};

/// |B_r| = sum_{i=0}^{r} C(n,i) (q-1)^i.
uint64_t ball_size(uint32_t q, uint32_t n, uint32_t r);

/// Explicit enumeration of the radius-r ball around the center.
VSet ball_members(const Field& f, const Ball& b);

struct Representatives {
  /// One representative per 1-dimensional subspace in U \ {0}, normalized so
  /// the lowest-index nonzero coordinate equals 1, in ascending key order.
  std::vector<FVec> points;
  /// n x N matrix with the representatives as columns, same order.
  FMatrix check_matrix;
};

/// Requires U projective and U != {0}. N = |points| satisfies
/// N * (q - 1) = |U| - 1.
Representatives representatives(const Field& f, const VSet& u);

inline constexpr uint64_t kDefaultEnumCeiling = uint64_t{1} << 24;

/// Name of the environment variable overriding the enumeration ceiling.
inline constexpr const char* kEnumCeilingEnvVar = "TILEKIT_ENUM_CEILING";

/// Default ceiling, or the TILEKIT_ENUM_CEILING override when set.
uint64_t enum_ceiling_from_env();

/// C = { c in F^N : Hc in V }, enumerated in ascending key order.
/// Requires a valid tiling with projective U and q^N within the ceiling.
Code code_from_tiling(const Tiling& t, uint64_t enum_ceiling = kDefaultEnumCeiling);

struct PerfectVerdict {
  bool valid = false;
  bool size_mismatch = false;
  uint64_t covered = 0;
  uint64_t uncovered = 0;
  /// First vector found inside two codeword balls, in enumeration order.
  std::optional<FVec> doubly_covered;
  std::string message;
};

/// Valid iff the radius-r balls around the codewords tile F_q^N.
PerfectVerdict verify_perfect(const Code& c, uint32_t radius);

struct CodeStats {
  uint32_t rank = 0;
  bool full_rank = false;
  uint32_t kernel_dim = 0;
  uint64_t period_count = 0;
};

/// Rank, kernel and period invariants, computed directly from the codeword
/// set (independent of any construction-side formula).
CodeStats code_stats(const Code& c);

struct CodeStatsPrediction {
  uint32_t rank = 0;
  uint32_t kernel_dim = 0;
  uint64_t period_count = 0;
};

/// Predicted stats of the code obtained from the tiling: with V_U = V
/// intersected with the linear span of U and r the rank of U,
/// rank(C) = rank(V_U) + N - r, dim ker(C) = dim ker(V_U) + N - r,
/// |per(C)| = |per(V_U)| * q^{N-r}.
CodeStatsPrediction predict_code_stats(const Tiling& t, uint32_t code_length);

}  // namespace tilekit
