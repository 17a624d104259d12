#pragma once

#include <optional>
#include <string>

#include "tilekit/tiling.hpp"

namespace tilekit {

/// Point of PG(n-1, q): the canonical representative of a 1-dimensional
/// subspace, normalized so the lowest-index nonzero coordinate equals 1.
struct PPoint {
  FVec rep;

  friend bool operator==(const PPoint& a, const PPoint& b) { return a.rep == b.rep; }
  friend bool operator<(const PPoint& a, const PPoint& b) { return a.rep < b.rep; }
};

/// Normalizes a nonzero vector to its canonical projective representative.
PPoint normalize_point(const Field& f, const FVec& v);

/// All points of PG(n-1, q) in ascending key order of their representatives.
std::vector<PPoint> projective_points(const Field& f, uint32_t n);

/// A pair of disjoint point sets in PG(n-1, q); each set is kept sorted by
/// representative key.
struct Factorization {
  Field field;
  uint32_t n = 0;
  std::vector<PPoint> upts;
  std::vector<PPoint> vpts;
};

/// Normalizes, sorts and deduplicates both sets; throws if they intersect.
Factorization make_factorization(const Field& f, uint32_t n,
                                 const std::vector<FVec>& ureps,
                                 const std::vector<FVec>& vreps);

struct FactorizationVerdict {
  bool valid = false;
  /// No point lies outside the two sets; the defining condition is vacuous.
  bool degenerate = false;
  std::optional<PPoint> witness;  // point covered 0 or >= 2 times
  uint64_t witness_count = 0;
  std::string message;
};

/// Valid iff every point outside U-points and V-points lies on the line
/// through exactly one pair (u, v).
FactorizationVerdict verify_factorization(const Factorization& fac);

/// Requires both tiles projective.
Factorization tiling_to_factorization(const Tiling& t);
/// U/V = union of the 1-dimensional subspaces plus 0.
Tiling factorization_to_tiling(const Factorization& fac);

bool full_rank_points(const Field& f, uint32_t n, const std::vector<PPoint>& pts);

/// True iff p is in S and for every other s in S the whole line through
/// p and s lies in S.
bool is_period_point(const Field& f, const PPoint& p, const std::vector<PPoint>& pts);

/// Restriction to the projective span of the U-set: the factorization
/// (U, V restricted to span(U)), re-coordinatized to PG(d-1, q). Identity
/// when U is full-rank.
Factorization restrict_to_span(const Factorization& fac);

/// Quotient by a period point x of the U-set: points of G/x are lines
/// through x, re-coordinatized to PG(n-2, q) by extending x to a basis and
/// dropping the x-coordinate.
Factorization project_quotient(const Factorization& fac, const PPoint& x);

enum class GeometryKind { projective, affine };

struct SearchOptions {
  bool first_only = false;
  /// Root symmetry pruning: forces the smallest point into the U-set.
  bool prune = false;
  uint64_t max_points = 200;
  bool override_ceiling = false;
};

struct SearchSolution {
  std::vector<FVec> upts;
  std::vector<FVec> vpts;
};

struct SearchResult {
  std::vector<SearchSolution> solutions;
  uint64_t point_count = 0;
  uint64_t identity_lhs = 0;  // a + b + a*b*(line interior size)
  uint64_t identity_rhs = 0;  // number of points of the geometry
};

/// Backtracking enumeration of all factorizations with |U| = size_u,
/// |V| = size_v. The counting identity must hold and the geometry must be
/// within the point ceiling (unless overridden).
SearchResult exhaustive_search(const Field& f, GeometryKind kind, uint32_t n,
                               uint64_t size_u, uint64_t size_v,
                               const SearchOptions& opts = {});

/// Counting identity sides for a candidate size pair, without searching.
std::pair<uint64_t, uint64_t> counting_identity(const Field& f, GeometryKind kind,
                                                uint32_t n, uint64_t size_u,
                                                uint64_t size_v);

}  // namespace tilekit
