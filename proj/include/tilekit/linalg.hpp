#pragma once

#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "tilekit/gf.hpp"

namespace tilekit {

/// q^n if it fits in a signed 64-bit range (keyed mode), nullopt otherwise.
std::optional<uint64_t> space_size(uint32_t q, uint32_t n);

/// Packed vector in F_q^n. Coordinates are stored at bit_width(q-1) bits
/// each inside 64-bit words, coordinate 0 in the low bits of word 0.
class FVec {
public:
  FVec() = default;
  FVec(uint32_t q, uint32_t n);  // zero vector
  static FVec from_coords(uint32_t q, const std::vector<Elem>& coords);
  /// Inverse of key(); requires keyed mode.
  static FVec from_key(uint32_t q, uint32_t n, uint64_t key);

  uint32_t q() const { return q_; }
  uint32_t n() const { return n_; }
  Elem get(uint32_t i) const;
  void set(uint32_t i, Elem v);
  std::vector<Elem> coords() const;
  bool is_zero() const;
  /// Canonical integer key: sum coords[i] * q^i (coordinate 0 least
  /// significant). Bijective with F_q^n; requires q^n <= 2^63.
  uint64_t key() const;
  size_t hash() const;

  friend bool operator==(const FVec& a, const FVec& b) {
    return a.q_ == b.q_ && a.n_ == b.n_ && a.words_ == b.words_;
  }
  friend bool operator!=(const FVec& a, const FVec& b) { return !(a == b); }
  /// Key order (works in non-keyed mode too: digitwise comparison,
  /// highest index most significant).
  friend bool operator<(const FVec& a, const FVec& b);

private:
  uint32_t q_ = 0;
  uint32_t n_ = 0;
  uint32_t bits_ = 0;
  std::vector<uint64_t> words_;
};

struct FVecHash {
  size_t operator()(const FVec& v) const { return v.hash(); }
};

FVec add(const Field& f, const FVec& a, const FVec& b);
FVec sub(const Field& f, const FVec& a, const FVec& b);
FVec neg(const Field& f, const FVec& a);
FVec scale(const Field& f, Elem lambda, const FVec& a);

/// Deduplicated set of vectors sharing one field and length. Single-writer
/// during construction; read-only and freely shareable afterwards.
class VSet {
public:
  VSet() = default;
  VSet(uint32_t q, uint32_t n) : q_(q), n_(n) {}

  uint32_t q() const { return q_; }
  uint32_t n() const { return n_; }
  size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  /// Returns false if the vector was already present.
  bool insert(const FVec& v);
  bool contains(const FVec& v) const { return set_.count(v) != 0; }

  /// Insertion order.
  const std::vector<FVec>& members() const { return members_; }
  /// Ascending key order.
  std::vector<FVec> sorted_members() const;
  std::vector<uint64_t> sorted_keys() const;

  friend bool operator==(const VSet& a, const VSet& b) {
    return a.q_ == b.q_ && a.n_ == b.n_ && a.set_ == b.set_;
  }

private:
  uint32_t q_ = 0;
  uint32_t n_ = 0;
  std::vector<FVec> members_;
  std::unordered_set<FVec, FVecHash> set_;
};

struct FMatrix {
  uint32_t q = 0;
  uint32_t rows = 0;
  uint32_t cols = 0;
  std::vector<Elem> a;  // row-major

  FMatrix() = default;
  FMatrix(uint32_t q_, uint32_t rows_, uint32_t cols_)
      : q(q_), rows(rows_), cols(cols_), a(static_cast<size_t>(rows_) * cols_, 0) {}

  Elem& at(uint32_t r, uint32_t c) { return a[static_cast<size_t>(r) * cols + c]; }
  Elem at(uint32_t r, uint32_t c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static FMatrix identity(uint32_t q, uint32_t n);
  FVec col(uint32_t c) const;
  FVec row(uint32_t r) const;
};

FVec mat_vec(const Field& f, const FMatrix& h, const FVec& x);

/// Incremental reduced-row-echelon basis over F_q. Pivots on the
/// lowest-index nonzero column; rows kept fully reduced with pivot
/// coefficient 1, ordered by ascending pivot.
class SpanBasis {
public:
  SpanBasis(const Field& f, uint32_t n);

  /// Adds v to the span; returns true iff the dimension grew.
  bool insert(FVec v);
  bool contains(const FVec& v) const;
  /// v minus its projection onto the span.
  FVec reduce(FVec v) const;
  uint32_t dim() const { return static_cast<uint32_t>(rows_.size()); }
  uint32_t n() const { return n_; }
  const std::vector<FVec>& rows() const { return rows_; }
  const std::vector<uint32_t>& pivots() const { return pivots_; }
  /// Coordinates of v in the row basis; requires contains(v).
  std::vector<Elem> coordinates(const FVec& v) const;

private:
  Field field_;
  uint32_t n_ = 0;
  std::vector<FVec> rows_;
  std::vector<uint32_t> pivots_;
};

/// Dimension of the linear span, by Gaussian elimination; members are
/// processed in ascending key order.
uint32_t rank_linear(const Field& f, const VSet& s);

/// Dimension of the affine span: rank_linear of {s - s0} with s0 the
/// member of smallest key. Throws on an empty set.
uint32_t rank_affine(const Field& f, const VSet& s);

struct LinearSolution {
  bool consistent = false;
  FVec particular;                 // meaningful iff consistent
  std::vector<FVec> kernel_basis;  // basis of {x : Hx = 0}
};

/// Full solution set of Hx = target over F_q. Inconsistency is a result,
/// not an error.
LinearSolution solve(const Field& f, const FMatrix& h, const FVec& target);

}  // namespace tilekit
