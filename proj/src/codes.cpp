#include "tilekit/codes.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <stdexcept>

namespace tilekit {

uint64_t ball_size(uint32_t q, uint32_t n, uint32_t r) {
  uint64_t total = 0;
  uint64_t binom = 1;   // C(n, i)
  uint64_t powqm1 = 1;  // (q-1)^i
  for (uint32_t i = 0; i <= r; ++i) {
    total += binom * powqm1;
    binom = binom * (n - i) / (i + 1);
    powqm1 *= q - 1;
  }
  return total;
}

namespace {

void enumerate_ball(const Field& f, const FVec& center, uint32_t radius,
                    uint32_t from, FVec& current,
                    const std::function<void(const FVec&)>& emit) {
  emit(current);
  if (radius == 0) return;
  for (uint32_t i = from; i < center.n(); ++i) {
    Elem orig = center.get(i);
    for (Elem v = 0; v < f.q(); ++v) {
      if (v == orig) continue;
      current.set(i, v);
      enumerate_ball(f, center, radius - 1, i + 1, current, emit);
    }
    current.set(i, orig);
  }
}

}  // namespace

VSet ball_members(const Field& f, const Ball& b) {
  if (b.radius > b.n) throw std::invalid_argument("ball radius exceeds length");
  VSet out(f.q(), b.n);
  FVec cur = b.center;
  enumerate_ball(f, b.center, b.radius, 0, cur,
                 [&](const FVec& v) { out.insert(v); });
  return out;
}

Representatives representatives(const Field& f, const VSet& u) {
  if (!is_projective(f, u))
    throw std::invalid_argument("representatives: tile is not projective");
  if (u.size() <= 1)
    throw std::invalid_argument("representatives: tile is {0}");
  const uint32_t n = u.n();
  VSet seen(f.q(), n);
  std::vector<FVec> points;
  for (const FVec& v : u.sorted_members()) {
    if (v.is_zero()) continue;
    uint32_t lead = 0;
    while (v.get(lead) == 0) ++lead;
    FVec rep = scale(f, f.inv(v.get(lead)), v);
    if (seen.insert(rep)) points.push_back(rep);
  }
  std::sort(points.begin(), points.end());
  const uint32_t cols = static_cast<uint32_t>(points.size());
  FMatrix h(f.q(), n, cols);
  for (uint32_t c = 0; c < cols; ++c)
    for (uint32_t r = 0; r < n; ++r) h.at(r, c) = points[c].get(r);
  return Representatives{std::move(points), std::move(h)};
}

uint64_t enum_ceiling_from_env() {
  if (const char* s = std::getenv(kEnumCeilingEnvVar)) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return kDefaultEnumCeiling;
}

Code code_from_tiling(const Tiling& t, uint64_t enum_ceiling) {
  TilingVerdict tv = verify_tiling(t);
  if (!tv.valid)
    throw std::invalid_argument("code_from_tiling: input is not a tiling: " + tv.message);
  const Field& f = t.field;
  Representatives reps = representatives(f, t.u);
  const uint32_t code_len = static_cast<uint32_t>(reps.points.size());

  unsigned __int128 words_total = 1;
  bool over = false;
  for (uint32_t i = 0; i < code_len && !over; ++i) {
    words_total *= f.q();
    if (words_total > enum_ceiling) over = true;
  }
  if (over)
    throw std::runtime_error(
        "code_from_tiling: enumeration of q^N candidates with N = " +
        std::to_string(code_len) + " exceeds the ceiling " +
        std::to_string(enum_ceiling) + "; set " + std::string(kEnumCeilingEnvVar) +
        " to override");
  const uint64_t total = static_cast<uint64_t>(words_total);

  // V membership by key (V lives in F_q^n, n = ambient dimension).
  auto ambient = space_size(f.q(), t.n);
  std::vector<uint8_t> v_dense;
  std::unordered_set<uint64_t> v_sparse;
  const bool dense = ambient && *ambient <= (uint64_t{1} << 24);
  if (dense) {
    v_dense.assign(*ambient, 0);
    for (const FVec& v : t.v.members()) v_dense[v.key()] = 1;
  } else {
    for (const FVec& v : t.v.members()) v_sparse.insert(v.key());
  }

  // Walk candidate keys 0..q^N-1 with an odometer, keeping the syndrome Hc
  // updated incrementally: when coordinate j steps from value a to the next
  // value, the syndrome changes by (next - a) * column_j.
  const uint32_t q = f.q();
  std::vector<FVec> step_delta(static_cast<size_t>(code_len) * q, FVec(q, t.n));
  for (uint32_t j = 0; j < code_len; ++j) {
    FVec colj(q, t.n);
    for (uint32_t r = 0; r < t.n; ++r) colj.set(r, reps.check_matrix.at(r, j));
    for (Elem a = 0; a < q; ++a) {
      Elem next = (a + 1 == q) ? 0 : a + 1;
      step_delta[static_cast<size_t>(j) * q + a] =
          scale(f, f.sub(next, a), colj);
    }
  }

  Code code{f, code_len, VSet(q, code_len),
            "code_from_tiling q=" + std::to_string(q) +
                " n=" + std::to_string(t.n) + " N=" + std::to_string(code_len)};

  std::vector<Elem> coords(code_len, 0);
  FVec syndrome(q, t.n);
  for (uint64_t key = 0;; ++key) {
    uint64_t skey = syndrome.key();
    bool in_v = dense ? v_dense[skey] != 0 : v_sparse.count(skey) != 0;
    if (in_v) code.words.insert(FVec::from_coords(q, coords));
    if (key + 1 == total) break;
    uint32_t j = 0;
    while (coords[j] == q - 1) {
      syndrome = add(f, syndrome, step_delta[static_cast<size_t>(j) * q + (q - 1)]);
      coords[j] = 0;
      ++j;
    }
    syndrome = add(f, syndrome, step_delta[static_cast<size_t>(j) * q + coords[j]]);
    ++coords[j];
  }
  return code;
}

PerfectVerdict verify_perfect(const Code& c, uint32_t radius) {
  if (c.words.empty()) throw std::invalid_argument("verify_perfect: empty code");
  const Field& f = c.field;
  const uint32_t n = c.length;
  PerfectVerdict verdict;

  unsigned __int128 space = 1;
  for (uint32_t i = 0; i < n; ++i) space *= f.q();
  unsigned __int128 prod =
      static_cast<unsigned __int128>(c.words.size()) * ball_size(f.q(), n, radius);
  if (prod != space) {
    verdict.size_mismatch = true;
    verdict.message = "|C| * |B_r| != q^N";
    return verdict;
  }

  auto sz = space_size(f.q(), n);
  std::vector<uint8_t> dense;
  std::unordered_set<FVec, FVecHash> sparse;
  const bool use_dense = sz && *sz <= (uint64_t{1} << 24);
  if (use_dense) dense.assign(*sz, 0);

  bool duplicate = false;
  FVec dup_vec;
  auto mark = [&](const FVec& v) {
    if (use_dense) {
      uint64_t k = v.key();
      if (dense[k]) {
        duplicate = true;
        dup_vec = v;
        return false;
      }
      dense[k] = 1;
    } else {
      if (!sparse.insert(v).second) {
        duplicate = true;
        dup_vec = v;
        return false;
      }
    }
    ++verdict.covered;
    return true;
  };

  for (const FVec& w : c.words.sorted_members()) {
    FVec cur = w;
    bool ok = true;
    enumerate_ball(f, w, radius, 0, cur, [&](const FVec& v) {
      if (ok) ok = mark(v);
    });
    if (!ok) break;
  }
  if (duplicate) {
    verdict.doubly_covered = dup_vec;
    verdict.message = "vector covered by two codeword balls";
    return verdict;
  }
  uint64_t total = static_cast<uint64_t>(space);
  verdict.uncovered = total - verdict.covered;
  verdict.valid = verdict.uncovered == 0;
  if (!verdict.valid)
    verdict.message = std::to_string(verdict.uncovered) + " vectors uncovered";
  return verdict;
}

CodeStats code_stats(const Code& c) {
  CodeStats stats;
  stats.rank = rank_affine(c.field, c.words);
  stats.full_rank = stats.rank == c.length;
  stats.kernel_dim = kernel(c.field, c.words).dim;
  stats.period_count = periods(c.field, c.words).size();
  return stats;
}

CodeStatsPrediction predict_code_stats(const Tiling& t, uint32_t code_length) {
  const Field& f = t.field;
  SpanBasis span_u(f, t.n);
  for (const FVec& v : t.u.sorted_members()) span_u.insert(v);
  VSet v_u(f.q(), t.n);
  for (const FVec& v : t.v.sorted_members())
    if (span_u.contains(v)) v_u.insert(v);
  const uint32_t r = rank_affine(f, t.u);

  CodeStatsPrediction pred;
  pred.rank = rank_affine(f, v_u) + code_length - r;
  pred.kernel_dim = kernel(f, v_u).dim + code_length - r;
  uint64_t qpow = 1;
  for (uint32_t i = 0; i < code_length - r; ++i) qpow *= f.q();
  pred.period_count = periods(f, v_u).size() * qpow;
  return pred;
}

}  // namespace tilekit
