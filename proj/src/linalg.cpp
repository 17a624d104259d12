#include "tilekit/linalg.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace tilekit {

std::optional<uint64_t> space_size(uint32_t q, uint32_t n) {
  uint64_t s = 1;
  const uint64_t cap = uint64_t{1} << 63;
  for (uint32_t i = 0; i < n; ++i) {
    if (s > cap / q) return std::nullopt;
    s *= q;
  }
  if (s > cap) return std::nullopt;
  return s;
}

namespace {
uint32_t coord_bits(uint32_t q) {
  return std::max(1u, static_cast<uint32_t>(std::bit_width(q - 1)));
}
uint64_t mix(uint64_t x) {  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}
}  // namespace

FVec::FVec(uint32_t q, uint32_t n) : q_(q), n_(n), bits_(coord_bits(q)) {
  const uint32_t per_word = 64 / bits_;
  words_.assign((n + per_word - 1) / per_word, 0);
  if (n == 0) words_.clear();
}

FVec FVec::from_coords(uint32_t q, const std::vector<Elem>& coords) {
  FVec v(q, static_cast<uint32_t>(coords.size()));
  for (uint32_t i = 0; i < v.n_; ++i) v.set(i, coords[i]);
  return v;
}

FVec FVec::from_key(uint32_t q, uint32_t n, uint64_t key) {
  FVec v(q, n);
  for (uint32_t i = 0; i < n; ++i) {
    v.set(i, static_cast<Elem>(key % q));
    key /= q;
  }
  return v;
}

Elem FVec::get(uint32_t i) const {
  const uint32_t per_word = 64 / bits_;
  const uint64_t w = words_[i / per_word];
  const uint32_t off = (i % per_word) * bits_;
  return static_cast<Elem>((w >> off) & ((uint64_t{1} << bits_) - 1));
}

void FVec::set(uint32_t i, Elem v) {
  const uint32_t per_word = 64 / bits_;
  const uint32_t off = (i % per_word) * bits_;
  uint64_t& w = words_[i / per_word];
  w &= ~(((uint64_t{1} << bits_) - 1) << off);
  w |= static_cast<uint64_t>(v) << off;
}

std::vector<Elem> FVec::coords() const {
  std::vector<Elem> c(n_);
  for (uint32_t i = 0; i < n_; ++i) c[i] = get(i);
  return c;
}

bool FVec::is_zero() const {
  for (uint64_t w : words_)
    if (w) return false;
  return true;
}

uint64_t FVec::key() const {
  auto sz = space_size(q_, n_);
  if (!sz) throw std::overflow_error("FVec::key: q^n exceeds 2^63");
  uint64_t k = 0;
  for (uint32_t i = n_; i-- > 0;) k = k * q_ + get(i);
  return k;
}

size_t FVec::hash() const {
  uint64_t h = mix(static_cast<uint64_t>(q_) << 32 | n_);
  for (uint64_t w : words_) h = mix(h ^ w);
  return static_cast<size_t>(h);
}

bool operator<(const FVec& a, const FVec& b) {
  for (size_t i = a.words_.size(); i-- > 0;)
    if (a.words_[i] != b.words_[i]) return a.words_[i] < b.words_[i];
  return false;
}

FVec add(const Field& f, const FVec& a, const FVec& b) {
  FVec r(a.q(), a.n());
  for (uint32_t i = 0; i < a.n(); ++i) r.set(i, f.add(a.get(i), b.get(i)));
  return r;
}

FVec sub(const Field& f, const FVec& a, const FVec& b) {
  FVec r(a.q(), a.n());
  for (uint32_t i = 0; i < a.n(); ++i) r.set(i, f.sub(a.get(i), b.get(i)));
  return r;
}

FVec neg(const Field& f, const FVec& a) {
  FVec r(a.q(), a.n());
  for (uint32_t i = 0; i < a.n(); ++i) r.set(i, f.neg(a.get(i)));
  return r;
}

FVec scale(const Field& f, Elem lambda, const FVec& a) {
  FVec r(a.q(), a.n());
  for (uint32_t i = 0; i < a.n(); ++i) r.set(i, f.mul(lambda, a.get(i)));
  return r;
}

bool VSet::insert(const FVec& v) {
  if (v.q() != q_ || v.n() != n_)
    throw std::invalid_argument("VSet::insert: field/length mismatch");
  if (!set_.insert(v).second) return false;
  members_.push_back(v);
  return true;
}

std::vector<FVec> VSet::sorted_members() const {
  std::vector<FVec> m = members_;
  std::sort(m.begin(), m.end());
  return m;
}

std::vector<uint64_t> VSet::sorted_keys() const {
  std::vector<uint64_t> k;
  k.reserve(members_.size());
  for (const FVec& v : members_) k.push_back(v.key());
  std::sort(k.begin(), k.end());
  return k;
}

FMatrix FMatrix::identity(uint32_t q, uint32_t n) {
  FMatrix m(q, n, n);
  for (uint32_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FVec FMatrix::col(uint32_t c) const {
  FVec v(q, rows);
  for (uint32_t r = 0; r < rows; ++r) v.set(r, at(r, c));
  return v;
}

FVec FMatrix::row(uint32_t r) const {
  FVec v(q, cols);
  for (uint32_t c = 0; c < cols; ++c) v.set(c, at(r, c));
  return v;
}

FVec mat_vec(const Field& f, const FMatrix& h, const FVec& x) {
  if (h.cols != x.n()) throw std::invalid_argument("mat_vec: dimension mismatch");
  FVec y(h.q, h.rows);
  for (uint32_t r = 0; r < h.rows; ++r) {
    Elem s = 0;
    for (uint32_t c = 0; c < h.cols; ++c) s = f.add(s, f.mul(h.at(r, c), x.get(c)));
    y.set(r, s);
  }
  return y;
}

SpanBasis::SpanBasis(const Field& f, uint32_t n) : field_(f), n_(n) {}

FVec SpanBasis::reduce(FVec v) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    Elem c = v.get(pivots_[i]);
    if (c != 0) v = sub(field_, v, scale(field_, c, rows_[i]));
  }
  return v;
}

bool SpanBasis::contains(const FVec& v) const { return reduce(v).is_zero(); }

bool SpanBasis::insert(FVec v) {
  v = reduce(std::move(v));
  uint32_t piv = n_;
  for (uint32_t i = 0; i < n_; ++i)
    if (v.get(i) != 0) {
      piv = i;
      break;
    }
  if (piv == n_) return false;
  v = scale(field_, field_.inv(v.get(piv)), v);
  for (size_t i = 0; i < rows_.size(); ++i) {
    Elem c = rows_[i].get(piv);
    if (c != 0) rows_[i] = sub(field_, rows_[i], scale(field_, c, v));
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv);
  size_t idx = static_cast<size_t>(pos - pivots_.begin());
  pivots_.insert(pos, piv);
  rows_.insert(rows_.begin() + static_cast<ptrdiff_t>(idx), std::move(v));
  return true;
}

std::vector<Elem> SpanBasis::coordinates(const FVec& v) const {
  std::vector<Elem> c(rows_.size());
  for (size_t i = 0; i < rows_.size(); ++i) c[i] = v.get(pivots_[i]);
  return c;
}

uint32_t rank_linear(const Field& f, const VSet& s) {
  SpanBasis basis(f, s.n());
  for (const FVec& v : s.sorted_members()) basis.insert(v);
  return basis.dim();
}

uint32_t rank_affine(const Field& f, const VSet& s) {
  if (s.empty()) throw std::invalid_argument("rank_affine: empty set");
  std::vector<FVec> m = s.sorted_members();
  SpanBasis basis(f, s.n());
  for (size_t i = 1; i < m.size(); ++i) basis.insert(sub(f, m[i], m[0]));
  return basis.dim();
}

LinearSolution solve(const Field& f, const FMatrix& h, const FVec& target) {
  if (h.rows != target.n())
    throw std::invalid_argument("solve: dimension mismatch");
  const uint32_t rows = h.rows, cols = h.cols;
  // Row-reduce the augmented matrix [H | target].
  std::vector<std::vector<Elem>> m(rows, std::vector<Elem>(cols + 1, 0));
  for (uint32_t r = 0; r < rows; ++r) {
    for (uint32_t c = 0; c < cols; ++c) m[r][c] = h.at(r, c);
    m[r][cols] = target.get(r);
  }
  std::vector<uint32_t> pivot_col;
  uint32_t rank = 0;
  for (uint32_t c = 0; c < cols && rank < rows; ++c) {
    uint32_t sel = rows;
    for (uint32_t r = rank; r < rows; ++r)
      if (m[r][c] != 0) {
        sel = r;
        break;
      }
    if (sel == rows) continue;
    std::swap(m[rank], m[sel]);
    Elem iv = f.inv(m[rank][c]);
    for (uint32_t j = 0; j <= cols; ++j) m[rank][j] = f.mul(iv, m[rank][j]);
    for (uint32_t r = 0; r < rows; ++r)
      if (r != rank && m[r][c] != 0) {
        Elem coef = m[r][c];
        for (uint32_t j = 0; j <= cols; ++j)
          m[r][j] = f.sub(m[r][j], f.mul(coef, m[rank][j]));
      }
    pivot_col.push_back(c);
    ++rank;
  }
  LinearSolution sol;
  for (uint32_t r = rank; r < rows; ++r)
    if (m[r][cols] != 0) return sol;  // inconsistent
  sol.consistent = true;
  sol.particular = FVec(h.q, cols);
  for (uint32_t i = 0; i < rank; ++i) sol.particular.set(pivot_col[i], m[i][cols]);
  std::vector<bool> is_pivot(cols, false);
  for (uint32_t c : pivot_col) is_pivot[c] = true;
  for (uint32_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    FVec b(h.q, cols);
    b.set(c, 1);
    for (uint32_t i = 0; i < rank; ++i) b.set(pivot_col[i], f.neg(m[i][c]));
    sol.kernel_basis.push_back(std::move(b));
  }
  return sol;
}

}  // namespace tilekit
