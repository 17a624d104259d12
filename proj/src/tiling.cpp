#include "tilekit/tiling.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace tilekit {
namespace {

constexpr uint64_t kDenseLimit = uint64_t{1} << 24;

// Membership oracle over keys: dense byte map when the space is small,
// hash set otherwise.
struct KeyMembership {
  std::vector<uint8_t> dense;
  std::unordered_set<uint64_t> sparse;
  bool use_dense = false;

  KeyMembership(const VSet& s, uint64_t space) {
    use_dense = space <= kDenseLimit;
    if (use_dense) {
      dense.assign(space, 0);
      for (const FVec& v : s.members()) dense[v.key()] = 1;
    } else {
      for (const FVec& v : s.members()) sparse.insert(v.key());
    }
  }
  bool contains(uint64_t k) const {
    return use_dense ? dense[k] != 0 : sparse.count(k) != 0;
  }
};

}  // namespace

TilingVerdict verify_tiling(const Field& f, const VSet& u, const VSet& v) {
  if (u.q() != v.q() || u.n() != v.n() || u.q() != f.q())
    throw std::invalid_argument("verify_tiling: field/length mismatch between tiles");
  if (u.empty() || v.empty())
    throw std::invalid_argument("verify_tiling: empty tile");
  const uint32_t n = u.n();
  TilingVerdict verdict;
  verdict.size_u = u.size();
  verdict.size_v = v.size();

  unsigned __int128 space = 1;
  for (uint32_t i = 0; i < n; ++i) space *= f.q();
  unsigned __int128 prod =
      static_cast<unsigned __int128>(u.size()) * v.size();
  if (prod != space) {
    verdict.size_mismatch = true;
    verdict.message = "|U|*|V| = " + std::to_string(u.size()) + "*" +
                      std::to_string(v.size()) + " != q^n";
    return verdict;
  }

  auto sz = space_size(f.q(), n);
  std::vector<FVec> us = u.sorted_members();
  std::vector<FVec> vs = v.sorted_members();
  if (sz && *sz <= kDenseLimit) {
    const uint64_t space64 = *sz;
    std::vector<uint32_t> seen_u(space64, UINT32_MAX), seen_v(space64, 0);
    for (uint32_t i = 0; i < us.size(); ++i)
      for (uint32_t j = 0; j < vs.size(); ++j) {
        uint64_t k = add(f, us[i], vs[j]).key();
        if (seen_u[k] != UINT32_MAX) {
          verdict.collision = {us[seen_u[k]], vs[seen_v[k]], us[i], vs[j]};
          verdict.message = "duplicate sum at key " + std::to_string(k);
          return verdict;
        }
        seen_u[k] = i;
        seen_v[k] = j;
      }
  } else {
    std::unordered_map<FVec, std::pair<uint32_t, uint32_t>, FVecHash> seen;
    seen.reserve(us.size() * vs.size());
    for (uint32_t i = 0; i < us.size(); ++i)
      for (uint32_t j = 0; j < vs.size(); ++j) {
        FVec s = add(f, us[i], vs[j]);
        auto [it, fresh] = seen.emplace(std::move(s), std::make_pair(i, j));
        if (!fresh) {
          verdict.collision = {us[it->second.first], vs[it->second.second],
                               us[i], vs[j]};
          verdict.message = "duplicate sum";
          return verdict;
        }
      }
  }
  // Cardinality matches and all sums are distinct, so the space is covered.
  verdict.valid = true;
  return verdict;
}

TilingVerdict verify_tiling(const Tiling& t) {
  return verify_tiling(t.field, t.u, t.v);
}

VSet periods(const Field& f, const VSet& s) {
  if (s.empty()) throw std::invalid_argument("periods: empty set");
  const uint32_t n = s.n();
  std::vector<FVec> members = s.sorted_members();
  const FVec& s0 = members[0];

  auto sz = space_size(f.q(), n);
  std::optional<KeyMembership> keyed;
  if (sz) keyed.emplace(s, *sz);

  auto in_s = [&](const FVec& v) {
    return keyed ? keyed->contains(v.key()) : s.contains(v);
  };
  auto is_period = [&](const FVec& d) {
    for (const FVec& m : members)
      if (!in_s(add(f, m, d))) return false;
    return true;
  };

  // per(S) is an F_p-subspace, so once a period is confirmed the whole
  // group generated so far is known; only new generators need a full scan.
  VSet group(f.q(), n);
  group.insert(FVec(f.q(), n));
  for (const FVec& m : members) {
    FVec d = sub(f, m, s0);
    if (group.contains(d)) continue;
    if (!is_period(d)) continue;
    std::vector<FVec> base = group.members();
    for (Elem lambda = 1; lambda < f.p(); ++lambda) {
      FVec ld = scale(f, lambda, d);
      for (const FVec& g : base) group.insert(add(f, g, ld));
    }
  }
  return group;
}

KernelInfo kernel(const Field& f, const VSet& s) {
  VSet per = periods(f, s);
  SpanBasis basis(f, s.n());
  for (const FVec& v : per.sorted_members()) {
    bool closed = true;
    for (Elem lambda = 2; lambda < f.q() && closed; ++lambda)
      closed = per.contains(scale(f, lambda, v));
    if (closed) basis.insert(v);
  }
  KernelInfo info;
  info.basis = basis.rows();
  info.dim = basis.dim();
  return info;
}

bool is_projective(const Field& f, const VSet& s) {
  if (!s.contains(FVec(f.q(), s.n()))) return false;
  for (const FVec& v : s.members())
    for (Elem lambda = 2; lambda < f.q(); ++lambda)
      if (!s.contains(scale(f, lambda, v))) return false;
  return true;
}

namespace {

FVec basis_vec(uint32_t q, uint32_t n, uint32_t idx, Elem value = 1) {
  FVec v(q, n);
  v.set(idx, value);
  return v;
}

// All vectors lambda_1 b_1 + ... + lambda_d b_d over F_q.
std::vector<FVec> enumerate_span(const Field& f, const std::vector<FVec>& basis,
                                 uint32_t n) {
  std::vector<FVec> out{FVec(f.q(), n)};
  for (const FVec& b : basis) {
    std::vector<FVec> next;
    next.reserve(out.size() * f.q());
    for (Elem lambda = 0; lambda < f.q(); ++lambda) {
      FVec lb = scale(f, lambda, b);
      for (const FVec& v : out) next.push_back(add(f, v, lb));
    }
    out = std::move(next);
  }
  return out;
}

void check_construction_args(const Field& f, uint32_t m, uint32_t min_m) {
  if (f.q() < 3)
    throw std::invalid_argument("field cardinality larger than 2 required");
  if (m < min_m)
    throw std::invalid_argument("m >= " + std::to_string(min_m) + " required");
}

// H \ (union of h_pieces) with all u_pieces inserted. Verifies that the
// pieces are mutually disjoint and consistent with H before cutting.
VSet surgery(const Field& f, uint32_t m,
             const std::vector<std::vector<FVec>>& h_pieces,
             const std::vector<std::vector<FVec>>& u_pieces) {
  const uint32_t n = 2 * m;
  VSet piece_elems(f.q(), n);
  for (const auto& piece : h_pieces)
    for (const FVec& v : piece)
      if (!piece_elems.insert(v))
        throw std::logic_error("surgery pieces are not pairwise disjoint");
  for (const auto& piece : u_pieces)
    for (const FVec& v : piece)
      if (!piece_elems.insert(v))
        throw std::logic_error("surgery pieces are not pairwise disjoint");

  VSet removed(f.q(), n);
  for (const auto& piece : h_pieces)
    for (const FVec& v : piece) removed.insert(v);

  std::vector<FVec> x_basis;
  for (uint32_t i = 0; i < m; ++i) x_basis.push_back(basis_vec(f.q(), n, i));
  VSet u(f.q(), n);
  for (const FVec& h : enumerate_span(f, x_basis, n))
    if (!removed.contains(h)) u.insert(h);
  for (const auto& piece : u_pieces)
    for (const FVec& v : piece)
      if (!u.insert(v))
        throw std::logic_error("surgery insertion collides with kept part of H");
  return u;
}

}  // namespace

Tiling construct_semiprojective(const Field& f, uint32_t m) {
  check_construction_args(f, m, 3);
  const uint32_t q = f.q();
  const uint32_t n = 2 * m;
  auto x = [&](uint32_t i) { return (i - 1) % m; };          // 1-based, cyclic
  auto y = [&](uint32_t i) { return m + (i - 1) % m; };

  // V = V_1 + ... + V_m, V_i = (<y_i> \ {y_i}) u {y_i + x_i}.
  VSet v(q, n);
  v.insert(FVec(q, n));
  for (uint32_t i = 1; i <= m; ++i) {
    std::vector<FVec> factor;
    for (Elem lambda = 0; lambda < q; ++lambda)
      if (lambda != 1) factor.push_back(basis_vec(q, n, y(i), lambda));
    FVec yx(q, n);
    yx.set(y(i), 1);
    yx.set(x(i), 1);
    factor.push_back(yx);

    VSet next(q, n);
    for (const FVec& a : v.members())
      for (const FVec& b : factor)
        if (!next.insert(add(f, a, b)))
          throw std::logic_error("Minkowski sum collision in V factors");
    v = std::move(next);
  }

  // U: cut H_{i,g} = <x_i> + g x_{i+1}, insert U_{i,g} = <x_i> + g y_i + g x_{i+1}.
  std::vector<std::vector<FVec>> h_pieces, u_pieces;
  for (uint32_t i = 1; i <= m; ++i)
    for (Elem g = 1; g < q; ++g) {
      std::vector<FVec> hp, up;
      for (Elem lambda = 0; lambda < q; ++lambda) {
        FVec h(q, n);
        h.set(x(i), lambda);
        h.set(x(i + 1), f.add(h.get(x(i + 1)), g));
        hp.push_back(h);
        FVec u = h;
        u.set(y(i), g);
        up.push_back(u);
      }
      h_pieces.push_back(std::move(hp));
      u_pieces.push_back(std::move(up));
    }
  VSet u = surgery(f, m, h_pieces, u_pieces);

  uint64_t expect = 1;
  for (uint32_t i = 0; i < m; ++i) expect *= q;
  if (u.size() != expect || v.size() != expect)
    throw std::logic_error("construction produced wrong tile sizes");
  return Tiling{f, n, std::move(u), std::move(v)};
}

Tiling construct_projective(const Field& f, uint32_t m) {
  check_construction_args(f, m, 5);
  const uint32_t q = f.q();
  const uint32_t n = 2 * m;
  auto x = [&](uint32_t i) { return (i - 1) % m; };
  auto y = [&](uint32_t i) { return m + (i - 1) % m; };

  // V = { v(z) : z in <y_1..y_m> }; x-coordinate i of v(z) is z_i when
  // z_{i+1} = 0 (cyclically) and 0 otherwise.
  VSet v(q, n);
  uint64_t count = 1;
  for (uint32_t i = 0; i < m; ++i) count *= q;
  for (uint64_t zkey = 0; zkey < count; ++zkey) {
    FVec z = FVec::from_key(q, m, zkey);
    FVec w(q, n);
    for (uint32_t i = 1; i <= m; ++i) {
      w.set(y(i), z.get(i - 1));
      Elem znext = z.get(i % m);  // z_{i+1}, cyclic
      w.set(x(i), znext == 0 ? z.get(i - 1) : 0);
    }
    if (!v.insert(w)) throw std::logic_error("v-map image collision");
  }

  // U: cut H_{i,g} = <x_i, x_{i+1}> + g x_{i+2},
  // insert U_{i,g} = <x_i, x_{i+1}> + g x_{i+2} + g y_{i+1}.
  std::vector<std::vector<FVec>> h_pieces, u_pieces;
  for (uint32_t i = 1; i <= m; ++i)
    for (Elem g = 1; g < q; ++g) {
      std::vector<FVec> hp, up;
      for (Elem l1 = 0; l1 < q; ++l1)
        for (Elem l2 = 0; l2 < q; ++l2) {
          FVec h(q, n);
          h.set(x(i), f.add(h.get(x(i)), l1));
          h.set(x(i + 1), f.add(h.get(x(i + 1)), l2));
          h.set(x(i + 2), f.add(h.get(x(i + 2)), g));
          hp.push_back(h);
          FVec u = h;
          u.set(y(i + 1), g);
          up.push_back(u);
        }
      h_pieces.push_back(std::move(hp));
      u_pieces.push_back(std::move(up));
    }
  VSet u = surgery(f, m, h_pieces, u_pieces);

  if (u.size() != count || v.size() != count)
    throw std::logic_error("construction produced wrong tile sizes");
  return Tiling{f, n, std::move(u), std::move(v)};
}

}  // namespace tilekit
