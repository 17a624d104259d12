#include "tilekit/projgeo.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace tilekit {

PPoint normalize_point(const Field& f, const FVec& v) {
  if (v.is_zero()) throw std::invalid_argument("normalize_point: zero vector");
  uint32_t lead = 0;
  while (v.get(lead) == 0) ++lead;
  return PPoint{scale(f, f.inv(v.get(lead)), v)};
}

std::vector<PPoint> projective_points(const Field& f, uint32_t n) {
  // Representatives are exactly the vectors whose lowest-index nonzero
  // coordinate is 1: enumerate by position of that coordinate.
  std::vector<PPoint> pts;
  auto tail = space_size(f.q(), n);
  if (!tail) throw std::overflow_error("projective_points: space too large");
  for (uint32_t lead = 0; lead < n; ++lead) {
    uint64_t combos = 1;
    for (uint32_t i = lead + 1; i < n; ++i) combos *= f.q();
    for (uint64_t t = 0; t < combos; ++t) {
      FVec v(f.q(), n);
      v.set(lead, 1);
      uint64_t rest = t;
      for (uint32_t i = lead + 1; i < n; ++i) {
        v.set(i, static_cast<Elem>(rest % f.q()));
        rest /= f.q();
      }
      pts.push_back(PPoint{std::move(v)});
    }
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

Factorization make_factorization(const Field& f, uint32_t n,
                                 const std::vector<FVec>& ureps,
                                 const std::vector<FVec>& vreps) {
  auto canon = [&](const std::vector<FVec>& reps) {
    std::vector<PPoint> pts;
    pts.reserve(reps.size());
    for (const FVec& r : reps) pts.push_back(normalize_point(f, r));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
  };
  Factorization fac{f, n, canon(ureps), canon(vreps)};
  for (const PPoint& p : fac.upts)
    if (std::binary_search(fac.vpts.begin(), fac.vpts.end(), p))
      throw std::invalid_argument("factorization point sets are not disjoint");
  return fac;
}

namespace {

std::unordered_map<uint64_t, size_t> index_by_key(const std::vector<PPoint>& pts) {
  std::unordered_map<uint64_t, size_t> idx;
  idx.reserve(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) idx.emplace(pts[i].rep.key(), i);
  return idx;
}

}  // namespace

FactorizationVerdict verify_factorization(const Factorization& fac) {
  const Field& f = fac.field;
  std::vector<PPoint> all = projective_points(f, fac.n);
  auto idx = index_by_key(all);

  std::vector<uint8_t> assigned(all.size(), 0);  // 1 = in U, 2 = in V
  for (const PPoint& p : fac.upts) assigned[idx.at(p.rep.key())] = 1;
  for (const PPoint& p : fac.vpts) assigned[idx.at(p.rep.key())] = 2;

  std::vector<uint32_t> count(all.size(), 0);
  for (const PPoint& u : fac.upts)
    for (const PPoint& v : fac.vpts)
      for (Elem lambda = 1; lambda < f.q(); ++lambda) {
        FVec w = add(f, u.rep, scale(f, lambda, v.rep));
        ++count[idx.at(normalize_point(f, w).rep.key())];
      }

  FactorizationVerdict verdict;
  verdict.degenerate = true;
  for (size_t i = 0; i < all.size(); ++i) {
    if (assigned[i]) continue;
    verdict.degenerate = false;
    if (count[i] != 1) {
      verdict.witness = all[i];
      verdict.witness_count = count[i];
      verdict.message = "point covered " + std::to_string(count[i]) + " times";
      return verdict;
    }
  }
  verdict.valid = true;
  return verdict;
}

Factorization tiling_to_factorization(const Tiling& t) {
  if (!is_projective(t.field, t.u) || !is_projective(t.field, t.v))
    throw std::invalid_argument("tiling_to_factorization: tile is not projective");
  std::vector<FVec> ureps, vreps;
  for (const FVec& v : t.u.members())
    if (!v.is_zero()) ureps.push_back(v);
  for (const FVec& v : t.v.members())
    if (!v.is_zero()) vreps.push_back(v);
  return make_factorization(t.field, t.n, ureps, vreps);
}

Tiling factorization_to_tiling(const Factorization& fac) {
  const Field& f = fac.field;
  auto expand = [&](const std::vector<PPoint>& pts) {
    VSet s(f.q(), fac.n);
    s.insert(FVec(f.q(), fac.n));
    for (const PPoint& p : pts)
      for (Elem lambda = 1; lambda < f.q(); ++lambda)
        s.insert(scale(f, lambda, p.rep));
    return s;
  };
  return Tiling{f, fac.n, expand(fac.upts), expand(fac.vpts)};
}

bool full_rank_points(const Field& f, uint32_t n, const std::vector<PPoint>& pts) {
  if (pts.empty()) throw std::invalid_argument("full_rank_points: empty set");
  SpanBasis basis(f, n);
  for (const PPoint& p : pts)
    if (basis.insert(p.rep) && basis.dim() == n) return true;
  return basis.dim() == n;
}

bool is_period_point(const Field& f, const PPoint& p, const std::vector<PPoint>& pts) {
  if (!std::binary_search(pts.begin(), pts.end(), p)) return false;
  for (const PPoint& s : pts) {
    if (s == p) continue;
    for (Elem lambda = 1; lambda < f.q(); ++lambda) {
      PPoint w = normalize_point(f, add(f, p.rep, scale(f, lambda, s.rep)));
      if (!std::binary_search(pts.begin(), pts.end(), w)) return false;
    }
  }
  return true;
}

Factorization restrict_to_span(const Factorization& fac) {
  FactorizationVerdict fv = verify_factorization(fac);
  if (!fv.valid)
    throw std::invalid_argument("restrict_to_span: input is not a factorization");
  const Field& f = fac.field;
  SpanBasis span(f, fac.n);
  for (const PPoint& p : fac.upts) span.insert(p.rep);
  const uint32_t d = span.dim();
  if (d == fac.n) return fac;

  auto project = [&](const FVec& v) {
    return FVec::from_coords(f.q(), span.coordinates(v));
  };
  std::vector<FVec> ureps, vreps;
  for (const PPoint& p : fac.upts) ureps.push_back(project(p.rep));
  for (const PPoint& p : fac.vpts)
    if (span.contains(p.rep)) vreps.push_back(project(p.rep));
  return make_factorization(f, d, ureps, vreps);
}

Factorization project_quotient(const Factorization& fac, const PPoint& x) {
  FactorizationVerdict fv = verify_factorization(fac);
  if (!fv.valid)
    throw std::invalid_argument("project_quotient: input is not a factorization");
  const Field& f = fac.field;
  if (!is_period_point(f, x, fac.upts))
    throw std::invalid_argument("project_quotient: x is not a period of the U-set");
  const uint32_t n = fac.n;

  // Extend x to a basis by greedily appending standard basis vectors.
  SpanBasis span(f, n);
  span.insert(x.rep);
  std::vector<FVec> basis{x.rep};
  for (uint32_t i = 0; i < n && basis.size() < n; ++i) {
    FVec e(f.q(), n);
    e.set(i, 1);
    if (span.insert(e)) basis.push_back(e);
  }
  FMatrix m(f.q(), n, n);
  for (uint32_t c = 0; c < n; ++c)
    for (uint32_t r = 0; r < n; ++r) m.at(r, c) = basis[c].get(r);
  // Coordinates in the basis: x-coordinate first; solve M c = v per point.
  auto quotient_rep = [&](const FVec& v) {
    LinearSolution sol = solve(f, m, v);
    FVec out(f.q(), n - 1);
    for (uint32_t i = 1; i < n; ++i) out.set(i - 1, sol.particular.get(i));
    return out;
  };

  std::vector<FVec> ureps, vreps;
  for (const PPoint& p : fac.upts) {
    if (p == x) continue;
    ureps.push_back(quotient_rep(p.rep));
  }
  for (const PPoint& p : fac.vpts) vreps.push_back(quotient_rep(p.rep));
  return make_factorization(f, n - 1, ureps, vreps);
}

std::pair<uint64_t, uint64_t> counting_identity(const Field& f, GeometryKind kind,
                                                uint32_t n, uint64_t size_u,
                                                uint64_t size_v) {
  uint64_t interior = kind == GeometryKind::projective ? f.q() - 1 : f.q() - 2;
  uint64_t lhs = size_u + size_v + size_u * size_v * interior;
  uint64_t rhs;
  if (kind == GeometryKind::projective) {
    uint64_t qn = 1;
    for (uint32_t i = 0; i < n; ++i) qn *= f.q();
    rhs = (qn - 1) / (f.q() - 1);
  } else {
    rhs = 1;
    for (uint32_t i = 0; i < n; ++i) rhs *= f.q();
  }
  return {lhs, rhs};
}

namespace {

struct SearchContext {
  const Field& f;
  GeometryKind kind;
  std::vector<FVec> points;                      // key order
  std::vector<std::vector<uint32_t>> interior;   // per ordered pair (i, j)
  uint64_t size_u, size_v;
  const SearchOptions& opts;
  SearchResult& result;

  std::vector<uint8_t> label;   // 0 none, 1 U, 2 V
  std::vector<uint32_t> count;  // incidence count per point
  std::vector<uint32_t> chosen_u, chosen_v;
  bool stop = false;

  const std::vector<uint32_t>& interior_of(uint32_t i, uint32_t j) {
    return interior[static_cast<size_t>(i) * points.size() + j];
  }

  void emit() {
    SearchSolution sol;
    for (uint32_t i : chosen_u) sol.upts.push_back(points[i]);
    for (uint32_t j : chosen_v) sol.vpts.push_back(points[j]);
    result.solutions.push_back(std::move(sol));
    if (opts.first_only) stop = true;
  }

  bool complete_ok() const {
    for (size_t i = 0; i < points.size(); ++i)
      if (label[i] == 0 && count[i] != 1) return false;
    return true;
  }

  void choose_v(uint32_t start) {
    if (stop) return;
    if (chosen_v.size() == size_v) {
      if (complete_ok()) emit();
      return;
    }
    for (uint32_t j = start; j < points.size(); ++j) {
      if (label[j] != 0) continue;
      label[j] = 2;
      chosen_v.push_back(j);
      std::vector<uint32_t> touched;
      bool feasible = true;
      for (uint32_t i : chosen_u) {
        for (uint32_t t : interior_of(i, j)) {
          ++count[t];
          touched.push_back(t);
        }
      }
      // A point covered twice must end up inside U or V; U is fixed and V
      // only grows with indices > j, so lower unassigned indices are dead.
      for (uint32_t t : touched)
        if (count[t] >= 2 && label[t] == 0 && t <= j) {
          feasible = false;
          break;
        }
      if (feasible) choose_v(j + 1);
      for (uint32_t i : chosen_u)
        for (uint32_t t : interior_of(i, j)) --count[t];
      chosen_v.pop_back();
      label[j] = 0;
      if (stop) return;
    }
  }

  void choose_u(uint32_t start) {
    if (stop) return;
    if (chosen_u.size() == size_u) {
      choose_v(0);
      return;
    }
    for (uint32_t i = start; i < points.size(); ++i) {
      if (opts.prune && chosen_u.empty() && i > 0) break;
      label[i] = 1;
      chosen_u.push_back(i);
      choose_u(i + 1);
      chosen_u.pop_back();
      label[i] = 0;
      if (stop) return;
    }
  }
};

std::vector<FVec> geometry_points(const Field& f, GeometryKind kind, uint32_t n) {
  std::vector<FVec> pts;
  if (kind == GeometryKind::projective) {
    for (PPoint& p : projective_points(f, n)) pts.push_back(std::move(p.rep));
  } else {
    auto sz = space_size(f.q(), n);
    if (!sz) throw std::overflow_error("geometry too large");
    for (uint64_t k = 0; k < *sz; ++k) pts.push_back(FVec::from_key(f.q(), n, k));
  }
  return pts;
}

// Points strictly between a and b on their line, as point indices.
std::vector<uint32_t> interior_points(const Field& f, GeometryKind kind,
                                      const FVec& a, const FVec& b,
                                      const std::unordered_map<uint64_t, uint32_t>& idx) {
  std::vector<uint32_t> out;
  if (kind == GeometryKind::projective) {
    for (Elem lambda = 1; lambda < f.q(); ++lambda) {
      FVec w = add(f, a, scale(f, lambda, b));
      out.push_back(idx.at(normalize_point(f, w).rep.key()));
    }
  } else {
    FVec dir = sub(f, b, a);
    for (Elem lambda = 2; lambda < f.q(); ++lambda)
      out.push_back(idx.at(add(f, a, scale(f, lambda, dir)).key()));
  }
  return out;
}

}  // namespace

SearchResult exhaustive_search(const Field& f, GeometryKind kind, uint32_t n,
                               uint64_t size_u, uint64_t size_v,
                               const SearchOptions& opts) {
  SearchResult result;
  auto [lhs, rhs] = counting_identity(f, kind, n, size_u, size_v);
  result.identity_lhs = lhs;
  result.identity_rhs = rhs;
  if (lhs != rhs)
    throw std::invalid_argument("counting identity violated: " + std::to_string(lhs) +
                                " != " + std::to_string(rhs));
  std::vector<FVec> points = geometry_points(f, kind, n);
  result.point_count = points.size();
  if (points.size() > opts.max_points && !opts.override_ceiling)
    throw std::runtime_error("geometry has " + std::to_string(points.size()) +
                             " points, above the search ceiling of " +
                             std::to_string(opts.max_points) +
                             "; pass the override to search anyway");

  std::unordered_map<uint64_t, uint32_t> idx;
  for (uint32_t i = 0; i < points.size(); ++i) idx.emplace(points[i].key(), i);
  const size_t p = points.size();
  std::vector<std::vector<uint32_t>> interior(p * p);
  for (uint32_t i = 0; i < p; ++i)
    for (uint32_t j = 0; j < p; ++j)
      if (i != j) interior[static_cast<size_t>(i) * p + j] =
          interior_points(f, kind, points[i], points[j], idx);

  SearchContext ctx{f,      kind,   std::move(points), std::move(interior),
                    size_u, size_v, opts,              result};
  ctx.label.assign(p, 0);
  ctx.count.assign(p, 0);
  ctx.choose_u(0);
  return result;
}

}  // namespace tilekit
