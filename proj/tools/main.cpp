// tilekit command-line tool: construct tilings, verify tilings / perfect
// codes / factorizations, derive codes from tilings, and search for
// factorizations of tiny geometries.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "tilekit/codes.hpp"
#include "tilekit/io.hpp"
#include "tilekit/projgeo.hpp"
#include "tilekit/tiling.hpp"

using json = nlohmann::ordered_json;
using namespace tilekit;

namespace {

constexpr int kExitValid = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

void emit_report(const json& report, const std::string& report_path) {
  std::cout << report.dump(2) << '\n';
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    out << report.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write report: " + report_path);
  }
}

std::string vec_to_string(const FVec& v) {
  std::string s;
  for (uint32_t i = 0; i < v.n(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v.get(i));
  }
  return s;
}

json field_json(const Field& f) {
  json j;
  j["q"] = f.q();
  j["p"] = f.p();
  j["k"] = f.k();
  if (f.k() > 1) j["modulus"] = f.modulus();
  return j;
}

// Full verification checklist for a constructed tiling.
json run_checklist(const Tiling& t, bool require_projective_v, bool& all_ok) {
  json checks;
  TilingVerdict tv = verify_tiling(t);
  checks["tiling"] = tv.valid ? "valid" : "invalid";
  bool proj_u = is_projective(t.field, t.u);
  bool proj_v = is_projective(t.field, t.v);
  checks["projective_u"] = proj_u;
  checks["projective_v"] = proj_v;
  uint32_t ru = rank_affine(t.field, t.u);
  uint32_t rv = rank_affine(t.field, t.v);
  checks["rank_u"] = ru;
  checks["rank_v"] = rv;
  checks["full_rank"] = ru == t.n && rv == t.n;
  bool aper_u = periods(t.field, t.u).size() == 1;
  bool aper_v = periods(t.field, t.v).size() == 1;
  checks["aperiodic_u"] = aper_u;
  checks["aperiodic_v"] = aper_v;
  all_ok = tv.valid && proj_u && ru == t.n && rv == t.n && aper_u && aper_v &&
           (!require_projective_v || proj_v);
  return checks;
}

struct CommonOpts {
  std::string report_path;
  bool timings = false;
  unsigned threads = 1;  // reference behavior; all verifiers run sequentially
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--report", opts.report_path, "also write the report to this file");
  cmd->add_flag("--timings", opts.timings,
                "include wall-clock timings in the report (breaks byte-for-byte "
                "reproducibility of reports)");
  cmd->add_option("--threads", opts.threads, "worker thread count (1 = reference)");
}

int cmd_construct(int theorem, uint32_t p, uint32_t k, uint32_t m,
                  const std::string& out_u, const std::string& out_v,
                  const CommonOpts& opts) {
  Stopwatch sw;
  Field f = k > 1 ? Field(p, k) : Field(p);
  Tiling t = theorem == 1 ? construct_semiprojective(f, m)
                          : construct_projective(f, m);
  write_tile_file(out_u, f, t.u, "tile");
  write_tile_file(out_v, f, t.v, "tile");

  json report;
  report["command"] = "construct";
  report["theorem"] = theorem;
  report["field"] = field_json(f);
  report["m"] = m;
  report["n"] = t.n;
  report["size_u"] = t.u.size();
  report["size_v"] = t.v.size();
  bool all_ok = false;
  report["checks"] = run_checklist(t, theorem == 2, all_ok);
  report["verdict"] = all_ok ? "valid" : "invalid";
  report["files"] = {{"u", out_u}, {"v", out_v}};
  if (opts.timings) report["timings_ms"] = {{"total", sw.ms()}};
  emit_report(report, opts.report_path);
  return all_ok ? kExitValid : kExitInvalid;
}

Field require_same_field(const TileFile& a, const TileFile& b) {
  if (!(a.field == b.field) || a.n != b.n)
    throw std::runtime_error("header mismatch between input files");
  return a.field;
}

int cmd_verify_tiling(const std::string& u_path, const std::string& v_path,
                      const CommonOpts& opts) {
  Stopwatch sw;
  TileFile uf = read_tile_file(u_path);
  TileFile vf = read_tile_file(v_path);
  Field f = require_same_field(uf, vf);
  VSet u = uf.to_vset(), v = vf.to_vset();
  TilingVerdict tv = verify_tiling(f, u, v);

  json report;
  report["command"] = "verify";
  report["object"] = "tiling";
  report["field"] = field_json(f);
  report["n"] = uf.n;
  report["size_u"] = u.size();
  report["size_v"] = v.size();
  report["verdict"] = tv.valid ? "valid" : "invalid";
  if (!tv.valid) {
    report["reason"] = tv.size_mismatch ? "cardinality" : "collision";
    if (tv.collision) {
      report["witness"] = {{"u1", vec_to_string((*tv.collision)[0])},
                           {"v1", vec_to_string((*tv.collision)[1])},
                           {"u2", vec_to_string((*tv.collision)[2])},
                           {"v2", vec_to_string((*tv.collision)[3])}};
    }
    if (!tv.message.empty()) report["message"] = tv.message;
  }
  if (opts.timings) report["timings_ms"] = {{"total", sw.ms()}};
  emit_report(report, opts.report_path);
  return tv.valid ? kExitValid : kExitInvalid;
}

int cmd_verify_code(const std::string& code_path, uint32_t radius,
                    std::optional<uint32_t> assume_q, const CommonOpts& opts) {
  Stopwatch sw;
  TileFile cf = assume_q ? read_digit_rows(code_path, *assume_q)
                         : read_tile_file(code_path);
  Code code{cf.field, cf.n, cf.to_vset(), "file:" + code_path};
  PerfectVerdict pv = verify_perfect(code, radius);

  json report;
  report["command"] = "verify";
  report["object"] = "code";
  report["field"] = field_json(cf.field);
  report["length"] = cf.n;
  report["size"] = code.words.size();
  report["radius"] = radius;
  report["verdict"] = pv.valid ? "valid" : "invalid";
  if (!pv.valid) {
    report["reason"] = pv.size_mismatch
                           ? "cardinality"
                           : (pv.doubly_covered ? "double_cover" : "uncovered");
    report["covered"] = pv.covered;
    report["uncovered"] = pv.uncovered;
    if (pv.doubly_covered) report["witness"] = vec_to_string(*pv.doubly_covered);
    if (!pv.message.empty()) report["message"] = pv.message;
  } else {
    CodeStats stats = code_stats(code);
    report["rank"] = stats.rank;
    report["full_rank"] = stats.full_rank;
    report["kernel_dim"] = stats.kernel_dim;
    report["period_count"] = stats.period_count;
  }
  if (opts.timings) report["timings_ms"] = {{"total", sw.ms()}};
  emit_report(report, opts.report_path);
  return pv.valid ? kExitValid : kExitInvalid;
}

int cmd_verify_factorization(const std::string& fu_path, const std::string& fv_path,
                             const CommonOpts& opts) {
  Stopwatch sw;
  TileFile uf = read_tile_file(fu_path);
  TileFile vf = read_tile_file(fv_path);
  Field f = require_same_field(uf, vf);
  Factorization fac = make_factorization(f, uf.n, uf.rows, vf.rows);
  FactorizationVerdict fv = verify_factorization(fac);

  json report;
  report["command"] = "verify";
  report["object"] = "factorization";
  report["field"] = field_json(f);
  report["n"] = uf.n;
  report["size_u"] = fac.upts.size();
  report["size_v"] = fac.vpts.size();
  report["verdict"] = fv.valid ? "valid" : "invalid";
  report["degenerate"] = fv.degenerate;
  if (!fv.valid && fv.witness) {
    report["witness"] = vec_to_string(fv.witness->rep);
    report["witness_count"] = fv.witness_count;
  }
  if (opts.timings) report["timings_ms"] = {{"total", sw.ms()}};
  emit_report(report, opts.report_path);
  return fv.valid ? kExitValid : kExitInvalid;
}

int cmd_to_code(const std::string& u_path, const std::string& v_path,
                const std::string& out_path, const CommonOpts& opts) {
  Stopwatch sw;
  TileFile uf = read_tile_file(u_path);
  TileFile vf = read_tile_file(v_path);
  Field f = require_same_field(uf, vf);
  Tiling t{f, uf.n, uf.to_vset(), vf.to_vset()};
  Code code = code_from_tiling(t, enum_ceiling_from_env());
  write_tile_file(out_path, f, code.words, "code");

  PerfectVerdict pv = verify_perfect(code, 1);
  CodeStats stats = code_stats(code);
  CodeStatsPrediction pred = predict_code_stats(t, code.length);

  json report;
  report["command"] = "to-code";
  report["field"] = field_json(f);
  report["length"] = code.length;
  report["size"] = code.words.size();
  report["perfect_r1"] = pv.valid ? "valid" : "invalid";
  report["rank"] = stats.rank;
  report["full_rank"] = stats.full_rank;
  report["kernel_dim"] = stats.kernel_dim;
  report["period_count"] = stats.period_count;
  report["formula_cross_check"] = {
      {"rank_predicted", pred.rank},
      {"kernel_dim_predicted", pred.kernel_dim},
      {"period_count_predicted", pred.period_count},
      {"rank_consistent", pred.rank == stats.rank},
      {"kernel_dim_consistent", pred.kernel_dim == stats.kernel_dim},
      {"period_count_consistent", pred.period_count == stats.period_count},
  };
  report["file"] = out_path;
  if (opts.timings) report["timings_ms"] = {{"total", sw.ms()}};
  emit_report(report, opts.report_path);
  bool ok = pv.valid && pred.rank == stats.rank &&
            pred.kernel_dim == stats.kernel_dim &&
            pred.period_count == stats.period_count;
  return ok ? kExitValid : kExitInvalid;
}

int cmd_search(const std::string& geometry, uint32_t p, uint32_t k, uint32_t n,
               const std::string& sizes, bool first_only, bool prune,
               std::optional<uint64_t> max_points, const std::string& out_path,
               const CommonOpts& opts) {
  Stopwatch sw;
  Field f = k > 1 ? Field(p, k) : Field(p);
  GeometryKind kind;
  if (geometry == "projective")
    kind = GeometryKind::projective;
  else if (geometry == "affine")
    kind = GeometryKind::affine;
  else
    throw CLI::ValidationError("--geometry must be 'projective' or 'affine'");

  auto comma = sizes.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("--sizes must be 'a,b'");
  uint64_t a = std::stoull(sizes.substr(0, comma));
  uint64_t b = std::stoull(sizes.substr(comma + 1));

  auto [lhs, rhs] = counting_identity(f, kind, n, a, b);
  json report;
  report["command"] = "search";
  report["geometry"] = geometry;
  report["field"] = field_json(f);
  report["n"] = n;
  report["sizes"] = {a, b};
  report["counting_identity"] = {{"lhs", lhs}, {"rhs", rhs}, {"holds", lhs == rhs}};

  SearchOptions sopts;
  sopts.first_only = first_only;
  sopts.prune = prune;
  if (max_points) {
    sopts.max_points = *max_points;
    sopts.override_ceiling = true;
  }

  if (lhs != rhs) {
    report["verdict"] = "refused";
    report["reason"] = "counting identity violated: " + std::to_string(lhs) +
                       " != " + std::to_string(rhs);
    emit_report(report, opts.report_path);
    std::cerr << "error: counting identity violated: " << lhs << " != " << rhs
              << '\n';
    return kExitUsage;
  }
  if (rhs > sopts.max_points && !sopts.override_ceiling) {
    report["verdict"] = "refused";
    report["reason"] = "geometry has " + std::to_string(rhs) +
                       " points, above the ceiling of " +
                       std::to_string(sopts.max_points) +
                       "; pass --max-points to opt in";
    emit_report(report, opts.report_path);
    std::cerr << "error: " << report["reason"].get<std::string>() << '\n';
    return kExitUsage;
  }

  SearchResult result = exhaustive_search(f, kind, n, a, b, sopts);

  report["point_count"] = result.point_count;
  report["solution_count"] = result.solutions.size();
  if (opts.timings) report["timings_ms"] = {{"total", sw.ms()}};

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write solutions: " + out_path);
    out << geometry << ' ' << f.q() << ' ' << f.p() << ' ' << f.k() << ' ' << n
        << ' ' << a << ' ' << b << ' ' << result.solutions.size() << '\n';
    for (size_t i = 0; i < result.solutions.size(); ++i) {
      out << "solution " << i << '\n';
      out << "U\n";
      for (const FVec& v : result.solutions[i].upts) out << vec_to_string(v) << '\n';
      out << "V\n";
      for (const FVec& v : result.solutions[i].vpts) out << vec_to_string(v) << '\n';
    }
    report["file"] = out_path;
  }
  emit_report(report, opts.report_path);
  return kExitValid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tilings of F_q^n, 1-perfect codes, and factorizations of "
               "projective geometries"};
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand("construct", "build a full-rank tiling");
  int theorem = 1;
  uint32_t p = 3, k = 1, m = 3;
  std::string out_u, out_v;
  CommonOpts c_opts;
  construct->add_option("--theorem", theorem, "1 = semiprojective, 2 = projective")
      ->check(CLI::IsMember({1, 2}))
      ->required();
  construct->add_option("--p", p, "field characteristic")->required();
  construct->add_option("--k", k, "extension degree");
  construct->add_option("--m", m, "half the ambient dimension")->required();
  construct->add_option("--out-u", out_u, "output file for tile U")->required();
  construct->add_option("--out-v", out_v, "output file for tile V")->required();
  add_common(construct, c_opts);

  // verify
  auto* verify = app.add_subcommand("verify", "verify a tiling, code or factorization");
  std::string v_u, v_v, v_code, v_fu, v_fv;
  uint32_t radius = 1;
  uint32_t assume_q_val = 0;
  CommonOpts v_opts;
  verify->add_option("--u", v_u, "tile file U");
  verify->add_option("--v", v_v, "tile file V");
  verify->add_option("--code", v_code, "code file");
  verify->add_option("--radius", radius, "ball radius for code verification");
  verify->add_option("--assume-q", assume_q_val,
                     "treat --code as headerless digit rows over this alphabet");
  verify->add_option("--fu", v_fu, "factorization point file U");
  verify->add_option("--fv", v_fv, "factorization point file V");
  add_common(verify, v_opts);

  // to-code
  auto* tocode = app.add_subcommand("to-code", "derive the 1-perfect code of a "
                                               "semiprojective tiling");
  std::string t_u, t_v, t_out;
  CommonOpts t_opts;
  tocode->add_option("--u", t_u, "tile file U (projective)")->required();
  tocode->add_option("--v", t_v, "tile file V")->required();
  tocode->add_option("--out", t_out, "output code file")->required();
  add_common(tocode, t_opts);

  // search
  auto* search = app.add_subcommand("search", "exhaustive factorization search");
  std::string geometry, sizes, s_out;
  uint32_t sp = 3, sk = 1, sn = 2;
  bool first_only = false, prune = false;
  std::optional<uint64_t> max_points;
  uint64_t max_points_val = 0;
  CommonOpts s_opts;
  search->add_option("--geometry", geometry, "projective or affine")->required();
  search->add_option("--p", sp, "field characteristic")->required();
  search->add_option("--k", sk, "extension degree");
  search->add_option("--n", sn, "vector space dimension")->required();
  search->add_option("--sizes", sizes, "tile sizes 'a,b'")->required();
  search->add_flag("--first-only", first_only, "stop at the first solution");
  search->add_flag("--prune", prune, "root symmetry pruning (drops solutions "
                                     "whose U-set misses the smallest point)");
  auto* mp = search->add_option("--max-points", max_points_val,
                                "override the point-count ceiling");
  search->add_option("--out", s_out, "solutions output file");
  add_common(search, s_opts);

  try {
    app.parse(argc, argv);
    if (construct->parsed())
      return cmd_construct(theorem, p, k, m, out_u, out_v, c_opts);
    if (verify->parsed()) {
      if (!v_code.empty()) {
        std::optional<uint32_t> aq;
        if (assume_q_val) aq = assume_q_val;
        return cmd_verify_code(v_code, radius, aq, v_opts);
      }
      if (!v_fu.empty() || !v_fv.empty()) {
        if (v_fu.empty() || v_fv.empty())
          throw CLI::ValidationError("factorization verification needs --fu and --fv");
        return cmd_verify_factorization(v_fu, v_fv, v_opts);
      }
      if (v_u.empty() || v_v.empty())
        throw CLI::ValidationError("verify needs --u/--v, --code, or --fu/--fv");
      return cmd_verify_tiling(v_u, v_v, v_opts);
    }
    if (tocode->parsed()) return cmd_to_code(t_u, t_v, t_out, t_opts);
    if (search->parsed()) {
      if (mp->count()) max_points = max_points_val;
      return cmd_search(geometry, sp, sk, sn, sizes, first_only, prune,
                        max_points, s_out, s_opts);
    }
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const TileFileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
