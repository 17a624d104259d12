#include "tilekit/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tilekit {
namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

uint64_t parse_u64(const std::string& s, size_t line, const char* what) {
  try {
    size_t pos = 0;
    unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw TileFileError(line, std::string("invalid ") + what + ": '" + s + "'");
  }
}

void check_sorted_rows(const std::vector<FVec>& rows, size_t header_lines) {
  for (size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i - 1] < rows[i]))
      throw TileFileError(i + 1 + header_lines,
                          "rows not sorted by ascending key or duplicated");
}

}  // namespace

VSet TileFile::to_vset() const {
  VSet s(field.q(), n);
  for (const FVec& r : rows) s.insert(r);
  return s;
}

TileFile read_tile_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::string line;
  size_t lineno = 0;

  if (!std::getline(in, line)) throw TileFileError(1, "missing header");
  ++lineno;
  auto header = split_ws(line);
  if (header.size() != 6)
    throw TileFileError(1, "header must be 'q p k n count kind'");
  uint64_t q = parse_u64(header[0], 1, "q");
  uint64_t p = parse_u64(header[1], 1, "p");
  uint64_t k = parse_u64(header[2], 1, "k");
  uint64_t n = parse_u64(header[3], 1, "n");
  uint64_t count = parse_u64(header[4], 1, "count");
  std::string kind = header[5];
  if (kind != "tile" && kind != "code" && kind != "points")
    throw TileFileError(1, "kind must be tile, code or points");

  std::vector<Elem> modulus;
  if (k > 1) {
    if (!std::getline(in, line)) throw TileFileError(2, "missing modulus line");
    ++lineno;
    auto toks = split_ws(line);
    if (toks.empty() || toks[0] != "modulus")
      throw TileFileError(2, "expected 'modulus a0 a1 ... ak'");
    for (size_t i = 1; i < toks.size(); ++i)
      modulus.push_back(static_cast<Elem>(parse_u64(toks[i], 2, "modulus coefficient")));
    if (modulus.size() != k + 1)
      throw TileFileError(2, "modulus must have k+1 coefficients");
  }

  Field field = [&] {
    try {
      return k > 1 ? Field(static_cast<uint32_t>(p), modulus)
                   : Field(static_cast<uint32_t>(p));
    } catch (const std::exception& e) {
      throw TileFileError(k > 1 ? 2 : 1, e.what());
    }
  }();
  if (field.q() != q) throw TileFileError(1, "q does not equal p^k");

  TileFile tf{field, static_cast<uint32_t>(n), kind, {}};
  tf.rows.reserve(count);
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto toks = split_ws(line);
    if (toks.size() != n)
      throw TileFileError(lineno, "expected " + std::to_string(n) + " coordinates");
    std::vector<Elem> coords(n);
    for (size_t i = 0; i < n; ++i) {
      uint64_t c = parse_u64(toks[i], lineno, "coordinate");
      if (c >= q) throw TileFileError(lineno, "coordinate out of range");
      coords[i] = static_cast<Elem>(c);
    }
    tf.rows.push_back(FVec::from_coords(field.q(), coords));
  }
  if (tf.rows.size() != count)
    throw TileFileError(lineno + 1, "row count " + std::to_string(tf.rows.size()) +
                                        " does not match header count " +
                                        std::to_string(count));
  check_sorted_rows(tf.rows, k > 1 ? 2 : 1);
  return tf;
}

TileFile read_digit_rows(const std::string& path, uint32_t q,
                         const std::string& kind) {
  if (q > 10) throw std::invalid_argument("digit-row ingestion requires q <= 10");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  Field field(q, 1);  // digit rows are only used for prime q datasets
  std::string line;
  size_t lineno = 0;
  std::vector<FVec> rows;
  size_t n = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string digits;
    for (char c : line) {
      if (c == ' ' || c == '\t' || c == '\r') continue;
      if (c < '0' || c > '9')
        throw TileFileError(lineno, "non-digit character in row");
      digits.push_back(c);
    }
    if (digits.empty()) continue;
    if (n == 0) n = digits.size();
    if (digits.size() != n)
      throw TileFileError(lineno, "row length differs from first row");
    std::vector<Elem> coords(n);
    for (size_t i = 0; i < n; ++i) {
      Elem c = static_cast<Elem>(digits[i] - '0');
      if (c >= q) throw TileFileError(lineno, "digit out of range for q");
      coords[i] = c;
    }
    rows.push_back(FVec::from_coords(q, coords));
  }
  if (rows.empty()) throw TileFileError(1, "empty file");
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return TileFile{field, static_cast<uint32_t>(n), kind, std::move(rows)};
}

void write_tile_file(const std::string& path, const Field& f, uint32_t n,
                     const std::vector<FVec>& rows, const std::string& kind) {
  std::vector<FVec> sorted = rows;
  std::sort(sorted.begin(), sorted.end());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << f.q() << ' ' << f.p() << ' ' << f.k() << ' ' << n << ' '
      << sorted.size() << ' ' << kind << '\n';
  if (f.k() > 1) {
    out << "modulus";
    for (Elem c : f.modulus()) out << ' ' << c;
    out << '\n';
  }
  for (const FVec& v : sorted) {
    for (uint32_t i = 0; i < n; ++i) {
      if (i) out << ' ';
      out << v.get(i);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_tile_file(const std::string& path, const Field& f, const VSet& s,
                     const std::string& kind) {
  write_tile_file(path, f, s.n(), s.sorted_members(), kind);
}

}  // namespace tilekit
