#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tilekit/linalg.hpp"

namespace tilekit {

/// Parse failure with the 1-based line number of the offending line.
class TileFileError : public std::runtime_error {
public:
  TileFileError(size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  size_t line() const { return line_; }

private:
  size_t line_;
};

/// In-memory form of a tile/code/points file.
///
/// Line 1: `q p k n count kind`; if k > 1, line 2: `modulus a0 a1 ... ak`
/// (low degree first, monic). Each following line: n elements in [0, q)
/// separated by single spaces. Rows sorted by ascending key, no duplicates.
struct TileFile {
  Field field;
  uint32_t n = 0;
  std::string kind;  // "tile", "code" or "points"
  std::vector<FVec> rows;

  VSet to_vset() const;
};

TileFile read_tile_file(const std::string& path);

/// Ingestion fallback: a headerless file of equal-length digit rows over
/// {0, ..., q-1} (digits contiguous or space separated; requires q <= 10).
TileFile read_digit_rows(const std::string& path, uint32_t q,
                         const std::string& kind = "code");

void write_tile_file(const std::string& path, const Field& f, uint32_t n,
                     const std::vector<FVec>& rows, const std::string& kind);
void write_tile_file(const std::string& path, const Field& f, const VSet& s,
                     const std::string& kind);

}  // namespace tilekit
