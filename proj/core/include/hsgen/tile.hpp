#pragma once

#include <cstddef>

namespace hsgen {

/// Half-open output region [row_begin, row_end) x [col_begin, col_end).
/// A diagonal tile of a triangular output only owns elements with i >= j.
struct Tile {
  std::size_t row_begin = 0;
  std::size_t row_end = 0;
  std::size_t col_begin = 0;
  std::size_t col_end = 0;
  bool diagonal = false;

  std::size_t rows() const noexcept { return row_end - row_begin; }
  std::size_t cols() const noexcept { return col_end - col_begin; }
  bool operator==(const Tile&) const = default;
};

}  // namespace hsgen
