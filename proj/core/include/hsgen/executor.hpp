#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "hsgen/kernels.hpp"
#include "hsgen/ledger.hpp"
#include "hsgen/tile.hpp"

namespace hsgen {

enum class ExecMode { Serial, Tiled };

/// How the five stacked kernels are spread over CPU workers. Each worker
/// plays the role of one offload device.
struct ExecPolicy {
  std::size_t workers = 1;
  std::size_t tile = 512;
  ExecMode mode = ExecMode::Tiled;

  void validate() const;  // workers >= 1, tile >= 32
};

/// Output tiles in row-major grid order. For triangular outputs only the
/// lower block triangle is present and diagonal tiles are flagged.
struct TileMap {
  std::vector<Tile> tiles;
  std::size_t element_count() const;
};

TileMap plan_tiles(std::size_t rows, std::size_t cols, std::size_t tile, bool triangular);

struct GemmCall {
  Complex alpha;
  Op op_a;
  std::reference_wrapper<const CMatrix> a;
  Op op_b;
  std::reference_wrapper<const CMatrix> b;
  Complex beta;
};

struct HerkCall {
  double alpha;
  std::reference_wrapper<const CMatrix> a;
  double beta;
};

struct Her2kCall {
  Complex alpha;
  std::reference_wrapper<const CMatrix> z;
  std::reference_wrapper<const CMatrix> b;
  double beta;
};

using LargeKernelCall = std::variant<GemmCall, HerkCall, Her2kCall>;

KernelKind kind_of(const LargeKernelCall& call);

struct ExecStats {
  double seconds = 0.0;
  std::size_t workers_used = 0;
  std::vector<Tile> tiles;
  std::vector<std::uint64_t> tile_bytes;  // operand + output bytes touched per tile
};

/// Runs one large kernel over `out`, each tile owned by exactly one worker
/// and computed with the full inner dimension. The result is bit-identical
/// for every worker count and tile size.
ExecStats run_partitioned(const LargeKernelCall& call, CMatrix& out, const ExecPolicy& policy);

}  // namespace hsgen
