#include "hsgen/executor.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <string>
#include <thread>

#include "hsgen/errors.hpp"

namespace hsgen {

void ExecPolicy::validate() const {
  if (workers < 1) throw InputError("exec policy: workers must be >= 1");
  if (tile < 32) throw InputError("exec policy: tile must be >= 32, got " + std::to_string(tile));
}

std::size_t TileMap::element_count() const {
  std::size_t n = 0;
  for (const auto& t : tiles) {
    if (t.diagonal) {
      // Square diagonal tile, lower triangle including the diagonal.
      n += t.rows() * (t.rows() + 1) / 2;
    } else {
      n += t.rows() * t.cols();
    }
  }
  return n;
}

TileMap plan_tiles(std::size_t rows, std::size_t cols, std::size_t tile, bool triangular) {
  if (rows == 0 || cols == 0 || tile == 0) throw InputError("plan_tiles: dimensions must be positive");
  if (triangular && rows != cols) throw DimensionError("plan_tiles: triangular output must be square");
  const std::size_t row_tiles = (rows + tile - 1) / tile;
  const std::size_t col_tiles = (cols + tile - 1) / tile;
  TileMap map;
  for (std::size_t bi = 0; bi < row_tiles; ++bi) {
    for (std::size_t bj = 0; bj < col_tiles; ++bj) {
      if (triangular && bj > bi) continue;
      map.tiles.push_back(Tile{bi * tile, std::min(rows, (bi + 1) * tile), bj * tile,
                               std::min(cols, (bj + 1) * tile), triangular && bi == bj});
    }
  }
  return map;
}

KernelKind kind_of(const LargeKernelCall& call) {
  struct Visitor {
    KernelKind operator()(const GemmCall&) const { return KernelKind::Gemm; }
    KernelKind operator()(const HerkCall&) const { return KernelKind::Herk; }
    KernelKind operator()(const Her2kCall&) const { return KernelKind::Her2k; }
  };
  return std::visit(Visitor{}, call);
}

namespace {

// Binds a validated call to a per-tile function plus its byte model.
struct PreparedCall {
  std::function<void(const Tile&)> run;
  std::size_t inner = 0;
  std::size_t operand_panels = 1;  // stacked operands read per output row/col
  bool triangular = false;
};

}  // namespace

ExecStats run_partitioned(const LargeKernelCall& call, CMatrix& out, const ExecPolicy& policy) {
  policy.validate();
  PreparedCall prep;
  tiled::GemmPanels panels;  // must outlive prep.run

  if (const auto* g = std::get_if<GemmCall>(&call)) {
    panels = tiled::prepare_gemm(g->op_a, g->a, g->op_b, g->b, out);
    prep.inner = panels.left().rows();
    prep.run = [&, g](const Tile& t) { tiled::gemm_tile(g->alpha, panels, g->beta, out, t); };
  } else if (const auto* h = std::get_if<HerkCall>(&call)) {
    tiled::check_herk(h->a, out);
    prep.inner = h->a.get().rows();
    prep.triangular = true;
    prep.run = [&, h](const Tile& t) { tiled::herk_tile(h->alpha, h->a, h->beta, out, t); };
  } else {
    const auto& r = std::get<Her2kCall>(call);
    tiled::check_her2k(r.z, r.b, out);
    prep.inner = r.z.get().rows();
    prep.operand_panels = 2;
    prep.triangular = true;
    prep.run = [&](const Tile& t) { tiled::her2k_tile(r.alpha, r.z, r.b, r.beta, out, t); };
  }

  ExecStats stats;
  if (out.rows() == 0 || out.cols() == 0) return stats;

  if (policy.mode == ExecMode::Serial) {
    stats.tiles.push_back(Tile{0, out.rows(), 0, out.cols(), prep.triangular});
  } else {
    stats.tiles = plan_tiles(out.rows(), out.cols(), policy.tile, prep.triangular).tiles;
  }
  for (const auto& t : stats.tiles) {
    const std::uint64_t panel = static_cast<std::uint64_t>(t.rows() + t.cols()) * prep.inner;
    stats.tile_bytes.push_back(sizeof(Complex) *
                               (panel * prep.operand_panels + 2ull * t.rows() * t.cols()));
  }

  const auto start = std::chrono::steady_clock::now();
  const std::size_t n_workers =
      policy.mode == ExecMode::Serial ? 1 : std::min(policy.workers, stats.tiles.size());
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next.fetch_add(1); i < stats.tiles.size(); i = next.fetch_add(1)) {
      prep.run(stats.tiles[i]);
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers - 1);
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(drain);
    drain();
  }
  stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  stats.workers_used = n_workers;
  return stats;
}

}  // namespace hsgen
