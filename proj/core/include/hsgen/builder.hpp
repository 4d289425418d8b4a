#pragma once

#include <vector>

#include "hsgen/executor.hpp"
#include "hsgen/ledger.hpp"
#include "hsgen/matrix.hpp"
#include "hsgen/probgen.hpp"

namespace hsgen {

/// Atoms partitioned by whether T^{AA} admitted a Cholesky factor, together
/// with the stacked operands of each branch (blocks in atom order).
struct CholeskySplit {
  std::vector<std::size_t> hpd_atoms;
  std::vector<std::size_t> nonhpd_atoms;
  BlockStack y_hpd;     // C_a^H A_a
  BlockStack x_nonhpd;  // T^{AA}_a A_a
  BlockStack a_nonhpd;  // A_a
};

struct SplitCounts {
  std::size_t hpd = 0;
  std::size_t nonhpd = 0;
};

struct BuildOptions {
  // Test hook: skip the factorization and send every atom down the
  // hemm/gemm branch.
  bool force_nonhpd = false;
};

struct BuildOutput {
  HermitianResult h;
  HermitianResult s;
  SplitCounts split;
  FlopLedger ledger;
};

struct Phase1Output {
  CMatrix z_stack;  // rows a*n_l.. hold (T^{AB}_a)^H A_a + 1/2 T^{BB}_a B_a
  CMatrix b_stack;
};

/// Per-atom Z blocks and the stacked B. Ledger section "Loop 1".
Phase1Output build_phase1(const ProblemInstance& p, FlopLedger& ledger);

/// Lower triangle of Z^H B + B^H Z into a zeroed H. Ledger section "H1".
HermitianResult h_cross(const CMatrix& z_stack, const CMatrix& b_stack, FlopLedger& ledger,
                        const ExecPolicy& policy = {});

/// S = A^H A + (U B)^H (U B) on stacked operands, lower triangle. The
/// instance is untouched: U is applied to a scratch copy of the B stack.
HermitianResult build_s(const ProblemInstance& p, FlopLedger& ledger,
                        const ExecPolicy& policy = {});

/// Adds A^H T^{AA} A for every atom into h, through the Cholesky branch when
/// the factorization succeeds and the hemm/gemm branch otherwise.
CholeskySplit build_phase2(const ProblemInstance& p, HermitianResult& h, FlopLedger& ledger,
                           const ExecPolicy& policy = {}, const BuildOptions& options = {});

/// Full H and S construction. Throws InvariantError before doing any work
/// if the instance is malformed.
BuildOutput build_hs(const ProblemInstance& p, const ExecPolicy& policy,
                     const BuildOptions& options = {});

/// The ledger build_hs would produce for these dimensions and split, with
/// zero timings.
FlopLedger model_ledger(const Dims& dims, std::size_t nonhpd_count);

}  // namespace hsgen
