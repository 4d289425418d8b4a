#pragma once

#include <optional>
#include <span>

#include "hsgen/matrix.hpp"
#include "hsgen/tile.hpp"

namespace hsgen {

enum class Op { N, T, C };

// Every kernel accumulates over the inner dimension in ascending order, one
// output element at a time, so any partition of the output into tiles gives
// bit-identical results.

/// c <- alpha * op(a) * op(b) + beta * c
void gemm(Complex alpha, Op op_a, const CMatrix& a, Op op_b, const CMatrix& b, Complex beta,
          CMatrix& c);

/// c <- alpha * T * b + beta * c, T the Hermitian matrix implied by the lower
/// triangle of t (diagonal imaginary parts ignored).
void hemm_left(Complex alpha, const CMatrix& t, const CMatrix& b, Complex beta, CMatrix& c);

/// lower(c) <- alpha * a^H * a + beta * c; diagonal imaginary parts zeroed.
void herk(double alpha, const CMatrix& a, double beta, CMatrix& c);

/// lower(c) <- alpha * z^H * b + conj(alpha) * b^H * z + beta * c
void her2k(Complex alpha, const CMatrix& z, const CMatrix& b, double beta, CMatrix& c);

/// Returns C^H * a for lower-triangular C.
CMatrix trmm_left_conjtrans(const CMatrix& c_factor, const CMatrix& a);

/// Outcome of a Cholesky attempt. Failure is a value: the 1-based index of
/// the first leading minor that is not positive.
class CholeskyOutcome {
 public:
  static CholeskyOutcome success(CMatrix factor) { return CholeskyOutcome(std::move(factor), 0); }
  static CholeskyOutcome failure(std::size_t minor) { return CholeskyOutcome(std::nullopt, minor); }

  bool ok() const noexcept { return factor_.has_value(); }
  const CMatrix& factor() const { return factor_.value(); }
  CMatrix&& take_factor() && { return std::move(factor_).value(); }
  std::size_t failed_minor() const noexcept { return failed_minor_; }

 private:
  CholeskyOutcome(std::optional<CMatrix> f, std::size_t minor)
      : factor_(std::move(f)), failed_minor_(minor) {}
  std::optional<CMatrix> factor_;
  std::size_t failed_minor_ = 0;
};

/// T = C * C^H with C lower-triangular. Only the lower triangle of t is read.
CholeskyOutcome potrf_lower(const CMatrix& t);

/// Row l of b scaled by u[l]. u must be finite and nonnegative.
void diag_scale(std::span<const double> u, CMatrix& b);

// Tile-restricted variants used by the executor. Operands must already have
// been validated against the full output shape.
namespace tiled {

/// op(a) and op(b) rearranged so each output element is a dot product of two
/// contiguous columns: lhs is k x m, rhs is k x n.
struct GemmPanels {
  CMatrix lhs;
  bool conj_lhs = false;
  CMatrix rhs;
  bool conj_rhs = false;
  const CMatrix* lhs_ref = nullptr;  // points at `a` when no copy was needed
  const CMatrix* rhs_ref = nullptr;

  const CMatrix& left() const { return lhs_ref ? *lhs_ref : lhs; }
  const CMatrix& right() const { return rhs_ref ? *rhs_ref : rhs; }
};

/// Validates shapes against c and prepares the panels.
GemmPanels prepare_gemm(Op op_a, const CMatrix& a, Op op_b, const CMatrix& b, const CMatrix& c);
void check_herk(const CMatrix& a, const CMatrix& c);
void check_her2k(const CMatrix& z, const CMatrix& b, const CMatrix& c);

void gemm_tile(Complex alpha, const GemmPanels& p, Complex beta, CMatrix& c, const Tile& tile);
void herk_tile(double alpha, const CMatrix& a, double beta, CMatrix& c, const Tile& tile);
void her2k_tile(Complex alpha, const CMatrix& z, const CMatrix& b, double beta, CMatrix& c,
                const Tile& tile);

}  // namespace tiled

}  // namespace hsgen
