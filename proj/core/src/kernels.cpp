#include "hsgen/kernels.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "hsgen/errors.hpp"

namespace hsgen {
namespace {

// Same rounding as std::complex multiplication for finite operands; written
// out so the conjugated variants cost nothing extra.
template <bool ConjX, bool ConjY>
inline void mac(Complex& acc, const Complex& x, const Complex& y) noexcept {
  const double xr = x.real();
  const double xi = ConjX ? -x.imag() : x.imag();
  const double yr = y.real();
  const double yi = ConjY ? -y.imag() : y.imag();
  acc = Complex{acc.real() + (xr * yr - xi * yi), acc.imag() + (xr * yi + xi * yr)};
}

inline Complex mul(const Complex& x, const Complex& y) noexcept {
  return Complex{x.real() * y.real() - x.imag() * y.imag(),
                 x.real() * y.imag() + x.imag() * y.real()};
}

template <bool ConjX, bool ConjY>
inline Complex dot(const Complex* x, const Complex* y, std::size_t n) noexcept {
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) mac<ConjX, ConjY>(acc, x[k], y[k]);
  return acc;
}

inline Complex scale_and_add(Complex alpha, Complex sum, Complex beta, Complex c) noexcept {
  const Complex r = (alpha == Complex{1.0, 0.0}) ? sum : mul(alpha, sum);
  if (beta == Complex{0.0, 0.0}) return r;
  if (beta == Complex{1.0, 0.0}) return r + c;
  return r + mul(beta, c);
}

inline Complex real_scale_and_add(double alpha, Complex sum, double beta, Complex c) noexcept {
  const Complex r = (alpha == 1.0) ? sum : Complex{alpha * sum.real(), alpha * sum.imag()};
  if (beta == 0.0) return r;
  if (beta == 1.0) return r + c;
  return r + Complex{beta * c.real(), beta * c.imag()};
}

std::string shape(const CMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

Tile full_tile(const CMatrix& c, bool diagonal) { return Tile{0, c.rows(), 0, c.cols(), diagonal}; }

}  // namespace

namespace tiled {

GemmPanels prepare_gemm(Op op_a, const CMatrix& a, Op op_b, const CMatrix& b, const CMatrix& c) {
  const std::size_t m = op_a == Op::N ? a.rows() : a.cols();
  const std::size_t ka = op_a == Op::N ? a.cols() : a.rows();
  const std::size_t kb = op_b == Op::N ? b.rows() : b.cols();
  const std::size_t n = op_b == Op::N ? b.cols() : b.rows();
  if (ka != kb) {
    throw DimensionError("gemm: inner dimensions of a (" + shape(a) + ") and b (" + shape(b) +
                         ") disagree");
  }
  if (c.rows() != m || c.cols() != n) {
    throw DimensionError("gemm: c is " + shape(c) + ", expected " + std::to_string(m) + "x" +
                         std::to_string(n));
  }
  GemmPanels p;
  // Column i of lhs is row i of op(a); column j of rhs is column j of op(b).
  if (op_a == Op::N) {
    p.lhs = transpose(a);
  } else {
    p.lhs_ref = &a;
    p.conj_lhs = op_a == Op::C;
  }
  if (op_b == Op::N) {
    p.rhs_ref = &b;
  } else {
    p.rhs = transpose(b);
    p.conj_rhs = op_b == Op::C;
  }
  return p;
}

void check_herk(const CMatrix& a, const CMatrix& c) {
  if (!c.is_square() || c.rows() != a.cols()) {
    throw DimensionError("herk: c is " + shape(c) + ", expected order " + std::to_string(a.cols()));
  }
}

void check_her2k(const CMatrix& z, const CMatrix& b, const CMatrix& c) {
  if (z.rows() != b.rows() || z.cols() != b.cols()) {
    throw DimensionError("her2k: z is " + shape(z) + " but b is " + shape(b));
  }
  if (!c.is_square() || c.rows() != z.cols()) {
    throw DimensionError("her2k: c is " + shape(c) + ", expected order " + std::to_string(z.cols()));
  }
}

namespace {

template <bool ConjL, bool ConjR>
void gemm_tile_impl(Complex alpha, const CMatrix& lhs, const CMatrix& rhs, Complex beta, CMatrix& c,
                    const Tile& t) {
  const std::size_t k = lhs.rows();
  for (std::size_t j = t.col_begin; j < t.col_end; ++j) {
    const Complex* rj = rhs.col(j).data();
    for (std::size_t i = t.row_begin; i < t.row_end; ++i) {
      const Complex s = dot<ConjL, ConjR>(lhs.col(i).data(), rj, k);
      c(i, j) = scale_and_add(alpha, s, beta, c(i, j));
    }
  }
}

}  // namespace

void gemm_tile(Complex alpha, const GemmPanels& p, Complex beta, CMatrix& c, const Tile& t) {
  if (alpha == Complex{0.0, 0.0}) {
    if (beta == Complex{1.0, 0.0}) return;
    for (std::size_t j = t.col_begin; j < t.col_end; ++j)
      for (std::size_t i = t.row_begin; i < t.row_end; ++i)
        c(i, j) = beta == Complex{0.0, 0.0} ? Complex{0.0, 0.0} : mul(beta, c(i, j));
    return;
  }
  const CMatrix& l = p.left();
  const CMatrix& r = p.right();
  if (p.conj_lhs) {
    if (p.conj_rhs) gemm_tile_impl<true, true>(alpha, l, r, beta, c, t);
    else gemm_tile_impl<true, false>(alpha, l, r, beta, c, t);
  } else {
    if (p.conj_rhs) gemm_tile_impl<false, true>(alpha, l, r, beta, c, t);
    else gemm_tile_impl<false, false>(alpha, l, r, beta, c, t);
  }
}

void herk_tile(double alpha, const CMatrix& a, double beta, CMatrix& c, const Tile& t) {
  const std::size_t k = a.rows();
  for (std::size_t j = t.col_begin; j < t.col_end; ++j) {
    const Complex* aj = a.col(j).data();
    const std::size_t i0 = t.diagonal ? std::max(t.row_begin, j) : t.row_begin;
    for (std::size_t i = i0; i < t.row_end; ++i) {
      const Complex s = dot<true, false>(a.col(i).data(), aj, k);
      Complex v = real_scale_and_add(alpha, s, beta, c(i, j));
      if (i == j) v = Complex{v.real(), 0.0};
      c(i, j) = v;
    }
  }
}

void her2k_tile(Complex alpha, const CMatrix& z, const CMatrix& b, double beta, CMatrix& c,
                const Tile& t) {
  const std::size_t k = z.rows();
  const Complex alpha_c = std::conj(alpha);
  const bool unit = alpha == Complex{1.0, 0.0};
  for (std::size_t j = t.col_begin; j < t.col_end; ++j) {
    const Complex* zj = z.col(j).data();
    const Complex* bj = b.col(j).data();
    const std::size_t i0 = t.diagonal ? std::max(t.row_begin, j) : t.row_begin;
    for (std::size_t i = i0; i < t.row_end; ++i) {
      const Complex s1 = dot<true, false>(z.col(i).data(), bj, k);
      const Complex s2 = dot<true, false>(b.col(i).data(), zj, k);
      const Complex r = unit ? s1 + s2 : mul(alpha, s1) + mul(alpha_c, s2);
      Complex v = real_scale_and_add(1.0, r, beta, c(i, j));
      if (i == j) v = Complex{v.real(), 0.0};
      c(i, j) = v;
    }
  }
}

}  // namespace tiled

void gemm(Complex alpha, Op op_a, const CMatrix& a, Op op_b, const CMatrix& b, Complex beta,
          CMatrix& c) {
  const auto panels = tiled::prepare_gemm(op_a, a, op_b, b, c);
  tiled::gemm_tile(alpha, panels, beta, c, full_tile(c, false));
}

void hemm_left(Complex alpha, const CMatrix& t, const CMatrix& b, Complex beta, CMatrix& c) {
  if (!t.is_square()) throw DimensionError("hemm: t is " + shape(t) + ", not square");
  if (t.rows() != b.rows()) {
    throw DimensionError("hemm: t is " + shape(t) + " but b is " + shape(b));
  }
  if (c.rows() != b.rows() || c.cols() != b.cols()) {
    throw DimensionError("hemm: c is " + shape(c) + " but b is " + shape(b));
  }
  const std::size_t n = t.rows();
  // Row i of the implied Hermitian matrix, gathered once per i.
  std::vector<Complex> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k < i) row[k] = t(i, k);
      else if (k == i) row[k] = Complex{t(i, i).real(), 0.0};
      else row[k] = std::conj(t(k, i));
    }
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (alpha == Complex{0.0, 0.0}) {
        if (beta != Complex{1.0, 0.0})
          c(i, j) = beta == Complex{0.0, 0.0} ? Complex{0.0, 0.0} : mul(beta, c(i, j));
        continue;
      }
      const Complex s = dot<false, false>(row.data(), b.col(j).data(), n);
      c(i, j) = scale_and_add(alpha, s, beta, c(i, j));
    }
  }
}

void herk(double alpha, const CMatrix& a, double beta, CMatrix& c) {
  tiled::check_herk(a, c);
  tiled::herk_tile(alpha, a, beta, c, full_tile(c, true));
}

void her2k(Complex alpha, const CMatrix& z, const CMatrix& b, double beta, CMatrix& c) {
  tiled::check_her2k(z, b, c);
  tiled::her2k_tile(alpha, z, b, beta, c, full_tile(c, true));
}

CMatrix trmm_left_conjtrans(const CMatrix& c_factor, const CMatrix& a) {
  if (!c_factor.is_square() || c_factor.rows() != a.rows()) {
    throw DimensionError("trmm: factor is " + shape(c_factor) + " but a is " + shape(a));
  }
  const std::size_t n = c_factor.rows();
  CMatrix out(n, a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const Complex* aj = a.col(j).data();
    for (std::size_t i = 0; i < n; ++i) {
      // (C^H)(i,k) = conj(C(k,i)), nonzero only for k >= i.
      const Complex* ci = c_factor.col(i).data();
      Complex acc{0.0, 0.0};
      for (std::size_t k = i; k < n; ++k) mac<true, false>(acc, ci[k], aj[k]);
      out(i, j) = acc;
    }
  }
  return out;
}

CholeskyOutcome potrf_lower(const CMatrix& t) {
  if (!t.is_square()) throw DimensionError("potrf: t is " + shape(t) + ", not square");
  const std::size_t n = t.rows();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j; i < n; ++i)
      if (std::isnan(t(i, j).real()) || std::isnan(t(i, j).imag()))
        throw InputError("potrf: NaN at (" + std::to_string(i) + ", " + std::to_string(j) + ")");

  CMatrix c(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = t(j, j).real();
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(c(j, k));
    if (!(d > 0.0) || !std::isfinite(d)) return CholeskyOutcome::failure(j + 1);
    const double cjj = std::sqrt(d);
    c(j, j) = cjj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = t(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= c(i, k) * std::conj(c(j, k));
      c(i, j) = s / cjj;
    }
  }
  return CholeskyOutcome::success(std::move(c));
}

void diag_scale(std::span<const double> u, CMatrix& b) {
  if (u.size() != b.rows()) {
    throw DimensionError("diag_scale: u has length " + std::to_string(u.size()) + " but b is " +
                         shape(b));
  }
  for (std::size_t l = 0; l < u.size(); ++l) {
    if (!std::isfinite(u[l]) || u[l] < 0.0) {
      throw InputError("diag_scale: u[" + std::to_string(l) + "] is negative or not finite");
    }
  }
  for (std::size_t j = 0; j < b.cols(); ++j) {
    auto col = b.col(j);
    for (std::size_t l = 0; l < u.size(); ++l)
      col[l] = Complex{u[l] * col[l].real(), u[l] * col[l].imag()};
  }
}

}  // namespace hsgen
