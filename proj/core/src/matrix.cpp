#include "hsgen/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hsgen/errors.hpp"

namespace hsgen {

void Dims::validate() const {
  if (n_atoms == 0 || n_l == 0 || n_g == 0) {
    throw InputError("dimensions must be strictly positive (n_atoms=" + std::to_string(n_atoms) +
                     ", n_l=" + std::to_string(n_l) + ", n_g=" + std::to_string(n_g) + ")");
  }
}

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("CMatrix: data length " + std::to_string(data_.size()) + " != " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  CMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("CMatrix::from_rows: ragged rows");
    std::size_t j = 0;
    for (const auto& v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

void CMatrix::fill(Complex value) { std::fill(data_.begin(), data_.end(), value); }

bool CMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

bool CMatrix::operator==(const CMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

CMatrix transpose(const CMatrix& m) {
  CMatrix t(m.cols(), m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) t(j, i) = m(i, j);
  return t;
}

CMatrix adjoint(const CMatrix& m) {
  CMatrix t(m.cols(), m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) t(j, i) = std::conj(m(i, j));
  return t;
}

CMatrix stack(std::span<const CMatrix> blocks) {
  if (blocks.empty()) throw DimensionError("stack: empty block list");
  const std::size_t cols = blocks.front().cols();
  std::size_t rows = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].cols() != cols) {
      throw DimensionError("stack: block " + std::to_string(k) + " has " +
                           std::to_string(blocks[k].cols()) + " columns, expected " +
                           std::to_string(cols));
    }
    rows += blocks[k].rows();
  }
  CMatrix out(rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    set_block_rows(out, offset, b);
    offset += b.rows();
  }
  return out;
}

void set_block_rows(CMatrix& dst, std::size_t row_offset, const CMatrix& block) {
  if (block.cols() != dst.cols() || row_offset + block.rows() > dst.rows()) {
    throw DimensionError("set_block_rows: block does not fit destination");
  }
  for (std::size_t j = 0; j < block.cols(); ++j) {
    auto src = block.col(j);
    std::copy(src.begin(), src.end(), dst.col(j).begin() + static_cast<std::ptrdiff_t>(row_offset));
  }
}

CMatrix get_block_rows(const CMatrix& src, std::size_t row_offset, std::size_t n_rows) {
  if (row_offset + n_rows > src.rows()) throw DimensionError("get_block_rows: out of range");
  CMatrix out(n_rows, src.cols());
  for (std::size_t j = 0; j < src.cols(); ++j) {
    auto c = src.col(j).subspan(row_offset, n_rows);
    std::copy(c.begin(), c.end(), out.col(j).begin());
  }
  return out;
}

void BlockStack::push(CMatrix block) {
  if (!blocks_.empty() && block.cols() != blocks_.front().cols()) {
    throw DimensionError("BlockStack: block " + std::to_string(blocks_.size()) +
                         " has mismatched column count");
  }
  total_rows_ += block.rows();
  blocks_.push_back(std::move(block));
  realized_.reset();
}

const CMatrix& BlockStack::realize() {
  if (!realized_) realized_ = stack(blocks_);
  return *realized_;
}

void hermitian_mirror_inplace(CMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermitian_mirror: matrix is not square");
  const std::size_t n = m.rows();
  for (std::size_t j = 0; j < n; ++j) {
    m(j, j) = Complex{m(j, j).real(), 0.0};
    for (std::size_t i = j + 1; i < n; ++i) m(j, i) = std::conj(m(i, j));
  }
}

CMatrix hermitian_mirror(CMatrix m) {
  hermitian_mirror_inplace(m);
  return m;
}

double frobenius(const CMatrix& m) {
  // Scaled accumulation keeps huge presets from overflowing.
  double scale = 0.0;
  double ssq = 1.0;
  for (const auto& z : m.data()) {
    for (double v : {z.real(), z.imag()}) {
      if (v == 0.0) continue;
      const double a = std::abs(v);
      if (scale < a) {
        ssq = 1.0 + ssq * (scale / a) * (scale / a);
        scale = a;
      } else {
        ssq += (a / scale) * (a / scale);
      }
    }
  }
  return scale * std::sqrt(ssq);
}

double rel_frob_error(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("rel_frob_error: shape mismatch");
  }
  CMatrix diff(a.rows(), a.cols());
  auto d = diff.data();
  auto x = a.data();
  auto y = b.data();
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = x[k] - y[k];
  return frobenius(diff) / (1.0 + frobenius(b));
}

double max_hermitian_defect(const CMatrix& m) {
  if (!m.is_square()) throw DimensionError("max_hermitian_defect: matrix is not square");
  double worst = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = j; i < m.rows(); ++i)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

bool is_hermitian(const CMatrix& m, double tol) {
  return m.is_square() && max_hermitian_defect(m) <= tol;
}

void check_hermitian_result(const HermitianResult& r) {
  const CMatrix& m = r.matrix;
  if (!m.is_square()) throw InvariantError("Hermitian result is not square");
  if (!m.all_finite()) throw InvariantError("Hermitian result has non-finite entries");
  const double tol = 1e-12 * (1.0 + frobenius(m));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (std::abs(m(i, i).imag()) > tol) {
      throw InvariantError("diagonal entry " + std::to_string(i) + " has imaginary part");
    }
  }
  if (r.fill == Fill::Full && max_hermitian_defect(m) > tol) {
    throw InvariantError("Hermitian result is not Hermitian");
  }
}

}  // namespace hsgen
