#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hsgen {

using Complex = std::complex<double>;

/// Problem dimensions: number of atoms, rows of each coefficient block and
/// basis-set size. All three must be strictly positive.
struct Dims {
  std::size_t n_atoms = 0;
  std::size_t n_l = 0;
  std::size_t n_g = 0;

  void validate() const;
  bool operator==(const Dims&) const = default;
};

/// Dense complex matrix, column-major, owning its storage.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

  static CMatrix identity(std::size_t n);
  // Row-major nested initializer, handy in tests: {{1, 2}, {3, 4}}.
  static CMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i + j * rows_]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i + j * rows_];
  }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> col(std::size_t j) noexcept { return {data_.data() + j * rows_, rows_}; }
  std::span<const Complex> col(std::size_t j) const noexcept {
    return {data_.data() + j * rows_, rows_};
  }

  void fill(Complex value);
  bool all_finite() const noexcept;

  // Value equality (IEEE ==, so -0 equals +0; NaN never equal).
  bool operator==(const CMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix transpose(const CMatrix& m);
CMatrix adjoint(const CMatrix& m);

/// Vertical concatenation. All blocks must share the column count.
CMatrix stack(std::span<const CMatrix> blocks);

/// Copies `block` into rows [row_offset, row_offset + block.rows()) of `dst`.
void set_block_rows(CMatrix& dst, std::size_t row_offset, const CMatrix& block);
CMatrix get_block_rows(const CMatrix& src, std::size_t row_offset, std::size_t n_rows);

/// Ordered list of equally-wide blocks, realized into one matrix on demand.
class BlockStack {
 public:
  void push(CMatrix block);
  std::size_t count() const noexcept { return blocks_.size(); }
  std::size_t total_rows() const noexcept { return total_rows_; }
  const std::vector<CMatrix>& blocks() const noexcept { return blocks_; }
  const std::optional<CMatrix>& realized() const noexcept { return realized_; }
  const CMatrix& realize();

 private:
  std::vector<CMatrix> blocks_;
  std::size_t total_rows_ = 0;
  std::optional<CMatrix> realized_;
};

enum class Fill { LowerOnly, Full };

struct HermitianResult {
  CMatrix matrix;
  Fill fill = Fill::LowerOnly;
};

/// Overwrites the upper triangle with the conjugate of the strict lower
/// triangle and zeroes diagonal imaginary parts.
CMatrix hermitian_mirror(CMatrix m);
void hermitian_mirror_inplace(CMatrix& m);

double frobenius(const CMatrix& m);
/// frobenius(a - b) / (1 + frobenius(b))
double rel_frob_error(const CMatrix& a, const CMatrix& b);
/// max |m(i,j) - conj(m(j,i))| over all i, j (diagonal included).
double max_hermitian_defect(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double tol);

/// Throws InvariantError if a Full result breaks the Hermitian contract.
void check_hermitian_result(const HermitianResult& r);

}  // namespace hsgen
