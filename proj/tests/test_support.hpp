#pragma once

// Test-only helpers: an RNG independent of the generator under test and
// textbook triple-loop oracles that never call into the kernels.

#include <complex>
#include <cstring>
#include <random>

#include "hsgen/matrix.hpp"

namespace hsgen::testing {

class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : eng_(seed) {}
  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  std::size_t size(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(eng_);
  }

 private:
  std::mt19937_64 eng_;
};

inline CMatrix random_matrix(std::size_t r, std::size_t c, TestRng& rng) {
  CMatrix m(r, c);
  for (auto& z : m.data()) z = Complex{rng.uniform(), rng.uniform()};
  return m;
}

// Small integers make every product and partial sum exact.
inline CMatrix random_int_matrix(std::size_t r, std::size_t c, TestRng& rng) {
  CMatrix m(r, c);
  for (auto& z : m.data()) z = Complex{double(rng.integer(-5, 5)), double(rng.integer(-5, 5))};
  return m;
}

inline CMatrix random_lower(std::size_t n, TestRng& rng) {
  CMatrix m = random_matrix(n, n, rng);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) m(i, j) = 0.0;
  return m;
}

// Random Hermitian, both triangles stored, real diagonal.
inline CMatrix random_hermitian(std::size_t n, TestRng& rng) {
  CMatrix m = random_matrix(n, n, rng);
  for (std::size_t j = 0; j < n; ++j) {
    m(j, j) = m(j, j).real();
    for (std::size_t i = j + 1; i < n; ++i) m(j, i) = std::conj(m(i, j));
  }
  return m;
}

inline CMatrix naive_adjoint(const CMatrix& a) {
  CMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

// Ascending-k accumulation with std::complex arithmetic.
inline CMatrix naive_mul(const CMatrix& a, const CMatrix& b) {
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex s{0.0, 0.0};
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline CMatrix naive_add(const CMatrix& a, const CMatrix& b) {
  CMatrix c(a.rows(), a.cols());
  for (std::size_t k = 0; k < a.size(); ++k) c.data()[k] = a.data()[k] + b.data()[k];
  return c;
}

inline CMatrix lower_part(const CMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = j; i < m.rows(); ++i) out(i, j) = m(i, j);
  return out;
}

inline bool bit_identical(const CMatrix& a, const CMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data().data(), b.data().data(), a.size() * sizeof(Complex)) == 0;
}

}  // namespace hsgen::testing
