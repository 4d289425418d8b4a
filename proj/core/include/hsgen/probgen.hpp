#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsgen/matrix.hpp"

namespace hsgen {

struct ProblemSpec {
  Dims dims;
  std::uint64_t seed = 0;
  double nonhpd_fraction = 0.0;
  double eig_min = 0.5;
  double eig_max = 2.0;

  void validate() const;
  /// round(nonhpd_fraction * n_atoms)
  std::size_t nonhpd_count() const;
};

/// Per-atom inputs of the H/S construction. T^{BA} is never stored; it is
/// (T^{AB})^H wherever it appears.
struct ProblemInstance {
  Dims dims;
  std::vector<CMatrix> a_blocks;  // n_l x n_g
  std::vector<CMatrix> b_blocks;  // n_l x n_g
  std::vector<CMatrix> t_aa;      // n_l x n_l, Hermitian
  std::vector<CMatrix> t_bb;      // n_l x n_l, Hermitian
  std::vector<CMatrix> t_ab;      // n_l x n_l, general
  std::vector<std::vector<double>> u_norms;  // n_l each, > 0

  // Present when the instance came from generate().
  std::optional<ProblemSpec> origin;
};

/// Throws InvariantError when shapes, finiteness, Hermiticity of T^{AA}/T^{BB}
/// or positivity of the U norms do not hold.
void validate_instance(const ProblemInstance& p);

/// Deterministic random source. mt19937_64 is fully specified by the C++
/// standard; doubles and Gaussians are derived from it by fixed formulas so
/// the stream is reproducible independent of the standard library vendor.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// (x >> 11) * 2^-53, in [0, 1)
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// floor(uniform() * n), in [0, n)
  std::size_t index(std::size_t n);
  /// Box-Muller, cosine branch, one uniform pair per draw.
  double gaussian();
  Complex complex_gaussian();

 private:
  std::mt19937_64 engine_;
};

CMatrix random_unitary(std::size_t n, Rng& rng);
/// Q * diag(d) * Q^H, stored exactly Hermitian (both triangles).
CMatrix hermitian_from_spectrum(const CMatrix& q, std::span<const double> d);

ProblemInstance generate(const ProblemSpec& spec);

struct Preset {
  std::string_view name;
  double k_max;
  Dims dims;
};

std::span<const Preset> presets();
/// Throws InputError listing valid options for unknown combinations.
Dims preset_dims(std::string_view name, double k_max);

}  // namespace hsgen
