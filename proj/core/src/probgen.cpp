#include "hsgen/probgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "hsgen/errors.hpp"

namespace hsgen {

void ProblemSpec::validate() const {
  dims.validate();
  if (!(nonhpd_fraction >= 0.0 && nonhpd_fraction <= 1.0)) {
    throw InputError("nonhpd_fraction must lie in [0, 1]");
  }
  if (!(eig_min > 0.0 && eig_max >= eig_min && std::isfinite(eig_max))) {
    throw InputError("eigenvalue range must be positive and ordered");
  }
}

std::size_t ProblemSpec::nonhpd_count() const {
  return static_cast<std::size_t>(std::llround(nonhpd_fraction * static_cast<double>(dims.n_atoms)));
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::size_t Rng::index(std::size_t n) {
  const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return std::min(i, n - 1);
}

double Rng::gaussian() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re, im};
}

CMatrix random_unitary(std::size_t n, Rng& rng) {
  CMatrix q(n, n);
  for (auto& z : q.data()) z = rng.complex_gaussian();
  // Modified Gram-Schmidt over columns.
  for (std::size_t j = 0; j < n; ++j) {
    auto qj = q.col(j);
    for (std::size_t p = 0; p < j; ++p) {
      auto qp = q.col(p);
      Complex proj{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(qp[i]) * qj[i];
      for (std::size_t i = 0; i < n; ++i) qj[i] -= proj * qp[i];
    }
    double nrm = 0.0;
    for (const auto& z : qj) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    for (auto& z : qj) z /= nrm;
  }
  return q;
}

CMatrix hermitian_from_spectrum(const CMatrix& q, std::span<const double> d) {
  const std::size_t n = q.rows();
  if (!q.is_square() || d.size() != n) throw DimensionError("hermitian_from_spectrum: shape");
  CMatrix t(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) {
      Complex s{0.0, 0.0};
      for (std::size_t k = 0; k < n; ++k) s += q(i, k) * d[k] * std::conj(q(j, k));
      t(i, j) = s;
    }
  }
  return hermitian_mirror(std::move(t));
}

namespace {

CMatrix gaussian_block(std::size_t rows, std::size_t cols, double scale, Rng& rng) {
  CMatrix m(rows, cols);
  for (auto& z : m.data()) z = rng.complex_gaussian() * scale;
  return m;
}

CMatrix hermitian_block(std::size_t n, const ProblemSpec& spec, bool make_indefinite, Rng& rng) {
  const CMatrix q = random_unitary(n, rng);
  std::vector<double> d(n);
  for (auto& v : d) v = rng.uniform(spec.eig_min, spec.eig_max);
  if (make_indefinite) {
    const auto smallest = std::min_element(d.begin(), d.end());
    *smallest = rng.uniform(-0.1, -0.01);
  }
  return hermitian_from_spectrum(q, d);
}

}  // namespace

ProblemInstance generate(const ProblemSpec& spec) {
  spec.validate();
  const Dims& d = spec.dims;
  Rng rng(spec.seed);

  // Fisher-Yates; the first nonhpd_count atoms of the permutation are indefinite.
  std::vector<std::size_t> perm(d.n_atoms);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = d.n_atoms; i-- > 1;) std::swap(perm[i], perm[rng.index(i + 1)]);
  std::vector<bool> indefinite(d.n_atoms, false);
  for (std::size_t i = 0; i < spec.nonhpd_count(); ++i) indefinite[perm[i]] = true;

  const double scale = 1.0 / std::sqrt(static_cast<double>(d.n_l));
  ProblemInstance p;
  p.dims = d;
  p.origin = spec;
  for (std::size_t a = 0; a < d.n_atoms; ++a) {
    p.a_blocks.push_back(gaussian_block(d.n_l, d.n_g, scale, rng));
    p.b_blocks.push_back(gaussian_block(d.n_l, d.n_g, scale, rng));
    p.t_aa.push_back(hermitian_block(d.n_l, spec, indefinite[a], rng));
    p.t_bb.push_back(hermitian_block(d.n_l, spec, false, rng));
    p.t_ab.push_back(gaussian_block(d.n_l, d.n_l, scale, rng));
    std::vector<double> u(d.n_l);
    for (auto& v : u) v = rng.uniform(0.5, 1.5);
    p.u_norms.push_back(std::move(u));
  }
  return p;
}

void validate_instance(const ProblemInstance& p) {
  try {
    p.dims.validate();
  } catch (const InputError& e) {
    throw InvariantError(e.what());
  }
  const Dims& d = p.dims;
  auto check_count = [&](std::size_t n, const char* what) {
    if (n != d.n_atoms) {
      throw InvariantError(std::string(what) + ": expected " + std::to_string(d.n_atoms) +
                           " blocks, found " + std::to_string(n));
    }
  };
  check_count(p.a_blocks.size(), "a_blocks");
  check_count(p.b_blocks.size(), "b_blocks");
  check_count(p.t_aa.size(), "t_aa");
  check_count(p.t_bb.size(), "t_bb");
  check_count(p.t_ab.size(), "t_ab");
  check_count(p.u_norms.size(), "u_norms");

  auto check_block = [](const CMatrix& m, std::size_t r, std::size_t c, const char* what,
                        std::size_t a) {
    const std::string where = std::string(what) + "[" + std::to_string(a) + "]";
    if (m.rows() != r || m.cols() != c) throw InvariantError(where + ": wrong shape");
    if (!m.all_finite()) throw InvariantError(where + ": non-finite entry");
  };
  for (std::size_t a = 0; a < d.n_atoms; ++a) {
    check_block(p.a_blocks[a], d.n_l, d.n_g, "a", a);
    check_block(p.b_blocks[a], d.n_l, d.n_g, "b", a);
    check_block(p.t_aa[a], d.n_l, d.n_l, "t_aa", a);
    check_block(p.t_bb[a], d.n_l, d.n_l, "t_bb", a);
    check_block(p.t_ab[a], d.n_l, d.n_l, "t_ab", a);
    for (const auto* t : {&p.t_aa[a], &p.t_bb[a]}) {
      if (max_hermitian_defect(*t) > 1e-14 * (1.0 + frobenius(*t))) {
        throw InvariantError(std::string(t == &p.t_aa[a] ? "t_aa" : "t_bb") + "[" +
                             std::to_string(a) + "]: not Hermitian");
      }
    }
    const auto& u = p.u_norms[a];
    if (u.size() != d.n_l) throw InvariantError("u[" + std::to_string(a) + "]: wrong length");
    for (double v : u) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvariantError("u[" + std::to_string(a) + "]: entries must be finite and > 0");
      }
    }
  }
}

namespace {

constexpr std::array<Preset, 8> kPresets = {{
    {"NaCl", 2.5, {512, 49, 2256}},
    {"NaCl", 3.0, {512, 49, 3893}},
    {"NaCl", 3.5, {512, 49, 6217}},
    {"NaCl", 4.0, {512, 49, 9273}},
    {"AuAg", 2.5, {108, 121, 3275}},
    {"AuAg", 3.0, {108, 121, 5638}},
    {"AuAg", 3.5, {108, 121, 8970}},
    {"AuAg", 4.0, {108, 121, 13379}},
}};

}  // namespace

std::span<const Preset> presets() { return kPresets; }

Dims preset_dims(std::string_view name, double k_max) {
  for (const auto& p : kPresets) {
    if (p.name == name && std::abs(p.k_max - k_max) < 1e-9) return p.dims;
  }
  std::ostringstream msg;
  msg << "unknown preset '" << name << "' with k_max " << k_max << "; valid options:";
  for (const auto& p : kPresets) msg << ' ' << p.name << '@' << p.k_max;
  throw InputError(msg.str());
}

}  // namespace hsgen
