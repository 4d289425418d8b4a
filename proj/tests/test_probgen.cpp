#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "eigen_support.hpp"
#include "hsgen/errors.hpp"
#include "hsgen/kernels.hpp"
#include "hsgen/probgen.hpp"
#include "test_support.hpp"

namespace hsgen {
namespace {

using namespace hsgen::testing;

ProblemSpec small_spec(std::uint64_t seed, double frac, Dims d = {4, 5, 7}) {
  ProblemSpec s;
  s.dims = d;
  s.seed = seed;
  s.nonhpd_fraction = frac;
  return s;
}

bool same_instance(const ProblemInstance& x, const ProblemInstance& y) {
  if (!(x.dims == y.dims)) return false;
  for (std::size_t a = 0; a < x.dims.n_atoms; ++a) {
    if (!bit_identical(x.a_blocks[a], y.a_blocks[a]) || !bit_identical(x.b_blocks[a], y.b_blocks[a]) ||
        !bit_identical(x.t_aa[a], y.t_aa[a]) || !bit_identical(x.t_bb[a], y.t_bb[a]) ||
        !bit_identical(x.t_ab[a], y.t_ab[a]) || x.u_norms[a] != y.u_norms[a])
      return false;
  }
  return true;
}

std::size_t failing_blocks(const ProblemInstance& p) {
  std::size_t n = 0;
  for (const auto& t : p.t_aa) n += potrf_lower(t).ok() ? 0 : 1;
  return n;
}

TEST(Rng, UniformIsTop53BitsOfTheEngine) {
  std::mt19937_64 ref(99);
  Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    const double want = static_cast<double>(ref() >> 11) * 0x1.0p-53;
    ASSERT_EQ(rng.uniform(), want);
  }
}

TEST(Rng, BoxMullerCosineBranch) {
  std::mt19937_64 ref(5);
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const double u1 = 1.0 - static_cast<double>(ref() >> 11) * 0x1.0p-53;
    const double u2 = static_cast<double>(ref() >> 11) * 0x1.0p-53;
    const double want = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    ASSERT_NEAR(rng.gaussian(), want, 1e-15 * (1 + std::abs(want)));
  }
}

TEST(Rng, GaussianMoments) {
  Rng rng(2024);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    sum += g;
    sq += g * g;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(RandomUnitary, IsUnitary) {
  Rng rng(3);
  for (std::size_t n : {1u, 2u, 7u, 33u}) {
    const CMatrix q = random_unitary(n, rng);
    EXPECT_LE(rel_frob_error(naive_mul(naive_adjoint(q), q), CMatrix::identity(n)), 1e-13);
  }
}

TEST(HermitianFromSpectrum, EigenvaluesRecovered) {
  Rng rng(4);
  const std::vector<double> d = {0.5, 1.25, -0.05, 2.0, 0.75};
  const CMatrix t = hermitian_from_spectrum(random_unitary(5, rng), d);
  EXPECT_TRUE(is_hermitian(t, 0.0));
  auto got = hermitian_eigenvalues(t);
  auto want = d;
  std::sort(want.begin(), want.end());
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_NEAR(got(static_cast<Eigen::Index>(i)), want[i], 1e-13);
}

TEST(Generate, AllHpdWhenFractionZero) {
  const auto p = generate(small_spec(1, 0.0));
  EXPECT_EQ(failing_blocks(p), 0u);
}

TEST(Generate, AllFailWhenFractionOne) {
  const auto p = generate(small_spec(1, 1.0));
  EXPECT_EQ(failing_blocks(p), p.dims.n_atoms);
}

TEST(Generate, Deterministic) {
  const auto s = small_spec(77, 0.5);
  EXPECT_TRUE(same_instance(generate(s), generate(s)));
  EXPECT_FALSE(same_instance(generate(s), generate(small_spec(78, 0.5))));
}

TEST(Generate, ShapesAndOrigin) {
  const auto s = small_spec(8, 0.25, {3, 2, 9});
  const auto p = generate(s);
  ASSERT_EQ(p.a_blocks.size(), 3u);
  EXPECT_EQ(p.a_blocks[0].rows(), 2u);
  EXPECT_EQ(p.a_blocks[0].cols(), 9u);
  EXPECT_EQ(p.t_ab[2].rows(), 2u);
  ASSERT_TRUE(p.origin.has_value());
  EXPECT_EQ(p.origin->seed, 8u);
  EXPECT_NO_THROW(validate_instance(p));
}

TEST(Generate, SpectraFollowTheConstruction) {
  const auto p = generate(small_spec(13, 0.5, {6, 8, 4}));
  std::size_t nonhpd = 0;
  for (std::size_t a = 0; a < 6; ++a) {
    const auto ev = hermitian_eigenvalues(p.t_aa[a]);
    if (ev(0) < 0) {
      ++nonhpd;
      EXPECT_GE(ev(0), -0.1 - 1e-12);
      EXPECT_LE(ev(0), -0.01 + 1e-12);
      EXPECT_GE(ev(1), 0.5 - 1e-12);
    } else {
      EXPECT_GE(ev(0), 0.5 - 1e-12);
    }
    EXPECT_LE(ev(ev.size() - 1), 2.0 + 1e-12);
    const auto eb = hermitian_eigenvalues(p.t_bb[a]);
    EXPECT_GE(eb(0), 0.5 - 1e-12);
    for (double u : p.u_norms[a]) {
      EXPECT_GE(u, 0.5);
      EXPECT_LE(u, 1.5);
    }
  }
  EXPECT_EQ(nonhpd, 3u);
}

TEST(Generate, SpecValidation) {
  EXPECT_THROW(generate(small_spec(1, 1.5)), InputError);
  EXPECT_THROW(generate(small_spec(1, -0.1)), InputError);
  EXPECT_THROW(generate(small_spec(1, 0.0, {0, 2, 2})), InputError);
  auto s = small_spec(1, 0.0);
  s.eig_min = 0.0;
  EXPECT_THROW(generate(s), InputError);
  s.eig_min = 3.0;
  EXPECT_THROW(generate(s), InputError);
}

TEST(Generate, NonHpdCountRounds) {
  EXPECT_EQ(small_spec(1, 0.5, {5, 1, 1}).nonhpd_count(), 3u);  // 2.5 rounds away from zero
  EXPECT_EQ(small_spec(1, 0.3, {4, 1, 1}).nonhpd_count(), 1u);
  EXPECT_EQ(small_spec(1, 1.0, {4, 1, 1}).nonhpd_count(), 4u);
}

TEST(GenerateProperty, CholeskyOutcomeMatchesConstruction) {
  TestRng pick(5);
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const Dims d{pick.size(1, 4), pick.size(1, 64), pick.size(1, 3)};
    const double frac = std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}[pick.size(0, 4)];
    const auto s = small_spec(1000 + trial, frac, d);
    const auto p = generate(s);
    EXPECT_EQ(failing_blocks(p), s.nonhpd_count()) << "trial " << trial;
  }
}

TEST(GenerateProperty, InstanceInvariantsHoldAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto p = generate(small_spec(seed, 0.5, {3, 6, 5}));
    EXPECT_NO_THROW(validate_instance(p));
    for (std::size_t a = 0; a < 3; ++a) {
      EXPECT_TRUE(is_hermitian(p.t_aa[a], 1e-14));
      EXPECT_TRUE(is_hermitian(p.t_bb[a], 1e-14));
    }
  }
}

TEST(ValidateInstance, RejectsBrokenInputs) {
  const auto good = generate(small_spec(2, 0.0, {2, 3, 4}));
  auto p = good;
  p.u_norms[1][0] = 0.0;
  EXPECT_THROW(validate_instance(p), InvariantError);
  p = good;
  p.t_aa[0](1, 0) += Complex(0.0, 1e-6);
  EXPECT_THROW(validate_instance(p), InvariantError);
  p = good;
  p.b_blocks.pop_back();
  EXPECT_THROW(validate_instance(p), InvariantError);
  p = good;
  p.a_blocks[0](0, 0) = std::nan("");
  EXPECT_THROW(validate_instance(p), InvariantError);
}

TEST(Presets, TableRows) {
  const Dims nacl4 = preset_dims("NaCl", 4.0);
  EXPECT_EQ(nacl4, (Dims{512, 49, 9273}));
  EXPECT_EQ(preset_dims("AuAg", 2.5), (Dims{108, 121, 3275}));
  EXPECT_EQ(preset_dims("NaCl", 3.0), (Dims{512, 49, 3893}));
  EXPECT_EQ(presets().size(), 8u);
  const std::vector<std::size_t> nacl = {2256, 3893, 6217, 9273};
  const std::vector<std::size_t> auag = {3275, 5638, 8970, 13379};
  const double k[] = {2.5, 3.0, 3.5, 4.0};
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(preset_dims("NaCl", k[i]).n_g, nacl[i]);
    EXPECT_EQ(preset_dims("AuAg", k[i]).n_g, auag[i]);
  }
}

TEST(Presets, UnknownCombinationListsOptions) {
  try {
    preset_dims("NaCl", 5.0);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("AuAg"), std::string::npos);
  }
  EXPECT_THROW(preset_dims("Si", 2.5), InputError);
}

}  // namespace
}  // namespace hsgen
