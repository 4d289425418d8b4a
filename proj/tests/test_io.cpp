#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <limits>

#include "hsgen/errors.hpp"
#include "hsgen/io.hpp"
#include "hsgen/probgen.hpp"
#include "temp_dir.hpp"
#include "test_support.hpp"

namespace hsgen {
namespace {

using namespace hsgen::testing;

std::uint64_t le_u64(const std::vector<std::uint8_t>& b, std::size_t off) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[off + std::size_t(i)];
  return v;
}

ProblemSpec spec(Dims d, std::uint64_t seed, double frac) {
  ProblemSpec s;
  s.dims = d;
  s.seed = seed;
  s.nonhpd_fraction = frac;
  return s;
}

TEST(MatrixFile, HeaderLayout) {
  const CMatrix m = CMatrix::from_rows({{Complex(1.5, -2.0), 3.0, 0.0}, {4.0, 5.0, Complex(0, 1)}});
  const auto bytes = io::encode_matrix(m);
  ASSERT_EQ(bytes.size(), 25u + 16u * 6u);
  EXPECT_EQ(std::memcmp(bytes.data(), "HSM1", 4), 0);
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5] | bytes[6] | bytes[7], 0);
  EXPECT_EQ(bytes[8], 1);
  EXPECT_EQ(le_u64(bytes, 9), 2u);
  EXPECT_EQ(le_u64(bytes, 17), 3u);
  // First payload value is m(0,0).real = 1.5, then its imaginary part, then m(1,0).
  EXPECT_EQ(le_u64(bytes, 25), std::bit_cast<std::uint64_t>(1.5));
  EXPECT_EQ(le_u64(bytes, 33), std::bit_cast<std::uint64_t>(-2.0));
  EXPECT_EQ(le_u64(bytes, 41), std::bit_cast<std::uint64_t>(4.0));
}

TEST(MatrixFile, RoundTripProperty) {
  TestRng rng(1);
  TempDir dir;
  for (int trial = 0; trial < 30; ++trial) {
    CMatrix m = random_matrix(rng.size(0, 20), rng.size(0, 20), rng);
    if (m.size() > 2) {
      m.data()[0] = Complex(-0.0, std::numeric_limits<double>::denorm_min());
      m.data()[1] = Complex(std::numeric_limits<double>::infinity(), std::numeric_limits<double>::quiet_NaN());
    }
    EXPECT_TRUE(bit_identical(io::decode_matrix(io::encode_matrix(m)), m));
    io::write_matrix(dir / "m.hsm", m);
    EXPECT_EQ(std::filesystem::file_size(dir / "m.hsm"), 25u + 16u * m.size());
    EXPECT_TRUE(bit_identical(io::read_matrix(dir / "m.hsm"), m));
  }
}

TEST(MatrixFile, CorruptionIsFormatError) {
  TestRng rng(2);
  const auto good = io::encode_matrix(random_matrix(3, 4, rng));
  auto bad = good;
  bad[0] = 'X';
  EXPECT_THROW(io::decode_matrix(bad), FormatError);
  bad = good;
  bad.pop_back();
  EXPECT_THROW(io::decode_matrix(bad), FormatError);
  bad = good;
  bad.push_back(0);
  EXPECT_THROW(io::decode_matrix(bad), FormatError);
  bad = good;
  bad[4] = 2;
  EXPECT_THROW(io::decode_matrix(bad), FormatError);
  bad = good;
  bad[8] = 7;
  EXPECT_THROW(io::decode_matrix(bad), FormatError);
  bad = good;
  bad[16] = 0xff;  // rows overflows the payload
  EXPECT_THROW(io::decode_matrix(bad), FormatError);
  EXPECT_THROW(io::decode_matrix(std::vector<std::uint8_t>(10, 0)), FormatError);
  EXPECT_THROW(io::read_matrix("/nonexistent/dir/m.hsm"), FormatError);
}

TEST(F64File, RoundTripAndLength) {
  TempDir dir;
  const std::vector<double> v = {0.5, 1.25, -3.0};
  io::write_f64(dir / "u.f64", v);
  EXPECT_EQ(std::filesystem::file_size(dir / "u.f64"), 24u);
  EXPECT_EQ(io::read_f64(dir / "u.f64"), v);
  put_bytes(dir / "u.f64", {1, 2, 3});
  EXPECT_THROW(io::read_f64(dir / "u.f64"), FormatError);
}

TEST(Instance, SaveLoadRoundTrip) {
  TempDir dir;
  const auto s = spec({3, 4, 5}, 9, 0.34);
  const auto p = generate(s);
  const auto bytes = io::save_instance(dir.path(), p, s);
  EXPECT_GT(bytes, 0u);
  EXPECT_TRUE(std::filesystem::exists(dir / "a_0001.hsm"));
  EXPECT_TRUE(std::filesystem::exists(dir / "t_aa_0003.hsm"));
  EXPECT_TRUE(std::filesystem::exists(dir / "u_0002.f64"));
  const auto q = io::load_instance(dir.path());
  ASSERT_EQ(q.dims, p.dims);
  for (std::size_t a = 0; a < 3; ++a) {
    EXPECT_TRUE(bit_identical(q.a_blocks[a], p.a_blocks[a]));
    EXPECT_TRUE(bit_identical(q.b_blocks[a], p.b_blocks[a]));
    EXPECT_TRUE(bit_identical(q.t_aa[a], p.t_aa[a]));
    EXPECT_TRUE(bit_identical(q.t_bb[a], p.t_bb[a]));
    EXPECT_TRUE(bit_identical(q.t_ab[a], p.t_ab[a]));
    EXPECT_EQ(q.u_norms[a], p.u_norms[a]);
  }
  const auto m = io::read_manifest(dir.path());
  EXPECT_EQ(m.seed, 9u);
  EXPECT_DOUBLE_EQ(m.nonhpd_fraction, 0.34);
  EXPECT_EQ(m.spec().nonhpd_count(), s.nonhpd_count());
}

TEST(Instance, MissingOrMisshapenBlockNamesTheFile) {
  TempDir dir;
  const auto s = spec({2, 3, 4}, 1, 0.0);
  io::save_instance(dir.path(), generate(s), s);
  TestRng rng(3);
  io::write_matrix(dir / "b_0002.hsm", random_matrix(3, 5, rng));
  try {
    io::load_instance(dir.path());
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("b_0002.hsm"), std::string::npos);
  }
  std::filesystem::remove(dir / "b_0002.hsm");
  EXPECT_THROW(io::load_instance(dir.path()), FormatError);
}

TEST(Instance, ManifestOnly) {
  TempDir dir;
  io::save_manifest_only(dir.path(), spec({512, 49, 9273}, 3, 0.0));
  const auto m = io::read_manifest(dir.path());
  EXPECT_FALSE(m.has_blocks);
  EXPECT_EQ(m.dims, (Dims{512, 49, 9273}));
  EXPECT_THROW(io::load_instance(dir.path()), FormatError);
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir.path()), {}), 1);
}

TEST(Instance, BadManifest) {
  TempDir dir;
  put_bytes(dir / "manifest.json", {'{', '}'});
  EXPECT_THROW(io::read_manifest(dir.path()), FormatError);
  put_bytes(dir / "manifest.json", {'n', 'o', 'p', 'e'});
  EXPECT_THROW(io::read_manifest(dir.path()), FormatError);
  EXPECT_THROW(io::read_manifest(dir / "missing"), FormatError);
}

}  // namespace
}  // namespace hsgen
