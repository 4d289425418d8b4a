#include "hsgen/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>

#include <json.hpp>

#include "hsgen/errors.hpp"

namespace hsgen::io {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint32_t kVersion = 1;
constexpr std::uint8_t kDtypeComplex128 = 1;

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint8_t>>;
  const U bits = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

template <typename T>
T get_le(std::span<const std::uint8_t> in, std::size_t offset) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint8_t>>;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) bits |= static_cast<U>(in[offset + i]) << (8 * i);
  return std::bit_cast<T>(bits);
}

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

std::string numbered(const char* prefix, std::size_t index, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%04zu.%s", prefix, index, ext);
  return buf;
}

}  // namespace

std::vector<std::uint8_t> encode_matrix(const CMatrix& m) {
  std::vector<std::uint8_t> out;
  out.reserve(kMatrixHeaderBytes + 16 * m.size());
  for (char c : {'H', 'S', 'M', '1'}) out.push_back(static_cast<std::uint8_t>(c));
  put_le(out, kVersion);
  put_le(out, kDtypeComplex128);
  put_le(out, static_cast<std::uint64_t>(m.rows()));
  put_le(out, static_cast<std::uint64_t>(m.cols()));
  for (const auto& z : m.data()) {
    put_le(out, z.real());
    put_le(out, z.imag());
  }
  return out;
}

CMatrix decode_matrix(std::span<const std::uint8_t> bytes, const std::string& what) {
  if (bytes.size() < kMatrixHeaderBytes) throw FormatError(what + ": truncated header");
  if (std::memcmp(bytes.data(), "HSM1", 4) != 0) throw FormatError(what + ": bad magic");
  if (get_le<std::uint32_t>(bytes, 4) != kVersion) throw FormatError(what + ": unsupported version");
  if (get_le<std::uint8_t>(bytes, 8) != kDtypeComplex128) throw FormatError(what + ": unsupported dtype");
  const auto rows = get_le<std::uint64_t>(bytes, 9);
  const auto cols = get_le<std::uint64_t>(bytes, 17);
  if (cols != 0 && rows > (bytes.size() / 16) / cols) throw FormatError(what + ": payload too short");
  if (bytes.size() != kMatrixHeaderBytes + 16 * rows * cols) {
    throw FormatError(what + ": file length does not match " + std::to_string(rows) + "x" +
                      std::to_string(cols));
  }
  std::vector<Complex> data(rows * cols);
  std::size_t off = kMatrixHeaderBytes;
  for (auto& z : data) {
    z = Complex{get_le<double>(bytes, off), get_le<double>(bytes, off + 8)};
    off += 16;
  }
  return CMatrix(rows, cols, std::move(data));
}

void write_matrix(const fs::path& path, const CMatrix& m) { write_bytes(path, encode_matrix(m)); }

CMatrix read_matrix(const fs::path& path) { return decode_matrix(read_bytes(path), path.string()); }

void write_f64(const fs::path& path, std::span<const double> v) {
  std::vector<std::uint8_t> out;
  out.reserve(8 * v.size());
  for (double x : v) put_le(out, x);
  write_bytes(path, out);
}

std::vector<double> read_f64(const fs::path& path) {
  const auto bytes = read_bytes(path);
  if (bytes.size() % 8 != 0) throw FormatError(path.string() + ": length not a multiple of 8");
  std::vector<double> v(bytes.size() / 8);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = get_le<double>(bytes, 8 * i);
  return v;
}

ProblemSpec Manifest::spec() const {
  return ProblemSpec{dims, seed, nonhpd_fraction, eig_min, eig_max};
}

void write_manifest(const fs::path& dir, const Manifest& m) {
  json j;
  j["format"] = "hsgen-instance";
  j["version"] = 1;
  j["dims"] = {{"n_atoms", m.dims.n_atoms}, {"n_l", m.dims.n_l}, {"n_g", m.dims.n_g}};
  j["seed"] = m.seed;
  j["nonhpd_fraction"] = m.nonhpd_fraction;
  j["eigenvalue_range"] = {m.eig_min, m.eig_max};
  j["has_blocks"] = m.has_blocks;
  json atoms = json::array();
  for (const auto& a : m.atoms) {
    atoms.push_back({{"a", a.a}, {"b", a.b}, {"t_aa", a.t_aa}, {"t_bb", a.t_bb},
                     {"t_ab", a.t_ab}, {"u", a.u}});
  }
  j["atoms"] = std::move(atoms);
  const std::string text = j.dump(2) + "\n";
  write_bytes(dir / kManifestName,
              std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

Manifest read_manifest(const fs::path& dir) {
  const fs::path path = dir / kManifestName;
  const auto bytes = read_bytes(path);
  try {
    const json j = json::parse(bytes.begin(), bytes.end());
    if (j.at("format") != "hsgen-instance" || j.at("version") != 1) {
      throw FormatError(path.string() + ": not an hsgen instance manifest");
    }
    Manifest m;
    const auto& d = j.at("dims");
    m.dims = {d.at("n_atoms").get<std::size_t>(), d.at("n_l").get<std::size_t>(),
              d.at("n_g").get<std::size_t>()};
    m.seed = j.at("seed").get<std::uint64_t>();
    m.nonhpd_fraction = j.at("nonhpd_fraction").get<double>();
    m.eig_min = j.at("eigenvalue_range").at(0).get<double>();
    m.eig_max = j.at("eigenvalue_range").at(1).get<double>();
    m.has_blocks = j.value("has_blocks", true);
    for (const auto& a : j.at("atoms")) {
      m.atoms.push_back({a.at("a"), a.at("b"), a.at("t_aa"), a.at("t_bb"), a.at("t_ab"), a.at("u")});
    }
    return m;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::uint64_t save_manifest_only(const fs::path& dir, const ProblemSpec& spec) {
  fs::create_directories(dir);
  Manifest m{spec.dims, spec.seed, spec.nonhpd_fraction, spec.eig_min, spec.eig_max, false, {}};
  write_manifest(dir, m);
  return fs::file_size(dir / kManifestName);
}

std::uint64_t save_instance(const fs::path& dir, const ProblemInstance& p, const ProblemSpec& spec) {
  fs::create_directories(dir);
  Manifest m{p.dims, spec.seed, spec.nonhpd_fraction, spec.eig_min, spec.eig_max, true, {}};
  std::uint64_t total = 0;
  for (std::size_t a = 0; a < p.dims.n_atoms; ++a) {
    const std::size_t k = a + 1;
    AtomFiles f{numbered("a", k, "hsm"),    numbered("b", k, "hsm"),    numbered("t_aa", k, "hsm"),
                numbered("t_bb", k, "hsm"), numbered("t_ab", k, "hsm"), numbered("u", k, "f64")};
    write_matrix(dir / f.a, p.a_blocks[a]);
    write_matrix(dir / f.b, p.b_blocks[a]);
    write_matrix(dir / f.t_aa, p.t_aa[a]);
    write_matrix(dir / f.t_bb, p.t_bb[a]);
    write_matrix(dir / f.t_ab, p.t_ab[a]);
    write_f64(dir / f.u, p.u_norms[a]);
    for (const auto* name : {&f.a, &f.b, &f.t_aa, &f.t_bb, &f.t_ab, &f.u}) total += fs::file_size(dir / *name);
    m.atoms.push_back(std::move(f));
  }
  write_manifest(dir, m);
  return total + fs::file_size(dir / kManifestName);
}

ProblemInstance load_instance(const fs::path& dir) {
  const Manifest m = read_manifest(dir);
  if (!m.has_blocks) throw FormatError((dir / kManifestName).string() + ": manifest has no block files");
  if (m.atoms.size() != m.dims.n_atoms) {
    throw FormatError((dir / kManifestName).string() + ": atom list does not match n_atoms");
  }
  ProblemInstance p;
  p.dims = m.dims;
  p.origin = m.spec();
  auto load = [&](const std::string& name, std::size_t rows, std::size_t cols) {
    CMatrix mat = read_matrix(dir / name);
    if (mat.rows() != rows || mat.cols() != cols) {
      throw FormatError((dir / name).string() + ": expected " + std::to_string(rows) + "x" +
                        std::to_string(cols));
    }
    return mat;
  };
  const auto [na, nl, ng] = m.dims;
  for (const auto& f : m.atoms) {
    p.a_blocks.push_back(load(f.a, nl, ng));
    p.b_blocks.push_back(load(f.b, nl, ng));
    p.t_aa.push_back(load(f.t_aa, nl, nl));
    p.t_bb.push_back(load(f.t_bb, nl, nl));
    p.t_ab.push_back(load(f.t_ab, nl, nl));
    auto u = read_f64(dir / f.u);
    if (u.size() != nl) throw FormatError((dir / f.u).string() + ": expected " + std::to_string(nl) + " values");
    p.u_norms.push_back(std::move(u));
  }
  return p;
}

}  // namespace hsgen::io
