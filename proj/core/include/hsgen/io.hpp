#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hsgen/matrix.hpp"
#include "hsgen/probgen.hpp"

namespace hsgen::io {

// Matrix file layout, all integers and floats little-endian:
//   "HSM1" | u32 version = 1 | u8 dtype = 1 | u64 rows | u64 cols |
//   rows*cols x (f64 real, f64 imag), column-major
inline constexpr std::size_t kMatrixHeaderBytes = 25;

void write_matrix(const std::filesystem::path& path, const CMatrix& m);
CMatrix read_matrix(const std::filesystem::path& path);
std::vector<std::uint8_t> encode_matrix(const CMatrix& m);
CMatrix decode_matrix(std::span<const std::uint8_t> bytes, const std::string& what = "matrix");

/// Raw little-endian f64 vector, no header.
void write_f64(const std::filesystem::path& path, std::span<const double> v);
std::vector<double> read_f64(const std::filesystem::path& path);

struct AtomFiles {
  std::string a, b, t_aa, t_bb, t_ab, u;
};

struct Manifest {
  Dims dims;
  std::uint64_t seed = 0;
  double nonhpd_fraction = 0.0;
  double eig_min = 0.5;
  double eig_max = 2.0;
  bool has_blocks = true;
  std::vector<AtomFiles> atoms;

  ProblemSpec spec() const;
};

inline constexpr const char* kManifestName = "manifest.json";

Manifest read_manifest(const std::filesystem::path& dir);
void write_manifest(const std::filesystem::path& dir, const Manifest& m);

/// Writes the manifest and, unless manifest_only, every block file.
/// Returns the total number of bytes written.
std::uint64_t save_instance(const std::filesystem::path& dir, const ProblemInstance& p,
                            const ProblemSpec& spec);
std::uint64_t save_manifest_only(const std::filesystem::path& dir, const ProblemSpec& spec);

/// Loads every block named by the manifest, checking shapes against it.
/// Throws FormatError naming the offending file.
ProblemInstance load_instance(const std::filesystem::path& dir);

}  // namespace hsgen::io
