#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hsgen {

enum class KernelKind { Gemm, Hemm, Herk, Her2k, Trmm, Potrf, DiagScale };

inline constexpr std::array<KernelKind, 7> kAllKernelKinds = {
    KernelKind::Gemm,  KernelKind::Hemm,  KernelKind::Herk,     KernelKind::Her2k,
    KernelKind::Trmm,  KernelKind::Potrf, KernelKind::DiagScale};

std::string_view kernel_name(KernelKind kind);

/// Dimensions of one kernel call. Which fields matter depends on the kind:
///   Gemm      m x n output, k inner           8*m*n*k
///   Hemm      m = order of T, n = cols of B   8*m*m*n
///   Herk      n = output order, k inner       4*n*n*k
///   Her2k     n = output order, k inner       8*n*n*k
///   Trmm      m = order of C, n = cols        4*m*m*n
///   Potrf     m = order                       round(4/3*m^3)
///   DiagScale m x n scaled block              2*m*n
struct KernelDims {
  std::uint64_t m = 0;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  bool operator==(const KernelDims&) const = default;
};

std::uint64_t flops_of(KernelKind kind, const KernelDims& dims);

/// Sections of the H/S construction, in reporting order.
enum class Section { Loop1, Loop2, UNorm, S1, S2, H1, H2, H3 };

inline constexpr std::array<Section, 8> kAllSections = {
    Section::Loop1, Section::Loop2, Section::UNorm, Section::S1,
    Section::S2,    Section::H1,    Section::H2,    Section::H3};

std::string_view section_label(Section s);
Section section_from_label(std::string_view label);
/// The five stacked kernels that run through the executor.
bool is_heavy(Section s) noexcept;

struct FlopRecord {
  KernelKind kind{};
  KernelDims dims{};
  std::uint64_t flops = 0;
  double seconds = 0.0;
  Section section{};
};

class FlopLedger {
 public:
  void record(KernelKind kind, const KernelDims& dims, double seconds, Section section);
  const std::vector<FlopRecord>& records() const noexcept { return records_; }
  bool empty() const noexcept { return records_.empty(); }
  std::size_t size() const noexcept { return records_.size(); }

  std::uint64_t total_flops() const noexcept;
  double total_seconds() const noexcept;
  std::uint64_t section_flops(Section s) const noexcept;
  std::size_t count(KernelKind kind) const noexcept;

 private:
  std::vector<FlopRecord> records_;
};

}  // namespace hsgen
