#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hsgen/ledger.hpp"
#include "hsgen/matrix.hpp"

namespace hsgen {

// Peak double-precision figures of the reference node: 2 x K20x GPUs and the
// 16-core host.
inline constexpr double kGpuPeakGflops = 2600.0;
inline constexpr double kCpuPeakGflops = 256.0;
inline constexpr double kNodePeakGflops = kGpuPeakGflops + kCpuPeakGflops;

struct SectionReport {
  Section section{};
  double seconds = 0.0;
  std::uint64_t flops = 0;
  // Absent when the section took no measurable time.
  std::optional<double> gflops_per_s;
  std::optional<double> efficiency;
};

/// One report per section present in the ledger, in canonical section order.
std::vector<SectionReport> summarize(const FlopLedger& ledger, double peak_gflops);

/// Plain-text table: Section | Time | Performance | Efficiency.
std::string format_table(std::span<const SectionReport> rows);

/// Published breakdown for NaCl, K_max = 4.0, on two K20x devices.
struct PublishedRow {
  Section section;
  double seconds;
  double gflops_per_s;
};
std::span<const PublishedRow> published_breakdown();

struct FlopModelCheck {
  Section section{};
  std::uint64_t modeled_flops = 0;
  double modeled_gflops = 0.0;
  double published_gflops = 0.0;
  double rel_error = 0.0;
  // H2/H3: atoms implied by published time x performance, not validated.
  std::optional<double> implied_atoms;
  bool validated = false;
};

/// Modeled flops of S1, S2, H1 at the NaCl K_max = 4.0 size divided by the
/// published times, compared to the published rates; H2 and H3 report the
/// implied atom counts instead.
std::vector<FlopModelCheck> validate_flop_model();

/// Flops of S1 + S2 + H1 + H2 + H3 over the total, from the closed-form model.
double heavy_fraction(const Dims& dims, std::size_t nonhpd_count);

}  // namespace hsgen
