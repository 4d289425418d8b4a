#include "hsgen/ledger.hpp"

#include <string>

#include "hsgen/errors.hpp"

namespace hsgen {

std::string_view kernel_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::Gemm: return "GEMM";
    case KernelKind::Hemm: return "HEMM";
    case KernelKind::Herk: return "HERK";
    case KernelKind::Her2k: return "HER2K";
    case KernelKind::Trmm: return "TRMM";
    case KernelKind::Potrf: return "POTRF";
    case KernelKind::DiagScale: return "DIAG_SCALE";
  }
  throw InputError("unknown kernel kind " + std::to_string(static_cast<int>(kind)));
}

std::uint64_t flops_of(KernelKind kind, const KernelDims& d) {
  switch (kind) {
    case KernelKind::Gemm: return 8 * d.m * d.n * d.k;
    case KernelKind::Hemm: return 8 * d.m * d.m * d.n;
    case KernelKind::Herk: return 4 * d.n * d.n * d.k;
    case KernelKind::Her2k: return 8 * d.n * d.n * d.k;
    case KernelKind::Trmm: return 4 * d.m * d.m * d.n;
    // round(4/3 m^3): 4m^3 mod 3 is never 0.5 away, so +1 then floor-divide.
    case KernelKind::Potrf: return (4 * d.m * d.m * d.m + 1) / 3;
    case KernelKind::DiagScale: return 2 * d.m * d.n;
  }
  throw InputError("flops_of: unknown kernel kind " + std::to_string(static_cast<int>(kind)));
}

std::string_view section_label(Section s) {
  switch (s) {
    case Section::Loop1: return "Loop 1";
    case Section::Loop2: return "Loop 2";
    case Section::UNorm: return "U norm";
    case Section::S1: return "S1";
    case Section::S2: return "S2";
    case Section::H1: return "H1";
    case Section::H2: return "H2";
    case Section::H3: return "H3";
  }
  throw InputError("unknown section " + std::to_string(static_cast<int>(s)));
}

Section section_from_label(std::string_view label) {
  for (Section s : kAllSections)
    if (section_label(s) == label) return s;
  throw InputError("unknown section label '" + std::string(label) + "'");
}

bool is_heavy(Section s) noexcept {
  return s == Section::S1 || s == Section::S2 || s == Section::H1 || s == Section::H2 ||
         s == Section::H3;
}

void FlopLedger::record(KernelKind kind, const KernelDims& dims, double seconds, Section section) {
  records_.push_back(FlopRecord{kind, dims, flops_of(kind, dims), seconds, section});
}

std::uint64_t FlopLedger::total_flops() const noexcept {
  std::uint64_t sum = 0;
  for (const auto& r : records_) sum += r.flops;
  return sum;
}

double FlopLedger::total_seconds() const noexcept {
  double sum = 0.0;
  for (const auto& r : records_) sum += r.seconds;
  return sum;
}

std::uint64_t FlopLedger::section_flops(Section s) const noexcept {
  std::uint64_t sum = 0;
  for (const auto& r : records_)
    if (r.section == s) sum += r.flops;
  return sum;
}

std::size_t FlopLedger::count(KernelKind kind) const noexcept {
  std::size_t n = 0;
  for (const auto& r : records_)
    if (r.kind == kind) ++n;
  return n;
}

}  // namespace hsgen
