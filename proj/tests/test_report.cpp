#include <gtest/gtest.h>

#include <cmath>

#include "hsgen/builder.hpp"
#include "hsgen/errors.hpp"
#include "hsgen/probgen.hpp"
#include "hsgen/report.hpp"

namespace hsgen {
namespace {

TEST(Summarize, SingleRecordArithmetic) {
  FlopLedger l;
  l.record(KernelKind::Herk, {0, 1000, 2000}, 4.0, Section::S1);  // 4 * 1e6 * 2000 = 8e9
  const auto rows = summarize(l, kGpuPeakGflops);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].flops, 8000000000ull);
  ASSERT_TRUE(rows[0].gflops_per_s.has_value());
  EXPECT_DOUBLE_EQ(*rows[0].gflops_per_s, 2.0);
  EXPECT_NEAR(*rows[0].efficiency, 2.0 / 2600.0, 1e-15);
  EXPECT_NEAR(*rows[0].efficiency, 0.00077, 1e-5);
}

TEST(Summarize, ZeroDurationIsAbsentNotInfinite) {
  FlopLedger l;
  l.record(KernelKind::Gemm, {2, 2, 2}, 0.0, Section::H2);
  const auto rows = summarize(l, 1.0);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].gflops_per_s.has_value());
  EXPECT_FALSE(rows[0].efficiency.has_value());
  EXPECT_NE(format_table(rows).find("H2"), std::string::npos);
}

TEST(Summarize, Errors) {
  EXPECT_THROW(summarize(FlopLedger{}, 1.0), InputError);
  FlopLedger l;
  l.record(KernelKind::Gemm, {2, 2, 2}, 1.0, Section::H2);
  EXPECT_THROW(summarize(l, 0.0), InputError);
}

TEST(Summarize, ScalarBuildMatchesClosedForm) {
  ProblemSpec s;
  s.dims = {1, 1, 1};
  s.seed = 1;
  const auto out = build_hs(generate(s), {});
  const auto rows = summarize(out.ledger, kCpuPeakGflops);
  EXPECT_LE(rows.size(), 8u);
  std::uint64_t total = 0;
  for (const auto& r : rows) total += r.flops;
  // 16 + 8 + 8 + 2 + round(4/3) + 4 + 4 for one HPD atom with unit sizes.
  EXPECT_EQ(total, 16u + 8u + 8u + 2u + 1u + 4u + 4u);
}

TEST(Summarize, ConservesTotalsAndOrdersSections) {
  ProblemSpec s;
  s.dims = {5, 4, 12};
  s.seed = 2;
  s.nonhpd_fraction = 0.4;
  const auto out = build_hs(generate(s), {});
  const auto rows = summarize(out.ledger, kNodePeakGflops);
  EXPECT_EQ(rows.size(), 8u);
  std::uint64_t flops = 0;
  double secs = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    flops += rows[i].flops;
    secs += rows[i].seconds;
    if (i > 0) EXPECT_LT(static_cast<int>(rows[i - 1].section), static_cast<int>(rows[i].section));
  }
  EXPECT_EQ(flops, out.ledger.total_flops());
  EXPECT_NEAR(secs, out.ledger.total_seconds(), 1e-12);
}

TEST(FormatTable, ColumnOrder) {
  FlopLedger l;
  l.record(KernelKind::Herk, {0, 1000, 2000}, 4.0, Section::S1);
  const std::string t = format_table(summarize(l, kGpuPeakGflops));
  const auto sec = t.find("Section"), time = t.find("Time"), perf = t.find("Performance"),
             eff = t.find("Efficiency");
  ASSERT_NE(eff, std::string::npos);
  EXPECT_LT(sec, time);
  EXPECT_LT(time, perf);
  EXPECT_LT(perf, eff);
  EXPECT_NE(t.find("S1"), std::string::npos);
}

TEST(PublishedBreakdown, VerbatimValues) {
  const auto rows = published_breakdown();
  ASSERT_EQ(rows.size(), 8u);
  const double secs[] = {2.27, 2.62, 0.23, 4.37, 4.41, 9.49, 2.32, 4.75};
  const double perf[] = {80.35, 34.81, 1.01, 1974.63, 1956.72, 1818.57, 1859.72, 1816.66};
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(rows[i].seconds, secs[i]);
    EXPECT_EQ(rows[i].gflops_per_s, perf[i]);
  }
  EXPECT_EQ(rows[3].section, Section::S1);
  EXPECT_EQ(rows[7].section, Section::H3);
}

TEST(FlopModel, ReproducesPublishedRates) {
  const auto checks = validate_flop_model();
  int validated = 0;
  for (const auto& c : checks) {
    if (c.section == Section::S1 || c.section == Section::S2 || c.section == Section::H1) {
      ASSERT_TRUE(c.validated);
      EXPECT_LT(c.rel_error, 1e-3) << section_label(c.section);
      ++validated;
    }
  }
  EXPECT_EQ(validated, 3);
}

TEST(FlopModel, ModeledFlopsAreTheAnnotatedProducts) {
  // 4 * 512 * 49 * 9273^2 and twice that, evaluated independently.
  for (const auto& c : validate_flop_model()) {
    if (c.section == Section::S1 || c.section == Section::S2) EXPECT_EQ(c.modeled_flops, 8629120862208ull);
    if (c.section == Section::H1) EXPECT_EQ(c.modeled_flops, 17258241724416ull);
  }
}

TEST(FlopModel, ImpliedAtomCountsForPhase2) {
  double h2 = 0, h3 = 0;
  for (const auto& c : validate_flop_model()) {
    if (c.section == Section::H2) h2 = c.implied_atoms.value();
    if (c.section == Section::H3) h3 = c.implied_atoms.value();
    if (c.section == Section::H2 || c.section == Section::H3) EXPECT_FALSE(c.validated);
  }
  // time * rate / per-atom flops, from the published rows.
  EXPECT_NEAR(h2, 2.32 * 1859.72e9 / (8.0 * 49 * 9273.0 * 9273.0), 1e-9);
  EXPECT_NEAR(h3, 4.75 * 1816.66e9 / (4.0 * 49 * 9273.0 * 9273.0), 1e-9);
  EXPECT_NEAR(h2, 128.0, 1.0);
  EXPECT_NEAR(h3, 512.0, 1.0);
}

TEST(HeavyFraction, LargestNaClAnySplit) {
  const Dims d = preset_dims("NaCl", 4.0);
  for (std::size_t n_nh : {std::size_t{0}, std::size_t{128}, std::size_t{256}, std::size_t{512}})
    EXPECT_GE(heavy_fraction(d, n_nh), 0.99) << n_nh;
}

TEST(HeavyFraction, SmallestAuAgFallsShort) {
  const double f = heavy_fraction(preset_dims("AuAg", 2.5), 0);
  EXPECT_LT(f, 0.97);
  EXPECT_NEAR(f, 0.96, 0.01);
}

TEST(HeavyFraction, DegenerateSquareBlocks) {
  EXPECT_LT(heavy_fraction({8, 32, 32}, 0), 0.97);
  EXPECT_THROW(heavy_fraction({8, 32, 32}, 9), InputError);
}

TEST(HeavyFraction, MonotoneInPlaneWaves) {
  for (std::size_t nl : {4u, 16u, 49u, 121u}) {
    for (std::size_t n_nh : {0u, 2u, 4u}) {
      double prev = 0.0;
      for (std::size_t ng = 8; ng <= 20000; ng = ng * 3 / 2 + 1) {
        const double f = heavy_fraction({4, nl, ng}, n_nh);
        EXPECT_GT(f, prev) << nl << " " << ng;
        EXPECT_LE(f, 1.0);
        prev = f;
      }
    }
  }
}

}  // namespace
}  // namespace hsgen
