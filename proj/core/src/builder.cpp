#include "hsgen/builder.hpp"

#include <chrono>
#include <string>

#include "hsgen/errors.hpp"
#include "hsgen/kernels.hpp"

namespace hsgen {
namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double timed(F&& f) {
  const auto start = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t u64(std::size_t v) { return static_cast<std::uint64_t>(v); }

}  // namespace

Phase1Output build_phase1(const ProblemInstance& p, FlopLedger& ledger) {
  const auto [na, nl, ng] = p.dims;
  Phase1Output out{CMatrix(na * nl, ng), CMatrix(na * nl, ng)};
  CMatrix z(nl, ng);
  for (std::size_t a = 0; a < na; ++a) {
    // T^{BA} A through the conjugate-transpose op on T^{AB}.
    double t = timed([&] { gemm(1.0, Op::C, p.t_ab[a], Op::N, p.a_blocks[a], 0.0, z); });
    ledger.record(KernelKind::Gemm, {u64(nl), u64(ng), u64(nl)}, t, Section::Loop1);
    t = timed([&] { hemm_left(0.5, p.t_bb[a], p.b_blocks[a], 1.0, z); });
    ledger.record(KernelKind::Hemm, {u64(nl), u64(ng), 0}, t, Section::Loop1);
    set_block_rows(out.z_stack, a * nl, z);
    set_block_rows(out.b_stack, a * nl, p.b_blocks[a]);
  }
  return out;
}

HermitianResult h_cross(const CMatrix& z_stack, const CMatrix& b_stack, FlopLedger& ledger,
                        const ExecPolicy& policy) {
  CMatrix h(z_stack.cols(), z_stack.cols());
  const auto stats = run_partitioned(Her2kCall{1.0, z_stack, b_stack, 0.0}, h, policy);
  ledger.record(KernelKind::Her2k, {0, u64(h.rows()), u64(z_stack.rows())}, stats.seconds,
                Section::H1);
  return {std::move(h), Fill::LowerOnly};
}

HermitianResult build_s(const ProblemInstance& p, FlopLedger& ledger, const ExecPolicy& policy) {
  const auto [na, nl, ng] = p.dims;
  const CMatrix a_stack = stack(p.a_blocks);
  // Scratch copy of B; the instance's blocks are never scaled in place.
  CMatrix b_scaled = stack(p.b_blocks);
  std::vector<double> u;
  u.reserve(na * nl);
  for (const auto& ua : p.u_norms) u.insert(u.end(), ua.begin(), ua.end());

  CMatrix s(ng, ng);
  auto stats = run_partitioned(HerkCall{1.0, a_stack, 0.0}, s, policy);
  ledger.record(KernelKind::Herk, {0, u64(ng), u64(na * nl)}, stats.seconds, Section::S1);

  const double t = timed([&] { diag_scale(u, b_scaled); });
  ledger.record(KernelKind::DiagScale, {u64(na * nl), u64(ng), 0}, t, Section::UNorm);

  stats = run_partitioned(HerkCall{1.0, b_scaled, 1.0}, s, policy);
  ledger.record(KernelKind::Herk, {0, u64(ng), u64(na * nl)}, stats.seconds, Section::S2);
  return {std::move(s), Fill::LowerOnly};
}

CholeskySplit build_phase2(const ProblemInstance& p, HermitianResult& h, FlopLedger& ledger,
                           const ExecPolicy& policy, const BuildOptions& options) {
  const auto [na, nl, ng] = p.dims;
  if (h.matrix.rows() != ng || h.matrix.cols() != ng) {
    throw DimensionError("build_phase2: H must be " + std::to_string(ng) + "x" + std::to_string(ng));
  }
  CholeskySplit split;
  for (std::size_t a = 0; a < na; ++a) {
    const CMatrix& A = p.a_blocks[a];
    if (!options.force_nonhpd) {
      std::optional<CholeskyOutcome> chol;
      double t = timed([&] { chol.emplace(potrf_lower(p.t_aa[a])); });
      // A failed attempt is logged with m = 0: only successful
      // factorizations are charged in the flop model.
      ledger.record(KernelKind::Potrf, {chol->ok() ? u64(nl) : 0, 0, 0}, t, Section::Loop2);
      if (chol->ok()) {
        CMatrix y;
        t = timed([&] { y = trmm_left_conjtrans(chol->factor(), A); });
        ledger.record(KernelKind::Trmm, {u64(nl), u64(ng), 0}, t, Section::Loop2);
        split.hpd_atoms.push_back(a);
        split.y_hpd.push(std::move(y));
        continue;
      }
    }
    CMatrix x(nl, ng);
    const double t = timed([&] { hemm_left(1.0, p.t_aa[a], A, 0.0, x); });
    ledger.record(KernelKind::Hemm, {u64(nl), u64(ng), 0}, t, Section::Loop2);
    split.nonhpd_atoms.push_back(a);
    split.x_nonhpd.push(std::move(x));
    split.a_nonhpd.push(A);
  }

  // Skip a branch's kernel entirely when no atom took it.
  if (split.x_nonhpd.count() > 0) {
    const CMatrix& a_nh = split.a_nonhpd.realize();
    const CMatrix& x_nh = split.x_nonhpd.realize();
    const auto stats = run_partitioned(GemmCall{1.0, Op::C, a_nh, Op::N, x_nh, 1.0}, h.matrix, policy);
    ledger.record(KernelKind::Gemm, {u64(ng), u64(ng), u64(a_nh.rows())}, stats.seconds,
                  Section::H2);
  }
  if (split.y_hpd.count() > 0) {
    const CMatrix& y = split.y_hpd.realize();
    const auto stats = run_partitioned(HerkCall{1.0, y, 1.0}, h.matrix, policy);
    ledger.record(KernelKind::Herk, {0, u64(ng), u64(y.rows())}, stats.seconds, Section::H3);
  }
  return split;
}

BuildOutput build_hs(const ProblemInstance& p, const ExecPolicy& policy, const BuildOptions& options) {
  validate_instance(p);
  policy.validate();

  BuildOutput out;
  const Phase1Output phase1 = build_phase1(p, out.ledger);
  out.h = h_cross(phase1.z_stack, phase1.b_stack, out.ledger, policy);
  out.s = build_s(p, out.ledger, policy);
  const CholeskySplit split = build_phase2(p, out.h, out.ledger, policy, options);
  out.split = {split.hpd_atoms.size(), split.nonhpd_atoms.size()};

  hermitian_mirror_inplace(out.h.matrix);
  out.h.fill = Fill::Full;
  hermitian_mirror_inplace(out.s.matrix);
  out.s.fill = Fill::Full;
  return out;
}

FlopLedger model_ledger(const Dims& dims, std::size_t nonhpd_count) {
  dims.validate();
  if (nonhpd_count > dims.n_atoms) throw InputError("model_ledger: nonhpd_count exceeds n_atoms");
  const auto na = u64(dims.n_atoms);
  const auto nl = u64(dims.n_l);
  const auto ng = u64(dims.n_g);
  const auto n_nh = u64(nonhpd_count);
  const auto n_hpd = na - n_nh;

  FlopLedger l;
  for (std::uint64_t a = 0; a < na; ++a) {
    l.record(KernelKind::Gemm, {nl, ng, nl}, 0.0, Section::Loop1);
    l.record(KernelKind::Hemm, {nl, ng, 0}, 0.0, Section::Loop1);
  }
  l.record(KernelKind::Her2k, {0, ng, na * nl}, 0.0, Section::H1);
  l.record(KernelKind::Herk, {0, ng, na * nl}, 0.0, Section::S1);
  l.record(KernelKind::DiagScale, {na * nl, ng, 0}, 0.0, Section::UNorm);
  l.record(KernelKind::Herk, {0, ng, na * nl}, 0.0, Section::S2);
  for (std::uint64_t a = 0; a < n_hpd; ++a) {
    l.record(KernelKind::Potrf, {nl, 0, 0}, 0.0, Section::Loop2);
    l.record(KernelKind::Trmm, {nl, ng, 0}, 0.0, Section::Loop2);
  }
  for (std::uint64_t a = 0; a < n_nh; ++a) {
    l.record(KernelKind::Potrf, {0, 0, 0}, 0.0, Section::Loop2);
    l.record(KernelKind::Hemm, {nl, ng, 0}, 0.0, Section::Loop2);
  }
  if (n_nh > 0) l.record(KernelKind::Gemm, {ng, ng, n_nh * nl}, 0.0, Section::H2);
  if (n_hpd > 0) l.record(KernelKind::Herk, {0, ng, n_hpd * nl}, 0.0, Section::H3);
  return l;
}

}  // namespace hsgen
