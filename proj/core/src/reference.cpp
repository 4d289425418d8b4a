#include "hsgen/reference.hpp"

namespace hsgen {

HermitianResult s_reference(const ProblemInstance& p) {
  const std::size_t ng = p.dims.n_g;
  const std::size_t nl = p.dims.n_l;
  CMatrix s(ng, ng);
  for (std::size_t a = 0; a < p.dims.n_atoms; ++a) {
    const CMatrix& A = p.a_blocks[a];
    const CMatrix& B = p.b_blocks[a];
    const auto& u = p.u_norms[a];
    for (std::size_t g = 0; g < ng; ++g) {
      for (std::size_t gp = 0; gp < ng; ++gp) {
        Complex acc{0.0, 0.0};
        for (std::size_t l = 0; l < nl; ++l) {
          const Complex ub_p = u[l] * B(l, gp);
          const Complex ub = u[l] * B(l, g);
          acc += std::conj(A(l, gp)) * A(l, g) + std::conj(ub_p) * ub;
        }
        s(gp, g) += acc;
      }
    }
  }
  return {std::move(s), Fill::Full};
}

HermitianResult h_reference(const ProblemInstance& p) {
  const std::size_t ng = p.dims.n_g;
  const std::size_t nl = p.dims.n_l;
  CMatrix h(ng, ng);
  for (std::size_t a = 0; a < p.dims.n_atoms; ++a) {
    const CMatrix& A = p.a_blocks[a];
    const CMatrix& B = p.b_blocks[a];
    const CMatrix& taa = p.t_aa[a];
    const CMatrix& tab = p.t_ab[a];
    const CMatrix& tbb = p.t_bb[a];
    for (std::size_t g = 0; g < ng; ++g) {
      for (std::size_t gp = 0; gp < ng; ++gp) {
        Complex acc{0.0, 0.0};
        for (std::size_t lp = 0; lp < nl; ++lp) {
          const Complex ca = std::conj(A(lp, gp));
          const Complex cb = std::conj(B(lp, gp));
          for (std::size_t l = 0; l < nl; ++l) {
            const Complex tba = std::conj(tab(l, lp));
            acc += ca * taa(lp, l) * A(l, g) + ca * tab(lp, l) * B(l, g) +
                   cb * tba * A(l, g) + cb * tbb(lp, l) * B(l, g);
          }
        }
        h(gp, g) += acc;
      }
    }
  }
  return {std::move(h), Fill::Full};
}

}  // namespace hsgen
