#pragma once

#include "hsgen/matrix.hpp"
#include "hsgen/probgen.hpp"

namespace hsgen {

// Brute-force H and S straight from the per-index sums. Shares no code with
// the kernels or the builder. Meant for desk-scale instances (n_g <= 512).

/// S(g',g) = sum_a sum_l conj(A(l,g')) A(l,g) + |u_l|^2 conj(B(l,g')) B(l,g)
HermitianResult s_reference(const ProblemInstance& p);

/// H(g',g) = sum_a sum_{L',L} conj(A(L',g')) Taa(L',L) A(L,g)
///         + conj(A(L',g')) Tab(L',L) B(L,g) + conj(B(L',g')) conj(Tab(L,L')) A(L,g)
///         + conj(B(L',g')) Tbb(L',L) B(L,g)
HermitianResult h_reference(const ProblemInstance& p);

}  // namespace hsgen
