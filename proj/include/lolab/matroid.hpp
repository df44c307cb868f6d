#pragma once

#include <cstddef>
#include <vector>

#include "lolab/config.hpp"
#include "lolab/sequence.hpp"

namespace lolab {

/// b pairwise disjoint index sets, each selecting a basis of the ambient space.
struct BasisPacking {
  std::size_t b = 0;
  std::vector<std::vector<std::size_t>> index_sets;  // each sorted; sets sorted by first index
};

/// Exact maximum number of disjoint bases, by matroid partition with shortest
/// augmenting paths. Throws PreconditionError when k = 0 (unbounded).
BasisPacking basis_packing_number(const VectorSequence& a, const ExecConfig& cfg = default_config());

/// Repeatedly takes the first basis available among the unused indices; a lower bound.
BasisPacking greedy_basis_packing(const VectorSequence& a);

/// True when the sets are disjoint, in range, and each is a basis of F^k.
bool verify_packing(const VectorSequence& a, const BasisPacking& p);

struct SubspaceDrop {
  std::vector<ExactVector> subspace;  // basis of V' in ambient coordinates; empty for {0}
  std::vector<std::size_t> indices;   // I_0, sorted
  BasisPacking packing;               // bases of V' inside A[I_0], indices into A
  std::size_t levels = 0;             // number of dimension drops
};

/// Keeps removing a maximum packing and restricting to the span of what is left
/// until the packing in the current space reaches b. Requires nonzero vectors and
/// n - (b-1)k(k+1)/2 >= 0.
SubspaceDrop drop_to_subspace(const VectorSequence& a, std::size_t b, const ExecConfig& cfg = default_config());

/// Checks containment in V', the size bound and the packing witness.
bool verify_drop(const VectorSequence& a, std::size_t b, const SubspaceDrop& d);

}  // namespace lolab
