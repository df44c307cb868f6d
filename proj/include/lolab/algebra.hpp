#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lolab/polynomial.hpp"
#include "lolab/sequence.hpp"

namespace lolab {

/// Common zero set of finitely many polynomials in F^k, with optional declared
/// dimension and degree. No polynomials (or only zero polynomials) means F^k.
struct Variety {
  std::size_t k = 0;
  std::vector<SparsePoly> polys;
  std::optional<int> declared_dim;
  std::optional<int> declared_deg;

  static Variety hypersurface(const SparsePoly& f, std::optional<int> dim = {}, std::optional<int> deg = {});
  bool contains(const ExactVector& x) const;
  bool is_whole_space() const;
  /// Preimage under x -> M x + s, i.e. {x : M x + s in this}; M is k x r.
  Variety pullback(const ExactMatrix& m, const ExactVector& shift) const;
};

/// F(t) = f(L_1(t), ..., L_k(t)) with homogeneous linear forms L_i in n variables.
struct ChowRepresentation {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<ExactVector> forms;  // forms[i][j] = coefficient of t_j in L_i
  SparsePoly outer;                // polynomial in k variables

  void validate() const;
};

SparsePoly expand_chow(const ChowRepresentation& r, std::size_t max_terms = 1'000'000);

struct VectorReduction {
  VectorSequence vectors;  // a_j = (coefficient of t_j in L_1, ..., in L_k)
  Variety variety;         // {x : f(x) = 0}
};

/// F(xi) = 0 iff xi_1 a_1 + ... + xi_n a_n lies in {f = 0}.
VectorReduction reduction_to_vectors(const ChowRepresentation& r);

/// Sign assignment for a subset of variables: (variable index, +1 or -1).
using SignAssignment = std::vector<std::pair<std::size_t, int>>;

/// Substitutes +-1 for the assigned variables; the result keeps all n variables
/// (assigned ones no longer occur).
SparsePoly substitute_pm1(const SparsePoly& f, const SignAssignment& assignment);

struct RobustnessReport {
  bool robust = true;
  std::optional<SignAssignment> zeroing_assignment;
  std::uint64_t substitutions_checked = 0;
};

/// True iff no +-1 substitution into fewer than b variables makes f identically zero.
RobustnessReport robust_dependence_check(const SparsePoly& f, std::size_t b,
                                         std::uint64_t max_substitutions = 50'000'000);

/// Basis of {v : sum_i v_i df/dx_i == 0}; each v satisfies f(x + v) == f(x).
std::vector<ExactVector> invariance_subspace(const SparsePoly& f);

enum class QuadricType { Reducible, Irreducible };

struct QuadricReport {
  QuadricType type;
  std::size_t rank;       // rank of the homogenized symmetric matrix
  ExactMatrix symmetric;  // (k+1) x (k+1)
};

/// Rank criterion on the homogenized symmetric matrix: reducible over C iff rank <= 2.
QuadricReport quadric_reducibility(const SparsePoly& f);

/// T = {f = 0, conj(f) = 0} after scaling f so its leading coefficient is 1.
/// Throws PreconditionError when the scaled f has only real coefficients.
Variety galois_pair_variety(const SparsePoly& f);

/// Number of stored terms, optionally restricted to one total degree.
std::size_t nonzero_coefficient_count(const SparsePoly& f, std::optional<std::uint32_t> degree = {});

}  // namespace lolab
