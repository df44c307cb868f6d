#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lolab/concentration.hpp"
#include "lolab/config.hpp"
#include "lolab/membership.hpp"

namespace lolab {

using IndexSet = std::vector<std::size_t>;

/// Disjoint blocks covering [n].
struct Partition {
  std::vector<IndexSet> blocks;

  /// Throws std::invalid_argument unless the blocks are disjoint and cover 0..n-1.
  void validate(std::size_t n) const;
};

struct DecouplingResult {
  mpq_class event;  // P(E)
  mpq_class lhs;    // P(E)^2
  mpq_class rhs;    // P(E and E') = E_Y[q_Y^2]
  bool pass = false;
};

/// E = {X + Y in S - x} with X summing over I0 and Y over the rest; E' uses an
/// independent copy of X and the same Y.
DecouplingResult decoupling_check(const VectorSequence& a, const IndexSet& i0, const MembershipSet& s,
                                  const ExactVector& x, const ExecConfig& cfg = default_config());

enum class Completeness { Verified, BoundWithCaveat };
std::string to_string(Completeness c);

struct PlaneCurveLines {
  std::vector<SparsePoly> lines;  // linear factors, leading coefficient 1
  bool complete = false;          // every linear factor over Q(i) is listed
};

/// Linear components of a plane curve of degree <= 4 found by exact division
/// against lines through pairs of low-height rational points on the curve.
PlaneCurveLines lines_in_plane_curve(const SparsePoly& f);

/// Same for a curve given as a product of factors; complete when every factor has degree <= 2.
PlaneCurveLines lines_in_plane_curve(const std::vector<SparsePoly>& factors);

struct IteratedDecouplingResult {
  mpq_class lhs;            // max over translates of P[X in S + x]
  ExactVector best_shift;
  mpq_class rho_max;        // max over blocks and candidate subspaces of rho(A_i, V)
  double rhs = 0;           // (l+1) d rho_max^(1/2^l)
  bool pass = false;        // exact: (lhs / ((l+1) d))^(2^l) <= rho_max
  Completeness status = Completeness::BoundWithCaveat;
};

/// The partition must have l + 1 blocks for the declared dimension l of S. The
/// zero subspace is always a candidate. Status is Verified when l = 0, when
/// `declared_complete` is set, or when S is a plane curve whose line search is
/// complete and every line direction is a candidate.
IteratedDecouplingResult iterated_decoupling_bound(const VectorSequence& a, const Partition& partition,
                                                   const Variety& s, const std::vector<ExactVector>& translates,
                                                   const std::vector<std::vector<ExactVector>>& subspaces,
                                                   bool declared_complete = false,
                                                   const ExecConfig& cfg = default_config());

struct StructureCertificate {
  std::vector<ExactVector> u_basis;
  std::vector<ExactVector> w_basis;
  Variety s_prime;                    // in coordinates of w_basis
  IndexSet surviving;                 // indices of A' in A
  mpq_class delta, c, c1;
  std::vector<ExactVector> witness;   // ambient points of pi_W^-1(S') for sampled containment
  std::vector<ExactVector> translates;
};

struct StructureReport {
  std::size_t packing = 0;
  mpq_class packing_threshold;  // delta / (2 (2k)^k) * n
  bool condition1 = false;
  mpq_class rho_projected;      // rho(pi_W(A'))
  bool condition2 = false;      // rho_projected >= n^-C
  bool condition3a = false;
  std::string containment;      // "symbolic" or "sampled"
  mpq_class escape;             // max over translates of P[X' in (S minus pi_W^-1(S')) + x]
  bool condition3b = false;     // escape <= n^-C1
  bool pass = false;
};

/// Throws PreconditionError naming the broken invariant when U + W is not a direct sum equal to F^k.
StructureReport structure_certificate_check(const VectorSequence& a, const StructureCertificate& cert,
                                            const Variety& s, const ExecConfig& cfg = default_config());

struct HalaszResult {
  mpq_class t;       // (1/s) sum of block ranks
  mpq_class base;    // 2^-s C(s, s/2)
  double bound = 0;  // base^t
  mpq_class rho;
  bool pass = false;      // exact: rho^q <= base^p for t = p/q
  bool equality = false;
};

/// Requires real vectors and an even number of blocks.
HalaszResult halasz_check(const VectorSequence& a, const Partition& partition,
                          const ExecConfig& cfg = default_config());

/// x >= n^(-e) for rational e and positive integer n, decided exactly.
bool at_least_power(const mpq_class& x, std::size_t n, const mpq_class& e);

}  // namespace lolab
