#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lolab/config.hpp"
#include "lolab/membership.hpp"

namespace lolab {

/// N_S(B) for an integer bound B: integer points of S in [-B, B]^k.
struct CountReport {
  std::int64_t bound = 0;
  std::uint64_t count = 0;
  std::string map = "identity";
  std::string strategy;
  std::uint64_t points_scanned = 0;
  double seconds = 0;
};

/// Box enumeration, last coordinate innermost, slabs of the first coordinate
/// split across workers. Finite point sets are counted directly.
CountReport count_lattice_points(const MembershipSet& s, std::int64_t bound, const ExecConfig& cfg = default_config());

/// Second strategy for varieties: solves one defining polynomial for a variable
/// of least positive degree and scans the remaining coordinates. nullopt when
/// no polynomial is nonconstant.
std::optional<CountReport> count_lattice_points_solved(const Variety& v, std::int64_t bound,
                                                       const ExecConfig& cfg = default_config());

/// phi(x) = M x + shift with invertible M.
struct AffineMap {
  ExactMatrix matrix;
  ExactVector shift;
  std::string label;

  static AffineMap identity(std::size_t k);
  static AffineMap translation(const ExactVector& shift);
};

struct AffineMapFamily {
  std::vector<AffineMap> maps;

  /// identity, then `extra`, then every integer translation in [-range, range]^k other than 0.
  static AffineMapFamily standard(std::size_t k, std::int64_t translate_range, std::vector<AffineMap> extra = {});
};

/// phi(S) for a variety (pullback along phi^-1) or a finite point set.
MembershipSet image(const MembershipSet& s, const AffineMap& phi);

struct DensityReport {
  mpq_class density;  // max over the family of N_{phi(S)}(B) / (2B+1)^k
  std::uint64_t best_count = 0;
  std::string best_map;
  std::vector<std::uint64_t> counts;  // per map, family order
};

/// Certified lower bound on d_S(B) over a finite family of maps.
DensityReport density_lower_bound(const MembershipSet& s, std::int64_t bound, const AffineMapFamily& family,
                                  const ExecConfig& cfg = default_config());

struct SchwartzZippelReport {
  std::uint64_t count = 0;
  mpz_class limit;  // d (2B+1)^l
  bool pass = false;
};

/// N_S(B) <= d (2B+1)^l with the declared dimension l and degree d.
SchwartzZippelReport schwartz_zippel_check(const Variety& v, std::int64_t bound,
                                           const ExecConfig& cfg = default_config());

struct SlicingReport {
  std::uint64_t lifted = 0;  // N_{p^-1(S)}(B) in F^r
  std::uint64_t base = 0;    // N_S(B) in F^k
  mpz_class factor;          // (2B+1)^(r-k)
  bool pass = false;
};

/// p : F^r -> F^k keeps the first k coordinates.
SlicingReport slicing_identity_check(const Variety& v, std::int64_t bound, std::size_t r,
                                     const ExecConfig& cfg = default_config());

}  // namespace lolab
