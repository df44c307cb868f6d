#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "lolab/algebra.hpp"

namespace lolab {

struct FinitePointSet {
  std::size_t k = 0;
  std::vector<ExactVector> points;
};

/// Linear subspace given by a spanning set; membership uses the quotient map.
struct SubspaceSet {
  std::size_t k = 0;
  std::vector<ExactVector> basis;
  ExactMatrix quotient;  // kernel is exactly span(basis)

  SubspaceSet(std::size_t k, std::vector<ExactVector> spanning);
};

class MembershipSet;

/// base + shift
struct TranslatedSet {
  std::shared_ptr<const MembershipSet> base;
  ExactVector shift;
};

/// Target set S for P[X in S]: finite points, a variety, a subspace, or a translate.
class MembershipSet {
 public:
  using Value = std::variant<FinitePointSet, Variety, SubspaceSet, TranslatedSet>;

  MembershipSet(FinitePointSet s);
  MembershipSet(Variety v);
  MembershipSet(SubspaceSet s);
  MembershipSet(TranslatedSet t);

  static MembershipSet points(std::size_t k, std::vector<ExactVector> pts) { return FinitePointSet{k, std::move(pts)}; }
  static MembershipSet empty(std::size_t k) { return FinitePointSet{k, {}}; }

  std::size_t k() const;
  bool contains(const ExactVector& x) const;
  /// S + x
  MembershipSet translated(const ExactVector& x) const;
  /// True only for a finite point set with no points.
  bool is_empty_set() const;
  const Value& value() const { return value_; }
  std::string kind() const;

 private:
  Value value_;
};

}  // namespace lolab
