#include "lolab/membership.hpp"

#include <algorithm>
#include <stdexcept>

namespace lolab {

SubspaceSet::SubspaceSet(std::size_t k_, std::vector<ExactVector> spanning)
    : k(k_), basis(span_basis(spanning, k_)), quotient(quotient_map(basis, k_)) {}

namespace {

void check_points(const FinitePointSet& s) {
  for (const auto& p : s.points)
    if (p.size() != s.k) throw std::invalid_argument("point set member has the wrong dimension");
}

}  // namespace

MembershipSet::MembershipSet(FinitePointSet s) : value_(std::move(s)) {
  check_points(std::get<FinitePointSet>(value_));
}
MembershipSet::MembershipSet(Variety v) : value_(std::move(v)) {
  for (const auto& p : std::get<Variety>(value_).polys)
    if (p.nvars() != std::get<Variety>(value_).k) throw std::invalid_argument("variety polynomial has the wrong arity");
}
MembershipSet::MembershipSet(SubspaceSet s) : value_(std::move(s)) {}
MembershipSet::MembershipSet(TranslatedSet t) : value_(std::move(t)) {
  const auto& ts = std::get<TranslatedSet>(value_);
  if (!ts.base) throw std::invalid_argument("translated set without a base");
  if (ts.shift.size() != ts.base->k()) throw std::invalid_argument("shift has the wrong dimension");
}

std::size_t MembershipSet::k() const {
  return std::visit(
      [](const auto& s) -> std::size_t {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TranslatedSet>) return s.base->k();
        else return s.k;
      },
      value_);
}

bool MembershipSet::contains(const ExactVector& x) const {
  if (x.size() != k()) throw std::invalid_argument("point dimension does not match set");
  return std::visit(
      [&](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FinitePointSet>) {
          return std::find(s.points.begin(), s.points.end(), x) != s.points.end();
        } else if constexpr (std::is_same_v<T, Variety>) {
          return s.contains(x);
        } else if constexpr (std::is_same_v<T, SubspaceSet>) {
          return is_zero(s.quotient * x);
        } else {
          return s.base->contains(x - s.shift);
        }
      },
      value_);
}

MembershipSet MembershipSet::translated(const ExactVector& x) const {
  if (x.size() != k()) throw std::invalid_argument("shift has the wrong dimension");
  if (const auto* f = std::get_if<FinitePointSet>(&value_)) {
    FinitePointSet out{f->k, {}};
    for (const auto& p : f->points) out.points.push_back(p + x);
    return out;
  }
  if (const auto* t = std::get_if<TranslatedSet>(&value_)) return TranslatedSet{t->base, t->shift + x};
  return TranslatedSet{std::make_shared<const MembershipSet>(*this), x};
}

bool MembershipSet::is_empty_set() const {
  if (const auto* f = std::get_if<FinitePointSet>(&value_)) return f->points.empty();
  if (const auto* t = std::get_if<TranslatedSet>(&value_)) return t->base->is_empty_set();
  return false;
}

std::string MembershipSet::kind() const {
  static const char* names[] = {"points", "variety", "subspace", "translate"};
  return names[value_.index()];
}

}  // namespace lolab
