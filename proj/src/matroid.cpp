#include "lolab/matroid.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>

#include "lolab/errors.hpp"

namespace lolab {

namespace {

constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

bool is_basis(const VectorSequence& a, const std::vector<std::size_t>& idx) {
  if (idx.size() != a.k()) return false;
  std::vector<ExactVector> cols;
  for (auto i : idx) cols.push_back(a[i]);
  return rank(ExactMatrix::from_rows(cols, a.k())) == a.k();
}

// Matroid partition state: `owner[e]` is the set holding element e.
class Partition {
 public:
  Partition(const VectorSequence& a, std::size_t sets) : a_(a), owner_(a.size(), kUnassigned), members_(sets) {}

  void add_set() { members_.emplace_back(); }
  std::size_t covered() const {
    std::size_t c = 0;
    for (const auto& m : members_) c += m.size();
    return c;
  }
  const std::vector<std::vector<std::size_t>>& members() const { return members_; }

  /// Circuit of members_[j] + y minus y, or nullopt when members_[j] + y stays independent.
  std::optional<std::vector<std::size_t>> circuit(std::size_t j, std::size_t y) const {
    const auto& m = members_[j];
    auto coords = solve_linear(ExactMatrix::from_columns(columns(j), a_.k()), a_[y]);
    if (!coords) return std::nullopt;
    std::vector<std::size_t> c;
    for (std::size_t t = 0; t < m.size(); ++t)
      if (!(*coords)[t].is_zero()) c.push_back(m[t]);
    return c;
  }

  /// One shortest augmenting path from any unassigned element; false when none exists.
  bool augment() {
    const std::size_t n = a_.size();
    std::vector<std::size_t> parent(n, kUnassigned), via(n, kUnassigned);
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue;
    for (std::size_t e = 0; e < n; ++e)
      if (owner_[e] == kUnassigned && !is_zero(a_[e])) {
        seen[e] = true;
        queue.push_back(e);
      }
    while (!queue.empty()) {
      std::size_t y = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < members_.size(); ++j) {
        if (owner_[y] == j) continue;
        auto c = circuit(j, y);
        if (!c) {
          apply(y, j, parent, via);
          return true;
        }
        for (auto z : *c) {
          if (seen[z]) continue;
          seen[z] = true;
          parent[z] = y;
          via[z] = j;
          queue.push_back(z);
        }
      }
    }
    return false;
  }

 private:
  std::vector<ExactVector> columns(std::size_t j) const {
    std::vector<ExactVector> cols;
    for (auto e : members_[j]) cols.push_back(a_[e]);
    return cols;
  }

  void move(std::size_t e, std::size_t to) {
    if (owner_[e] != kUnassigned) {
      auto& from = members_[owner_[e]];
      from.erase(std::find(from.begin(), from.end(), e));
    }
    owner_[e] = to;
    members_[to].push_back(e);
  }

  // The last element enters `last_set`; each earlier element enters the set its successor leaves.
  void apply(std::size_t y, std::size_t last_set, const std::vector<std::size_t>& parent,
             const std::vector<std::size_t>& via) {
    std::size_t target = last_set;
    std::size_t e = y;
    while (true) {
      move(e, target);
      if (parent[e] == kUnassigned) break;
      target = via[e];
      e = parent[e];
    }
  }

  const VectorSequence& a_;
  std::vector<std::size_t> owner_;
  std::vector<std::vector<std::size_t>> members_;
};

BasisPacking canonical(std::vector<std::vector<std::size_t>> sets) {
  for (auto& s : sets) std::sort(s.begin(), s.end());
  std::sort(sets.begin(), sets.end());
  return {sets.size(), std::move(sets)};
}

}  // namespace

BasisPacking basis_packing_number(const VectorSequence& a, const ExecConfig&) {
  const std::size_t k = a.k();
  if (k == 0) throw PreconditionError("basis packing in the zero space is unbounded");
  if (rank(ExactMatrix::from_rows(a.vectors(), k)) < k) return {};
  Partition part(a, 0);
  std::vector<std::vector<std::size_t>> best;
  for (std::size_t b = 1; b * k <= a.size(); ++b) {
    part.add_set();
    while (part.covered() < b * k && part.augment()) {
    }
    if (part.covered() < b * k) break;
    best = part.members();
  }
  return canonical(std::move(best));
}

BasisPacking greedy_basis_packing(const VectorSequence& a) {
  const std::size_t k = a.k();
  if (k == 0) throw PreconditionError("basis packing in the zero space is unbounded");
  std::vector<bool> used(a.size(), false);
  std::vector<std::vector<std::size_t>> sets;
  while (true) {
    std::vector<std::size_t> chosen;
    std::vector<ExactVector> rows;
    for (std::size_t i = 0; i < a.size() && chosen.size() < k; ++i) {
      if (used[i]) continue;
      rows.push_back(a[i]);
      if (rank(ExactMatrix::from_rows(rows, k)) == rows.size()) chosen.push_back(i);
      else rows.pop_back();
    }
    if (chosen.size() < k) break;
    for (auto i : chosen) used[i] = true;
    sets.push_back(std::move(chosen));
  }
  return canonical(std::move(sets));
}

bool verify_packing(const VectorSequence& a, const BasisPacking& p) {
  if (p.index_sets.size() != p.b) return false;
  std::set<std::size_t> seen;
  for (const auto& s : p.index_sets) {
    for (auto i : s)
      if (i >= a.size() || !seen.insert(i).second) return false;
    if (!is_basis(a, s)) return false;
  }
  return true;
}

SubspaceDrop drop_to_subspace(const VectorSequence& a, std::size_t b, const ExecConfig& cfg) {
  const std::size_t k = a.k();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (is_zero(a[i])) throw PreconditionError("drop_to_subspace: vector " + std::to_string(i) + " is zero");
  const long long removable = b == 0 ? 0 : static_cast<long long>((b - 1) * k * (k + 1) / 2);
  if (static_cast<long long>(a.size()) < removable)
    throw PreconditionError("drop_to_subspace: n - (b-1)k(k+1)/2 is negative");

  SubspaceDrop out;
  std::vector<ExactVector> basis;
  for (std::size_t i = 0; i < k; ++i) basis.push_back(unit_vector(k, i));
  std::vector<std::size_t> alive(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) alive[i] = i;

  while (true) {
    const std::size_t dim = basis.size();
    if (dim == 0) {
      // Only the zero space is left; the empty set is a basis of it b times over.
      out.packing = {b, std::vector<std::vector<std::size_t>>(b)};
      break;
    }
    // Coordinates of the surviving vectors in the current basis.
    ExactMatrix to_coords = ExactMatrix::from_columns(basis, k);
    std::vector<ExactVector> coords;
    for (auto i : alive) coords.push_back(*solve_linear(to_coords, a[i]));
    VectorSequence local(dim, coords);
    BasisPacking p = basis_packing_number(local, cfg);
    auto to_global = [&](BasisPacking q) {
      for (auto& s : q.index_sets)
        for (auto& i : s) i = alive[i];
      return q;
    };
    if (p.b >= b) {
      out.packing = to_global(std::move(p));
      break;
    }
    std::vector<bool> removed(alive.size(), false);
    for (const auto& s : p.index_sets)
      for (auto i : s) removed[i] = true;
    std::vector<std::size_t> rest;
    std::vector<ExactVector> rest_vectors;
    for (std::size_t t = 0; t < alive.size(); ++t)
      if (!removed[t]) {
        rest.push_back(alive[t]);
        rest_vectors.push_back(a[alive[t]]);
      }
    basis = span_basis(rest_vectors, k);
    if (basis.size() >= dim) throw std::logic_error("drop_to_subspace: leftover vectors still span the space");
    alive = std::move(rest);
    ++out.levels;
  }
  out.subspace = basis;
  out.indices = alive;
  return out;
}

bool verify_drop(const VectorSequence& a, std::size_t b, const SubspaceDrop& d) {
  const std::size_t k = a.k();
  const long long bound = static_cast<long long>(a.size()) - (b == 0 ? 0 : static_cast<long long>((b - 1) * k * (k + 1) / 2));
  if (static_cast<long long>(d.indices.size()) < bound) return false;
  if (!std::is_sorted(d.indices.begin(), d.indices.end())) return false;
  for (auto i : d.indices)
    if (i >= a.size() || !in_span(d.subspace, a[i], k)) return false;
  if (rank(ExactMatrix::from_rows(d.subspace, k)) != d.subspace.size()) return false;
  if (d.packing.b < b || d.packing.index_sets.size() != d.packing.b) return false;
  std::set<std::size_t> members(d.indices.begin(), d.indices.end()), used;
  for (const auto& s : d.packing.index_sets) {
    if (s.size() != d.subspace.size()) return false;
    std::vector<ExactVector> rows;
    for (auto i : s) {
      if (!members.count(i) || !used.insert(i).second) return false;
      rows.push_back(a[i]);
    }
    if (rank(ExactMatrix::from_rows(rows, k)) != s.size()) return false;
  }
  return true;
}

}  // namespace lolab
