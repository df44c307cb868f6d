#include <doctest.h>

#include "lolab/errors.hpp"
#include "lolab/matroid.hpp"
#include "support/oracles.hpp"

using namespace lolab;

namespace {

ExactVector v2(long a, long b) { return {GaussianRational(a), GaussianRational(b)}; }

bool drop_size_bound(std::size_t n, std::size_t k, std::size_t b, std::size_t kept) {
  const auto removed = static_cast<long>((b - 1) * k * (k + 1) / 2);
  return static_cast<long>(kept) >= static_cast<long>(n) - removed;
}

}  // namespace

TEST_SUITE("matroid") {
  TEST_CASE("packing examples") {
    std::vector<ExactVector> v;
    for (int c = 0; c < 2; ++c)
      for (std::size_t i = 0; i < 3; ++i) v.push_back(unit_vector(3, i));
    auto p = basis_packing_number(VectorSequence(3, v));
    CHECK(p.b == 2);
    CHECK(verify_packing(VectorSequence(3, v), p));
    CHECK(basis_packing_number(VectorSequence(2, {v2(1, 0), v2(1, 0), v2(0, 1)})).b == 1);
    CHECK(basis_packing_number(VectorSequence(2, {v2(1, 2), v2(2, 4), v2(-1, -2)})).b == 0);
    CHECK_THROWS_AS(basis_packing_number(VectorSequence(0, {})), PreconditionError);
  }

  TEST_CASE("packing matches exhaustive search") {
    oracle::Random r(13);
    for (int t = 0; t < 150; ++t) {
      auto k = static_cast<std::size_t>(r.integer(1, 3));
      auto a = r.sequence(static_cast<std::size_t>(r.integer(0, 10)), k, -1, 1);
      auto p = basis_packing_number(a);
      CHECK(p.b == oracle::packing(a));
      CHECK(verify_packing(a, p));
      auto g = greedy_basis_packing(a);
      CHECK(verify_packing(a, g));
      CHECK(g.b <= p.b);
      for (const auto& s : p.index_sets) CHECK(std::is_sorted(s.begin(), s.end()));
    }
  }

  TEST_CASE("packing is monotone under subsequences") {
    oracle::Random r(17);
    for (int t = 0; t < 60; ++t) {
      auto a = r.sequence(10, 2, -2, 2);
      auto sub = a.subsequence(r.subset(10));
      CHECK(basis_packing_number(sub).b <= basis_packing_number(a).b);
    }
  }

  TEST_CASE("verify_packing rejects bad witnesses") {
    VectorSequence a(2, {v2(1, 0), v2(0, 1), v2(1, 1), v2(2, 2)});
    CHECK(!verify_packing(a, BasisPacking{2, {{0, 1}, {2, 3}}}));
    CHECK(!verify_packing(a, BasisPacking{2, {{0, 1}, {1, 2}}}));
    CHECK(verify_packing(a, BasisPacking{1, {{0, 1}}}));
  }

  TEST_CASE("drop examples") {
    auto collinear = VectorSequence::copies(v2(1, 0), 5);
    auto d = drop_to_subspace(collinear, 2);
    REQUIRE(d.subspace.size() == 1);
    CHECK(in_span(d.subspace, v2(1, 0), 2));
    CHECK(d.indices.size() == 5);
    CHECK(d.packing.b == 5);
    CHECK(verify_drop(collinear, 2, d));

    VectorSequence full(2, {v2(1, 0), v2(0, 1), v2(1, 1), v2(1, -1)});
    auto e = drop_to_subspace(full, 2);
    CHECK(e.subspace.size() == 2);
    CHECK(e.indices.size() == 4);
    CHECK(e.levels == 0);

    VectorSequence small(2, {v2(1, 0), v2(1, 0), v2(1, 1)});
    auto f = drop_to_subspace(small, 2);
    CHECK(verify_drop(small, 2, f));
    CHECK(f.subspace.size() < 2);
    CHECK(drop_size_bound(3, 2, 2, f.indices.size()));

    CHECK_THROWS_AS(drop_to_subspace(VectorSequence(2, {v2(0, 0), v2(1, 0)}), 1), PreconditionError);
    CHECK_THROWS_AS(drop_to_subspace(VectorSequence(2, {v2(1, 0), v2(0, 1)}), 3), PreconditionError);
  }

  TEST_CASE("drop invariants on random sequences") {
    oracle::Random r(19);
    for (int t = 0; t < 80; ++t) {
      auto k = static_cast<std::size_t>(r.integer(1, 3));
      const std::size_t b = static_cast<std::size_t>(r.integer(1, 3));
      const std::size_t n = (b - 1) * k * (k + 1) / 2 + static_cast<std::size_t>(r.integer(1, 6));
      auto a = r.sequence(n, k, -1, 1, true);
      auto d = drop_to_subspace(a, b);
      CHECK(verify_drop(a, b, d));
      CHECK(drop_size_bound(n, k, b, d.indices.size()));
      CHECK(d.packing.b >= b);
      for (auto i : d.indices) CHECK(in_span(d.subspace, a[i], k));
    }
  }
}
