#include <doctest.h>

#include "lolab/gaussian_rational.hpp"
#include "lolab/linalg.hpp"
#include "lolab/polynomial.hpp"
#include "support/oracles.hpp"

using namespace lolab;

namespace {

ExactMatrix rows(const std::vector<std::vector<long>>& r) {
  std::vector<ExactVector> v;
  for (const auto& row : r) {
    ExactVector x;
    for (long c : row) x.emplace_back(c);
    v.push_back(x);
  }
  return ExactMatrix::from_rows(v, r.empty() ? 0 : r[0].size());
}

}  // namespace

TEST_SUITE("exactmath") {
  TEST_CASE("canonical form and field axioms") {
    GaussianRational a(mpq_class(2, 4), mpq_class(-6, 8));
    CHECK(a.re() == mpq_class(1, 2));
    CHECK(a.im() == mpq_class(-3, 4));
    CHECK(a.re().get_den() == 2);
    CHECK(GaussianRational(3, -6) == GaussianRational(-1, 2));
    oracle::Random r(7);
    for (int t = 0; t < 200; ++t) {
      GaussianRational x(mpq_class(r.integer(-9, 9), r.integer(1, 9)), mpq_class(r.integer(-9, 9), r.integer(1, 9)));
      GaussianRational y(mpq_class(r.integer(-9, 9), r.integer(1, 9)), mpq_class(r.integer(-9, 9), r.integer(1, 9)));
      CHECK((x + y) - y == x);
      if (!y.is_zero()) CHECK((x * y) / y == x);
    }
    CHECK_THROWS_AS(GaussianRational(1) / GaussianRational(0), std::domain_error);
  }

  TEST_CASE("parse and print round trip") {
    for (const char* s : {"0", "3", "-7/2", "1/2+3/4*i", "-5*i", "i", "-i", "2-1/3*i"}) {
      auto x = GaussianRational::parse(s);
      CHECK(GaussianRational::parse(x.str()) == x);
      CHECK(GaussianRational::parse(x.str()).str() == x.str());
    }
    CHECK(GaussianRational::parse("1/2+3/4*i") == GaussianRational(mpq_class(1, 2), mpq_class(3, 4)));
    CHECK(GaussianRational::parse("4/6").str() == "2/3");
    CHECK_THROWS(GaussianRational::parse("x"));
    CHECK_THROWS(GaussianRational::parse("1/0"));
  }

  TEST_CASE("rank examples") {
    CHECK(rank(ExactMatrix::identity(3)) == 3);
    CHECK(rank(ExactMatrix(3, 4)) == 0);
    CHECK(rank(rows({{1, 2}, {2, 4}})) == 1);
    ExactMatrix m(2, 2);
    m(0, 0) = GaussianRational::imaginary_unit();
    m(0, 1) = 1;
    m(1, 0) = 1;
    m(1, 1) = -GaussianRational::imaginary_unit();
    CHECK(rank(m) == 1);  // second row is -i times the first
  }

  TEST_CASE("kernel examples") {
    auto k1 = kernel_basis(rows({{1, 1}}));
    REQUIRE(k1.size() == 1);
    CHECK(k1[0][0] == -k1[0][1]);
    CHECK(!k1[0][0].is_zero());
    CHECK(kernel_basis(ExactMatrix::identity(3)).empty());
    auto k3 = kernel_basis(rows({{1, 0, 0}, {0, 1, 0}}));
    REQUIRE(k3.size() == 1);
    CHECK(k3[0][0].is_zero());
    CHECK(k3[0][1].is_zero());
    CHECK(!k3[0][2].is_zero());
  }

  TEST_CASE("solve examples") {
    auto x = solve_linear(ExactMatrix::identity(2), {GaussianRational(2), GaussianRational(3)});
    REQUIRE(x);
    CHECK(*x == ExactVector{GaussianRational(2), GaussianRational(3)});
    auto y = solve_linear(rows({{1, 1}}), {GaussianRational(2)});
    REQUIRE(y);
    CHECK((*y)[0] + (*y)[1] == GaussianRational(2));
    CHECK(!solve_linear(rows({{1, 0}, {1, 0}}), {GaussianRational(0), GaussianRational(1)}));
  }

  TEST_CASE("rank-nullity, solve and rank oracle on random matrices") {
    oracle::Random r(11);
    for (int t = 0; t < 300; ++t) {
      const auto nr = static_cast<std::size_t>(r.integer(1, 5)), nc = static_cast<std::size_t>(r.integer(1, 5));
      std::vector<ExactVector> rs;
      for (std::size_t i = 0; i < nr; ++i) {
        ExactVector v;
        for (std::size_t j = 0; j < nc; ++j)
          v.push_back(GaussianRational(mpq_class(r.integer(-3, 3)), mpq_class(r.integer(0, 3) == 0 ? r.integer(-2, 2) : 0)));
        rs.push_back(v);
      }
      if (r.integer(0, 2) == 0 && nr > 1) rs[1] = rs[0];
      auto m = ExactMatrix::from_rows(rs, nc);
      auto kb = kernel_basis(m);
      CHECK(rank(m) + kb.size() == nc);
      CHECK(rank(m) == oracle::rank(rs));
      for (const auto& v : kb) CHECK(is_zero(m * v));
      ExactVector b;
      for (std::size_t i = 0; i < nr; ++i) b.emplace_back(r.integer(-4, 4));
      if (auto x = solve_linear(m, b)) CHECK(m * *x == b);
      ExactVector in_range = m * r.vector(nc, -3, 3);
      auto z = solve_linear(m, in_range);
      REQUIRE(z);
      CHECK(m * *z == in_range);
    }
  }

  TEST_CASE("inverse and quotient map") {
    auto m = rows({{2, 1}, {1, 1}});
    auto inv = inverse(m);
    REQUIRE(inv);
    CHECK(m * *inv == ExactMatrix::identity(2));
    CHECK(!inverse(rows({{1, 2}, {2, 4}})));
    std::vector<ExactVector> v{{GaussianRational(1), GaussianRational(1), GaussianRational(0)}};
    auto q = quotient_map(v, 3);
    CHECK(q.rows() == 2);
    CHECK(is_zero(q * v[0]));
    CHECK(kernel_basis(q).size() == 1);
    CHECK(in_span(v, {GaussianRational(3), GaussianRational(3), GaussianRational(0)}, 3));
    CHECK(!in_span(v, unit_vector(3, 2), 3));
  }

  TEST_CASE("polynomial evaluation examples") {
    SparsePoly f(2);
    f.add_term({2, 0}, 1);
    f.add_term({0, 1}, -1);
    CHECK(f.evaluate({GaussianRational(3), GaussianRational(9)}).is_zero());
    CHECK(SparsePoly(2).evaluate({GaussianRational(5), GaussianRational(1)}).is_zero());
    SparsePoly g(2);
    g.add_term({1, 1}, 1);
    CHECK(g.evaluate({GaussianRational(2), GaussianRational(1, 2)}) == GaussianRational(1));
    CHECK(f.degree() == 2);
    CHECK(SparsePoly(2).degree() == -1);
  }

  TEST_CASE("polynomial arithmetic identities") {
    auto x = SparsePoly::variable(2, 0), y = SparsePoly::variable(2, 1);
    auto p = (x + y) * (x - y);
    auto expect = x * x - y * y;
    CHECK(p == expect);
    CHECK((x + y).pow(3).term_count() == 4);
    auto q = divide_exact(p, x - y);
    REQUIRE(q);
    CHECK(*q == x + y);
    CHECK(!divide_exact(p, x + SparsePoly::constant(2, 1)));
    CHECK(p.translate({GaussianRational(1), GaussianRational(1)}) == (x + y + SparsePoly::constant(2, 2)) * (x - y));
    CHECK(p.derivative(0) == x * GaussianRational(2));
    auto h = x * x + x + SparsePoly::constant(2, 1);
    CHECK(h.homogeneous_part(2) == x * x);
    CHECK(h.homogeneous_part(5).is_zero());
    CHECK(expect.homogeneous_part(2) == expect);
  }
}
