#include <doctest.h>

#include <sstream>

#include "lolab/errors.hpp"
#include "lolab/harness.hpp"
#include "support/oracles.hpp"

using namespace lolab;

namespace {

std::string cell(const Table& t, const std::string& column, std::size_t row = 0) {
  for (std::size_t i = 0; i < t.columns.size(); ++i)
    if (t.columns[i] == column) return t.rows.at(row).at(i);
  FAIL("no column " << column);
  return {};
}

std::string summary(const Table& t, const std::string& key) {
  for (const auto& [k, v] : t.summary)
    if (k == key) return v;
  FAIL("no summary " << key);
  return {};
}

std::string stage(const Table& t, const std::string& name) {
  for (const auto& row : t.rows)
    if (row[0] == name) return row[1];
  FAIL("no stage " << name);
  return {};
}

Table run(const std::string& name, std::map<std::string, std::string> params = {}, unsigned threads = 1) {
  ExperimentSpec spec;
  spec.name = name;
  spec.params = std::move(params);
  spec.cfg.threads = threads;
  return run_experiment(spec);
}

std::string csv(const Table& t) {
  std::ostringstream os;
  write_csv(t, os);
  return os.str();
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("erdos lo values") {
    CHECK(erdos_lo_value(4) == mpq_class(3, 8));
    CHECK(erdos_lo_value(1) == mpq_class(1, 2));
    CHECK(erdos_lo_value(2) == mpq_class(1, 2));
    for (long n = 1; n <= 20; ++n) {
      mpq_class expect(oracle::binomial(n, n / 2), 1L << n);
      expect.canonicalize();
      CHECK(erdos_lo_value(static_cast<std::size_t>(n)) == expect);
    }
    CHECK_THROWS(erdos_lo_value(0));
  }

  TEST_CASE("registry") {
    auto names = experiment_names();
    CHECK(std::is_sorted(names.begin(), names.end()));
    for (const char* n : {"erdos_lo", "equidistribution", "convex_sharpness", "line_example", "mixed_polynomial",
                          "chow_pipeline", "hull_jarnik", "parabola_count"})
      CHECK(std::find(names.begin(), names.end(), n) != names.end());
    CHECK_THROWS_AS(run("nope"), std::invalid_argument);
    CHECK_THROWS_AS(run("erdos_lo", {{"bogus", "1"}}), std::invalid_argument);
    CHECK_THROWS_AS(run("erdos_lo", {{"n_max", "x"}}), std::invalid_argument);
    CHECK_THROWS_AS(run("convex_sharpness", {{"n", "8"}}), std::invalid_argument);
  }

  TEST_CASE("extremal experiments") {
    auto e = run("erdos_lo");
    CHECK(e.pass);
    CHECK(e.rows.size() == 20);
    CHECK(cell(e, "rho", 3) == "3/8");

    auto cs = run("convex_sharpness", {{"n", "7"}});
    CHECK(cell(cs, "probability") == "35/64");
    CHECK(oracle::ratio(70, 7) == mpq_class(35, 64));

    auto le = run("line_example", {{"n", "10"}});
    CHECK(cell(le, "probability") == "63/256");
    CHECK(cell(le, "rho") == "1/1024");

    auto mp = run("mixed_polynomial", {{"n", "8"}, {"d", "2"}});
    CHECK(cell(mp, "probability") == "11/64");
    CHECK(cell(mp, "brute_force") == "11/64");

    auto eq = run("equidistribution", {{"k", "1"}, {"m", "8"}});
    CHECK(summary(eq, "range") == "2");
    CHECK(summary(eq, "ratio") == "45/28");
    CHECK(mpq_class(12870) / 8008 == mpq_class(45, 28));
    CHECK(eq.pass);
    auto eq2 = run("equidistribution", {{"k", "2"}, {"m", "4"}});
    CHECK(summary(eq2, "ratio") == summary(eq2, "full_law_ratio"));
  }

  TEST_CASE("chow pipeline") {
    auto sq = run("chow_pipeline", {{"family", "0"}, {"n", "4"}, {"d", "2"}});
    CHECK(stage(sq, "probability") == "3/8");
    CHECK(stage(sq, "direct") == "3/8");
    CHECK(summary(sq, "hypothesis") == "holds");
    auto rf = run("chow_pipeline", {{"family", "1"}, {"b", "3"}});
    CHECK(stage(rf, "robust_dependence") == "false");
    CHECK(summary(rf, "hypothesis") == "fails");

    // A variable absent from F gives a zero vector and does not move any stage.
    ChowRepresentation r{4, 1, {{GaussianRational(1), GaussianRational(1), GaussianRational(1), GaussianRational(1)}},
                         SparsePoly::variable(1, 0).pow(2)};
    ChowRepresentation padded{5, 1,
                              {{GaussianRational(1), GaussianRational(1), GaussianRational(0), GaussianRational(1),
                                GaussianRational(1)}},
                              SparsePoly::variable(1, 0).pow(2)};
    auto base = chow_pipeline(r, 4);
    auto pad = chow_pipeline(padded, 4);
    CHECK(pad.inert == std::vector<std::size_t>{2});
    CHECK(pad.probability == base.probability);
    CHECK(pad.drop.indices.size() == base.drop.indices.size());
    CHECK(pad.conditioned.size() == base.conditioned.size());
    CHECK(pad.b0 == base.b0);

    auto mixed = run("chow_pipeline", {{"family", "2"}, {"n", "8"}, {"b", "4"}});
    CHECK(stage(mixed, "probability") == "11/64");
    CHECK(mixed.pass);
  }

  TEST_CASE("pipeline conditions on leftover variables") {
    ChowRepresentation r;
    r.n = 6;
    r.k = 2;
    r.forms = {{GaussianRational(1), GaussianRational(1), GaussianRational(1), GaussianRational(1), GaussianRational(0),
                GaussianRational(0)},
               {GaussianRational(0), GaussianRational(0), GaussianRational(0), GaussianRational(0), GaussianRational(1),
                GaussianRational(1)}};
    r.outer = SparsePoly::variable(2, 0) * SparsePoly::variable(2, 1) - SparsePoly::variable(2, 0);
    auto rep = chow_pipeline(r, 12);
    CHECK(rep.probability == rep.direct);
    CHECK(rep.probability == oracle::poly_zero_prob(expand_chow(r)));
    CHECK(rep.max_conditional >= rep.probability);
  }

  TEST_CASE("lattice experiments") {
    auto h = run("hull_jarnik");
    CHECK(h.rows.size() == 7);
    const double slope = std::stod(summary(h, "slope"));
    CHECK(slope >= 0.55);
    CHECK(slope <= 0.75);
    auto p = run("parabola_count", {{"B", "10,100,1000"}});
    CHECK(p.pass);
    CHECK(cell(p, "solved", 2) == "63");
  }

  TEST_CASE("experiments are byte stable across workers") {
    for (const char* name : {"erdos_lo", "line_example", "mixed_polynomial", "equidistribution"})
      CHECK(csv(run(name, {}, 1)) == csv(run(name, {}, 4)));
  }

  TEST_CASE("theorem scans") {
    auto ids = theorem_ids();
    CHECK(ids.size() == 7);
    CHECK_THROWS_AS(theorem_scan("nope", {}, 1), std::invalid_argument);
    auto v = theorem_scan("varieties-(k-ell)/2", {2, 3, 4, 5, 6, 7, 8}, 1);
    for (const auto& row : v.rows) {
      const long b = row.value;
      mpq_class coord(oracle::binomial(2 * b, b), 1);
      coord /= mpq_class(mpz_class(1) << static_cast<mp_bitcnt_t>(2 * b));
      REQUIRE(row.exact);
      CHECK(*row.exact == coord * coord);
      CHECK(row.packing == static_cast<std::size_t>(2 * b));
    }
    REQUIRE(v.fit);
    CHECK(v.fit->slope == doctest::Approx(-1).epsilon(0.15));
    auto m = theorem_scan("polynomials-mixed", {}, 1);
    REQUIRE(m.rows.size() == 5);
    CHECK(*m.rows[0].exact == mpq_class(11, 64));
    for (const auto& row : m.rows) {
      REQUIRE(row.exact);
      CHECK(*row.exact <= 1);
      CHECK(mpz_popcount(row.exact->get_den().get_mpz_t()) == 1);
    }
    auto c = theorem_scan("convex-1/2", {4, 8}, 7);
    CHECK(c.pass);
    auto t = to_table(c);
    CHECK(t.columns.size() == 12);
    CHECK(t.rows.size() == c.rows.size());
  }

  TEST_CASE("budget hits fall back to sampling per row") {
    ExecConfig cfg;
    cfg.max_support = 50;
    auto r = theorem_scan("varieties-(k-ell)/2", {2, 10}, 3, cfg);
    REQUIRE(r.rows.size() == 2);
    CHECK(r.rows[0].exact);
    CHECK(!r.rows[1].exact);
    REQUIRE(r.rows[1].mc);
    CHECK(r.rows[1].note.find("monte-carlo") == 0);
    auto again = theorem_scan("varieties-(k-ell)/2", {2, 10}, 3, cfg);
    CHECK(again.rows[1].mc->hits == r.rows[1].mc->hits);
  }

  TEST_CASE("table writers") {
    Table t;
    t.columns = {"a", "b"};
    t.rows = {{"1", "x,y"}};
    t.summary = {{"s", "2"}};
    CHECK(csv(t) == "a,b\n1,\"x,y\"\n# s=2\n");
    std::ostringstream os;
    write_json(t, os);
    CHECK(os.str().find("\"b\": \"x,y\"") != std::string::npos);
    CHECK(os.str().find("\"pass\": true") != std::string::npos);
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(2.0 / 3.0) == "0.666666666667");
  }
}
