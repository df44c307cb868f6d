// lo-lab: command-line front end for the lolab library.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lolab/algebra.hpp"
#include "lolab/concentration.hpp"
#include "lolab/decoupling.hpp"
#include "lolab/distribution.hpp"
#include "lolab/errors.hpp"
#include "lolab/gap.hpp"
#include "lolab/geometry.hpp"
#include "lolab/harness.hpp"
#include "lolab/json_io.hpp"
#include "lolab/lattice.hpp"
#include "lolab/matroid.hpp"

using namespace lolab;
using nlohmann::json;
namespace jio = lolab::json_io;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitInput = 1;
constexpr int kExitFail = 2;
constexpr int kExitBudget = 3;

struct Output {
  json result = json::object();
  std::optional<Table> table;
  bool pass = true;
};

struct Globals {
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> budget;
  std::optional<std::size_t> max_summands;
  unsigned threads = 1;
  std::string format = "json";

  ExecConfig config() const {
    ExecConfig cfg;
    cfg.threads = threads;
    if (max_summands) cfg.max_summands = *max_summands;
    if (budget) {
      cfg.max_enumeration = *budget;
      cfg.max_pair_work = *budget;
      cfg.max_support = std::min<std::uint64_t>(*budget, cfg.max_support);
    }
    return cfg;
  }
};

std::string q(const mpq_class& x) { return rational_str(x); }

ExactVector parse_vector(const std::string& text) {
  ExactVector v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(jio::scalar(json(item)));
  return v;
}

IndexSet parse_indices(const std::string& text) {
  IndexSet out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(static_cast<std::size_t>(std::stoul(item)));
  return out;
}

std::vector<long> parse_longs(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stol(item));
  return out;
}

json indices_json(const std::vector<std::vector<std::size_t>>& sets) {
  json j = json::array();
  for (const auto& s : sets) j.push_back(s);
  return j;
}

Table key_value_table(const json& j) {
  Table t;
  t.columns = {"key", "value"};
  for (const auto& [k, v] : j.items()) t.rows.push_back({k, v.is_string() ? v.get<std::string>() : v.dump()});
  return t;
}

void emit(const Output& out, const std::string& format) {
  if (format == "csv") {
    Table t = out.table ? *out.table : key_value_table(out.result);
    t.pass = out.pass;
    write_csv(t, std::cout);
  } else {
    json j = out.result;
    if (out.table) {
      std::ostringstream os;
      Table t = *out.table;
      t.pass = out.pass;
      write_json(t, os);
      j["table"] = json::parse(os.str());
    }
    j["pass"] = out.pass;
    std::cout << j.dump(2) << '\n';
  }
}

// ---- subcommands -------------------------------------------------------------

struct RhoArgs {
  std::string sequence, set, shifts;
  bool distribution = false;
};

Output cmd_rho(const RhoArgs& a, const Globals& g) {
  const auto cfg = g.config();
  const auto seq = jio::sequence(jio::read_file(a.sequence));
  const auto dist = SumDistribution::compute(seq, cfg);
  Output out;
  out.result["n"] = seq.size();
  out.result["support"] = dist.support_size();
  if (a.distribution) {
    Table t;
    for (std::size_t i = 0; i < seq.k(); ++i) t.columns.push_back("x" + std::to_string(i + 1));
    t.columns.push_back("probability");
    dist.for_each([&](const ExactVector& x, std::uint64_t m) {
      std::vector<std::string> row;
      for (const auto& c : x) row.push_back(c.str());
      row.push_back(q(dyadic(m, dist.n())));
      t.rows.push_back(std::move(row));
    });
    out.table = std::move(t);
  }
  if (a.set.empty()) {
    out.result["rho"] = q(rho(dist));
    return out;
  }
  const auto s = jio::membership(jio::read_file(a.set));
  if (s.kind() == "points") {
    auto r = rho_finite_set(dist, std::get<FinitePointSet>(s.value()).points, cfg);
    out.result["rho"] = q(r.probability);
    out.result["shift"] = jio::to_json(r.shift);
    out.result["exact"] = true;
  } else if (s.kind() == "subspace") {
    out.result["rho"] = q(rho_subspace(seq, std::get<SubspaceSet>(s.value()).basis, cfg));
    out.result["exact"] = true;
  } else {
    std::vector<ExactVector> candidates;
    if (!a.shifts.empty()) candidates = jio::vectors(jio::read_file(a.shifts));
    auto r = rho_translate_lower_bound(dist, s, candidates, cfg);
    out.result["rho_lower_bound"] = q(r.probability);
    out.result["shift"] = jio::to_json(r.shift);
    out.result["exact"] = false;
  }
  return out;
}

struct ProbArgs {
  std::string sequence, set;
  std::uint64_t trials = 0;
};

Output cmd_prob(const ProbArgs& a, const Globals& g) {
  const auto cfg = g.config();
  const auto seq = jio::sequence(jio::read_file(a.sequence));
  const auto s = jio::membership(jio::read_file(a.set));
  Output out;
  if (a.trials > 0) {
    auto mc = monte_carlo_prob(seq, s, a.trials, g.seed, cfg);
    out.result["hits"] = mc.hits;
    out.result["trials"] = mc.trials;
    out.result["estimate"] = mc.estimate;
    out.result["lower"] = mc.lower;
    out.result["upper"] = mc.upper;
  } else {
    auto p = prob_in_set(seq, s, cfg);
    out.result["probability"] = q(p);
    out.result["decimal"] = format_double(p.get_d());
  }
  return out;
}

struct PackArgs {
  std::string sequence;
  std::size_t drop = 0;
};

Output cmd_pack(const PackArgs& a, const Globals& g) {
  const auto cfg = g.config();
  const auto seq = jio::sequence(jio::read_file(a.sequence));
  Output out;
  auto p = basis_packing_number(seq, cfg);
  out.result["packing"] = jio::to_json(p);
  out.pass = verify_packing(seq, p);
  if (a.drop > 0) {
    auto d = drop_to_subspace(seq, a.drop, cfg);
    json dj;
    dj["subspace"] = jio::to_json(d.subspace);
    dj["indices"] = d.indices;
    dj["packing"] = jio::to_json(d.packing);
    dj["levels"] = d.levels;
    out.result["drop"] = dj;
    out.pass = out.pass && verify_drop(seq, a.drop, d);
  }
  return out;
}

struct GapArgs {
  std::string gap, sequence, contains, radii;
  std::string dilation = "0";
  std::uint64_t trials = 10000;
};

Output cmd_gap(const GapArgs& a, const Globals& g) {
  const auto cfg = g.config();
  Output out;
  if (!a.radii.empty()) {
    // Hoeffding containment for a sequence inside the box Q_r(q).
    if (a.sequence.empty()) throw std::invalid_argument("--radii needs --sequence");
    std::vector<std::int64_t> radii;
    for (long r : parse_longs(a.radii)) radii.push_back(r);
    const auto seq = jio::sequence(jio::read_file(a.sequence));
    auto rep = empirical_containment(seq, radii, jio::rational(json(a.dilation)), a.trials, g.seed, cfg);
    out.result["escape"] = rep.escape.estimate;
    out.result["escape_lower"] = rep.escape.lower;
    out.result["escape_upper"] = rep.escape.upper;
    if (rep.exact_escape) out.result["exact_escape"] = q(*rep.exact_escape);
    out.result["bound"] = rep.bound;
    out.result["dilated"] = rep.dilated;
    out.pass = rep.exact_escape ? rep.exact_escape->get_d() <= rep.bound : rep.escape.lower <= rep.bound;
    return out;
  }
  if (a.gap.empty()) throw std::invalid_argument("gap needs a GAP file or --radii");
  const auto gq = jio::gap(jio::read_file(a.gap));
  auto proper = is_proper(gq, cfg);
  out.result["rank"] = gq.rank();
  out.result["volume"] = gq.volume().get_str();
  out.result["proper"] = proper.proper;
  if (proper.collision) out.result["collision"] = {proper.collision->first, proper.collision->second};
  if (!a.contains.empty()) {
    auto c = gap_contains(gq, parse_vector(a.contains), cfg);
    out.result["contains"] = c.has_value();
    if (c) out.result["coefficients"] = *c;
  }
  if (!a.sequence.empty()) {
    const auto seq = jio::sequence(jio::read_file(a.sequence));
    auto cov = coverage_check(seq, gq, cfg);
    out.result["outside"] = cov.outside;
    out.result["outside_indices"] = cov.outside_indices;
    if (cov.outside == 0) out.result["coordinates"] = jio::to_json(gap_coordinates(seq, gq, cfg));
    out.pass = cov.outside == 0;
  }
  return out;
}

struct PolyArgs {
  std::string chow;
  std::size_t robust = 0;
  bool galois = false;
};

Output cmd_poly(const PolyArgs& a, const Globals& g) {
  const auto cfg = g.config();
  const auto r = jio::chow(jio::read_file(a.chow));
  Output out;
  const auto f = expand_chow(r);
  out.result["polynomial"] = f.str();
  out.result["terms"] = f.term_count();
  auto red = reduction_to_vectors(r);
  out.result["vectors"] = jio::to_json(red.vectors);
  out.result["variety"] = jio::to_json(red.variety);
  auto p = prob_in_set(red.vectors, red.variety, cfg);
  out.result["probability_zero"] = q(p);
  out.result["invariance_subspace"] = jio::to_json(invariance_subspace(f));
  if (a.robust > 0) {
    auto rob = robust_dependence_check(f, a.robust, cfg.max_enumeration);
    out.result["robust"] = rob.robust;
    out.result["substitutions_checked"] = rob.substitutions_checked;
    if (rob.zeroing_assignment) {
      json w = json::array();
      for (const auto& [var, s] : *rob.zeroing_assignment) w.push_back({var, s});
      out.result["zeroing_assignment"] = w;
    }
  }
  if (a.galois) out.result["galois_pair"] = jio::to_json(galois_pair_variety(f));
  return out;
}

struct CountArgs {
  std::string set, bounds;
  bool solved = false;
};

Output cmd_count(const CountArgs& a, const Globals& g) {
  const auto cfg = g.config();
  const auto s = jio::membership(jio::read_file(a.set));
  Output out;
  Table t;
  t.columns = {"B", "count", "strategy"};
  if (a.solved) t.columns.push_back("solved");
  for (long b : parse_longs(a.bounds)) {
    auto c = count_lattice_points(s, b, cfg);
    std::vector<std::string> row{std::to_string(b), std::to_string(c.count), c.strategy};
    if (a.solved) {
      if (s.kind() != "variety") throw std::invalid_argument("--solved needs a variety");
      auto sc = count_lattice_points_solved(std::get<Variety>(s.value()), b, cfg);
      row.push_back(sc ? std::to_string(sc->count) : "");
      if (sc && sc->count != c.count) out.pass = false;
    }
    t.rows.push_back(std::move(row));
  }
  out.table = std::move(t);
  return out;
}

struct DensityArgs {
  std::string set, maps;
  long bound = 10;
  long range = 1;
};

Output cmd_density(const DensityArgs& a, const Globals& g) {
  const auto cfg = g.config();
  const auto s = jio::membership(jio::read_file(a.set));
  std::vector<AffineMap> extra;
  if (!a.maps.empty())
    for (const auto& m : jio::read_file(a.maps)) extra.push_back(jio::affine_map(m));
  auto fam = AffineMapFamily::standard(s.k(), a.range, extra);
  auto rep = density_lower_bound(s, a.bound, fam, cfg);
  Output out;
  out.result["B"] = a.bound;
  out.result["density"] = q(rep.density);
  out.result["best_count"] = rep.best_count;
  out.result["best_map"] = rep.best_map;
  out.result["maps"] = fam.maps.size();
  return out;
}

struct HullArgs {
  std::size_t k = 2;
  std::string bounds = "10,20,50,100,200,500,1000";
};

Output cmd_hull(const HullArgs& a, const Globals&) {
  Output out;
  Table t;
  t.columns = {"B", "vertices"};
  std::vector<std::pair<double, double>> pairs;
  for (long b : parse_longs(a.bounds)) {
    auto v = hull_vertices_ball(a.k, b);
    t.rows.push_back({std::to_string(b), std::to_string(v)});
    pairs.emplace_back(static_cast<double>(b), static_cast<double>(v));
  }
  if (pairs.size() >= 2) {
    auto fit = exponent_fit(pairs);
    t.summary = {{"slope", format_double(fit.slope)}, {"residual", format_double(fit.residual)}};
    out.result["slope"] = fit.slope;
  }
  out.table = std::move(t);
  return out;
}

struct DecoupleArgs {
  std::string sequence, set, i0, shift, partition, translates, subspaces;
  bool complete = false;
};

Output cmd_decouple(const DecoupleArgs& a, const Globals& g) {
  const auto cfg = g.config();
  const auto seq = jio::sequence(jio::read_file(a.sequence));
  const auto s = jio::membership(jio::read_file(a.set));
  Output out;
  if (!a.partition.empty()) {
    if (s.kind() != "variety") throw std::invalid_argument("iterated decoupling needs a variety");
    std::vector<ExactVector> translates;
    if (!a.translates.empty()) translates = jio::vectors(jio::read_file(a.translates));
    std::vector<std::vector<ExactVector>> subspaces;
    if (!a.subspaces.empty())
      for (const auto& v : jio::read_file(a.subspaces)) subspaces.push_back(jio::vectors(v));
    auto r = iterated_decoupling_bound(seq, jio::partition(jio::read_file(a.partition)), std::get<Variety>(s.value()),
                                       translates, subspaces, a.complete, cfg);
    out.result["lhs"] = q(r.lhs);
    out.result["best_shift"] = jio::to_json(r.best_shift);
    out.result["rho_max"] = q(r.rho_max);
    out.result["rhs"] = r.rhs;
    out.result["status"] = to_string(r.status);
    out.pass = r.pass;
    return out;
  }
  if (a.i0.empty()) throw std::invalid_argument("decouple needs --i0 or --partition");
  ExactVector x = a.shift.empty() ? zero_vector(seq.k()) : parse_vector(a.shift);
  auto r = decoupling_check(seq, parse_indices(a.i0), s, x, cfg);
  out.result["event"] = q(r.event);
  out.result["lhs"] = q(r.lhs);
  out.result["rhs"] = q(r.rhs);
  out.pass = r.pass;
  return out;
}

struct CertifyArgs {
  std::string sequence, certificate, set;
};

Output cmd_certify(const CertifyArgs& a, const Globals& g) {
  const auto cfg = g.config();
  const auto seq = jio::sequence(jio::read_file(a.sequence));
  const auto cert = jio::certificate(jio::read_file(a.certificate));
  const auto s = jio::variety(jio::read_file(a.set));
  auto r = structure_certificate_check(seq, cert, s, cfg);
  Output out;
  out.result["packing"] = r.packing;
  out.result["packing_threshold"] = q(r.packing_threshold);
  out.result["condition1"] = r.condition1;
  out.result["rho_projected"] = q(r.rho_projected);
  out.result["condition2"] = r.condition2;
  out.result["condition3a"] = r.condition3a;
  out.result["containment"] = r.containment;
  out.result["escape"] = q(r.escape);
  out.result["condition3b"] = r.condition3b;
  out.pass = r.pass;
  return out;
}

struct HalaszArgs {
  std::string sequence, partition;
};

Output cmd_halasz(const HalaszArgs& a, const Globals& g) {
  const auto cfg = g.config();
  const auto seq = jio::sequence(jio::read_file(a.sequence));
  auto r = halasz_check(seq, jio::partition(jio::read_file(a.partition)), cfg);
  Output out;
  out.result["t"] = q(r.t);
  out.result["base"] = q(r.base);
  out.result["bound"] = r.bound;
  out.result["rho"] = q(r.rho);
  out.result["equality"] = r.equality;
  out.pass = r.pass;
  return out;
}

struct ExperimentArgs {
  std::string name;
  std::vector<std::string> params;
  bool list = false;
};

Output cmd_experiment(const ExperimentArgs& a, const Globals& g) {
  Output out;
  if (a.list || a.name.empty()) {
    out.result["experiments"] = experiment_names();
    return out;
  }
  ExperimentSpec spec;
  spec.name = a.name;
  spec.seed = g.seed;
  spec.cfg = g.config();
  for (const auto& p : a.params) {
    auto eq = p.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("parameter \"" + p + "\" is not key=value");
    spec.params[p.substr(0, eq)] = p.substr(eq + 1);
  }
  Table t = run_experiment(spec);
  out.result["experiment"] = a.name;
  out.pass = t.pass;
  out.table = std::move(t);
  return out;
}

struct ScanArgs {
  std::string id, grid;
  bool list = false;
};

Output cmd_scan(const ScanArgs& a, const Globals& g) {
  Output out;
  if (a.list || a.id.empty()) {
    out.result["theorems"] = theorem_ids();
    return out;
  }
  std::vector<long> grid;
  if (!a.grid.empty()) grid = parse_longs(a.grid);
  auto r = theorem_scan(a.id, grid, g.seed, g.config());
  out.result["theorem"] = r.theorem;
  out.result["exponent"] = r.exponent;
  if (r.fit) out.result["slope"] = r.fit->slope;
  out.pass = r.pass;
  out.table = to_table(r);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact anticoncentration laboratory for Rademacher sums"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed for sampled quantities");
  app.add_option("--budget", g.budget, "Enumeration budget per computation");
  app.add_option("--max-summands", g.max_summands, "Largest n for exact sign enumeration")->check(CLI::Range(1, 62));
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::function<Output()> run;

  RhoArgs rho_args;
  auto* rho_cmd = app.add_subcommand("rho", "Maximum point or translate concentration");
  rho_cmd->add_option("sequence", rho_args.sequence, "Sequence JSON")->required()->check(CLI::ExistingFile);
  rho_cmd->add_option("--set", rho_args.set, "Membership set JSON")->check(CLI::ExistingFile);
  rho_cmd->add_option("--shifts", rho_args.shifts, "Candidate shifts JSON for varieties")->check(CLI::ExistingFile);
  rho_cmd->add_flag("--distribution", rho_args.distribution, "Include the full distribution");
  rho_cmd->callback([&] { run = [&] { return cmd_rho(rho_args, g); }; });

  ProbArgs prob_args;
  auto* prob_cmd = app.add_subcommand("prob", "P[X in S], exact or sampled");
  prob_cmd->add_option("sequence", prob_args.sequence)->required()->check(CLI::ExistingFile);
  prob_cmd->add_option("set", prob_args.set)->required()->check(CLI::ExistingFile);
  prob_cmd->add_option("--trials", prob_args.trials, "Monte Carlo trials instead of the exact value");
  prob_cmd->callback([&] { run = [&] { return cmd_prob(prob_args, g); }; });

  PackArgs pack_args;
  auto* pack_cmd = app.add_subcommand("pack", "Basis packing number with witness");
  pack_cmd->add_option("sequence", pack_args.sequence)->required()->check(CLI::ExistingFile);
  pack_cmd->add_option("--drop", pack_args.drop, "Also drop to a subspace keeping b disjoint bases");
  pack_cmd->callback([&] { run = [&] { return cmd_pack(pack_args, g); }; });

  GapArgs gap_args;
  auto* gap_cmd = app.add_subcommand("gap", "Properness, membership and containment for a GAP");
  gap_cmd->add_option("gap", gap_args.gap)->check(CLI::ExistingFile);
  gap_cmd->add_option("--sequence", gap_args.sequence)->check(CLI::ExistingFile);
  gap_cmd->add_option("--contains", gap_args.contains, "Comma-separated vector");
  gap_cmd->add_option("--radii", gap_args.radii, "Box radii for the containment test");
  gap_cmd->add_option("--dilation", gap_args.dilation, "Dilation factor t");
  gap_cmd->add_option("--trials", gap_args.trials);
  gap_cmd->callback([&] { run = [&] { return cmd_gap(gap_args, g); }; });

  PolyArgs poly_args;
  auto* poly_cmd = app.add_subcommand("poly", "Chow representation: expansion, reduction, robustness");
  poly_cmd->add_option("chow", poly_args.chow)->required()->check(CLI::ExistingFile);
  poly_cmd->add_option("--robust", poly_args.robust, "Check robust dependence on b variables");
  poly_cmd->add_flag("--galois", poly_args.galois, "Emit the conjugate-pair variety");
  poly_cmd->callback([&] { run = [&] { return cmd_poly(poly_args, g); }; });

  CountArgs count_args;
  auto* count_cmd = app.add_subcommand("count", "Lattice points of S in [-B, B]^k");
  count_cmd->add_option("set", count_args.set)->required()->check(CLI::ExistingFile);
  count_cmd->add_option("--B", count_args.bounds, "Comma-separated bounds")->required();
  count_cmd->add_flag("--solved", count_args.solved, "Cross-check with the solving strategy");
  count_cmd->callback([&] { run = [&] { return cmd_count(count_args, g); }; });

  DensityArgs density_args;
  auto* density_cmd = app.add_subcommand("density", "Density lower bound over affine images");
  density_cmd->add_option("set", density_args.set)->required()->check(CLI::ExistingFile);
  density_cmd->add_option("--B", density_args.bound);
  density_cmd->add_option("--range", density_args.range, "Integer translation range");
  density_cmd->add_option("--maps", density_args.maps, "Extra affine maps JSON")->check(CLI::ExistingFile);
  density_cmd->callback([&] { run = [&] { return cmd_density(density_args, g); }; });

  HullArgs hull_args;
  auto* hull_cmd = app.add_subcommand("hull", "Vertices of the hull of lattice points in a ball");
  hull_cmd->add_option("--k", hull_args.k)->check(CLI::Range(2, 3));
  hull_cmd->add_option("--B", hull_args.bounds, "Comma-separated bounds");
  hull_cmd->callback([&] { run = [&] { return cmd_hull(hull_args, g); }; });

  DecoupleArgs dec_args;
  auto* dec_cmd = app.add_subcommand("decouple", "Decoupling inequality or iterated bound");
  dec_cmd->add_option("sequence", dec_args.sequence)->required()->check(CLI::ExistingFile);
  dec_cmd->add_option("set", dec_args.set)->required()->check(CLI::ExistingFile);
  dec_cmd->add_option("--i0", dec_args.i0, "Comma-separated indices of the decoupled block");
  dec_cmd->add_option("--shift", dec_args.shift, "Comma-separated shift x");
  dec_cmd->add_option("--partition", dec_args.partition, "Partition JSON for the iterated bound")
      ->check(CLI::ExistingFile);
  dec_cmd->add_option("--translates", dec_args.translates)->check(CLI::ExistingFile);
  dec_cmd->add_option("--subspaces", dec_args.subspaces)->check(CLI::ExistingFile);
  dec_cmd->add_flag("--complete", dec_args.complete, "The subspace list is known to be complete");
  dec_cmd->callback([&] { run = [&] { return cmd_decouple(dec_args, g); }; });

  CertifyArgs cert_args;
  auto* cert_cmd = app.add_subcommand("certify", "Check a structure certificate");
  cert_cmd->add_option("sequence", cert_args.sequence)->required()->check(CLI::ExistingFile);
  cert_cmd->add_option("certificate", cert_args.certificate)->required()->check(CLI::ExistingFile);
  cert_cmd->add_option("set", cert_args.set, "Variety JSON")->required()->check(CLI::ExistingFile);
  cert_cmd->callback([&] { run = [&] { return cmd_certify(cert_args, g); }; });

  HalaszArgs hal_args;
  auto* hal_cmd = app.add_subcommand("halasz", "Block-rank bound on rho");
  hal_cmd->add_option("sequence", hal_args.sequence)->required()->check(CLI::ExistingFile);
  hal_cmd->add_option("partition", hal_args.partition)->required()->check(CLI::ExistingFile);
  hal_cmd->callback([&] { run = [&] { return cmd_halasz(hal_args, g); }; });

  ExperimentArgs exp_args;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a named experiment");
  exp_cmd->add_option("name", exp_args.name);
  exp_cmd->add_option("--param", exp_args.params, "key=value, repeatable");
  exp_cmd->add_flag("--list", exp_args.list);
  exp_cmd->callback([&] { run = [&] { return cmd_experiment(exp_args, g); }; });

  ScanArgs scan_args;
  auto* scan_cmd = app.add_subcommand("scan", "Exponent scan for a theorem family");
  scan_cmd->add_option("id", scan_args.id);
  scan_cmd->add_option("--grid", scan_args.grid, "Comma-separated grid");
  scan_cmd->add_flag("--list", scan_args.list);
  scan_cmd->callback([&] { run = [&] { return cmd_scan(scan_args, g); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitInput;
  }

  try {
    Output out = run();
    emit(out, g.format);
    return out.pass ? kExitPass : kExitFail;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
