#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lolab/algebra.hpp"
#include "lolab/concentration.hpp"
#include "lolab/config.hpp"
#include "lolab/geometry.hpp"
#include "lolab/matroid.hpp"

namespace lolab {

/// 2^-n C(n, floor(n/2))
mpq_class erdos_lo_value(std::size_t n);

/// Rows of formatted cells plus summary values; formatting is deterministic.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> summary;
  bool pass = true;
};

void write_csv(const Table& t, std::ostream& os);
void write_json(const Table& t, std::ostream& os);

/// "%.12g"
std::string format_double(double x);

struct ExperimentSpec {
  std::string name;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 1;
  ExecConfig cfg;
};

/// Registered experiment names, sorted.
std::vector<std::string> experiment_names();

/// Throws std::invalid_argument for an unknown name or bad parameters.
Table run_experiment(const ExperimentSpec& spec);

struct ScanRow {
  std::string parameter;  // grid parameter name
  long value = 0;
  std::size_t n = 0;
  std::size_t packing = 0;
  double scale = 0;  // x axis of the fit (packing number or n)
  std::optional<mpq_class> exact;
  std::optional<McEstimate> mc;
  std::string note;
  double shape = 0;  // scale^exponent with constant 1
  double ratio = 0;  // probability / shape

  double probability() const;
};

struct ScanResult {
  std::string theorem;
  double exponent = 0;  // the theorem's exponent for the family
  std::vector<ScanRow> rows;
  std::optional<ExponentFit> fit;  // over rows with positive probability
  bool pass = true;                // per-row explicit inequality where the theorem has constants
};

std::vector<std::string> theorem_ids();

/// Runs the built-in family for `id` over `grid` (empty grid = family default).
ScanResult theorem_scan(const std::string& id, const std::vector<long>& grid, std::uint64_t seed,
                        const ExecConfig& cfg = default_config());

Table to_table(const ScanResult& r);

struct ChowPipelineReport {
  std::optional<RobustnessReport> robustness;  // when a b hint was given and the check fit the budget
  bool hypothesis_ok = true;
  VectorReduction reduction;
  std::size_t b0 = 0;
  std::vector<std::size_t> inert;  // variables whose vector is zero
  SubspaceDrop drop;
  std::vector<std::size_t> conditioned;  // I_1
  std::uint64_t assignments = 0;
  mpq_class max_conditional;
  mpq_class probability;  // average of the conditional probabilities
  mpq_class direct;       // P[X in S] without conditioning
};

/// reduction -> drop to a subspace with b0 = floor(b/(k(k+1))) + 1 -> exact
/// conditional probabilities for every sign pattern on I_1.
ChowPipelineReport chow_pipeline(const ChowRepresentation& r, std::size_t b_hint,
                                 const ExecConfig& cfg = default_config());

}  // namespace lolab
