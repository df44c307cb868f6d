#pragma once

#include <cstddef>
#include <cstdint>

namespace lolab {

/// Limits and worker count shared by every exact routine.
///
/// Results never depend on `threads`; it only controls how work is split.
struct ExecConfig {
  std::size_t max_summands = 26;             // sign-vector enumeration guard (2^n)
  std::size_t max_support = 10'000'000;      // distinct points kept by a distribution
  std::uint64_t max_enumeration = 50'000'000;  // boxes, GAP volumes, substitutions
  std::uint64_t max_pair_work = 100'000'000;   // X-support x Y-support scans
  unsigned threads = 1;
};

inline const ExecConfig& default_config() {
  static const ExecConfig cfg{};
  return cfg;
}

}  // namespace lolab
