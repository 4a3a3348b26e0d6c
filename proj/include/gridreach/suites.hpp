#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridreach/aux_graph.hpp"
#include "gridreach/pseudosep.hpp"

namespace gridreach::suites {

using CrossPredicate = bool (*)(std::int32_t, std::int32_t, std::int32_t, std::int32_t);

/// Test hooks. `cross` replaces the crossing predicate inside the suites.
struct Hooks {
  CrossPredicate cross = crosses_pos;
};

/// Crossing predicate that misses one of the two interleavings (fault injection).
bool one_sided_cross(std::int32_t p, std::int32_t q, std::int32_t r, std::int32_t s);

struct SuiteResult {
  std::string name;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::string first_failure;

  bool pass() const { return failures == 0 && checks > 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

struct BlockCorpus {
  std::int32_t grids = 500;
  std::int32_t min_m = 8;
  std::int32_t max_m = 16;
  std::int32_t max_t = 8;
  std::uint64_t seed = 1;
};

/// Runs the per-block property checks over every block of every decomposition
/// with t <= max_t of each corpus grid. Reachability inside a block comes from
/// a plain BFS on its window. Results, in order:
///   crossing symmetry, crossing index condition, crossing edges imply swapped
///   edges, closer crossing implies edge, mxplanar kept set is non-crossing,
///   mxplanar dropped edges are crossed.
std::vector<SuiteResult> block_suites(const BlockCorpus& corpus, const Hooks& hooks = {});

struct PsepSample {
  std::int32_t m = 0;
  std::int32_t h = 0;
  double beta = 0.2;
  std::int64_t sep_size = 0;  // vertices + edges of C
  std::int32_t n_shadows = 0;
  std::int32_t max_component = 0;
  std::int32_t bound = 0;
  bool pass = false;
  std::string reason;
};

/// Builds C for h and runs the independent verifier against floor(h^(1-beta)).
PsepSample check_pseudoseparator(const AuxSubgraph& h, double beta);

struct PsepCorpus {
  std::int32_t samples = 1000;
  std::int32_t max_m = 48;
  double beta = 0.2;
  std::uint64_t seed = 2;
};

struct PsepSummary {
  SuiteResult result;
  std::vector<PsepSample> samples;
  double exponent = 0.6;  // 1/2 + beta/2
  double c = 0.0;         // max over samples of sep_size / h^exponent
};

/// sep_size / h^(1/2 + beta/2), maximized over the samples with h >= 2.
double fitted_size_constant(const std::vector<PsepSample>& samples, double beta);

PsepSummary psep_suite(const PsepCorpus& corpus);

struct EquivalenceCorpus {
  std::int32_t instances = 200;
  std::int32_t min_m = 8;
  std::int32_t max_m = 32;
  std::uint64_t seed = 3;
};

/// grid_reach with the recursive backend, the oracle backend and early exit
/// off, each against the DFS oracle. Results: recursive backend, oracle
/// backend, early exit off.
std::vector<SuiteResult> equivalence_suite(const EquivalenceCorpus& corpus);

}  // namespace gridreach::suites
