#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gridreach/engine.hpp"
#include "gridreach/instrument.hpp"

namespace gridreach {

/// One CSV/JSON row: instance descriptors, answer and metrics.
struct RunRecord {
  std::int32_t m = 0;
  std::int64_t n = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::string mode;  // "dfs" or "aux"
  double alpha = 0.0;
  double beta = 0.0;
  bool answer = false;
  std::int64_t peak_core = 0;
  std::int64_t peak_conn = 0;
  std::int64_t queries = 0;
  std::int32_t depth = 0;
  double ms = 0.0;
};

inline constexpr const char* kRunRecordHeader =
    "m,n,p,seed,mode,alpha,beta,answer,peak_core,peak_conn,queries,depth,ms";

std::string to_csv(const RunRecord& r);
std::string to_json(const RunRecord& r);

/// s -> t with the DFS oracle, metered.
RunRecord run_dfs(const GridGraph& g, VertexId s, VertexId t);
/// s -> t with grid_reach under cfg.
RunRecord run_aux(const GridGraph& g, VertexId s, VertexId t, const EngineConfig& cfg);

struct BenchOptions {
  std::vector<std::int32_t> sizes;   // grid sides m
  double p = 0.9;
  std::vector<std::uint64_t> seeds;
  double alpha = 0.2;
  double beta = 0.2;
  BackendKind backend = BackendKind::oracle;
  unsigned jobs = 1;
};

/// Nine sides with n = (m+1)^2 from 2^10 to 2^20.
std::vector<std::int32_t> default_bench_sizes();

/// Runs dfs and aux on generate_random(m, p, seed) from (0,0) to (m,m) for
/// every size and seed. Rows come back ordered by (size, seed, mode);
/// `on_row` sees them in completion order.
std::vector<RunRecord> run_bench(const BenchOptions& opt, const std::function<void(const RunRecord&)>& on_row = {});

/// Log-log fit of peak_core against n over the rows of one mode.
ScalingFit fit_mode(const std::vector<RunRecord>& rows, const std::string& mode);

}  // namespace gridreach
