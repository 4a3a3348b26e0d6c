#include "gridreach/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gridreach/oracle.hpp"

namespace gridreach {

std::string to_csv(const RunRecord& r) {
  std::ostringstream os;
  os << r.m << ',' << r.n << ',' << r.p << ',' << r.seed << ',' << r.mode << ',' << r.alpha << ',' << r.beta << ','
     << (r.answer ? "true" : "false") << ',' << r.peak_core << ',' << r.peak_conn << ',' << r.queries << ','
     << r.depth << ',' << r.ms;
  return os.str();
}

std::string to_json(const RunRecord& r) {
  nlohmann::ordered_json j;
  j["m"] = r.m;
  j["n"] = r.n;
  j["p"] = r.p;
  j["seed"] = r.seed;
  j["mode"] = r.mode;
  j["alpha"] = r.alpha;
  j["beta"] = r.beta;
  j["answer"] = r.answer;
  j["peak_core"] = r.peak_core;
  j["peak_conn"] = r.peak_conn;
  j["queries"] = r.queries;
  j["depth"] = r.depth;
  j["ms"] = r.ms;
  return j.dump();
}

RunRecord run_dfs(const GridGraph& g, VertexId s, VertexId t) {
  RunRecord r;
  r.m = g.side();
  r.n = g.vertex_count();
  r.mode = "dfs";
  Workspace ws;
  const auto t0 = std::chrono::steady_clock::now();
  {
    WorkspaceScope scope(&ws);
    r.answer = oracle_reach(g, s, t);
  }
  r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  r.peak_core = ws.peak(Channel::core);
  r.peak_conn = ws.peak(Channel::connectivity);
  return r;
}

RunRecord run_aux(const GridGraph& g, VertexId s, VertexId t, const EngineConfig& cfg) {
  RunRecord r;
  r.m = g.side();
  r.n = g.vertex_count();
  r.mode = "aux";
  r.alpha = cfg.alpha;
  r.beta = cfg.beta;
  Metrics mt;
  r.answer = grid_reach(g, s, t, cfg, &mt);
  r.peak_core = mt.peak_core;
  r.peak_conn = mt.peak_conn;
  r.queries = mt.oracle_queries;
  r.depth = mt.recursion_depth;
  r.ms = mt.wall_ms;
  return r;
}

std::vector<std::int32_t> default_bench_sizes() {
  std::vector<std::int32_t> sizes;
  for (int k = 0; k < 9; ++k) sizes.push_back(std::int32_t(std::lround(std::pow(2.0, 5 + 0.625 * k))) - 1);
  return sizes;
}

std::vector<RunRecord> run_bench(const BenchOptions& opt, const std::function<void(const RunRecord&)>& on_row) {
  struct Task {
    std::int32_t m;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::int32_t m : opt.sizes)
    for (std::uint64_t seed : opt.seeds) tasks.push_back({m, seed});

  std::vector<RunRecord> rows(tasks.size() * 2);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t k; (k = next++) < tasks.size();) {
      try {
        const Task& tk = tasks[k];
        const GridGraph g = generate_random(tk.m, opt.p, tk.seed);
        const VertexId s{0, 0}, t{tk.m, tk.m};
        EngineConfig cfg;
        cfg.alpha = opt.alpha;
        cfg.beta = opt.beta;
        cfg.backend = opt.backend;
        RunRecord rd = run_dfs(g, s, t);
        RunRecord ra = run_aux(g, s, t, cfg);
        for (RunRecord* r : {&rd, &ra}) {
          r->p = opt.p;
          r->seed = tk.seed;
          r->alpha = opt.alpha;
          r->beta = opt.beta;
        }
        std::lock_guard lock(mu);
        rows[2 * k] = rd;
        rows[2 * k + 1] = ra;
        if (on_row) {
          on_row(rd);
          on_row(ra);
        }
      } catch (...) {
        std::lock_guard lock(mu);
        if (!error) error = std::current_exception();
        next = tasks.size();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, unsigned(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return rows;
}

ScalingFit fit_mode(const std::vector<RunRecord>& rows, const std::string& mode) {
  std::vector<std::pair<double, double>> series;
  for (const RunRecord& r : rows)
    if (r.mode == mode) series.emplace_back(double(r.n), double(std::max<std::int64_t>(1, r.peak_core)));
  return fit_scaling(std::move(series));
}

}  // namespace gridreach
