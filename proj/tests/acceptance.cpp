// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
// Optional arguments select criteria by number.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gridreach/bench.hpp"
#include "gridreach/engine.hpp"
#include "gridreach/grid.hpp"
#include "gridreach/oracle.hpp"
#include "gridreach/suites.hpp"

using namespace gridreach;

namespace {

struct Instance {
  std::int32_t m;
  double p;
  std::uint64_t seed;
  VertexId s, t;
};

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail, double seconds) {
  std::printf("%s %d %s: %s [%.1fs]\n", pass ? "PASS" : "FAIL", id, name, detail.c_str(), seconds);
  std::fflush(stdout);
  failures += !pass;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Instance> corpus() {
  std::mt19937_64 rng(20240601);
  std::vector<Instance> out;
  for (int k = 0; k < 10000; ++k) {
    Instance in;
    in.m = 8 + std::int32_t(rng() % 57);
    in.p = 0.3 + 0.2 * double(rng() % 4);
    in.seed = rng();
    const auto coord = [&] { return std::int32_t(rng() % std::uint64_t(in.m + 1)); };
    in.s = {coord(), coord()};
    in.t = {coord(), coord()};
    out.push_back(in);
  }
  return out;
}

// Criteria 1 and 7 share the corpus.
void oracle_and_swap(bool run1, bool run7) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<Instance> inst = corpus();
  std::int64_t agree = 0, swap_agree = 0, exit_agree = 0, positives = 0;
  std::string first1, first7;
  for (const Instance& in : inst) {
    const GridGraph g = generate_random(in.m, in.p, in.seed);
    const bool want = oracle_reach(g, in.s, in.t);
    positives += want;
    EngineConfig rec;
    const bool got = grid_reach(g, in.s, in.t, rec);
    agree += got == want;
    if (got != want && first1.empty())
      first1 = fmt(" first mismatch m=%d seed=%llu", in.m, static_cast<unsigned long long>(in.seed));
    if (!run7) continue;
    EngineConfig orc;
    orc.backend = BackendKind::oracle;
    EngineConfig full;
    full.early_exit = false;
    const bool by_oracle = grid_reach(g, in.s, in.t, orc);
    const bool no_exit = grid_reach(g, in.s, in.t, full);
    swap_agree += by_oracle == got;
    exit_agree += no_exit == got;
    if ((by_oracle != got || no_exit != got) && first7.empty())
      first7 = fmt(" first mismatch m=%d seed=%llu", in.m, static_cast<unsigned long long>(in.seed));
  }
  const std::int64_t n = std::int64_t(inst.size());
  if (run1)
    report(1, "oracle equivalence", agree == n,
           fmt("%lld/%lld agree, %lld reachable (required 100%%)%s", static_cast<long long>(agree),
               static_cast<long long>(n), static_cast<long long>(positives), first1.c_str()),
           since(t0));
  if (run7)
    report(7, "backend swap and early exit", swap_agree == n && exit_agree == n,
           fmt("oracle backend %lld/%lld, early exit off %lld/%lld (required 100%%)%s",
               static_cast<long long>(swap_agree), static_cast<long long>(n), static_cast<long long>(exit_agree),
               static_cast<long long>(n), first7.c_str()),
           since(t0));
}

void block_properties(bool run2, bool run3) {
  const auto t0 = std::chrono::steady_clock::now();
  suites::BlockCorpus bc;
  bc.grids = 500;
  bc.max_t = 8;
  const std::vector<suites::SuiteResult> res = suites::block_suites(bc);
  const double secs = since(t0);
  auto summarize = [&](std::size_t from, std::size_t to, bool& pass) {
    std::string s;
    pass = true;
    for (std::size_t k = from; k < to; ++k) {
      const auto& r = res[k];
      pass = pass && r.pass();
      s += fmt("%s%s %lld/%lld", s.empty() ? "" : "; ", r.name.c_str(), static_cast<long long>(r.failures),
               static_cast<long long>(r.checks));
      if (!r.pass()) s += " (" + r.first_failure + ")";
    }
    return s + " counterexamples/checks (required 0)";
  };
  bool pass = false;
  if (run2) {
    const std::string d = summarize(0, 4, pass);
    report(2, "lemma suite", pass, d, secs);
  }
  if (run3) {
    const std::string d = summarize(4, 6, pass);
    report(3, "mxplanar two-part property", pass, d, secs);
  }
}

void pseudoseparator_contract() {
  const auto t0 = std::chrono::steady_clock::now();
  suites::PsepCorpus pc;
  pc.samples = 1000;
  pc.max_m = 48;
  pc.beta = 0.2;
  const suites::PsepSummary sum = suites::psep_suite(pc);
  std::int32_t max_h = 0;
  for (const auto& s : sum.samples) max_h = std::max(max_h, s.h);
  const bool pass = sum.result.pass() && sum.c <= 20.0;
  std::string d = fmt("verifier %lld/%lld pass, fitted c=%.3f for |C| <= c*h^%.2f (required c <= 20), h up to %d",
                      static_cast<long long>(sum.result.checks - sum.result.failures),
                      static_cast<long long>(sum.result.checks), sum.c, sum.exponent, max_h);
  if (!sum.result.pass()) d += " (" + sum.result.first_failure + ")";
  report(4, "pseudoseparator contract", pass, d, since(t0));
}

void scaling_and_depth(bool run5, bool run6) {
  const auto t0 = std::chrono::steady_clock::now();
  BenchOptions opt;
  opt.sizes = default_bench_sizes();
  opt.p = 0.9;
  opt.seeds = {1, 2, 3, 4, 5};
  opt.backend = BackendKind::oracle;
  const std::vector<RunRecord> rows = run_bench(opt, [](const RunRecord& r) {
    std::fprintf(stderr, "bench m=%d seed=%llu %s peak_core=%lld depth=%d %.0fms\n", r.m,
                 static_cast<unsigned long long>(r.seed), r.mode.c_str(), static_cast<long long>(r.peak_core),
                 r.depth, r.ms);
  });
  const double secs = since(t0);
  if (run5) {
    const ScalingFit dfs = fit_mode(rows, "dfs");
    const ScalingFit aux = fit_mode(rows, "aux");
    bool answers_agree = true;
    for (std::size_t k = 0; k + 1 < rows.size(); k += 2) answers_agree = answers_agree && rows[k].answer == rows[k + 1].answer;
    const bool pass = dfs.valid && aux.valid && answers_agree && aux.slope <= 0.45 && aux.slope < dfs.slope - 0.3 &&
                      std::abs(dfs.slope - 1.0) <= 0.05;
    report(5, "space scaling trend", pass,
           fmt("aux slope %.3f (r2 %.3f, required <= 0.45 and < dfs - 0.3), dfs slope %.3f (r2 %.3f, required "
               "1.0 +- 0.05), %zu rows, answers %s",
               aux.slope, aux.r2, dfs.slope, dfs.r2, rows.size(), answers_agree ? "agree" : "DISAGREE"),
           secs);
  }
  if (run6) {
    EngineConfig cfg;
    cfg.beta = opt.beta;
    std::int32_t worst = 0, violations = 0, aux_rows = 0;
    for (const RunRecord& r : rows) {
      if (r.mode != "aux") continue;
      ++aux_rows;
      worst = std::max(worst, r.depth);
      violations += r.depth > cfg.depth_bound();
    }
    report(6, "recursion depth", violations == 0,
           fmt("max depth %d over %d aux runs, bound %d, violations %d (required 0)", worst, aux_rows,
               cfg.depth_bound(), violations),
           secs);
  }
}

void example_fixture() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Fact {
    VertexId s, t;
    bool reachable;
  };
  const Fact facts[] = {
      {{0, 1}, {12, 11}, true}, {{0, 1}, {0, 12}, false}, {{0, 1}, {4, 3}, true},
      {{0, 1}, {8, 1}, true},   {{0, 1}, {11, 4}, true},  {{0, 1}, {10, 8}, true},
  };
  const GridGraph g = load_grid_file("fixtures/fig1.grid");
  int prevalidated = 0, reproduced = 0, checks = 0;
  for (const Fact& f : facts) {
    if (oracle_reach(g, f.s, f.t) != f.reachable) continue;
    ++prevalidated;
    bool ok = true;
    for (BackendKind b : {BackendKind::recursive, BackendKind::oracle}) {
      for (double alpha : {0.2, 0.44}) {
        EngineConfig cfg;
        cfg.backend = b;
        cfg.alpha = alpha;
        ++checks;
        ok = ok && grid_reach(g, f.s, f.t, cfg) == f.reachable;
      }
    }
    reproduced += ok;
  }
  const int total = int(std::size(facts));
  report(8, "example grid fixture", prevalidated == total && reproduced == total,
         fmt("%d/%d facts confirmed by the oracle, %d/%d reproduced by grid_reach (%d runs)", prevalidated, total,
             reproduced, total, checks),
         since(t0));
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> want;
  for (int k = 1; k < argc; ++k) want.insert(std::atoi(argv[k]));
  auto on = [&](int id) { return want.empty() || want.count(id) > 0; };

  if (on(8)) example_fixture();
  if (on(2) || on(3)) block_properties(on(2), on(3));
  if (on(4)) pseudoseparator_contract();
  if (on(1) || on(7)) oracle_and_swap(on(1), on(7));
  if (on(5) || on(6)) scaling_and_depth(on(5), on(6));
  std::printf("%s\n", failures == 0 ? "ALL PASS" : fmt("%d criteria failed", failures).c_str());
  return failures == 0 ? 0 : 1;
}
