#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridreach/bench.hpp"
#include "gridreach/engine.hpp"
#include "gridreach/grid.hpp"
#include "gridreach/oracle.hpp"
#include "gridreach/suites.hpp"

using namespace gridreach;
using nlohmann::ordered_json;

namespace {

constexpr int kExitError = 2;

VertexId parse_vertex(const std::string& text) {
  VertexId v;
  char comma = 0;
  std::istringstream is(text);
  if (!(is >> v.x >> comma >> v.y) || comma != ',' || !is.eof())
    throw std::invalid_argument("expected x,y but got '" + text + "'");
  return v;
}

BackendKind parse_backend(const std::string& name) {
  return name == "oracle" ? BackendKind::oracle : BackendKind::recursive;
}

int cmd_gen(std::int32_t m, double p, std::uint64_t seed, const std::string& out) {
  const GridGraph g = generate_random(m, p, seed);
  if (out == "-")
    std::cout << serialize_grid(g);
  else
    save_grid_file(g, out);
  return 0;
}

struct ReachArgs {
  std::string input;
  std::string s, t;
  double alpha = 0.2, beta = 0.2;
  std::string mode = "aux";
  std::string backend = "recursive";
  bool early_exit = true;
  bool json = false;
};

int cmd_reach(const ReachArgs& a) {
  const GridGraph g = load_grid_file(a.input);
  const VertexId s = parse_vertex(a.s), t = parse_vertex(a.t);
  if (!g.contains(s) || !g.contains(t)) throw GridError("s or t outside the grid");
  std::string mode = a.mode;
  if (mode == "auto") mode = g.vertex_count() <= 4096 ? "dfs" : "aux";
  RunRecord r;
  if (mode == "dfs") {
    r = run_dfs(g, s, t);
  } else {
    EngineConfig cfg;
    cfg.alpha = a.alpha;
    cfg.beta = a.beta;
    cfg.early_exit = a.early_exit;
    cfg.backend = parse_backend(a.backend);
    r = run_aux(g, s, t, cfg);
  }
  r.alpha = a.alpha;
  r.beta = a.beta;
  if (a.json) {
    std::cout << to_json(r) << "\n";
  } else {
    std::cout << (r.answer ? "true" : "false") << "\n";
    std::cout << "mode=" << r.mode << " n=" << r.n << " peak_core=" << r.peak_core << " peak_conn=" << r.peak_conn
              << " queries=" << r.queries << " depth=" << r.depth << " ms=" << r.ms << "\n";
  }
  return r.answer ? 0 : 1;
}

struct PsepArgs {
  std::string input;
  double alpha = 0.2, beta = 0.2;
  std::int32_t samples = 20;
  std::uint64_t seed = 1;
};

int cmd_psep_check(const PsepArgs& a) {
  const GridGraph g = load_grid_file(a.input);
  const std::int32_t m = g.side();
  const Decomposition d(Window{0, 0, m, m}, Decomposition::block_side(m, a.alpha));
  std::mt19937_64 rng(a.seed);
  std::vector<suites::PsepSample> samples;
  ordered_json report;
  report["input"] = a.input;
  report["alpha"] = a.alpha;
  report["beta"] = a.beta;
  report["samples"] = ordered_json::array();
  // Sample 0 is the whole auxiliary graph, the rest random induced subgraphs.
  for (std::int32_t k = 0; k < a.samples; ++k) {
    conn_vector<std::int32_t> ids;
    const std::uint64_t keep = 50 + rng() % 51;
    for (std::int32_t id = 0; id < d.aux_count(); ++id)
      if (k == 0 || rng() % 100 < keep) ids.push_back(id);
    if (ids.empty()) ids.push_back(0);
    const AuxSubgraph h = k == 0 ? AuxSubgraph(g, d) : AuxSubgraph(g, d, ids);
    suites::PsepSample s = suites::check_pseudoseparator(h, a.beta);
    ordered_json j;
    j["h"] = s.h;
    j["beta"] = s.beta;
    j["sep_size"] = s.sep_size;
    j["n_shadows"] = s.n_shadows;
    j["max_component"] = s.max_component;
    j["bound"] = s.bound;
    j["pass"] = s.pass;
    if (!s.pass) j["reason"] = s.reason;
    report["samples"].push_back(j);
    samples.push_back(std::move(s));
  }
  std::int32_t passed = 0, max_comp = 0;
  for (const auto& s : samples) {
    passed += s.pass;
    max_comp = std::max(max_comp, s.max_component);
  }
  report["pass_rate"] = samples.empty() ? 1.0 : double(passed) / double(samples.size());
  report["max_component"] = max_comp;
  report["exponent"] = 0.5 + a.beta / 2;
  report["c"] = suites::fitted_size_constant(samples, a.beta);
  std::cout << report.dump(2) << "\n";
  return passed == std::int32_t(samples.size()) ? 0 : 1;
}

struct BenchArgs {
  std::vector<std::int32_t> sizes;
  double p = 0.9;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  double alpha = 0.2, beta = 0.2;
  std::string out = "bench.csv";
  std::string backend = "oracle";
  unsigned jobs = 1;
};

int cmd_bench(const BenchArgs& a) {
  BenchOptions opt;
  opt.sizes = a.sizes.empty() ? default_bench_sizes() : a.sizes;
  opt.p = a.p;
  opt.seeds = a.seeds;
  opt.alpha = a.alpha;
  opt.beta = a.beta;
  opt.backend = parse_backend(a.backend);
  opt.jobs = a.jobs;

  std::ofstream file;
  std::ostream* csv = &std::cout;
  std::ostream& log = a.out == "-" ? std::cerr : std::cout;
  if (a.out != "-") {
    file.open(a.out);
    if (!file) throw std::runtime_error("cannot write " + a.out);
    csv = &file;
  }
  const std::vector<RunRecord> rows = run_bench(opt, [&](const RunRecord& r) {
    log << "m=" << r.m << " seed=" << r.seed << " mode=" << r.mode << " peak_core=" << r.peak_core
        << " ms=" << r.ms << std::endl;
  });
  *csv << kRunRecordHeader << "\n";
  for (const RunRecord& r : rows) *csv << to_csv(r) << "\n";
  csv->flush();

  EngineConfig cfg;
  cfg.beta = a.beta;
  std::int32_t violations = 0;
  for (const RunRecord& r : rows) violations += r.depth > cfg.depth_bound();
  for (const char* mode : {"dfs", "aux"}) {
    const ScalingFit fit = fit_mode(rows, mode);
    log << "fit " << mode << ": slope=" << fit.slope << " r2=" << fit.r2 << (fit.valid ? "" : " (too few points)")
        << "\n";
  }
  log << "depth bound " << cfg.depth_bound() << ", violations " << violations << "\n";
  return 0;
}

struct SelftestArgs {
  std::int32_t grids = 30;
  std::int32_t psep_samples = 200;
  std::int32_t instances = 150;
  std::string fault;
};

int cmd_selftest(const SelftestArgs& a) {
  suites::Hooks hooks;
  if (a.fault == "crossing") hooks.cross = suites::one_sided_cross;
  else if (!a.fault.empty()) throw std::invalid_argument("unknown fault '" + a.fault + "'");

  std::vector<suites::SuiteResult> results;
  suites::BlockCorpus bc;
  bc.grids = a.grids;
  for (auto& r : suites::block_suites(bc, hooks)) results.push_back(std::move(r));
  suites::PsepCorpus pc;
  pc.samples = a.psep_samples;
  results.push_back(suites::psep_suite(pc).result);
  suites::EquivalenceCorpus ec;
  ec.instances = a.instances;
  for (auto& r : suites::equivalence_suite(ec)) results.push_back(std::move(r));

  bool ok = true;
  for (const auto& r : results) {
    ok = ok && r.pass();
    if (r.pass())
      std::printf("PASS %s (%lld checks)\n", r.name.c_str(), static_cast<long long>(r.checks));
    else
      std::printf("FAIL %s (%lld of %lld checks): %s\n", r.name.c_str(), static_cast<long long>(r.failures),
                  static_cast<long long>(r.checks), r.first_failure.c_str());
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reachability in directed grid graphs"};
  app.require_subcommand(1);

  std::int32_t gen_m = 16;
  double gen_p = 0.5;
  std::uint64_t gen_seed = 1;
  std::string gen_out = "-";
  auto* gen = app.add_subcommand("gen", "Write a random grid in the canonical text format");
  gen->add_option("-m,--m", gen_m, "Grid side (vertices 0..m)")->required()->check(CLI::NonNegativeNumber);
  gen->add_option("-p,--p", gen_p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("-o,--out", gen_out, "Output file, - for stdout");

  ReachArgs ra;
  auto* reach = app.add_subcommand("reach", "Decide s -> t; exit 0 reachable, 1 unreachable, 2 error");
  reach->add_option("input", ra.input, "Grid file")->required();
  reach->add_option("-s,--s", ra.s, "Source x,y")->required();
  reach->add_option("-t,--t", ra.t, "Target x,y")->required();
  reach->add_option("--alpha", ra.alpha, "Block exponent")->check(CLI::Range(0.0, 1.0));
  reach->add_option("--beta", ra.beta, "Separator exponent")->check(CLI::Range(0.0, 1.0));
  reach->add_option("--mode", ra.mode, "dfs, aux or auto")->check(CLI::IsMember({"dfs", "aux", "auto"}));
  reach->add_option("--backend", ra.backend, "Block edge backend")->check(CLI::IsMember({"oracle", "recursive"}));
  reach->add_flag("--early-exit,!--no-early-exit", ra.early_exit, "Stop the marking loop at a fixpoint");
  reach->add_flag("--json", ra.json, "Print one JSON record");

  PsepArgs pa;
  auto* psep = app.add_subcommand("psep-check", "Build and verify pseudoseparators on sampled subgraphs");
  psep->add_option("input", pa.input, "Grid file")->required();
  psep->add_option("--alpha", pa.alpha, "Block exponent")->check(CLI::Range(0.0, 1.0));
  psep->add_option("--beta", pa.beta, "Separator exponent")->check(CLI::Range(0.0, 1.0));
  psep->add_option("--samples", pa.samples, "Number of sampled subgraphs")->check(CLI::PositiveNumber);
  psep->add_option("--seed", pa.seed, "RNG seed");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Space scaling of dfs and aux over random grids");
  bench->add_option("--sizes", ba.sizes, "Grid sides m")->delimiter(',');
  bench->add_option("-p,--p", ba.p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  bench->add_option("--seeds", ba.seeds, "Grid seeds")->delimiter(',');
  bench->add_option("--alpha", ba.alpha, "Block exponent")->check(CLI::Range(0.0, 1.0));
  bench->add_option("--beta", ba.beta, "Separator exponent")->check(CLI::Range(0.0, 1.0));
  bench->add_option("-o,--out", ba.out, "CSV file, - for stdout");
  bench->add_option("--backend", ba.backend, "Block edge backend")->check(CLI::IsMember({"oracle", "recursive"}));
  bench->add_option("-j,--jobs", ba.jobs, "Worker threads")->check(CLI::PositiveNumber);

  SelftestArgs sa;
  auto* self = app.add_subcommand("selftest", "Run the embedded property suites at small scale");
  self->add_option("--grids", sa.grids, "Grids for the block suites");
  self->add_option("--psep-samples", sa.psep_samples, "Sampled subgraphs for the separator suite");
  self->add_option("--instances", sa.instances, "Queries for the equivalence suite");
  self->add_option("--inject-fault", sa.fault, "Test hook: 'crossing' corrupts the crossing predicate")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*gen) return cmd_gen(gen_m, gen_p, gen_seed, gen_out);
    if (*reach) return cmd_reach(ra);
    if (*psep) return cmd_psep_check(pa);
    if (*bench) return cmd_bench(ba);
    if (*self) return cmd_selftest(sa);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
