#include "gridreach/suites.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

#include "gridreach/engine.hpp"
#include "gridreach/oracle.hpp"

namespace gridreach::suites {

bool one_sided_cross(std::int32_t p, std::int32_t q, std::int32_t r, std::int32_t s) {
  const std::int32_t a = std::min(p, q), b = std::max(p, q);
  const std::int32_t c = std::min(r, s), d = std::max(r, s);
  return a < c && c < b && b < d;
}

namespace {

// reach[i * per + j]: perimeter position j reachable from i inside the block.
std::vector<char> block_reach(const GridGraph& g, const Block& b) {
  const Window w = b.win;
  const std::int32_t per = b.perimeter();
  const std::int32_t width = w.width() + 1;
  std::vector<char> reach(std::size_t(per) * std::size_t(per), 0);
  std::vector<std::int32_t> pos_of(std::size_t(w.vertex_count()), -1);
  for (std::int32_t k = 0; k < per; ++k) {
    const VertexId v = perimeter_vertex(b, k);
    pos_of[std::size_t((v.y - w.y0) * width + (v.x - w.x0))] = k;
  }
  std::vector<char> seen;
  std::deque<VertexId> q;
  for (std::int32_t i = 0; i < per; ++i) {
    seen.assign(std::size_t(w.vertex_count()), 0);
    const VertexId s = perimeter_vertex(b, i);
    seen[std::size_t((s.y - w.y0) * width + (s.x - w.x0))] = 1;
    q.push_back(s);
    while (!q.empty()) {
      const VertexId v = q.front();
      q.pop_front();
      const std::int32_t k = pos_of[std::size_t((v.y - w.y0) * width + (v.x - w.x0))];
      if (k >= 0 && k != i) reach[std::size_t(i) * per + k] = 1;
      for (int d = 0; d < 4; ++d) {
        const VertexId u = step(v, Direction(d));
        if (!w.contains(u) || !g.has_edge(v, Direction(d))) continue;
        char& c = seen[std::size_t((u.y - w.y0) * width + (u.x - w.x0))];
        if (c) continue;
        c = 1;
        q.push_back(u);
      }
    }
  }
  return reach;
}

std::string where(std::int32_t m, std::uint64_t seed, const Block& b, const std::string& detail) {
  std::ostringstream os;
  os << "grid m=" << m << " seed=" << seed << " block [" << b.win.x0 << "," << b.win.x1 << "]x[" << b.win.y0
     << "," << b.win.y1 << "]: " << detail;
  return os.str();
}

// Builds the message only for the first failure.
template <class F>
void record(SuiteResult& r, F&& describe) {
  if (r.failures == 0) r.first_failure = describe();
  ++r.failures;
}

struct PairEdge {
  std::int32_t u, v;
};

}  // namespace

std::vector<SuiteResult> block_suites(const BlockCorpus& corpus, const Hooks& hooks) {
  std::vector<SuiteResult> out(6);
  out[0].name = "crossing symmetry";
  out[1].name = "crossing index condition";
  out[2].name = "crossing edges imply swapped edges";
  out[3].name = "closer crossing implies edge";
  out[4].name = "mxplanar kept set is non-crossing";
  out[5].name = "mxplanar dropped edges are crossed";
  SuiteResult &sym = out[0], &idx = out[1], &psg = out[2], &clo = out[3], &mxa = out[4], &mxb = out[5];
  const CrossPredicate cross = hooks.cross;

  std::mt19937_64 rng(corpus.seed);
  OracleBackend backend;
  for (std::int32_t gi = 0; gi < corpus.grids; ++gi) {
    const std::int32_t m = corpus.min_m + std::int32_t(rng() % std::uint64_t(corpus.max_m - corpus.min_m + 1));
    const double p = 0.3 + 0.2 * double(rng() % 4);
    const std::uint64_t seed = rng();
    const GridGraph g = generate_random(m, p, seed);
    const bool subset = gi % 2 == 1;
    for (std::int32_t t = 1; t <= std::min(corpus.max_t, m); ++t) {
      const Decomposition d(Window{0, 0, m, m}, t);
      conn_vector<std::int32_t> ids;
      std::vector<char> member(std::size_t(d.aux_count()), 1);
      for (std::int32_t id = 0; id < d.aux_count(); ++id) {
        if (subset && rng() % 5 == 0) member[std::size_t(id)] = 0;
        if (member[std::size_t(id)]) ids.push_back(id);
      }
      const AuxSubgraph h = subset ? AuxSubgraph(g, d, ids) : AuxSubgraph(g, d);

      for (std::int32_t j = 0; j < d.blocks_y(); ++j) {
        for (std::int32_t i = 0; i < d.blocks_x(); ++i) {
          const Block b = d.block(i, j);
          if (b.win.width() < 1 || b.win.height() < 1) continue;
          const std::int32_t per = b.perimeter();
          const std::vector<char> reach = block_reach(g, b);
          auto r = [&](std::int32_t a, std::int32_t c) { return reach[std::size_t(a) * per + c] != 0; };
          std::vector<PairEdge> edges;
          for (std::int32_t a = 0; a < per; ++a)
            for (std::int32_t c = 0; c < per; ++c)
              if (a != c && r(a, c)) edges.push_back({a, c});

          // Pairwise: symmetry, reverse invariance, index condition, swapped edges.
          for (const PairEdge& e : edges) {
            for (const PairEdge& f : edges) {
              const bool ef = cross(e.u, e.v, f.u, f.v);
              ++sym.checks;
              if (ef != cross(f.u, f.v, e.u, e.v) || ef != cross(e.u, e.v, f.v, f.u)) {
                record(sym, [&] {
                  std::ostringstream os;
                  os << "(" << e.u << "," << e.v << ") vs (" << f.u << "," << f.v << ")";
                  return where(m, seed, b, os.str());
                });
              }
              // Indices counted from e's tail: e = (v, c^k v), f = (c^a v, c^c v).
              const bool shared = e.u == f.u || e.u == f.v || e.v == f.u || e.v == f.v;
              const std::int32_t k = (e.v - e.u + per) % per;
              const std::int32_t a = (f.u - e.u + per) % per, c = (f.v - e.u + per) % per;
              const bool by_def = !shared && std::min(a, c) < k && k < std::max(a, c);
              ++idx.checks;
              if (ef != by_def) {
                record(idx, [&] {
                  std::ostringstream os;
                  os << "(" << e.u << "," << e.v << ") vs (" << f.u << "," << f.v << ") predicate " << ef;
                  return where(m, seed, b, os.str());
                });
              }
              if (!ef) continue;
              ++psg.checks;
              if (!r(e.u, f.v) || !r(f.u, e.v)) {
                record(psg, [&] {
                  std::ostringstream os;
                  os << "(" << e.u << "," << e.v << ") x (" << f.u << "," << f.v << ")";
                  return where(m, seed, b, os.str());
                });
              }
            }
          }

          // Closer: for f = (x, y), crossing edges with tails on the arc from x
          // to y. A tail a strictly nearer to x than the tail of some crossing
          // edge (c, h) must reach h.
          std::vector<std::int32_t> far_max(static_cast<std::size_t>(per));
          std::vector<char> near_tail(static_cast<std::size_t>(per));
          for (const PairEdge& f : edges) {
            const std::int32_t dy = (f.v - f.u + per) % per;
            std::fill(far_max.begin(), far_max.end(), -1);
            std::fill(near_tail.begin(), near_tail.end(), 0);
            for (const PairEdge& e : edges) {
              if (!cross(f.u, f.v, e.u, e.v)) continue;
              const std::int32_t de = (e.u - f.u + per) % per;
              if (de <= 0 || de >= dy) continue;
              near_tail[std::size_t(e.u)] = 1;
              far_max[std::size_t(e.v)] = std::max(far_max[std::size_t(e.v)], de);
            }
            for (std::int32_t a = 0; a < per; ++a) {
              if (!near_tail[std::size_t(a)]) continue;
              const std::int32_t da = (a - f.u + per) % per;
              for (std::int32_t hd = 0; hd < per; ++hd) {
                if (far_max[std::size_t(hd)] <= da) continue;
                ++clo.checks;
                if (!r(a, hd)) {
                  record(clo, [&] {
                    std::ostringstream os;
                    os << "f=(" << f.u << "," << f.v << ") tail " << a << " head " << hd;
                    return where(m, seed, b, os.str());
                  });
                }
              }
            }
          }

          // mxplanar over the members of H in this block.
          std::vector<std::pair<std::int32_t, std::int32_t>> kept;
          std::vector<char> is_kept(std::size_t(per) * per, 0);
          for_each_mxplanar_edge(h, b, backend, [&](std::int32_t lo, std::int32_t hi, std::uint8_t dirs) {
            kept.emplace_back(lo, hi);
            is_kept[std::size_t(lo) * per + hi] = 1;
            const std::uint8_t want = std::uint8_t((r(lo, hi) ? 1 : 0) | (r(hi, lo) ? 2 : 0));
            ++mxa.checks;
            if (dirs != want || dirs == 0) {
              record(mxa, [&] {
                std::ostringstream os;
                os << "kept pair (" << lo << "," << hi << ") has direction bits " << int(dirs) << ", BFS gives "
                << int(want);
                return where(m, seed, b, os.str());
              });
            }
          });
          for (std::size_t x = 0; x < kept.size(); ++x) {
            for (std::size_t y = x + 1; y < kept.size(); ++y) {
              ++mxa.checks;
              if (cross(kept[x].first, kept[x].second, kept[y].first, kept[y].second)) {
                record(mxa, [&] {
                  std::ostringstream os;
                  os << "kept pairs (" << kept[x].first << "," << kept[x].second << ") and (" << kept[y].first << ","
                  << kept[y].second << ") cross";
                  return where(m, seed, b, os.str());
                });
              }
            }
          }
          std::vector<char> in_h(std::size_t(per), 0);
          for (std::int32_t k = 0; k < per; ++k) in_h[std::size_t(k)] = h.contains(perimeter_vertex(b, k));
          for (std::int32_t lo = 0; lo < per; ++lo) {
            for (std::int32_t hi = lo + 1; hi < per; ++hi) {
              if (!in_h[std::size_t(lo)] || !in_h[std::size_t(hi)]) continue;
              if (!r(lo, hi) && !r(hi, lo)) continue;
              if (is_kept[std::size_t(lo) * per + hi]) continue;
              ++mxb.checks;
              const bool crossed = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
                return cross(k.first, k.second, lo, hi);
              });
              if (!crossed) {
                record(mxb, [&] {
                  std::ostringstream os;
                  os << "dropped pair (" << lo << "," << hi << ") crosses no kept pair";
                  return where(m, seed, b, os.str());
                });
              }
            }
          }
        }
      }
    }
  }
  return out;
}

PsepSample check_pseudoseparator(const AuxSubgraph& h, double beta) {
  OracleBackend backend;
  PsepSample s;
  s.m = h.graph().side();
  s.h = h.size();
  s.beta = beta;
  const Pseudoseparator c = build_pseudoseparator(h, backend, PseudoseparatorOptions{beta, false});
  const StripView sv(h, c);
  const StripComponents comps = components(sv, backend);
  s.bound = component_bound(h.size(), beta);
  const VerifyReport rep = verify_pseudoseparator(h, c, s.bound, comps, backend);
  s.sep_size = c.size();
  s.n_shadows = c.shadows;
  s.max_component = rep.max_component;
  s.pass = rep.pass;
  s.reason = rep.reason;
  return s;
}

double fitted_size_constant(const std::vector<PsepSample>& samples, double beta) {
  double c = 0.0;
  for (const PsepSample& s : samples)
    if (s.h >= 2) c = std::max(c, double(s.sep_size) / std::pow(double(s.h), 0.5 + beta / 2));
  return c;
}

PsepSummary psep_suite(const PsepCorpus& corpus) {
  PsepSummary out;
  out.result.name = "pseudoseparator contract";
  out.exponent = 0.5 + corpus.beta / 2;
  std::mt19937_64 rng(corpus.seed);
  const double alphas[] = {0.2, 0.35, 0.5};
  for (std::int32_t k = 0; k < corpus.samples; ++k) {
    const std::int32_t m = 4 + std::int32_t(rng() % std::uint64_t(corpus.max_m - 3));
    const double p = 0.3 + 0.2 * double(rng() % 4);
    const GridGraph g = generate_random(m, p, rng());
    const Decomposition d(Window{0, 0, m, m}, Decomposition::block_side(m, alphas[rng() % 3]));
    // Half full, half a random induced subset of 50-100% of the vertices.
    const bool subset = rng() % 2 == 0;
    const std::uint64_t keep = 50 + rng() % 51;
    conn_vector<std::int32_t> ids;
    for (std::int32_t id = 0; id < d.aux_count(); ++id)
      if (!subset || rng() % 100 < keep) ids.push_back(id);
    if (ids.empty()) ids.push_back(0);
    const AuxSubgraph h = subset ? AuxSubgraph(g, d, ids) : AuxSubgraph(g, d);
    PsepSample s = check_pseudoseparator(h, corpus.beta);
    ++out.result.checks;
    if (!s.pass) {
      std::ostringstream os;
      os << "sample " << k << " m=" << m << " h=" << s.h << ": " << s.reason;
      out.result.fail(os.str());
    }
    out.samples.push_back(std::move(s));
  }
  out.c = fitted_size_constant(out.samples, corpus.beta);
  return out;
}

std::vector<SuiteResult> equivalence_suite(const EquivalenceCorpus& corpus) {
  std::vector<SuiteResult> out(3);
  out[0].name = "recursive backend matches the oracle";
  out[1].name = "oracle backend matches the oracle";
  out[2].name = "early exit off matches the oracle";
  std::mt19937_64 rng(corpus.seed);
  for (std::int32_t k = 0; k < corpus.instances; ++k) {
    const std::int32_t m = corpus.min_m + std::int32_t(rng() % std::uint64_t(corpus.max_m - corpus.min_m + 1));
    const double p = 0.3 + 0.2 * double(rng() % 4);
    const std::uint64_t seed = rng();
    const GridGraph g = generate_random(m, p, seed);
    const VertexId s{std::int32_t(rng() % std::uint64_t(m + 1)), std::int32_t(rng() % std::uint64_t(m + 1))};
    const VertexId t{std::int32_t(rng() % std::uint64_t(m + 1)), std::int32_t(rng() % std::uint64_t(m + 1))};
    const bool want = oracle_reach(g, s, t);
    for (int v = 0; v < 3; ++v) {
      EngineConfig cfg;
      cfg.backend = v == 1 ? BackendKind::oracle : BackendKind::recursive;
      cfg.early_exit = v != 2;
      ++out[std::size_t(v)].checks;
      if (grid_reach(g, s, t, cfg) != want) {
        std::ostringstream os;
        os << "m=" << m << " seed=" << seed << " (" << s.x << "," << s.y << ")->(" << t.x << "," << t.y << ")";
        out[std::size_t(v)].fail(os.str());
      }
    }
  }
  return out;
}

}  // namespace gridreach::suites
