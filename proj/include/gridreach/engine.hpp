#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "gridreach/aux_graph.hpp"
#include "gridreach/instrument.hpp"
#include "gridreach/pseudosep.hpp"

namespace gridreach {

enum class BackendKind { oracle, recursive };

struct EngineConfig {
  double alpha = 0.2;
  double beta = 0.2;
  double base_exponent = 0.125;
  BackendKind backend = BackendKind::recursive;
  std::int32_t max_depth = 0;  // 0: use depth_bound()
  bool early_exit = true;
  // Base cases also apply at or below these sizes: DFS when
  // h <= max(m^base, aux_floor), flood fill when a block queried during the
  // recursion has side <= max(m^base, grid_floor). The top-level grid only
  // uses m^base.
  std::int32_t aux_floor = 64;
  std::int32_t grid_floor = 32;

  /// ceil(3 / log2(1 / (1 - beta))).
  std::int32_t depth_bound() const;
  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Marks for one AuxReach frame. Vertex cells are indexed like
/// Pseudoseparator::vertices, edge cells like Pseudoseparator::edges.
class VisitedTable {
 public:
  static constexpr std::int32_t kNoKey = INT32_MAX;

  explicit VisitedTable(const Pseudoseparator& c);

  const Pseudoseparator& separator() const { return *c_; }
  std::size_t vertex_cells() const { return vflag_.size(); }
  std::size_t edge_cells() const { return witness_.size(); }

  bool vertex_set(std::size_t k) const { return vflag_[k] != 0; }
  /// Sets vertex cell k; returns false if it was already set.
  bool set_vertex(std::size_t k, std::int32_t epoch);
  std::int32_t vertex_epoch(std::size_t k) const { return vepoch_[k]; }

  std::int32_t witness(std::size_t e) const { return witness_[e]; }  // aux id or -1
  std::int32_t key(std::size_t e) const { return key_[e]; }
  std::int32_t edge_epoch(std::size_t e) const { return eepoch_[e]; }
  /// Stores (w, key) in edge cell e if key is strictly smaller than the
  /// current key. Returns true on change.
  bool offer(std::size_t e, std::int32_t w, std::int32_t key, std::int32_t epoch);

  /// visited[v] = 1, or visited[e] = v for some edge e.
  bool is_marked(std::int32_t id) const;

 private:
  const Pseudoseparator* c_;
  core_vector<std::uint8_t> vflag_;
  core_vector<std::int32_t> vepoch_;
  core_vector<std::int32_t> witness_, key_, eepoch_;
};

inline bool is_marked(const VisitedTable& t, std::int32_t id) { return t.is_marked(id); }

/// Lowest aux id of v's component in sep(H, C). Throws GridError if v is not
/// a surviving vertex.
std::int32_t component_of(const StripView& s, const StripComponents& comps, std::int32_t id);

/// Observer for audits: called for every vertex the engine records as reached
/// from the sources of the AuxReach frame at `depth` (vertex marks, edge-cell
/// witnesses and DFS visits).
using MarkHook = std::function<void(std::int32_t depth, std::int32_t aux_id)>;

/// Reachability over implicit auxiliary graphs and grids, with instrumented
/// workspace. One engine per query thread.
class ReachEngine {
 public:
  ReachEngine(const GridGraph& g, EngineConfig cfg);
  ~ReachEngine();
  ReachEngine(const ReachEngine&) = delete;
  ReachEngine& operator=(const ReachEngine&) = delete;

  const EngineConfig& config() const { return cfg_; }
  const GridGraph& graph() const { return *g_; }

  /// s -> t in the whole grid.
  bool grid_reach(VertexId s, VertexId t);

  /// s -> each target inside `area` (of the grid, or of its transpose when
  /// `reversed`). Sets out[k] for targets[k]. Block lines are shifted so that
  /// s lies on a vertical line and, for a single target, the target on a
  /// horizontal one; with several targets each must lie on the area boundary
  /// or a regular block line, else GridError.
  void grid_reach_multi(const Window& area, bool reversed, VertexId s, std::span<const VertexId> targets,
                        core_vector<std::uint8_t>& out);

  /// x -> y in H, with edges answered by the configured backend.
  bool aux_reach(const AuxSubgraph& h, std::int32_t x, std::int32_t y);

  /// Any source -> each target in H. Ids must be members of H; both lists
  /// sorted and duplicate-free. Sets out[k] for targets[k].
  void aux_reach_multi(const AuxSubgraph& h, BlockBackend& backend, std::span<const std::int32_t> sources,
                       std::span<const std::int32_t> targets, core_vector<std::uint8_t>& out);

  BlockBackend& backend();
  Metrics metrics() const;
  Workspace& workspace() { return ws_; }

  MarkHook on_mark;

 private:
  friend class RecursiveBackend;

  bool grid_base_case(std::int32_t side, bool nested) const;
  bool aux_base_case(std::int32_t h) const;
  void dfs(const AuxSubgraph& h, BlockBackend& backend, std::span<const std::int32_t> sources,
           std::span<const std::int32_t> targets, core_vector<std::uint8_t>& out);
  void separate_and_loop(const AuxSubgraph& h, BlockBackend& backend, std::span<const std::int32_t> sources,
                         std::span<const std::int32_t> targets, core_vector<std::uint8_t>& out);

  const GridGraph* g_;
  EngineConfig cfg_;
  Workspace ws_;
  std::int32_t top_side_;
  std::unique_ptr<BlockBackend> backend_;
  std::int64_t subgrid_calls_ = 0;
  std::int32_t aux_depth_ = 0, max_aux_depth_ = 0;
  std::int32_t grid_depth_ = 0, max_grid_depth_ = 0;
  double wall_ms_ = 0;
};

/// Convenience wrapper: fresh engine, one query, metrics copied to `out`.
bool grid_reach(const GridGraph& g, VertexId s, VertexId t, const EngineConfig& cfg, Metrics* out = nullptr);

/// Block backend that inverts the direction of every query.
class FlippedBackend final : public BlockBackend {
 public:
  explicit FlippedBackend(BlockBackend& inner) : inner_(&inner) {}
  void perimeter_reach(const GridGraph& g, const Block& b, VertexId v, bool reverse,
                       core_vector<std::uint64_t>& out) override {
    inner_->perimeter_reach(g, b, v, !reverse, out);
  }

 private:
  BlockBackend* inner_;
};

}  // namespace gridreach
