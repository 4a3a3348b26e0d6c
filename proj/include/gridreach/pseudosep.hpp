#pragma once

#include <cstdint>
#include <string>

#include "gridreach/aux_graph.hpp"
#include "gridreach/instrument.hpp"

namespace gridreach {

/// Undirected skeleton edge inside one block, by perimeter positions lo < hi.
struct SkeletonEdge {
  std::int32_t block = 0;  // decomposition block index, j * blocks_x + i
  std::int32_t lo = 0;
  std::int32_t hi = 0;
  std::uint8_t dirs = 0;   // bit 0: lo -> hi is an H edge, bit 1: hi -> lo
  bool tri = false;        // added by triangulation (dirs may still be non-zero)
};

/// mxplanar(H) plus triangulation edges, with an undirected adjacency over
/// member ranks of H. Inter-block regions are not triangulated.
struct PlanarSkeleton {
  conn_vector<SkeletonEdge> edges;   // grouped by block, each group sorted by (lo, hi)
  conn_vector<std::int32_t> offsets; // CSR over member ranks
  conn_vector<std::int32_t> adj;
  std::int32_t vertex_count = 0;

  std::int64_t real_count() const;
  std::int64_t tri_count() const;
};

std::int32_t block_index(const Decomposition& d, const Block& b);
Block block_at(const Decomposition& d, std::int32_t index);

/// Planar subset of H's pairs in block b, chosen greedily in (lo, hi) order:
/// the pair {p, q} is kept iff no previously kept pair f has
/// min(f) < min(p,q) < max(f) < max(p,q). Every dropped pair crosses a kept one.
/// Recomputed from scratch on each call; only O(perimeter) bits of state.
bool mxplanar_keeps(const AuxSubgraph& h, const Block& b, std::int32_t p, std::int32_t q, BlockBackend& backend);

/// Streams the kept pairs of block b in (lo, hi) order, with direction bits.
void for_each_mxplanar_edge(const AuxSubgraph& h, const Block& b, BlockBackend& backend,
                            const std::function<void(std::int32_t lo, std::int32_t hi, std::uint8_t dirs)>& f);

PlanarSkeleton triangulate(const AuxSubgraph& h, BlockBackend& backend);

/// Vertex set whose removal leaves components of at most `target` vertices.
/// Input is an undirected CSR graph; output is sorted. Deterministic.
conn_vector<std::int32_t> planar_separator(const conn_vector<std::int32_t>& offsets,
                                           const conn_vector<std::int32_t>& adj, std::int32_t target);

/// Edge of C, stored compactly: block index and anchor-relative positions of
/// its tail (p) and head (q).
struct SepEdge {
  std::int32_t block = 0;
  std::int32_t p = 0;
  std::int32_t q = 0;
  bool shadow = false;
};

struct Pseudoseparator {
  core_vector<std::int32_t> vertices;  // sorted aux ids
  core_vector<SepEdge> edges;          // sorted by (block, p, q)
  conn_vector<std::int32_t> source_sep;  // S, sorted aux ids
  std::int32_t shadows = 0;

  std::int64_t size() const { return std::int64_t(vertices.size()) + std::int64_t(edges.size()); }
  bool has_vertex(std::int32_t id) const;
  void add_vertex(std::int32_t id);  // keeps `vertices` sorted
  /// Index range [first, last) of edges in block `block`.
  std::pair<std::size_t, std::size_t> block_range(std::int32_t block) const;
};

class PseudoseparatorError : public std::runtime_error {
 public:
  PseudoseparatorError(const std::string& what, std::int32_t witness)
      : std::runtime_error(what), witness_(witness) {}
  std::int32_t witness() const { return witness_; }

 private:
  std::int32_t witness_;
};

/// floor(h^(1-beta)), at least 1.
std::int32_t component_bound(std::int32_t h, double beta);

struct PseudoseparatorOptions {
  double beta = 0.2;
  bool verify = false;  // run the component-size check and throw on failure
};

Pseudoseparator build_pseudoseparator(const AuxSubgraph& h, BlockBackend& backend,
                                      const PseudoseparatorOptions& opt);

/// Per-block lo/hi arrays of C's edges for the crossing kernel.
class CrossIndex {
 public:
  CrossIndex(const Decomposition& d, const Pseudoseparator& c);
  /// True iff the pair {p, q} of block `block` crosses some edge of C.
  bool crosses_any(std::int32_t block, std::int32_t p, std::int32_t q) const;

 private:
  core_vector<std::int32_t> start_;  // per block, offset into lo_/hi_
  core_vector<std::int32_t> lo_, hi_;
};

/// sep(H, C): members of H outside C, edges of H between them that cross no
/// edge of C.
class StripView {
 public:
  StripView(const AuxSubgraph& h, const Pseudoseparator& c);
  const AuxSubgraph& graph() const { return *h_; }
  const Pseudoseparator& separator() const { return *c_; }
  bool has_vertex(std::int32_t id) const { return h_->contains_id(id) && !c_->has_vertex(id); }
  /// Edge u -> v of block b (both given by perimeter positions) survives.
  bool has_edge(const Block& b, std::int32_t p, std::int32_t q, BlockBackend& backend) const;
  bool crosses_separator(std::int32_t block, std::int32_t p, std::int32_t q) const {
    return cross_.crosses_any(block, p, q);
  }

 private:
  const AuxSubgraph* h_;
  const Pseudoseparator* c_;
  CrossIndex cross_;
};

/// cc(sep(H, C)) on the underlying undirected graph. Labels are indexed by
/// member rank; C members get -1. A label is the lowest aux id of its component.
struct StripComponents {
  conn_vector<std::int32_t> label;
  conn_vector<std::int32_t> comp_ids;     // distinct labels, ascending
  conn_vector<std::int32_t> comp_offsets; // CSR into comp_members, parallel to comp_ids
  conn_vector<std::int32_t> comp_members; // member ranks, ascending within a component

  std::int32_t size_of(std::size_t k) const { return comp_offsets[k + 1] - comp_offsets[k]; }
  std::int32_t max_size() const;
};

StripComponents components(const StripView& s, BlockBackend& backend);

struct VerifyReport {
  bool pass = true;
  std::int32_t max_component = 0;
  std::int32_t bound = 0;
  std::int32_t witness = -1;  // label of an oversized component, or tail of an offending edge
  std::string reason;
};

/// Independent check: recomputes components of sep(H, C) by brute force and
/// verifies (a) every component has at most `bound` vertices and (b) every H
/// edge joining different components of `comps` touches C or crosses a C edge.
VerifyReport verify_pseudoseparator(const AuxSubgraph& h, const Pseudoseparator& c, std::int32_t bound,
                                    const StripComponents& comps, BlockBackend& backend);

}  // namespace gridreach
