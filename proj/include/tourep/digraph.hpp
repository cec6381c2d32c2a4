#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tourep {

using Vertex = int;
using ArcId = int;

struct Arc {
  Vertex tail = 0;
  Vertex head = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Loop-free multi-digraph on the dense vertex ids 0..n-1.
///
/// Arcs are kept as an explicit list, so parallel arcs are distinct elements
/// addressed by their position (ArcId). Values are immutable once built.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n, std::vector<Arc> arcs = {});

  int num_vertices() const { return n_; }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }

  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(ArcId a) const { return arcs_.at(static_cast<std::size_t>(a)); }

  std::span<const ArcId> out_arcs(Vertex v) const { return out_[static_cast<std::size_t>(v)]; }
  std::span<const ArcId> in_arcs(Vertex v) const { return in_[static_cast<std::size_t>(v)]; }

  int out_degree(Vertex v) const { return static_cast<int>(out_arcs(v).size()); }
  int in_degree(Vertex v) const { return static_cast<int>(in_arcs(v).size()); }

  /// Number of parallel arcs u -> v.
  int multiplicity(Vertex u, Vertex v) const;

  bool has_vertex(Vertex v) const { return v >= 0 && v < n_; }

  /// Same vertex count and same arc list (order included).
  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> out_;
  std::vector<std::vector<ArcId>> in_;
};

/// Equality of (n, arc multiset), ignoring arc order.
bool same_arc_multiset(const Digraph& a, const Digraph& b);

struct SccPartition {
  /// Components in a topological order of the condensation: every arc between
  /// two different components goes from a lower to a higher index.
  std::vector<std::vector<Vertex>> components;
  std::vector<int> component_of;

  int count() const { return static_cast<int>(components.size()); }
};

SccPartition scc(const Digraph& g);

/// True iff g has at least one vertex and a single strongly-connected component.
bool is_strongly_connected(const Digraph& g);

/// Every vertex has at least n-1-s distinct neighbours (arcs in either direction).
bool is_s_semicomplete(const Digraph& g, int s);

bool is_tournament(const Digraph& g);

/// Arc (u,v) is the only arc with head v, or the only arc with tail u.
/// Throws std::out_of_range if a is not an arc of g.
bool is_contractible_arc(const Digraph& g, ArcId a);

/// Result of a contraction or deletion: the new digraph plus the relabeling of
/// old vertices/arcs onto new ids (-1 when the element no longer exists).
struct Relabeled {
  Digraph graph;
  std::vector<Vertex> vertex_map;
  std::vector<ArcId> arc_map;
};

/// Merges the endpoints of a contractible arc. The merged vertex takes the slot
/// of the smaller endpoint; loops are dropped, parallel arcs kept.
/// Throws std::invalid_argument for a non-contractible arc.
Relabeled contract_butterfly(const Digraph& g, ArcId a);

/// Merges a vertex set inducing a strongly-connected subdigraph into one vertex
/// occupying the slot of its smallest member. Loops are dropped, arcs between
/// the set and the rest keep their multiplicity.
Relabeled contract_strong(const Digraph& g, std::span<const Vertex> set);

Relabeled induced(const Digraph& g, std::span<const Vertex> vertices);
Relabeled delete_vertices(const Digraph& g, std::span<const Vertex> vertices);
Relabeled delete_arcs(const Digraph& g, std::span<const ArcId> arcs);

/// Vertices of h are shifted by n(g); arcs of h follow those of g.
Digraph disjoint_union(const Digraph& g, const Digraph& h);
Digraph disjoint_copies(const Digraph& h, int k);

// Named families.
Digraph directed_cycle(int n);
Digraph directed_path(int n);
Digraph transitive_tournament(int n);
Digraph complete_digraph(int n);

/// Orients every pair {i<j} uniformly at random. Deterministic in the seed.
Digraph random_tournament(int n, std::uint64_t seed);

/// Artifact-defined sampler: starts from a random tournament, removes up to s
/// random incident pairs per vertex, then adds reverse or parallel arcs with
/// at most max_multiplicity arcs per ordered pair. Rejection-samples until the
/// result is s-semicomplete; throws std::runtime_error after repeated failure.
Digraph random_s_semicomplete(int n, int s, int max_multiplicity, std::uint64_t seed);

/// Tournament on n vertices encoded by the bits of code over pairs (i<j) in
/// lexicographic order; bit set means i -> j.
Digraph tournament_from_code(int n, std::uint64_t code);

}  // namespace tourep
