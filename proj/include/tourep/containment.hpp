#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tourep/digraph.hpp"

namespace tourep {

enum class Relation { Subdigraph, TopologicalMinor, Immersion, StrongMinor, ButterflyMinor };

inline constexpr Relation kAllRelations[] = {Relation::Subdigraph, Relation::TopologicalMinor,
                                             Relation::Immersion, Relation::StrongMinor,
                                             Relation::ButterflyMinor};

std::string_view to_string(Relation rel);
/// Accepts the names produced by to_string plus short aliases
/// ("subdigraph", "topological", "immersion", "strong", "butterfly").
Relation parse_relation(std::string_view name);

/// A subdigraph of a host, as sorted vertex ids and sorted arc ids.
struct Subdigraph {
  std::vector<Vertex> vertices;
  std::vector<ArcId> arcs;

  friend bool operator==(const Subdigraph&, const Subdigraph&) = default;
  friend auto operator<=>(const Subdigraph&, const Subdigraph&) = default;
};

/// The digraph spanned by a Subdigraph, relabeled densely in vertex order.
Digraph materialize(const Digraph& g, const Subdigraph& sub);

/// Subdigraph, topological minor and immersion models: branch[v] is the image
/// of pattern vertex v, paths[a] the host arcs of the path realizing pattern
/// arc a (a single arc for Subdigraph).
struct PathModel {
  std::vector<Vertex> branch;
  std::vector<std::vector<ArcId>> paths;
};

/// Strong minor model: disjoint branch sets, the arcs making each set
/// strongly connected, and one distinct host arc per pattern arc.
struct StrongMinorModel {
  std::vector<std::vector<Vertex>> branch_sets;
  std::vector<std::vector<ArcId>> inner_arcs;
  std::vector<ArcId> connections;
};

/// Butterfly minor model: the subdigraph kept from the host and the arcs
/// contracted in order. roots/branch_sets describe which host vertices end up
/// as each pattern vertex.
struct ButterflyModel {
  std::vector<Vertex> roots;
  std::vector<std::vector<Vertex>> branch_sets;
  Subdigraph witness;
  std::vector<ArcId> contractions;
};

struct ContainmentModel {
  Relation relation = Relation::Subdigraph;
  std::variant<PathModel, StrongMinorModel, ButterflyModel> data;

  /// Host vertices and arcs used by the model (path interiors included).
  Subdigraph image(const Digraph& g) const;
};

/// Raised when a search exceeds its node or time budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SearchLimits {
  /// 0 = unlimited.
  std::uint64_t max_nodes = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct ContainmentOptions {
  int max_pattern_vertices = 5;
  int max_host_vertices = 12;
  SearchLimits limits;
};

/// Decides whether g contains h under rel; returns the first model in the
/// fixed search order. The search is single-threaded, so results are
/// deterministic. Throws std::length_error when h or g exceed the caps and
/// BudgetExceeded when the limits are hit.
std::optional<ContainmentModel> contains(const Digraph& h, const Digraph& g, Relation rel,
                                         const ContainmentOptions& options = {});

/// Same search restricted to a subdigraph of g; the model refers to g's ids.
std::optional<ContainmentModel> contains_within(const Digraph& h, const Digraph& g, Relation rel,
                                                const Subdigraph& within, const ContainmentOptions& options = {});

/// Deletes arcs in id order, then isolated vertices, while the part left still
/// contains h. Applied to a host, the result is a minimal host.
Subdigraph shrink_to_minimal_host(const Digraph& h, const Digraph& g, Relation rel, Subdigraph host,
                                  const ContainmentOptions& options = {});

struct ModelCheck {
  bool valid = true;
  std::string reason;
  std::optional<ArcId> arc;
  std::optional<Vertex> vertex;

  static ModelCheck ok() { return {}; }
};

/// Re-checks every clause of the relation's definition for a claimed model.
/// Independent of the search; usable on any hand-made witness.
ModelCheck verify_model(const Digraph& h, const Digraph& g, const ContainmentModel& model);

/// Subdigraph-minimal hosts: subdigraphs F of g containing h such that no
/// proper subdigraph of F does.
struct HostFamily {
  Relation relation = Relation::Subdigraph;
  Digraph pattern;
  std::vector<Subdigraph> hosts;
  /// False when the enumeration stopped on its budget; the family must not be
  /// used for packing or covering then.
  bool complete = true;
};

struct EnumerationOptions {
  ContainmentOptions containment;
  /// Stop (complete = false) once this many minimal hosts are found.
  std::size_t max_hosts = 100000;
};

/// Enumerates every subdigraph-minimal host, sorted. Models are enumerated
/// with symmetry breaking on the pattern's automorphisms, partial images that
/// already contain h are cut off, and each distinct image is kept iff deleting
/// any arc (or any isolated vertex) loses containment.
HostFamily enumerate_minimal_hosts(const Digraph& h, const Digraph& g, Relation rel,
                                   const EnumerationOptions& options = {});

HostFamily enumerate_minimal_hosts(const Digraph& h, const Digraph& g, Relation rel, std::size_t cap);

/// Reference decision procedure for butterfly minors straight from the
/// definition: explores every digraph reachable from g by deleting arcs or
/// vertices and contracting contractible arcs, memoized on canonical forms.
/// Exponential; for cross-checking on hosts with a handful of vertices.
bool butterfly_minor_by_contraction(const Digraph& h, const Digraph& g);

}  // namespace tourep
