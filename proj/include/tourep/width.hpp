#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tourep/digraph.hpp"

namespace tourep {

/// A total order v_1, ..., v_n of the vertices.
struct Layout {
  std::vector<Vertex> order;

  friend bool operator==(const Layout&, const Layout&) = default;
};

/// Bags X_1, ..., X_r. Arcs may point "backwards" (head in an earlier bag)
/// for free; an arc whose head only appears after its tail's last bag is a
/// violation.
struct PathDecomposition {
  std::vector<std::vector<Vertex>> bags;

  /// max |X_i| - 1, and 0 for an empty decomposition.
  int width() const;

  friend bool operator==(const PathDecomposition&, const PathDecomposition&) = default;
};

struct WidthCertificate {
  int value = 0;
  std::variant<Layout, PathDecomposition> witness;

  const Layout& layout() const { return std::get<Layout>(witness); }
  const PathDecomposition& decomposition() const { return std::get<PathDecomposition>(witness); }
};

/// Throws std::invalid_argument unless layout is a permutation of V(g).
void check_layout(const Digraph& g, const Layout& layout);

/// Largest number of arcs (with multiplicity) from a prefix {v_1..v_{i-1}} to
/// the remaining suffix.
int layout_cutwidth(const Digraph& g, const Layout& layout);

/// Largest number of prefix vertices with an arc into the remaining suffix.
int layout_vertex_separation(const Digraph& g, const Layout& layout);

inline constexpr int kMaxCutwidthVertices = 20;
inline constexpr int kMaxPathwidthVertices = 18;

/// Exact cutwidth by dynamic programming over vertex subsets; the witness is
/// an optimal Layout. Throws std::length_error for n > kMaxCutwidthVertices.
WidthCertificate cutwidth(const Digraph& g);

/// Exact directed pathwidth (vertex-separation DP), witnessed by the
/// PathDecomposition of an optimal layout. Throws std::length_error for
/// n > kMaxPathwidthVertices.
WidthCertificate directed_pathwidth(const Digraph& g);

/// The decomposition induced by a layout:
///   X_i = {v_i} ∪ {u before v_i : u has an arc into {v_i, ..., v_n}}.
/// Its width equals layout_vertex_separation(g, layout).
PathDecomposition layout_to_decomposition(const Digraph& g, const Layout& layout);

struct DecompositionCheck {
  enum class Violation { None, MissingVertex, ArcNotCovered, NotContiguous };

  Violation violation = Violation::None;
  /// The uncovered vertex, the split vertex, or the offending arc's endpoints.
  Vertex vertex = -1;
  Arc arc{};

  bool valid() const { return violation == Violation::None; }
  std::string describe() const;
};

/// Checks bag coverage, arc condition and contiguity, in that order, and
/// reports the first violation. Throws std::out_of_range for bag entries that
/// are not vertices of g.
DecompositionCheck validate_path_decomposition(const Digraph& g, const PathDecomposition& pd);

}  // namespace tourep
