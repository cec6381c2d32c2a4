#pragma once

#include <optional>
#include <vector>

#include "tourep/digraph.hpp"

namespace tourep {

/// Isomorphism-invariant encoding of a multi-digraph: the lexicographically
/// smallest row-major multiplicity matrix over all vertex orders that sort the
/// vertices by (out-degree, in-degree). Brute force; meant for n <= 10.
struct CanonicalForm {
  int n = 0;
  std::vector<int> matrix;

  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm canonical_form(const Digraph& g);

/// A bijection f with mult_a(u,v) == mult_b(f(u), f(v)) for all u, v.
std::optional<std::vector<Vertex>> find_isomorphism(const Digraph& a, const Digraph& b);

inline bool are_isomorphic(const Digraph& a, const Digraph& b) {
  return find_isomorphism(a, b).has_value();
}

/// All automorphisms of h as vertex permutations, identity first.
std::vector<std::vector<Vertex>> automorphisms(const Digraph& h);

/// Every labeled tournament on n vertices (2^(n(n-1)/2) of them, n <= 7).
std::vector<Digraph> all_tournaments(int n);

/// One representative per isomorphism class of tournaments on n vertices
/// (n <= 6), in increasing order of their canonical form.
std::vector<Digraph> tournament_classes(int n);

}  // namespace tourep
