#pragma once

#include <vector>

#include "vcut/graph.hpp"

namespace vcut {

// Witness for s-t vertex connectivity: `value` internally disjoint paths and,
// when the search was not capped, a minimum separator of the same size.
struct StCutCertificate {
  int value = 0;
  bool capped = false;  // value == cap+1 and the true value may be larger
  std::vector<VertexId> cut;                // empty when capped
  std::vector<std::vector<VertexId>> paths; // value disjoint s-t paths
};

struct ConnectivityReport {
  int connectivity = 0;
  bool capped = false;        // true connectivity is > cap; field holds cap+1
  bool disconnected = false;  // input had >= 2 components; connectivity 0
  std::vector<VertexId> witness_cut;  // empty iff complete, capped or disconnected
};

// Verdict shared by the oracle query and the distributed algorithms.
struct CutResult {
  bool has_cut = false;
  int kappa = 0;
  std::vector<VertexId> cut;  // sorted ascending; empty for NoCutWithin

  static CutResult no_cut_within(int kappa) { return {false, kappa, {}}; }
  static CutResult cut_found(int kappa, std::vector<VertexId> s) {
    return {true, kappa, std::move(s)};
  }
  friend bool operator==(const CutResult&, const CutResult&) = default;
};

// Unit-vertex-capacity max-flow between non-adjacent s and t (vertex
// splitting + augmenting paths), stopping after cap+1 augmentations.
// Throws GraphError if s == t or (s,t) is an edge.
StCutCertificate st_vertex_connectivity(const Graph& g, VertexId s, VertexId t, int cap);

enum class VconnStrategy {
  // Flows from one minimum-degree pivot to every non-neighbor, plus flows
  // between non-adjacent neighbor pairs of the pivot. Any minimum cut either
  // misses the pivot (first set) or contains it, in which case minimality
  // places pivot neighbors in two different components (second set).
  PivotNeighbors,
  // Minimum over all non-adjacent pairs in lexicographic order; quadratically
  // many flows, kept as a cross-check for the pivot strategy.
  AllPairs,
};

inline constexpr int kUncapped = -1;

// Global vertex connectivity, exact up to `cap` (kUncapped for no cap).
// Disconnected input reports connectivity 0 with the flag set; complete
// graphs report n-1 with an empty witness.
ConnectivityReport vertex_connectivity(const Graph& g, int cap = kUncapped,
                                       VconnStrategy strategy = VconnStrategy::PivotNeighbors);

// Exact reference semantics for the distributed contract: Cut(S) with
// |S| <= kappa iff kappa(G) <= kappa, else NoCutWithin.
// Pre: g connected, 1 <= kappa <= n-2.
CutResult has_cut_at_most(const Graph& g, int kappa);

// Subset enumeration in increasing size, first disconnecting subset wins.
// Pre: n <= 12, g connected.
ConnectivityReport brute_force_min_cut(const Graph& g);

// True iff removing s leaves >= 2 components. Throws on empty s or s
// covering all vertices.
bool verify_cut(const Graph& g, const std::vector<VertexId>& s);

}  // namespace vcut
