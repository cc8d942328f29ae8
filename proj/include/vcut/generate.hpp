#pragma once

#include <cstdint>
#include <string>

#include "vcut/graph.hpp"

namespace vcut {

enum class Family {
  Cycle,
  Path,
  Clique,
  Tree,
  Gnp,
  PlantedSeparator,
  Petersen,
};

const char* family_name(Family f);
bool family_from_name(const std::string& name, Family& out);

// Parameter bundle for generate(). Unused fields are ignored per family:
//   cycle/path/clique/tree: n
//   gnp:                    n, p, ensure_connected
//   planted_separator:      a, k, b, density (<= 0 selects an automatic value),
//                           exact (re-draw until vertex connectivity is exactly k)
//   petersen:               none
struct GenSpec {
  Family family = Family::Cycle;
  VertexId n = 0;
  double p = 0.0;
  VertexId a = 0;
  int k = 0;
  VertexId b = 0;
  double density = 0.0;
  bool exact = false;
  bool ensure_connected = false;
  std::uint64_t seed = 0;

  std::string describe() const;  // compact human-readable descriptor for reports
};

// Deterministic in spec (including seed): two calls yield identical edge sets.
// Throws GraphError on invalid parameters or when the bounded retry budget for
// `exact` / `ensure_connected` modes is exhausted.
Graph generate(const GenSpec& spec);

inline GenSpec cycle_spec(VertexId n) { return {.family = Family::Cycle, .n = n}; }
inline GenSpec path_spec(VertexId n) { return {.family = Family::Path, .n = n}; }
inline GenSpec clique_spec(VertexId n) { return {.family = Family::Clique, .n = n}; }
inline GenSpec tree_spec(VertexId n, std::uint64_t seed) {
  return {.family = Family::Tree, .n = n, .seed = seed};
}
inline GenSpec gnp_spec(VertexId n, double p, std::uint64_t seed, bool connected = false) {
  return {.family = Family::Gnp, .n = n, .p = p, .ensure_connected = connected, .seed = seed};
}
inline GenSpec planted_spec(VertexId a, int k, VertexId b, std::uint64_t seed,
                            bool exact = false, double density = 0.0) {
  return {.family = Family::PlantedSeparator,
          .a = a,
          .k = k,
          .b = b,
          .density = density,
          .exact = exact,
          .seed = seed};
}
inline GenSpec petersen_spec() { return {.family = Family::Petersen}; }

}  // namespace vcut
