#include "vcut/generate.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "vcut/oracle.hpp"
#include "vcut/rng.hpp"

namespace vcut {

namespace {

constexpr int kGenRetries = 64;

using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

Graph make_cycle(VertexId n) {
  if (n < 3) throw GraphError("cycle requires n >= 3");
  EdgeList e;
  e.reserve(n);
  for (VertexId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  e.emplace_back(0, n - 1);
  return Graph::from_edges(n, std::move(e));
}

Graph make_path(VertexId n) {
  if (n < 1) throw GraphError("path requires n >= 1");
  EdgeList e;
  for (VertexId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph::from_edges(n, std::move(e));
}

Graph make_clique(VertexId n) {
  if (n < 1) throw GraphError("clique requires n >= 1");
  EdgeList e;
  e.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, std::move(e));
}

Graph make_tree(VertexId n, std::uint64_t seed) {
  if (n < 1) throw GraphError("tree requires n >= 1");
  Rng rng(mix64(seed, 0x7265657eULL));
  EdgeList e;
  e.reserve(n > 0 ? n - 1 : 0);
  for (VertexId v = 1; v < n; ++v)
    e.emplace_back(static_cast<VertexId>(rng.below(v)), v);
  return Graph::from_edges(n, std::move(e));
}

Graph gnp_once(VertexId n, double p, Rng& rng) {
  EdgeList e;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (rng.chance(p)) e.emplace_back(u, v);
  return Graph::from_edges(n, std::move(e));
}

Graph make_gnp(const GenSpec& spec) {
  if (spec.n < 1) throw GraphError("gnp requires n >= 1");
  if (spec.p < 0.0 || spec.p > 1.0) throw GraphError("gnp requires p in [0,1]");
  for (int attempt = 0; attempt < kGenRetries; ++attempt) {
    Rng rng(mix64(spec.seed, 0x676e70ULL + attempt));
    Graph g = gnp_once(spec.n, spec.p, rng);
    if (!spec.ensure_connected || is_connected(g)) return g;
  }
  throw GraphError("gnp: no connected draw within " + std::to_string(kGenRetries) +
                   " attempts (n=" + std::to_string(spec.n) +
                   ", p=" + std::to_string(spec.p) + ")");
}

Graph planted_once(const GenSpec& spec, Rng& rng) {
  VertexId a = spec.a, b = spec.b;
  int k = spec.k;
  VertexId n = a + k + b;
  // Layout: A = [0,a), S = [a,a+k), B = [a+k,n).
  EdgeList e;

  auto side_density = [&](VertexId blob) {
    if (spec.density > 0.0) return std::min(spec.density, 1.0);
    // Aim for minimum degree comfortably above k so no accidental smaller
    // cut appears; `exact` mode re-draws if one does anyway.
    double z = static_cast<double>(blob);
    return std::min(1.0, (2.0 * std::log(z + 1.0) + 2.0 * (k + 1)) / z);
  };
  double pa = side_density(a + k);
  double pb = side_density(b + k);

  // Random attachment trees keep each side connected regardless of density.
  for (VertexId v = 1; v < a; ++v)
    e.emplace_back(static_cast<VertexId>(rng.below(v)), v);
  for (VertexId v = 1; v < b; ++v)
    e.emplace_back(a + k + static_cast<VertexId>(rng.below(v)), a + k + v);

  for (VertexId u = 0; u < a; ++u)
    for (VertexId v = u + 1; v < a; ++v)
      if (rng.chance(pa)) e.emplace_back(u, v);
  for (VertexId u = 0; u < b; ++u)
    for (VertexId v = u + 1; v < b; ++v)
      if (rng.chance(pb)) e.emplace_back(a + k + u, a + k + v);

  // Each separator vertex touches both sides at least once; extra separator
  // edges follow the side densities. No S-S and no A-B edges, so S is a cut.
  for (int i = 0; i < k; ++i) {
    VertexId s = a + i;
    VertexId fa = static_cast<VertexId>(rng.below(a));
    VertexId fb = a + k + static_cast<VertexId>(rng.below(b));
    e.emplace_back(fa, s);
    e.emplace_back(s, fb);
    for (VertexId u = 0; u < a; ++u)
      if (u != fa && rng.chance(pa)) e.emplace_back(u, s);
    for (VertexId u = a + k; u < n; ++u)
      if (u != fb && rng.chance(pb)) e.emplace_back(s, u);
  }

  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return Graph::from_edges(n, std::move(e));
}

Graph make_planted(const GenSpec& spec) {
  if (spec.a < 1 || spec.b < 1 || spec.k < 1)
    throw GraphError("planted_separator requires a >= 1, b >= 1, k >= 1");
  for (int attempt = 0; attempt < kGenRetries; ++attempt) {
    Rng rng(mix64(spec.seed, 0x706c61ULL + attempt));
    Graph g = planted_once(spec, rng);
    if (!spec.exact) return g;
    if (!is_connected(g)) continue;
    // The separator set is a cut by construction, so connectivity is <= k;
    // confirm nothing smaller slipped in.
    if (spec.k == 1) return g;
    auto report = vertex_connectivity(g, spec.k - 1);
    if (report.capped) return g;
  }
  throw GraphError("planted_separator: exact connectivity " + std::to_string(spec.k) +
                   " not reached within " + std::to_string(kGenRetries) + " attempts");
}

Graph make_petersen() {
  EdgeList e;
  for (VertexId i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer 5-cycle
    e.emplace_back(i, i + 5);                // spoke
    e.emplace_back(i + 5, 5 + (i + 2) % 5);  // inner pentagram
  }
  return Graph::from_edges(10, std::move(e));
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::Cycle: return "cycle";
    case Family::Path: return "path";
    case Family::Clique: return "clique";
    case Family::Tree: return "tree";
    case Family::Gnp: return "gnp";
    case Family::PlantedSeparator: return "planted";
    case Family::Petersen: return "petersen";
  }
  return "?";
}

bool family_from_name(const std::string& name, Family& out) {
  for (Family f : {Family::Cycle, Family::Path, Family::Clique, Family::Tree, Family::Gnp,
                   Family::PlantedSeparator, Family::Petersen}) {
    if (name == family_name(f)) {
      out = f;
      return true;
    }
  }
  if (name == "planted_separator") {
    out = Family::PlantedSeparator;
    return true;
  }
  return false;
}

std::string GenSpec::describe() const {
  std::string s = family_name(family);
  switch (family) {
    case Family::Cycle:
    case Family::Path:
    case Family::Clique:
      s += "(n=" + std::to_string(n) + ")";
      break;
    case Family::Tree:
      s += "(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")";
      break;
    case Family::Gnp:
      s += "(n=" + std::to_string(n) + ",p=" + std::to_string(p) +
           (ensure_connected ? ",connected" : "") + ",seed=" + std::to_string(seed) + ")";
      break;
    case Family::PlantedSeparator:
      s += "(a=" + std::to_string(a) + ",k=" + std::to_string(k) + ",b=" + std::to_string(b) +
           (exact ? ",exact" : "") + ",seed=" + std::to_string(seed) + ")";
      break;
    case Family::Petersen:
      break;
  }
  return s;
}

Graph generate(const GenSpec& spec) {
  switch (spec.family) {
    case Family::Cycle: return make_cycle(spec.n);
    case Family::Path: return make_path(spec.n);
    case Family::Clique: return make_clique(spec.n);
    case Family::Tree: return make_tree(spec.n, spec.seed);
    case Family::Gnp: return make_gnp(spec);
    case Family::PlantedSeparator: return make_planted(spec);
    case Family::Petersen: return make_petersen();
  }
  throw GraphError("unknown family");
}

}  // namespace vcut
