#include "vcut/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace vcut {

namespace {

// Residual arcs of the split graph. Every v becomes v_in -> v_out with
// capacity 1 (except s and t); edges become uncapacitated arcs u_out -> w_in
// in both orientations, so a minimum cut consists of split arcs only and the
// recovered vertex set is always a genuine separator.
enum class Arc : std::uint8_t { EdgeFwd, Cancel, SplitFwd, SplitRev, Origin };

struct ParentRef {
  VertexId nbr = -1;
  Arc arc = Arc::Origin;
};

enum : std::uint8_t { SideIn = 0, SideOut = 1 };

// Scratch reused across the pair loop of vertex_connectivity.
struct FlowState {
  explicit FlowState(const Graph& g)
      : g(&g),
        in_from(g.n(), -1),
        out_to(g.n(), -1),
        mark_in(g.n(), 0),
        mark_out(g.n(), 0),
        par_in(g.n()),
        par_out(g.n()) {
    queue.reserve(2 * g.n());
  }

  const Graph* g;
  std::vector<VertexId> in_from, out_to;
  std::vector<std::uint32_t> mark_in, mark_out;
  std::vector<ParentRef> par_in, par_out;
  std::vector<std::pair<VertexId, std::uint8_t>> queue;
  std::uint32_t epoch = 0;

  void reset_flow() {
    std::fill(in_from.begin(), in_from.end(), -1);
    std::fill(out_to.begin(), out_to.end(), -1);
  }

  void reach_in(VertexId v, ParentRef p) {
    mark_in[v] = epoch;
    par_in[v] = p;
    queue.emplace_back(v, SideIn);
  }

  void reach_out(VertexId v, ParentRef p) {
    mark_out[v] = epoch;
    par_out[v] = p;
    queue.emplace_back(v, SideOut);
    // A flowed vertex also exposes the reverse split arc v_out -> v_in.
    if (in_from[v] >= 0 && mark_in[v] != epoch)
      reach_in(v, {v, Arc::SplitRev});
  }

  // One residual BFS; true iff t_in was reached (parents describe the path).
  bool search(VertexId s, VertexId t) {
    ++epoch;
    queue.clear();
    mark_out[s] = epoch;
    par_out[s] = {-1, Arc::Origin};
    queue.emplace_back(s, SideOut);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto [v, side] = queue[head];
      if (side == SideOut) {
        for (VertexId w : g->neighbors(v)) {
          if (w == s || mark_in[w] == epoch) continue;
          if (w == t) {
            mark_in[t] = epoch;
            par_in[t] = {v, Arc::EdgeFwd};
            return true;
          }
          reach_in(w, {v, Arc::EdgeFwd});
        }
      } else {
        if (in_from[v] < 0) {
          if (mark_out[v] != epoch) reach_out(v, {v, Arc::SplitFwd});
        } else {
          VertexId a = in_from[v];
          if (a != s && mark_out[a] != epoch) reach_out(a, {v, Arc::Cancel});
        }
      }
    }
    return false;
  }

  // Walk parents from t back to s, updating the flow assignment.
  void augment(VertexId s, VertexId t) {
    VertexId cur = t;
    std::uint8_t side = SideIn;
    for (;;) {
      ParentRef p = (side == SideIn) ? par_in[cur] : par_out[cur];
      switch (p.arc) {
        case Arc::EdgeFwd:
          if (cur != t) in_from[cur] = p.nbr;
          if (p.nbr != s) out_to[p.nbr] = cur;
          cur = p.nbr;
          side = SideOut;
          break;
        case Arc::Cancel:
          cur = p.nbr;
          side = SideIn;
          break;
        case Arc::SplitFwd:
          side = SideIn;
          break;
        case Arc::SplitRev:
          in_from[cur] = -1;
          out_to[cur] = -1;
          side = SideOut;
          break;
        case Arc::Origin:
          return;
      }
    }
  }

  // Max-flow up to cap+1 augmentations; fills cert from the final state.
  void run(VertexId s, VertexId t, int cap, StCutCertificate& cert) {
    reset_flow();
    cert = {};
    while (cert.value <= cap) {
      if (!search(s, t)) {
        collect_cut(s, t, cert);
        collect_paths(s, t, cert);
        return;
      }
      augment(s, t);
      ++cert.value;
    }
    cert.capped = true;
    collect_paths(s, t, cert);
  }

  void collect_cut(VertexId s, VertexId t, StCutCertificate& cert) const {
    for (VertexId v = 0; v < g->n(); ++v)
      if (v != s && v != t && mark_in[v] == epoch && mark_out[v] != epoch)
        cert.cut.push_back(v);
  }

  void collect_paths(VertexId s, VertexId t, StCutCertificate& cert) const {
    for (VertexId x : g->neighbors(s)) {
      if (in_from[x] != s) continue;
      std::vector<VertexId> path{s};
      VertexId v = x;
      while (v != t) {
        path.push_back(v);
        v = out_to[v];
      }
      path.push_back(t);
      cert.paths.push_back(std::move(path));
    }
  }
};

void check_st_pair(const Graph& g, VertexId s, VertexId t) {
  if (s < 0 || s >= g.n() || t < 0 || t >= g.n())
    throw GraphError("st_vertex_connectivity: vertex out of range");
  if (s == t) throw GraphError("st_vertex_connectivity: s == t");
  if (g.has_edge(s, t))
    throw GraphError("st_vertex_connectivity: s and t are adjacent, vertex cut undefined");
}

bool is_complete(const Graph& g) {
  return g.m() == static_cast<std::int64_t>(g.n()) * (g.n() - 1) / 2;
}

// Runs one capped flow inside the pair loop and folds it into the best-so-far.
// Flows are capped at best-1: either the pair improves the minimum or the
// capped flag says it cannot.
struct PairScan {
  FlowState state;
  int search_cap;
  int best;
  VertexId best_s = -1, best_t = -1;
  StCutCertificate best_cert;
  StCutCertificate scratch;

  PairScan(const Graph& g, int search_cap)
      : state(g), search_cap(search_cap), best(search_cap + 1) {}

  void consider(VertexId s, VertexId t) {
    if (best <= 1) return;  // nothing below 1 exists for connected inputs
    state.run(s, t, std::min(search_cap, best - 1), scratch);
    if (!scratch.capped && scratch.value < best) {
      best = scratch.value;
      best_s = s;
      best_t = t;
      best_cert = scratch;
    }
  }
};

}  // namespace

StCutCertificate st_vertex_connectivity(const Graph& g, VertexId s, VertexId t, int cap) {
  check_st_pair(g, s, t);
  if (cap < 1) throw GraphError("st_vertex_connectivity: cap must be >= 1");
  FlowState state(g);
  StCutCertificate cert;
  state.run(s, t, cap, cert);
  return cert;
}

ConnectivityReport vertex_connectivity(const Graph& g, int cap, VconnStrategy strategy) {
  ConnectivityReport report;
  if (g.n() == 0) throw GraphError("vertex_connectivity: empty graph");
  if (!is_connected(g)) {
    report.disconnected = true;
    return report;
  }
  if (is_complete(g)) {
    report.connectivity = g.n() - 1;
    return report;
  }

  int min_deg = g.degree(0);
  VertexId pivot = 0;
  for (VertexId v = 1; v < g.n(); ++v) {
    if (g.degree(v) < min_deg) {
      min_deg = g.degree(v);
      pivot = v;
    }
  }
  // kappa <= min degree for incomplete graphs, so the search never needs to
  // look above it even when uncapped.
  int search_cap = (cap == kUncapped) ? min_deg : std::min(cap, min_deg);
  PairScan scan(g, search_cap);

  if (strategy == VconnStrategy::AllPairs) {
    for (VertexId s = 0; s < g.n() && scan.best > 1; ++s)
      for (VertexId t = s + 1; t < g.n() && scan.best > 1; ++t)
        if (!g.has_edge(s, t)) scan.consider(s, t);
  } else {
    for (VertexId t = 0; t < g.n() && scan.best > 1; ++t)
      if (t != pivot && !g.has_edge(pivot, t)) scan.consider(pivot, t);
    auto nbrs = g.neighbors(pivot);
    for (std::size_t i = 0; i < nbrs.size() && scan.best > 1; ++i)
      for (std::size_t j = i + 1; j < nbrs.size() && scan.best > 1; ++j)
        if (!g.has_edge(nbrs[i], nbrs[j])) scan.consider(nbrs[i], nbrs[j]);
  }

  if (scan.best_s < 0) {
    // Every flow hit the cap, so the true connectivity is above it. With
    // search_cap == min degree this cannot happen (kappa <= min degree and
    // some considered pair attains it), so the cap must have been the caller's.
    report.connectivity = search_cap + 1;
    report.capped = true;
    return report;
  }
  report.connectivity = scan.best;
  report.witness_cut = scan.best_cert.cut;
  return report;
}

CutResult has_cut_at_most(const Graph& g, int kappa) {
  if (!is_connected(g)) throw GraphError("has_cut_at_most: graph is disconnected");
  if (kappa < 1 || kappa > g.n() - 2)
    throw GraphError("has_cut_at_most: kappa " + std::to_string(kappa) +
                     " outside [1, n-2]");
  auto report = vertex_connectivity(g, kappa);
  if (report.capped || report.connectivity > kappa)
    return CutResult::no_cut_within(kappa);
  return CutResult::cut_found(kappa, report.witness_cut);
}

ConnectivityReport brute_force_min_cut(const Graph& g) {
  if (g.n() > 12) throw GraphError("brute_force_min_cut: n > 12");
  if (!is_connected(g)) throw GraphError("brute_force_min_cut: graph is disconnected");
  int n = g.n();

  std::uint16_t adj[12] = {};
  for (auto [u, v] : g.edges()) {
    adj[u] = static_cast<std::uint16_t>(adj[u] | (1u << v));
    adj[v] = static_cast<std::uint16_t>(adj[v] | (1u << u));
  }
  auto connected_on = [&](std::uint16_t mask) {
    std::uint16_t comp = mask & static_cast<std::uint16_t>(-mask);  // lowest vertex
    for (;;) {
      std::uint16_t grown = comp;
      std::uint16_t rest = comp;
      while (rest) {
        int v = std::countr_zero(rest);
        rest = static_cast<std::uint16_t>(rest & (rest - 1));
        grown = static_cast<std::uint16_t>(grown | (adj[v] & mask));
      }
      if (grown == comp) break;
      comp = grown;
    }
    return comp == mask;
  };

  std::uint16_t full = static_cast<std::uint16_t>((1u << n) - 1);
  std::vector<int> idx;
  for (int size = 1; size <= n - 2; ++size) {
    idx.assign(size, 0);
    for (int i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      std::uint16_t cut_mask = 0;
      for (int i : idx) cut_mask = static_cast<std::uint16_t>(cut_mask | (1u << i));
      if (!connected_on(static_cast<std::uint16_t>(full & ~cut_mask))) {
        ConnectivityReport report;
        report.connectivity = size;
        report.witness_cut.assign(idx.begin(), idx.end());
        return report;
      }
      // next combination in lexicographic order
      int i = size - 1;
      while (i >= 0 && idx[i] == n - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  ConnectivityReport report;
  report.connectivity = n - 1;  // no proper subset disconnects: complete graph
  return report;
}

bool verify_cut(const Graph& g, const std::vector<VertexId>& s) {
  if (s.empty()) throw GraphError("verify_cut: empty set");
  auto removed = remove_vertices(g, s);  // throws if s covers everything
  return component_count(removed.graph) >= 2;
}

}  // namespace vcut
