#include "vcut/graph.hpp"

#include <algorithm>
#include <charconv>
#include <queue>

namespace vcut {

namespace {

constexpr VertexId kMaxVertices = 1 << 24;  // guard against absurd headers

bool parse_decimal(std::string_view tok, std::int64_t& out) {
  if (tok.empty()) return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

}  // namespace

Graph Graph::from_edges(VertexId n, std::vector<std::pair<VertexId, VertexId>> edges) {
  if (n < 1 || n > kMaxVertices)
    throw GraphError("vertex count " + std::to_string(n) + " out of range");
  for (auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw GraphError("edge endpoint out of range: (" + std::to_string(u) + "," +
                       std::to_string(v) + ") with n=" + std::to_string(n));
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw GraphError("duplicate edge");

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.off_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (auto [u, v] : g.edges_) {
    ++g.off_[u + 1];
    ++g.off_[v + 1];
  }
  for (VertexId v = 0; v < n; ++v) g.off_[v + 1] += g.off_[v];
  g.adj_.resize(g.edges_.size() * 2);
  std::vector<std::int32_t> fill(g.off_.begin(), g.off_.end() - 1);
  for (auto [u, v] : g.edges_) {
    g.adj_[fill[u]++] = v;
    g.adj_[fill[v]++] = u;
  }
  // Edge list is sorted, so each adjacency row comes out ascending.
  return g;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  if (u == v) return false;
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

Graph parse_edge_list(std::string_view text) {
  // Strict format; every diagnostic names the 1-based line.
  int line_no = 0;
  std::size_t pos = 0;
  auto next_line = [&](std::string_view& out) -> bool {
    if (pos >= text.size()) return false;
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      out = text.substr(pos);
      pos = text.size();
    } else {
      out = text.substr(pos, nl - pos);
      pos = nl + 1;
    }
    ++line_no;
    return true;
  };
  auto split_pair = [](std::string_view ln, std::string_view& a, std::string_view& b) {
    std::size_t sp = ln.find(' ');
    if (sp == std::string_view::npos) return false;
    a = ln.substr(0, sp);
    b = ln.substr(sp + 1);
    return !a.empty() && !b.empty() && b.find(' ') == std::string_view::npos;
  };

  std::string_view header;
  if (!next_line(header))
    throw ParseError(ParseError::Kind::BadHeader, 1, "line 1: empty input, expected \"n m\"");
  std::string_view ntok, mtok;
  std::int64_t n = 0, m = 0;
  if (!split_pair(header, ntok, mtok) || !parse_decimal(ntok, n) || !parse_decimal(mtok, m))
    throw ParseError(ParseError::Kind::BadHeader, 1, "line 1: malformed header, expected \"n m\"");
  if (n < 1 || n > kMaxVertices)
    throw ParseError(ParseError::Kind::BadHeader, 1,
                     "line 1: vertex count " + std::to_string(n) + " out of range");
  if (m < 0 || m > n * (n - 1) / 2)
    throw ParseError(ParseError::Kind::BadHeader, 1,
                     "line 1: edge count " + std::to_string(m) + " out of range");

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::string_view ln;
  while (next_line(ln)) {
    if (ln.empty() && pos >= text.size()) {
      --line_no;  // tolerated trailing newline, not a line of content
      break;
    }
    std::string_view utok, vtok;
    std::int64_t u = 0, v = 0;
    if (!split_pair(ln, utok, vtok) || !parse_decimal(utok, u) || !parse_decimal(vtok, v))
      throw ParseError(ParseError::Kind::BadEdgeLine, line_no,
                       "line " + std::to_string(line_no) + ": malformed edge, expected \"u v\"");
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw ParseError(ParseError::Kind::OutOfRange, line_no,
                       "line " + std::to_string(line_no) + ": endpoint out of range [0," +
                           std::to_string(n) + ")");
    if (u == v)
      throw ParseError(ParseError::Kind::SelfLoop, line_no,
                       "line " + std::to_string(line_no) + ": self-loop at vertex " +
                           std::to_string(u));
    if (u > v)
      throw ParseError(ParseError::Kind::BadEdgeLine, line_no,
                       "line " + std::to_string(line_no) + ": endpoints must satisfy u < v");
    edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }
  if (std::ssize(edges) != m)
    throw ParseError(ParseError::Kind::WrongEdgeCount, line_no + 1,
                     "line " + std::to_string(line_no + 1) + ": header declared " +
                         std::to_string(m) + " edges, found " + std::to_string(edges.size()));

  auto sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) {
    // Report the line of the second occurrence.
    for (std::size_t i = 1; i < edges.size(); ++i) {
      bool seen = false;
      for (std::size_t j = 0; j < i; ++j) seen = seen || edges[j] == edges[i];
      if (seen)
        throw ParseError(ParseError::Kind::DuplicateEdge, static_cast<int>(i) + 2,
                         "line " + std::to_string(i + 2) + ": duplicate edge " +
                             std::to_string(edges[i].first) + " " +
                             std::to_string(edges[i].second));
    }
  }
  return Graph::from_edges(static_cast<VertexId>(n), std::move(edges));
}

std::string emit_edge_list(const Graph& g) {
  std::string out;
  out.reserve(16 + g.edges().size() * 12);
  char buf[32];
  auto put_num = [&](std::int64_t x) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    (void)ec;
    out.append(buf, ptr);
  };
  put_num(g.n());
  out.push_back(' ');
  put_num(g.m());
  out.push_back('\n');
  for (auto [u, v] : g.edges()) {
    put_num(u);
    out.push_back(' ');
    put_num(v);
    out.push_back('\n');
  }
  return out;
}

std::vector<std::int32_t> bfs_distances(const Graph& g, VertexId src) {
  std::vector<std::int32_t> dist(g.n(), -1);
  std::vector<VertexId> queue;
  queue.reserve(g.n());
  dist[src] = 0;
  queue.push_back(src);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId u = queue[head];
    for (VertexId w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

bool is_connected(const Graph& g) {
  if (g.n() == 0) return false;
  auto dist = bfs_distances(g, 0);
  return std::find(dist.begin(), dist.end(), -1) == dist.end();
}

int component_count(const Graph& g) {
  auto labels = component_labels(g);
  std::vector<VertexId> uniq(labels);
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  return static_cast<int>(uniq.size());
}

std::vector<VertexId> component_labels(const Graph& g) {
  std::vector<VertexId> label(g.n(), -1);
  std::vector<VertexId> queue;
  for (VertexId s = 0; s < g.n(); ++s) {
    if (label[s] >= 0) continue;
    // Vertices are visited in ascending order, so s is its component's minimum.
    label[s] = s;
    queue.clear();
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (VertexId w : g.neighbors(queue[head])) {
        if (label[w] < 0) {
          label[w] = s;
          queue.push_back(w);
        }
      }
    }
  }
  return label;
}

namespace {

struct EccResult {
  std::int32_t ecc = 0;
  VertexId farthest = 0;
};

EccResult bfs_ecc(const Graph& g, VertexId src, std::vector<std::int32_t>& dist,
                  std::vector<VertexId>& queue) {
  std::fill(dist.begin(), dist.end(), -1);
  queue.clear();
  dist[src] = 0;
  queue.push_back(src);
  EccResult r{0, src};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId u = queue[head];
    if (dist[u] > r.ecc) {
      r.ecc = dist[u];
      r.farthest = u;
    }
    for (VertexId w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return r;
}

std::int32_t exact_diameter(const Graph& g) {
  VertexId n = g.n();
  if (n == 1) return 0;
  if (g.m() == static_cast<std::int64_t>(n) * (n - 1) / 2) return 1;

  std::vector<std::int32_t> dist(n), dist_r(n);
  std::vector<VertexId> queue;
  queue.reserve(n);

  // Double sweep: far vertex from 0, then its eccentricity as the lower bound.
  auto sweep1 = bfs_ecc(g, 0, dist, queue);
  auto sweep2 = bfs_ecc(g, sweep1.farthest, dist, queue);
  std::int32_t lb = sweep2.ecc;

  // Root the scan at a midpoint of the sweep path: `dist` still holds
  // distances from sweep1.farthest, so walk halfway back along them.
  VertexId mid = sweep2.farthest;
  for (std::int32_t steps = sweep2.ecc / 2; steps > 0; --steps) {
    for (VertexId w : g.neighbors(mid)) {
      if (dist[w] == dist[mid] - 1) {
        mid = w;
        break;
      }
    }
  }

  auto root = bfs_ecc(g, mid, dist_r, queue);
  lb = std::max(lb, root.ecc);
  std::vector<std::vector<VertexId>> levels(root.ecc + 1);
  for (VertexId v = 0; v < n; ++v) levels[dist_r[v]].push_back(v);

  // iFUB: no vertex at depth i can have eccentricity above 2i, so once
  // 2i <= lb the bound is exact.
  for (std::int32_t i = root.ecc; 2 * i > lb; --i) {
    for (VertexId v : levels[i]) {
      auto e = bfs_ecc(g, v, dist, queue);
      lb = std::max(lb, e.ecc);
      if (2 * i <= lb) break;
    }
  }
  return lb;
}

}  // namespace

GraphStats stats(const Graph& g) {
  GraphStats s;
  s.n = g.n();
  s.m = g.m();
  for (VertexId v = 0; v < g.n(); ++v) s.max_degree = std::max(s.max_degree, g.degree(v));
  s.is_connected = is_connected(g);
  s.diameter = s.is_connected ? exact_diameter(g) : kDiameterInfinite;
  return s;
}

RemovedGraph remove_vertices(const Graph& g, const std::vector<VertexId>& s) {
  std::vector<char> removed(g.n(), 0);
  for (VertexId v : s) {
    if (v < 0 || v >= g.n())
      throw GraphError("remove_vertices: vertex " + std::to_string(v) + " out of range");
    removed[v] = 1;
  }
  RemovedGraph out;
  std::vector<VertexId> new_id(g.n(), -1);
  for (VertexId v = 0; v < g.n(); ++v) {
    if (!removed[v]) {
      new_id[v] = static_cast<VertexId>(out.old_id.size());
      out.old_id.push_back(v);
    }
  }
  if (out.old_id.empty()) throw GraphError("remove_vertices: set covers all vertices");

  std::vector<std::pair<VertexId, VertexId>> edges;
  for (auto [u, v] : g.edges())
    if (!removed[u] && !removed[v]) edges.emplace_back(new_id[u], new_id[v]);
  out.graph = Graph::from_edges(static_cast<VertexId>(out.old_id.size()), std::move(edges));
  return out;
}

}  // namespace vcut
