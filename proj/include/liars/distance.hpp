#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "liars/graph.hpp"

namespace liars {

/// Absolute tolerance for shortest-path identities on graphs with
/// non-integer lengths. Integer-length graphs compare exactly (sums of
/// integers are exact in doubles well past any graph size used here).
inline constexpr double kDistanceTol = 1e-9;

/// Dense all-pairs shortest-path lengths. Exact BFS for unit lengths,
/// Dijkstra otherwise.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const Graph& g)
      : n_(g.num_vertices()), exact_(g.integer_weights()), d_(static_cast<std::size_t>(n_) * n_) {
    if (g.unit_weights())
      fill_bfs(g);
    else
      fill_dijkstra(g);
  }

  int size() const { return n_; }

  double operator()(int u, int v) const {
    return d_[static_cast<std::size_t>(u) * n_ + v];
  }

  /// Row pointer for tight inner loops (row u is distances from u).
  const double* row(int u) const { return &d_[static_cast<std::size_t>(u) * n_]; }

  /// Edge-vertex distance d({x,y}, v) = min(d(x,v), d(y,v)).
  double edge_vertex(int x, int y, int v) const {
    return std::min((*this)(x, v), (*this)(y, v));
  }

  /// True when all distances are integral and comparisons can be exact.
  bool exact() const { return exact_; }

  /// Equality test for d(a)+w == d(b) honoring the exact/tolerant regime.
  bool eq(double a, double b) const {
    if (exact_) return a == b;
    return std::fabs(a - b) <= kDistanceTol;
  }

 private:
  void fill_bfs(const Graph& g) {
    std::vector<int> dist(n_);
    std::vector<int> frontier;
    for (int s = 0; s < n_; ++s) {
      std::fill(dist.begin(), dist.end(), -1);
      dist[s] = 0;
      frontier.assign(1, s);
      while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
          for (int y : g.neighbors(x))
            if (dist[y] < 0) {
              dist[y] = dist[x] + 1;
              next.push_back(y);
            }
        frontier.swap(next);
      }
      double* row = &d_[static_cast<std::size_t>(s) * n_];
      for (int v = 0; v < n_; ++v) row[v] = dist[v];
    }
  }

  void fill_dijkstra(const Graph& g) {
    const double inf = std::numeric_limits<double>::infinity();
    using Item = std::pair<double, int>;
    std::vector<double> dist(n_);
    for (int s = 0; s < n_; ++s) {
      std::fill(dist.begin(), dist.end(), inf);
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      dist[s] = 0;
      pq.push({0.0, s});
      while (!pq.empty()) {
        auto [dx, x] = pq.top();
        pq.pop();
        if (dx > dist[x]) continue;
        for (int y : g.neighbors(x)) {
          double nd = dx + g.edge_weight(x, y);
          if (nd < dist[y]) {
            dist[y] = nd;
            pq.push({nd, y});
          }
        }
      }
      double* row = &d_[static_cast<std::size_t>(s) * n_];
      for (int v = 0; v < n_; ++v) row[v] = dist[v];
    }
  }

  int n_;
  bool exact_;
  std::vector<double> d_;
};

/// Single-source distances, used by tests to cross-check the matrix.
inline std::vector<double> single_source_distances(const Graph& g, int s) {
  const double inf = std::numeric_limits<double>::infinity();
  using Item = std::pair<double, int>;
  std::vector<double> dist(g.num_vertices(), inf);
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0;
  pq.push({0.0, s});
  while (!pq.empty()) {
    auto [dx, x] = pq.top();
    pq.pop();
    if (dx > dist[x]) continue;
    for (int y : g.neighbors(x)) {
      double nd = dx + g.edge_weight(x, y);
      if (nd < dist[y]) {
        dist[y] = nd;
        pq.push({nd, y});
      }
    }
  }
  return dist;
}

enum class QueryKind : std::uint8_t { vertex, edge };

/// A query site: a single vertex (a) or an edge {a,b} with a < b.
struct Query {
  QueryKind kind = QueryKind::vertex;
  int a = 0;
  int b = -1;

  static Query vertex(int q) { return {QueryKind::vertex, q, -1}; }
  static Query edge(int u, int v) {
    if (u > v) std::swap(u, v);
    return {QueryKind::edge, u, v};
  }
  bool operator==(const Query&) const = default;
};

struct IllegalReply : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Mask (size n, 0/1) of vertices compatible with `reply` to `query`.
///
/// Vertex query q: reply q ("it is the target") keeps {q}; reply u (a
/// neighbor) keeps N(q,u) = {x : d(u,x) + w({q,u}) = d(q,x)}, the vertices
/// some shortest path from q reaches through u.
///
/// Edge query {u,v}: reply v keeps N(e,v) = {x : d(v,x) <= d(u,x)}, or with
/// `strict` the set N_<(e,v) = {x : d(v,x) < d(u,x)}.
inline std::vector<std::uint8_t> compatible_mask(const Graph& g,
                                                 const DistanceMatrix& d,
                                                 const Query& query, int reply,
                                                 bool strict = false) {
  const int n = g.num_vertices();
  std::vector<std::uint8_t> mask(n, 0);
  if (query.kind == QueryKind::vertex) {
    const int q = query.a;
    if (reply == q) {
      mask[q] = 1;
      return mask;
    }
    if (!g.has_edge(q, reply))
      throw IllegalReply("reply " + std::to_string(reply) +
                         " is not adjacent to queried vertex " +
                         std::to_string(q));
    const double w = g.edge_weight(q, reply);
    const double* du = d.row(reply);
    const double* dq = d.row(q);
    for (int x = 0; x < n; ++x)
      if (d.eq(du[x] + w, dq[x])) mask[x] = 1;
    return mask;
  }
  const int u = query.a, v = query.b;
  if (reply != u && reply != v)
    throw IllegalReply("reply " + std::to_string(reply) +
                       " is not an endpoint of the queried edge");
  const int other = (reply == u) ? v : u;
  const double* dr = d.row(reply);
  const double* dother = d.row(other);
  for (int x = 0; x < n; ++x) {
    if (strict ? (dr[x] < dother[x] && !d.eq(dr[x], dother[x]))
               : (dr[x] < dother[x] || d.eq(dr[x], dother[x])))
      mask[x] = 1;
  }
  return mask;
}

/// Sorted vertex list form of compatible_mask.
inline std::vector<int> compatible_set(const Graph& g, const DistanceMatrix& d,
                                       const Query& query, int reply,
                                       bool strict = false) {
  auto mask = compatible_mask(g, d, query, reply, strict);
  std::vector<int> out;
  for (int x = 0; x < g.num_vertices(); ++x)
    if (mask[x]) out.push_back(x);
  return out;
}

/// Legal replies to a query, in the deterministic order used throughout:
/// neighbors ascending then the queried vertex itself (vertex queries), or
/// both endpoints ascending (edge queries).
inline std::vector<int> legal_replies(const Graph& g, const Query& query) {
  if (query.kind == QueryKind::vertex) {
    std::vector<int> out = g.neighbors(query.a);
    out.push_back(query.a);
    return out;
  }
  return {query.a, query.b};
}

}  // namespace liars
