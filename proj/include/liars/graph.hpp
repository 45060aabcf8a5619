#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "liars/rng.hpp"

namespace liars {

struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Connected undirected graph with positive edge lengths.
/// Vertices are dense ids 0..n-1. Immutable after construction.
class Graph {
 public:
  Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    validate_and_index();
  }

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  /// Edges normalized to u < v and sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }

  /// Neighbor ids of v, ascending.
  const std::vector<int>& neighbors(int v) const { return adj_[v]; }

  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const { return max_degree_; }

  bool is_tree() const { return num_edges() == n_ - 1; }
  bool unit_weights() const { return unit_weights_; }
  bool integer_weights() const { return integer_weights_; }

  bool has_edge(int u, int v) const { return edge_index(u, v) >= 0; }

  /// Weight of edge {u,v}; throws if absent.
  double edge_weight(int u, int v) const {
    int i = edge_index(u, v);
    if (i < 0) throw GraphError("no such edge");
    return edges_[i].w;
  }

  /// Index into edges() for {u,v}, or -1.
  int edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    auto it = std::lower_bound(
        edges_.begin(), edges_.end(), std::pair<int, int>{u, v},
        [](const Edge& e, const std::pair<int, int>& key) {
          return std::pair<int, int>{e.u, e.v} < key;
        });
    if (it == edges_.end() || it->u != u || it->v != v) return -1;
    return static_cast<int>(it - edges_.begin());
  }

 private:
  void validate_and_index() {
    if (n_ < 1) throw GraphError("graph must have at least one vertex");
    for (auto& e : edges_) {
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
        throw GraphError("edge endpoint out of range");
      if (e.u == e.v) throw GraphError("self-loop not allowed");
      if (!(e.w > 0)) throw GraphError("nonpositive edge length");
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
      return std::pair{a.u, a.v} < std::pair{b.u, b.v};
    });
    for (std::size_t i = 1; i < edges_.size(); ++i)
      if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
        throw GraphError("duplicate edge");

    adj_.assign(n_, {});
    for (const auto& e : edges_) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    max_degree_ = 0;
    for (auto& a : adj_) {
      std::sort(a.begin(), a.end());
      max_degree_ = std::max(max_degree_, static_cast<int>(a.size()));
    }

    unit_weights_ = true;
    integer_weights_ = true;
    for (const auto& e : edges_) {
      if (e.w != 1.0) unit_weights_ = false;
      if (e.w != std::floor(e.w)) integer_weights_ = false;
    }

    // Connectivity check (iterative DFS).
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj_[x])
        if (!seen[y]) {
          seen[y] = 1;
          ++count;
          stack.push_back(y);
        }
    }
    if (count != n_) throw GraphError("graph is disconnected");
  }

  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  int max_degree_ = 0;
  bool unit_weights_ = true;
  bool integer_weights_ = true;
};

/// Copy of g with every edge length set to 1 (edge-query strategies operate
/// on hop counts only).
inline Graph as_unit_weight(const Graph& g) {
  std::vector<Edge> es = g.edges();
  for (auto& e : es) e.w = 1.0;
  return Graph(g.num_vertices(), std::move(es));
}

/// Parse the edge-list format:
///   n m
///   u v [w]     (m lines; w defaults to 1)
/// Comment lines starting with '#' and blank lines are skipped.
inline Graph parse_graph(std::istream& in) {
  std::string line;
  int n = -1, m = -1;
  std::vector<Edge> edges;
  int edges_read = 0;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    std::istringstream fields(line);
    if (n < 0) {
      if (!(fields >> n >> m)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
          n = -1;
          continue;
        }
        throw GraphError("malformed header at line " + std::to_string(lineno) +
                         ": expected \"n m\"");
      }
      if (n < 1 || m < 0) throw GraphError("invalid header values");
      std::string rest;
      if (fields >> rest) throw GraphError("trailing tokens in header");
      continue;
    }
    Edge e;
    if (!(fields >> e.u >> e.v)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw GraphError("malformed edge at line " + std::to_string(lineno));
    }
    if (!(fields >> e.w)) e.w = 1.0;
    std::string rest;
    if (fields >> rest)
      throw GraphError("trailing tokens at line " + std::to_string(lineno));
    edges.push_back(e);
    ++edges_read;
  }
  if (n < 0) throw GraphError("empty graph document");
  if (edges_read != m)
    throw GraphError("edge count mismatch: header says " + std::to_string(m) +
                     ", found " + std::to_string(edges_read));
  return Graph(n, std::move(edges));
}

inline Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

inline void write_edge_list(const Graph& g, std::ostream& out) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (e.w != 1.0) out << ' ' << e.w;
    out << '\n';
  }
}

/// JSON export {"n": ..., "edges": [[u,v,w], ...]}.
inline void write_json(const Graph& g, std::ostream& out) {
  out << "{\"n\": " << g.num_vertices() << ", \"edges\": [";
  bool first = true;
  for (const auto& e : g.edges()) {
    if (!first) out << ", ";
    first = false;
    out << '[' << e.u << ", " << e.v << ", " << e.w << ']';
  }
  out << "]}";
}

enum class GraphKind {
  path,
  cycle,
  star,
  random_tree,
  grid,
  random_connected,
};

inline GraphKind graph_kind_from_string(const std::string& s) {
  if (s == "path") return GraphKind::path;
  if (s == "cycle") return GraphKind::cycle;
  if (s == "star") return GraphKind::star;
  if (s == "random-tree") return GraphKind::random_tree;
  if (s == "grid") return GraphKind::grid;
  if (s == "random-connected") return GraphKind::random_connected;
  throw GraphError("unknown graph kind: " + s);
}

inline const char* to_string(GraphKind k) {
  switch (k) {
    case GraphKind::path: return "path";
    case GraphKind::cycle: return "cycle";
    case GraphKind::star: return "star";
    case GraphKind::random_tree: return "random-tree";
    case GraphKind::grid: return "grid";
    case GraphKind::random_connected: return "random-connected";
  }
  return "?";
}

struct GenParams {
  int n = 0;          // path/cycle/random-tree/random-connected vertex count
  int leaves = 0;     // star
  int rows = 0;       // grid
  int cols = 0;       // grid
  int extra_edges = 0;  // random-connected: edges added on top of a tree
};

/// Deterministic graph family generator: identical (kind, params, seed)
/// always yields the identical edge set.
inline Graph generate_graph(GraphKind kind, const GenParams& p,
                            std::uint64_t seed = 0) {
  std::vector<Edge> edges;
  switch (kind) {
    case GraphKind::path: {
      if (p.n < 1) throw GraphError("path needs n >= 1");
      for (int i = 0; i + 1 < p.n; ++i) edges.push_back({i, i + 1, 1.0});
      return Graph(p.n, std::move(edges));
    }
    case GraphKind::cycle: {
      if (p.n < 3) throw GraphError("cycle needs n >= 3");
      for (int i = 0; i + 1 < p.n; ++i) edges.push_back({i, i + 1, 1.0});
      edges.push_back({0, p.n - 1, 1.0});
      return Graph(p.n, std::move(edges));
    }
    case GraphKind::star: {
      if (p.leaves < 1) throw GraphError("star needs leaves >= 1");
      for (int i = 1; i <= p.leaves; ++i) edges.push_back({0, i, 1.0});
      return Graph(p.leaves + 1, std::move(edges));
    }
    case GraphKind::random_tree: {
      if (p.n < 1) throw GraphError("random-tree needs n >= 1");
      Rng rng(derive_seed(seed, 0x7ee));
      for (int i = 1; i < p.n; ++i) {
        int parent = static_cast<int>(rng.next_below(i));
        edges.push_back({parent, i, 1.0});
      }
      return Graph(p.n, std::move(edges));
    }
    case GraphKind::grid: {
      if (p.rows < 1 || p.cols < 1) throw GraphError("grid needs rows, cols >= 1");
      if (p.rows * p.cols < 1) throw GraphError("grid too small");
      auto id = [&](int r, int c) { return r * p.cols + c; };
      for (int r = 0; r < p.rows; ++r)
        for (int c = 0; c < p.cols; ++c) {
          if (c + 1 < p.cols) edges.push_back({id(r, c), id(r, c + 1), 1.0});
          if (r + 1 < p.rows) edges.push_back({id(r, c), id(r + 1, c), 1.0});
        }
      return Graph(p.rows * p.cols, std::move(edges));
    }
    case GraphKind::random_connected: {
      if (p.n < 1) throw GraphError("random-connected needs n >= 1");
      Rng rng(derive_seed(seed, 0xc0));
      for (int i = 1; i < p.n; ++i) {
        int parent = static_cast<int>(rng.next_below(i));
        edges.push_back({parent, i, 1.0});
      }
      // Extra edges on top of the spanning tree, skipping duplicates.
      std::vector<std::pair<int, int>> have;
      for (auto& e : edges) have.push_back({std::min(e.u, e.v), std::max(e.u, e.v)});
      std::sort(have.begin(), have.end());
      int added = 0, attempts = 0;
      while (added < p.extra_edges && attempts < 100 * (p.extra_edges + 1)) {
        ++attempts;
        int u = static_cast<int>(rng.next_below(p.n));
        int v = static_cast<int>(rng.next_below(p.n));
        if (u == v) continue;
        std::pair<int, int> key{std::min(u, v), std::max(u, v)};
        if (std::binary_search(have.begin(), have.end(), key)) continue;
        have.insert(std::lower_bound(have.begin(), have.end(), key), key);
        edges.push_back({key.first, key.second, 1.0});
        ++added;
      }
      return Graph(p.n, std::move(edges));
    }
  }
  throw GraphError("unreachable");
}

}  // namespace liars
