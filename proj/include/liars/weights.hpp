#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "liars/distance.hpp"
#include "liars/graph.hpp"

namespace liars {

/// Numeric policy. The double instantiation treats comparisons within a
/// relative 1e-9 as ties (resolved by the deterministic id order); exact
/// scalars (see exact.hpp) compare exactly.
template <class Real>
struct ScalarPolicy {
  static constexpr bool is_exact = false;
  static constexpr double rel_tol = 1e-9;

  static Real from_int(long long x) { return static_cast<Real>(x); }
  static Real from_double(double x) { return static_cast<Real>(x); }
  static double to_double(const Real& x) { return static_cast<double>(x); }

  /// a exceeds b beyond tolerance (strict, tie-aware comparison).
  static bool gt(const Real& a, const Real& b) {
    Real m = std::max(a < 0 ? -a : a, b < 0 ? -b : b);
    return (a - b) > rel_tol * m;
  }
};

template <class Real>
inline bool scalar_lt(const Real& a, const Real& b) {
  return ScalarPolicy<Real>::gt(b, a);
}

/// Per-vertex lie counters, virtual counters, and the weight multiplier.
/// Weights mu(v) = mu0(v) * Gamma^-lies(v) are never stored; the counters
/// are the source of truth and weights are materialized on demand in a
/// grouped, offset form.
///
/// gamma == infinity is a first-class mode: mu(v) is mu0(v) while lies(v)
/// is zero and exactly 0 afterwards.
template <class Real>
class BasicLieState {
 public:
  BasicLieState(int n, Real gamma)
      : gamma_(std::move(gamma)),
        infinite_(false),
        lies_(n, 0),
        vlies_(n, 0),
        mu0_(n, ScalarPolicy<Real>::from_int(1)) {
    if (!(ScalarPolicy<Real>::to_double(gamma_) > 1.0))
      throw std::invalid_argument("gamma must be > 1");
  }

  static BasicLieState infinite_gamma(int n) {
    BasicLieState s(n);
    return s;
  }

  int size() const { return static_cast<int>(lies_.size()); }
  bool gamma_infinite() const { return infinite_; }
  const Real& gamma() const { return gamma_; }

  std::uint32_t lies(int v) const { return lies_[v]; }
  std::uint32_t virtual_lies(int v) const { return vlies_[v]; }
  /// Effective exponent for the virtual weight: lies + virtual lies.
  std::uint32_t combined(int v) const { return lies_[v] + vlies_[v]; }

  void add_lie(int v) { ++lies_[v]; }
  void bump_virtual(int v) { ++vlies_[v]; }

  const Real& mu0(int v) const { return mu0_[v]; }
  void set_mu0(int v, Real w) { mu0_[v] = std::move(w); }

  std::uint32_t min_lies() const {
    return *std::min_element(lies_.begin(), lies_.end());
  }

  /// Number of vertices with lies(v) <= budget.
  int count_within(std::uint32_t budget) const {
    int c = 0;
    for (auto l : lies_)
      if (l <= budget) ++c;
    return c;
  }

  /// The unique vertex with lies(v) <= budget, or nullopt if not unique.
  std::optional<int> unique_within(std::uint32_t budget) const {
    int found = -1;
    for (int v = 0; v < size(); ++v)
      if (lies_[v] <= budget) {
        if (found >= 0) return std::nullopt;
        found = v;
      }
    if (found < 0) return std::nullopt;
    return found;
  }

  /// Smallest-id vertex among those with the minimum lie counter.
  int argmin_lies() const {
    int best = 0;
    for (int v = 1; v < size(); ++v)
      if (lies_[v] < lies_[best]) best = v;
    return best;
  }

  /// Absolute weight of one vertex (may underflow to 0 for huge counters).
  Real weight(int v, bool use_virtual = false) const {
    std::uint32_t k = use_virtual ? combined(v) : lies_[v];
    if (infinite_) return k == 0 ? mu0_[v] : ScalarPolicy<Real>::from_int(0);
    Real w = mu0_[v];
    Real ginv = ScalarPolicy<Real>::from_int(1) / gamma_;
    for (std::uint32_t i = 0; i < k; ++i) w = w * ginv;
    return w;
  }

  /// Materialize weights scaled by Gamma^{+min counter} (finite gamma), so
  /// the largest exponent in play is zero. All ratio-based consumers
  /// (medians, heaviness, round factors) are scale-invariant.
  void materialize(std::vector<Real>& mu, bool use_virtual = false) const {
    const int n = size();
    mu.assign(n, ScalarPolicy<Real>::from_int(0));
    if (infinite_) {
      for (int v = 0; v < n; ++v) {
        std::uint32_t k = use_virtual ? combined(v) : lies_[v];
        if (k == 0) mu[v] = mu0_[v];
      }
      return;
    }
    std::uint32_t mn = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t mx = 0;
    for (int v = 0; v < n; ++v) {
      std::uint32_t k = use_virtual ? combined(v) : lies_[v];
      mn = std::min(mn, k);
      mx = std::max(mx, k);
    }
    const auto pows = inverse_powers(mx - mn);
    for (int v = 0; v < n; ++v) {
      std::uint32_t k = (use_virtual ? combined(v) : lies_[v]) - mn;
      mu[v] = mu0_[v] * pows[k];
    }
  }

  /// Table of Gamma^-k for k = 0..kmax.
  std::vector<Real> inverse_powers(std::uint32_t kmax) const {
    std::vector<Real> pows(kmax + 1);
    pows[0] = ScalarPolicy<Real>::from_int(1);
    Real ginv = ScalarPolicy<Real>::from_int(1) / gamma_;
    for (std::uint32_t k = 1; k <= kmax; ++k) pows[k] = pows[k - 1] * ginv;
    return pows;
  }

 private:
  explicit BasicLieState(int n)
      : gamma_(ScalarPolicy<Real>::from_int(2)),
        infinite_(true),
        lies_(n, 0),
        vlies_(n, 0),
        mu0_(n, ScalarPolicy<Real>::from_int(1)) {}

  Real gamma_;
  bool infinite_;
  std::vector<std::uint32_t> lies_;
  std::vector<std::uint32_t> vlies_;
  std::vector<Real> mu0_;
};

using LieState = BasicLieState<double>;

/// Debug/trace record for one round of a strategy.
struct WeightSnapshot {
  double total = 0;     // mu(V) after the round (absolute, may underflow)
  double factor = 1;    // mu_{t+1} / mu_t
  int heavy = -1;       // 1/2-heavy vertex after the round, or -1
};

/// mu(set): grouped by counter value, summed smallest terms first.
template <class Real>
Real total_weight(const BasicLieState<Real>& s, const std::vector<int>& set,
                  bool use_virtual = false) {
  if (set.empty()) return ScalarPolicy<Real>::from_int(0);
  if (s.gamma_infinite()) {
    Real t = ScalarPolicy<Real>::from_int(0);
    for (int v : set)
      if ((use_virtual ? s.combined(v) : s.lies(v)) == 0) t = t + s.mu0(v);
    return t;
  }
  std::uint32_t mx = 0;
  for (int v : set) mx = std::max(mx, use_virtual ? s.combined(v) : s.lies(v));
  std::vector<Real> buckets(mx + 1, ScalarPolicy<Real>::from_int(0));
  for (int v : set)
    buckets[use_virtual ? s.combined(v) : s.lies(v)] =
        buckets[use_virtual ? s.combined(v) : s.lies(v)] + s.mu0(v);
  const auto pows = s.inverse_powers(mx);
  Real total = ScalarPolicy<Real>::from_int(0);
  for (std::uint32_t k = mx + 1; k-- > 0;) total = total + buckets[k] * pows[k];
  return total;
}

template <class Real>
Real total_weight(const BasicLieState<Real>& s, bool use_virtual = false) {
  std::vector<int> all(s.size());
  for (int v = 0; v < s.size(); ++v) all[v] = v;
  return total_weight(s, all, use_virtual);
}

/// Potential of a site: sum over u of mu(u) * d(site, u), with the
/// edge-vertex distance for edge sites. The virtual flag switches to the
/// virtual weights (lies + virtual lies in the exponent).
template <class Real>
Real potential(const BasicLieState<Real>& s, const DistanceMatrix& d,
               const Query& site, bool use_virtual = false) {
  std::vector<Real> mu;
  s.materialize(mu, use_virtual);
  // Undo the offset so the value is the absolute potential.
  Real scale = ScalarPolicy<Real>::from_int(1);
  if (!s.gamma_infinite()) {
    std::uint32_t mn = std::numeric_limits<std::uint32_t>::max();
    for (int v = 0; v < s.size(); ++v)
      mn = std::min(mn, use_virtual ? s.combined(v) : s.lies(v));
    Real ginv = ScalarPolicy<Real>::from_int(1) / s.gamma();
    for (std::uint32_t i = 0; i < mn; ++i) scale = scale * ginv;
  }
  Real acc = ScalarPolicy<Real>::from_int(0);
  const int n = s.size();
  if (site.kind == QueryKind::vertex) {
    const double* row = d.row(site.a);
    for (int u = 0; u < n; ++u)
      acc = acc + mu[u] * ScalarPolicy<Real>::from_double(row[u]);
  } else {
    const double* ra = d.row(site.a);
    const double* rb = d.row(site.b);
    for (int u = 0; u < n; ++u)
      acc = acc + mu[u] * ScalarPolicy<Real>::from_double(std::min(ra[u], rb[u]));
  }
  return acc * scale;
}

namespace detail {

/// BFS order and parents of a tree rooted at 0.
struct TreeOrder {
  std::vector<int> order;    // BFS order, root first
  std::vector<int> parent;   // parent id, -1 for root
  std::vector<double> pw;    // edge length to parent
};

inline TreeOrder tree_order(const Graph& g) {
  const int n = g.num_vertices();
  TreeOrder t;
  t.order.reserve(n);
  t.parent.assign(n, -2);
  t.pw.assign(n, 0.0);
  t.order.push_back(0);
  t.parent[0] = -1;
  for (std::size_t i = 0; i < t.order.size(); ++i) {
    int x = t.order[i];
    for (int y : g.neighbors(x))
      if (t.parent[y] == -2) {
        t.parent[y] = x;
        t.pw[y] = g.edge_weight(x, y);
        t.order.push_back(y);
      }
  }
  return t;
}

/// All vertex potentials of a tree in O(n): subtree sums upward, then
/// root-to-leaf propagation Phi(c) = Phi(p) + w * (total - 2 * sub(c)).
template <class Real>
void tree_vertex_potentials(const Graph& g, const std::vector<Real>& mu,
                            std::vector<Real>& phi, std::vector<Real>& sub,
                            const TreeOrder& t) {
  const int n = g.num_vertices();
  sub = mu;
  for (int i = n; i-- > 1;) {
    int x = t.order[i];
    sub[t.parent[x]] = sub[t.parent[x]] + sub[x];
  }
  const Real total = sub[t.order[0]];
  phi.assign(n, ScalarPolicy<Real>::from_int(0));
  // Phi(root): weighted depth sum.
  std::vector<Real> depth(n, ScalarPolicy<Real>::from_int(0));
  Real acc = ScalarPolicy<Real>::from_int(0);
  for (int i = 1; i < n; ++i) {
    int x = t.order[i];
    depth[x] = depth[t.parent[x]] + ScalarPolicy<Real>::from_double(t.pw[x]);
    acc = acc + mu[x] * depth[x];
  }
  phi[t.order[0]] = acc;
  for (int i = 1; i < n; ++i) {
    int x = t.order[i];
    Real w = ScalarPolicy<Real>::from_double(t.pw[x]);
    phi[x] = phi[t.parent[x]] + w * (total - sub[x] - sub[x]);
  }
}

}  // namespace detail

/// Site minimizing the potential. Ties (within the scalar policy's
/// tolerance) go to the smallest vertex id, then the lexicographically
/// smallest edge. O(n) on trees, O(n^2) / O(nm) dense otherwise.
template <class Real>
Query find_median(const BasicLieState<Real>& s, const Graph& g,
                  const DistanceMatrix& d, QueryKind mode,
                  bool use_virtual = false) {
  const int n = g.num_vertices();
  if (n == 1) {
    if (mode == QueryKind::vertex) return Query::vertex(0);
    throw std::invalid_argument("edge median of a single-vertex graph");
  }
  std::vector<Real> mu;
  s.materialize(mu, use_virtual);

  if (g.is_tree()) {
    auto t = detail::tree_order(g);
    std::vector<Real> phi, sub;
    detail::tree_vertex_potentials(g, mu, phi, sub, t);
    if (mode == QueryKind::vertex) {
      int best = 0;
      for (int v = 1; v < n; ++v)
        if (ScalarPolicy<Real>::gt(phi[best], phi[v])) best = v;
      return Query::vertex(best);
    }
    // Edge potentials from vertex potentials: for tree edge {p,c} (c the
    // child), Psi(e) = Phi(p) - w * sub(c).
    int bu = -1, bv = -1;
    Real bpsi = ScalarPolicy<Real>::from_int(0);
    for (const auto& e : g.edges()) {
      int c = (t.parent[e.v] == e.u) ? e.v : e.u;
      int p = (c == e.u) ? e.v : e.u;
      assert(t.parent[c] == p);
      Real psi = phi[p] - ScalarPolicy<Real>::from_double(e.w) * sub[c];
      if (bu < 0 || ScalarPolicy<Real>::gt(bpsi, psi)) {
        bu = e.u;
        bv = e.v;
        bpsi = psi;
      }
    }
    return Query::edge(bu, bv);
  }

  if (mode == QueryKind::vertex) {
    int best = -1;
    Real bphi = ScalarPolicy<Real>::from_int(0);
    for (int v = 0; v < n; ++v) {
      const double* row = d.row(v);
      Real acc = ScalarPolicy<Real>::from_int(0);
      for (int u = 0; u < n; ++u)
        acc = acc + mu[u] * ScalarPolicy<Real>::from_double(row[u]);
      if (best < 0 || ScalarPolicy<Real>::gt(bphi, acc)) {
        best = v;
        bphi = acc;
      }
    }
    return Query::vertex(best);
  }
  int bu = -1, bv = -1;
  Real bpsi = ScalarPolicy<Real>::from_int(0);
  for (const auto& e : g.edges()) {
    const double* ra = d.row(e.u);
    const double* rb = d.row(e.v);
    Real acc = ScalarPolicy<Real>::from_int(0);
    for (int u = 0; u < n; ++u)
      acc = acc + mu[u] * ScalarPolicy<Real>::from_double(std::min(ra[u], rb[u]));
    if (bu < 0 || ScalarPolicy<Real>::gt(bpsi, acc)) {
      bu = e.u;
      bv = e.v;
      bpsi = acc;
    }
  }
  return Query::edge(bu, bv);
}

/// Is mu(v) strictly greater than alpha * mu(V)?
template <class Real>
bool is_heavy(const BasicLieState<Real>& s, int v, const Real& alpha,
              bool use_virtual = false) {
  std::vector<Real> mu;
  s.materialize(mu, use_virtual);
  Real total = ScalarPolicy<Real>::from_int(0);
  for (const auto& w : mu) total = total + w;
  return ScalarPolicy<Real>::gt(mu[v], alpha * total);
}

/// Smallest-id alpha-heavy vertex, if any. (For alpha >= 1/2 at most one
/// vertex can qualify; for smaller alpha several can, and the id order
/// makes the choice deterministic.)
template <class Real>
std::optional<int> heavy_vertex(const BasicLieState<Real>& s, const Real& alpha,
                                bool use_virtual = false) {
  std::vector<Real> mu;
  s.materialize(mu, use_virtual);
  Real total = ScalarPolicy<Real>::from_int(0);
  for (const auto& w : mu) total = total + w;
  for (int v = 0; v < s.size(); ++v)
    if (ScalarPolicy<Real>::gt(mu[v], alpha * total)) return v;
  return std::nullopt;
}

/// Increment the lie counter of every vertex outside the compatible set of
/// (query, reply). Returns the multiplicative round factor mu_t+1 / mu_t
/// (0 when gamma is infinite and the compatible side carried no weight).
template <class Real>
Real apply_reply(BasicLieState<Real>& s, const Graph& g,
                 const DistanceMatrix& d, const Query& query, int reply) {
  const auto mask = compatible_mask(g, d, query, reply);
  std::vector<Real> mu;
  s.materialize(mu);
  Real in = ScalarPolicy<Real>::from_int(0);
  Real out = ScalarPolicy<Real>::from_int(0);
  for (int v = 0; v < s.size(); ++v) {
    if (mask[v])
      in = in + mu[v];
    else
      out = out + mu[v];
  }
#ifndef NDEBUG
  const double abs_before = ScalarPolicy<Real>::to_double(total_weight(s));
#endif
  for (int v = 0; v < s.size(); ++v)
    if (!mask[v]) s.add_lie(v);
  const Real total = in + out;
  Real factor;
  if (s.gamma_infinite()) {
    factor = ScalarPolicy<Real>::to_double(total) > 0
                 ? in / total
                 : ScalarPolicy<Real>::from_int(0);
  } else {
    factor = (in + out / s.gamma()) / total;
  }
#ifndef NDEBUG
  // One-round identity mu' = mu(C) + mu(V\C)/Gamma, re-derived from the
  // updated counters. Guards the mask/increment bookkeeping.
  {
    const double abs_after = ScalarPolicy<Real>::to_double(total_weight(s));
    const double predicted =
        abs_before * ScalarPolicy<Real>::to_double(factor);
    assert(std::fabs(abs_after - predicted) <=
           1e-9 * std::max(1e-300, std::max(abs_after, predicted)));
  }
#endif
  return factor;
}

}  // namespace liars
