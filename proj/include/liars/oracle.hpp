#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "liars/distance.hpp"
#include "liars/graph.hpp"

namespace liars {

/// Exact minimax game value on tiny instances: the optimal worst-case
/// number of queries to isolate the target against an adversary who may
/// charge at most `max_lies` lies to it. Exhaustive alternating search
/// over lie-counter vectors (counters capped at max_lies+1) with
/// memoization. The Questioner minimizes over queries, the Responder
/// maximizes over replies that keep some candidate alive.
class MinimaxOracle {
 public:
  MinimaxOracle(const Graph& g, int max_lies, QueryKind mode)
      : g_(g), d_(g), lies_cap_(max_lies), mode_(mode) {
    if (g.num_vertices() > 8 || max_lies > 2)
      throw std::invalid_argument(
          "minimax oracle is limited to n <= 8 and L <= 2");
    build_masks();
  }

  int value() {
    std::vector<std::uint8_t> counters(g_.num_vertices(), 0);
    return solve(counters);
  }

 private:
  void build_masks() {
    const int n = g_.num_vertices();
    if (mode_ == QueryKind::vertex) {
      for (int q = 0; q < n; ++q) {
        std::vector<std::vector<std::uint8_t>> replies;
        for (int r : legal_replies(g_, Query::vertex(q)))
          replies.push_back(compatible_mask(g_, d_, Query::vertex(q), r));
        query_masks_.push_back(std::move(replies));
      }
    } else {
      for (const auto& e : g_.edges()) {
        std::vector<std::vector<std::uint8_t>> replies;
        for (int r : {e.u, e.v})
          replies.push_back(compatible_mask(g_, d_, Query::edge(e.u, e.v), r));
        query_masks_.push_back(std::move(replies));
      }
    }
  }

  std::uint64_t encode(const std::vector<std::uint8_t>& c) const {
    std::uint64_t key = 0;
    for (auto x : c) key = key * (lies_cap_ + 2) + x;
    return key;
  }

  int survivors(const std::vector<std::uint8_t>& c) const {
    int s = 0;
    for (auto x : c)
      if (x <= lies_cap_) ++s;
    return s;
  }

  int solve(const std::vector<std::uint8_t>& counters) {
    if (survivors(counters) <= 1) return 0;
    const std::uint64_t key = encode(counters);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    int best = kUnreachable;
    for (const auto& replies : query_masks_) {
      int worst = -1;
      for (const auto& mask : replies) {
        std::vector<std::uint8_t> next = counters;
        bool any_alive = false;
        bool changed = false;
        for (int v = 0; v < g_.num_vertices(); ++v) {
          if (!mask[v] && next[v] <= lies_cap_) {
            ++next[v];
            changed = true;
          }
          if (next[v] <= lies_cap_) any_alive = true;
        }
        if (!any_alive) continue;  // responder would forfeit; illegal reply
        if (!changed) {
          // The responder can repeat this reply forever; the query is a
          // wasted round and an optimal questioner never asks it.
          worst = kUnreachable;
          break;
        }
        worst = std::max(worst, solve(next));
        if (worst + 1 >= best) break;
      }
      if (worst >= 0 && worst < kUnreachable) best = std::min(best, 1 + worst);
    }
    memo_.emplace(key, best);
    return best;
  }

  static constexpr int kUnreachable = 1 << 20;

  const Graph& g_;
  DistanceMatrix d_;
  int lies_cap_;
  QueryKind mode_;
  std::vector<std::vector<std::vector<std::uint8_t>>> query_masks_;
  std::unordered_map<std::uint64_t, int> memo_;
};

inline int minimax_oracle(const Graph& g, int max_lies, QueryKind mode) {
  return MinimaxOracle(g, max_lies, mode).value();
}

}  // namespace liars
