#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "liars/distance.hpp"
#include "liars/graph.hpp"
#include "liars/responders.hpp"
#include "liars/weights.hpp"

namespace liars {

struct TranscriptEntry {
  int round = 0;
  Query query;
  int reply = -1;
  std::optional<bool> was_lie;
};

/// Parameters a strategy actually ran with (wrapper-derived values
/// included). Serialized into bench reports.
struct StrategyParams {
  double gamma = 0.0;  // infinity() in the error-less regime
  int lie_budget = 0;
  double rate = 0.0;
  double noise = 0.0;
  double confidence = 0.0;
  double epsilon = 0.0;
  int declared_length = 0;  // Q for wrappers, 0 when not length-declared
  int boost_repeats = 1;    // physical repeats per logical query
};

struct SearchResult {
  int found = -1;
  int rounds = 0;
  /// Closed-form worst-case bound of the applicable guarantee (real
  /// valued; +infinity for shape-only guarantees).
  double bound = 0.0;
  StrategyParams params;
  std::vector<TranscriptEntry> transcript;
  std::vector<WeightSnapshot> trace;  // filled when tracing is requested
  int heavy_rounds = 0;               // edge strategies: cyclic-phase rounds
};

inline std::string query_to_string(const Query& q) {
  if (q.kind == QueryKind::vertex) return std::to_string(q.a);
  return std::to_string(q.a) + "-" + std::to_string(q.b);
}

/// Transcript CSV: round,query_kind,query,reply,was_lie.
inline void write_transcript_csv(const std::vector<TranscriptEntry>& ts,
                                 std::ostream& out) {
  out << "round,query_kind,query,reply,was_lie\n";
  for (const auto& t : ts) {
    out << t.round << ','
        << (t.query.kind == QueryKind::vertex ? "vertex" : "edge") << ','
        << query_to_string(t.query) << ',' << t.reply << ',';
    if (t.was_lie.has_value()) out << (*t.was_lie ? 1 : 0);
    out << '\n';
  }
}

/// Weight trace CSV: round,query,reply,factor,heavy.
inline void write_trace_csv(const std::vector<TranscriptEntry>& ts,
                            const std::vector<WeightSnapshot>& trace,
                            std::ostream& out) {
  out << "round,query,reply,factor,heavy\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << (i + 1) << ',';
    if (i < ts.size())
      out << query_to_string(ts[i].query) << ',' << ts[i].reply;
    else
      out << ",";
    out << ',' << trace[i].factor << ',';
    if (trace[i].heavy >= 0)
      out << trace[i].heavy;
    else
      out << '-';
    out << '\n';
  }
}

/// Fill was_lie against a known target: a reply is a lie iff it is not in
/// the truthful reply set. Used post-hoc, also for adversaries (judged
/// against the candidate that survived).
inline void attribute_lies(const Graph& g, const DistanceMatrix& d, int target,
                           std::vector<TranscriptEntry>& ts) {
  for (auto& t : ts) {
    auto truth = truthful_replies(g, d, target, t.query);
    t.was_lie =
        std::find(truth.begin(), truth.end(), t.reply) == truth.end();
  }
}

/// Number of entries inconsistent with `target` (its lie counter).
inline int lies_against(const Graph& g, const DistanceMatrix& d, int target,
                        const std::vector<TranscriptEntry>& ts) {
  int lies = 0;
  for (const auto& t : ts) {
    auto truth = truthful_replies(g, d, target, t.query);
    if (std::find(truth.begin(), truth.end(), t.reply) == truth.end()) ++lies;
  }
  return lies;
}

}  // namespace liars
