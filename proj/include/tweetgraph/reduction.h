// Copyright 2026 The tweetgraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TWEETGRAPH_REDUCTION_H_
#define TWEETGRAPH_REDUCTION_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "tweetgraph/embeddings.h"
#include "tweetgraph/gow.h"

namespace tweetgraph::reduction {

using gow::GraphOfWords;
using gow::NodeId;

struct ReductionConfig {
  // Phase I merges nodes found in fewer tweets than this.
  std::size_t min_tweet_df = 5;
  // most_similar depth for Phase II.
  std::size_t top_n = 10;
  // most_similar hits scanned by Phase I for an in-graph target.
  std::size_t phase1_candidate_pool = 50;

  void validate() const;
};

struct MergeEvent {
  NodeId src = 0;
  NodeId dst = 0;
  int phase = 0;
  double trigger_similarity = 0.0;
  std::uint64_t sequence = 0;
  // Leading tokens at merge time, for readable logs.
  std::string src_token;
  std::string dst_token;
};

// Append-only audit trail of merges with strictly increasing sequence.
class MergeLog {
 public:
  const MergeEvent& append(NodeId src, NodeId dst, int phase,
                           double trigger_similarity, std::string src_token,
                           std::string dst_token);
  const std::vector<MergeEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  std::size_t count(int phase) const;

 private:
  std::vector<MergeEvent> events_;
};

struct PhaseReport {
  std::size_t nodes_before = 0;
  std::size_t nodes_after = 0;
  std::size_t merges = 0;
  // Nodes with no embedding, or (Phase I) no live target among the hits.
  std::vector<NodeId> unresolved;
};

// Sum of co-occurrence weights on the node's edges.
double node_degree(const GraphOfWords& graph, NodeId id);

// Contracts src into dst and records the event.
const MergeEvent& merge_nodes(GraphOfWords& graph, NodeId src, NodeId dst,
                              MergeLog& log, int phase = 0,
                              double trigger_similarity = 0.0);

// Memoizes most_similar per word. Leading tokens never change during a run,
// so a lookup per distinct leading token suffices.
class SimilarityCache {
 public:
  explicit SimilarityCache(const embeddings::EmbeddingTable& table)
      : table_(table) {}

  // The first top_n hits, or nullopt when the word has no vector.
  std::optional<std::span<const embeddings::Neighbor>> lookup(
      const std::string& word, std::size_t top_n);

 private:
  struct Entry {
    std::size_t depth = 0;
    bool resolvable = true;
    std::vector<embeddings::Neighbor> hits;
  };

  const embeddings::EmbeddingTable& table_;
  std::map<std::string, Entry> entries_;
};

// Frequency-based merging of rare nodes into their most similar live node.
PhaseReport phase1_reduce(GraphOfWords& graph,
                          const embeddings::EmbeddingTable& table,
                          const ReductionConfig& config, MergeLog& log);

// Semantic node collapse: for each hub in ascending start-of-phase degree,
// merge each neighbor into the most similar other neighbor that appears in
// its most_similar list.
PhaseReport phase2_reduce(GraphOfWords& graph,
                          const embeddings::EmbeddingTable& table,
                          const ReductionConfig& config, MergeLog& log);

// One JSON object per line: sequence, phase, src, dst, tokens, similarity.
void write_merge_log(const MergeLog& log, std::ostream& out);
std::vector<MergeEvent> read_merge_log(std::istream& in);

}  // namespace tweetgraph::reduction

#endif  // TWEETGRAPH_REDUCTION_H_
