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

#ifndef TWEETGRAPH_GOT_H_
#define TWEETGRAPH_GOT_H_

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "tweetgraph/corpus.h"
#include "tweetgraph/gow.h"

namespace tweetgraph::got {

using gow::NodeId;
using TweetNodeId = std::uint32_t;

// A deduplicated tweet: the set of token nodes it maps to.
struct TweetNode {
  TweetNodeId id = 0;
  std::vector<NodeId> token_nodes;  // sorted, unique, non-empty
  std::size_t frequency = 0;        // == source_ids.size()
  std::vector<std::string> source_ids;
};

struct ExclusionReport {
  // Nodes whose leading token contains an excluded keyword.
  std::vector<NodeId> excluded_nodes;
  // Kept nodes where only a non-leading member matched: (node, member).
  std::vector<std::pair<NodeId, std::string>> member_matches;
  std::vector<std::string> dropped_tweet_ids;
};

// Graph-of-Tweets. Edges are implicit: any two nodes sharing a token node
// have a positive-intersection NMI edge; all others score -1.
class GraphOfTweets {
 public:
  GraphOfTweets() = default;
  // Ids must equal positions and token sets must be unique.
  // `token_universe` is m, the number of token nodes.
  GraphOfTweets(std::vector<TweetNode> nodes, std::size_t token_universe,
                ExclusionReport report = {});

  // Deduplicates the given token sets in order of first appearance; source
  // ids are synthesized as the input positions.
  static GraphOfTweets from_sets(const std::vector<std::vector<NodeId>>& sets,
                                 std::size_t token_universe);

  const std::vector<TweetNode>& nodes() const { return nodes_; }
  const TweetNode& node(TweetNodeId id) const;
  std::size_t size() const { return nodes_.size(); }
  std::size_t token_universe() const { return m_; }
  // Tweet nodes containing the token node, ascending.
  std::span<const TweetNodeId> tweets_with(NodeId token) const;
  const ExclusionReport& report() const { return report_; }

 private:
  std::vector<TweetNode> nodes_;
  std::size_t m_ = 0;
  std::vector<std::vector<TweetNodeId>> inverted_;
  ExclusionReport report_;
};

// Maps tweets onto live token nodes, drops nodes excluded by keyword
// (case-insensitive substring of the leading token), drops tweets left
// empty, and merges identical sets. m is the live node count after
// exclusion. Throws NotFoundError when a corpus token is not in the graph.
GraphOfTweets build_got(const corpus::Corpus& corpus,
                        const gow::GraphOfWords& graph,
                        std::span<const std::string> exclude_keywords);

// Natural-log PMI from counts. Returns -infinity when f_xy == 0. Throws
// InvalidArgument for non-positive marginals or total.
double pmi(double f_x, double f_y, double f_xy, double total);

// NMI over token-set overlap: x, y set sizes, c intersection, m universe.
// -1 when c == 0. Throws InvalidArgument on inconsistent sizes or when the
// normalizer vanishes (a set covering all m nodes).
double nmi(std::size_t x, std::size_t y, std::size_t c, std::size_t m);
double nmi(const TweetNode& a, const TweetNode& b, std::size_t m);

// Size of the intersection of two sorted id lists.
std::size_t intersection_size(std::span<const NodeId> a,
                              std::span<const NodeId> b);

struct NmiEdge {
  TweetNodeId a = 0;  // a < b
  TweetNodeId b = 0;
  double nmi = 0.0;

  bool operator==(const NmiEdge&) const = default;
};

// Descending nmi, then ascending (a, b).
bool edge_before(const NmiEdge& lhs, const NmiEdge& rhs);

struct TopKResult {
  std::vector<NmiEdge> edges;
  // Pairs sharing at least one token node.
  std::size_t candidate_pairs = 0;
};

// The k best edges among pairs that share a token node. With threads > 1
// the pair space is split across workers and merged by the same order, so
// the result does not depend on the thread count. Throws on k == 0.
TopKResult top_k_edges(const GraphOfTweets& got, std::size_t k,
                       unsigned threads = 1);

// {"m", "nodes": [{id, token_nodes, frequency, source_ids}], "excluded": ...}
nlohmann::json to_json(const GraphOfTweets& got);
GraphOfTweets from_json(const nlohmann::json& doc);

// id_a<TAB>id_b<TAB>nmi per line.
void write_edges_tsv(std::span<const NmiEdge> edges, std::ostream& out);
std::vector<NmiEdge> read_edges_tsv(std::istream& in);

}  // namespace tweetgraph::got

#endif  // TWEETGRAPH_GOT_H_
