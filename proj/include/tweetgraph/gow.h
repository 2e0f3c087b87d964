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

#ifndef TWEETGRAPH_GOW_H_
#define TWEETGRAPH_GOW_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "tweetgraph/corpus.h"
#include "tweetgraph/embeddings.h"

namespace tweetgraph::gow {

using NodeId = std::uint32_t;
using TweetIndex = std::uint32_t;

// A group of surface tokens represented by one leading token.
struct TokenNode {
  NodeId id = 0;
  std::string leading_token;
  std::set<std::string> members;
  // Sorted indices of the corpus tweets containing any member.
  std::vector<TweetIndex> tweets;

  std::size_t tweet_df() const { return tweets.size(); }
};

// Graph-of-Words: token nodes joined by fractional co-occurrence edges.
//
// Node ids are dense and never reused; merged-away nodes stay in storage as
// dead slots so ids remain stable for exports and merge logs.
class GraphOfWords {
 public:
  using Adjacency = std::unordered_map<NodeId, double>;

  GraphOfWords() = default;

  // One node per unique token in first-appearance order. Every tweet with
  // n >= 2 unique tokens adds 1/(n-1) to each of its token pairs.
  static GraphOfWords build(const corpus::Corpus& corpus);

  // Appends a node. Members must include the leading token and be disjoint
  // from every existing member set.
  NodeId add_node(std::string leading_token, std::set<std::string> members,
                  std::vector<TweetIndex> tweets);
  // Adds `weight` to the undirected edge {a, b}. Self-loops are rejected.
  void add_co_weight(NodeId a, NodeId b, double weight);

  // Contracts `src` into `dst`: members and tweets are unioned, src's edges
  // are re-attached to dst by weight addition, the {src, dst} edge is
  // discarded and src dies. dst keeps its leading token.
  void merge(NodeId src, NodeId dst);

  bool is_live(NodeId id) const { return id < nodes_.size() && live_[id]; }
  // Throws NotFoundError for unknown or dead ids.
  const TokenNode& node(NodeId id) const;
  const Adjacency& neighbors(NodeId id) const;
  double co_weight(NodeId a, NodeId b) const;

  std::optional<NodeId> find(std::string_view token) const;

  // Live ids, ascending.
  std::vector<NodeId> live_nodes() const;
  std::size_t live_count() const { return live_count_; }
  // Total slots ever allocated, including dead ones.
  std::size_t capacity() const { return nodes_.size(); }
  std::size_t edge_count() const;
  double total_weight() const;

  const std::unordered_map<std::string, NodeId>& token_index() const {
    return token_index_;
  }

 private:
  friend GraphOfWords from_json(const nlohmann::json& doc);

  void require_live(NodeId id) const;

  std::vector<TokenNode> nodes_;
  std::vector<bool> live_;
  std::vector<Adjacency> adjacency_;
  std::unordered_map<std::string, NodeId> token_index_;
  std::size_t live_count_ = 0;
};

// Co-occurrence contribution of one tweet with `unique_tokens` tokens.
// Throws InvalidArgument when unique_tokens < 2.
double co_weight_contribution(std::size_t unique_tokens);

// Cosine of the two nodes' leading-token vectors. Throws NotFoundError if a
// leading token has no vector.
double sim_weight(const GraphOfWords& graph, NodeId a, NodeId b,
                  const embeddings::EmbeddingTable& table);

// {"nodes": [{id, leading_token, members, tweet_df, tweets}],
//  "edges": [{source, target, w_co}]}; live nodes only, ids preserved.
nlohmann::json to_json(const GraphOfWords& graph);
GraphOfWords from_json(const nlohmann::json& doc);

}  // namespace tweetgraph::gow

#endif  // TWEETGRAPH_GOW_H_
