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

#include "tweetgraph/gow.h"

#include <algorithm>
#include <iterator>

#include "tweetgraph/error.h"
#include "tweetgraph/util.h"

namespace tweetgraph::gow {

double co_weight_contribution(std::size_t unique_tokens) {
  if (unique_tokens < 2) {
    throw InvalidArgument("co-occurrence needs at least two unique tokens");
  }
  return 1.0 / static_cast<double>(unique_tokens - 1);
}

GraphOfWords GraphOfWords::build(const corpus::Corpus& corpus) {
  GraphOfWords graph;
  std::vector<NodeId> ids;
  for (std::size_t t = 0; t < corpus.size(); ++t) {
    const auto tweet_index = static_cast<TweetIndex>(t);
    ids.clear();
    for (const std::string& token : corpus.tweets()[t].tokens) {
      auto found = graph.token_index_.find(token);
      NodeId id;
      if (found == graph.token_index_.end()) {
        id = graph.add_node(token, {token}, {});
      } else {
        id = found->second;
      }
      std::vector<TweetIndex>& postings = graph.nodes_[id].tweets;
      if (!postings.empty() && postings.back() == tweet_index) continue;
      postings.push_back(tweet_index);
      ids.push_back(id);
    }
    if (ids.size() < 2) continue;
    const double w = co_weight_contribution(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        graph.add_co_weight(ids[i], ids[j], w);
      }
    }
  }
  return graph;
}

NodeId GraphOfWords::add_node(std::string leading_token,
                              std::set<std::string> members,
                              std::vector<TweetIndex> tweets) {
  if (!members.contains(leading_token)) {
    throw InvalidArgument("leading token '" + leading_token +
                          "' must be a member of its node");
  }
  for (const std::string& m : members) {
    if (token_index_.contains(m)) {
      throw InvalidArgument("token '" + m + "' already belongs to a node");
    }
  }
  std::sort(tweets.begin(), tweets.end());
  tweets.erase(std::unique(tweets.begin(), tweets.end()), tweets.end());
  const auto id = static_cast<NodeId>(nodes_.size());
  for (const std::string& m : members) token_index_.emplace(m, id);
  nodes_.push_back({id, std::move(leading_token), std::move(members), std::move(tweets)});
  live_.push_back(true);
  adjacency_.emplace_back();
  ++live_count_;
  return id;
}

void GraphOfWords::add_co_weight(NodeId a, NodeId b, double weight) {
  require_live(a);
  require_live(b);
  if (a == b) throw InvalidArgument("self-loops are not allowed");
  adjacency_[a][b] += weight;
  adjacency_[b][a] += weight;
}

void GraphOfWords::merge(NodeId src, NodeId dst) {
  require_live(src);
  require_live(dst);
  if (src == dst) throw InvalidArgument("cannot merge a node into itself");

  Adjacency moved = std::move(adjacency_[src]);
  adjacency_[src].clear();
  for (const auto& [x, w] : moved) {
    adjacency_[x].erase(src);
    if (x == dst) continue;
    adjacency_[dst][x] += w;
    adjacency_[x][dst] += w;
  }

  TokenNode& from = nodes_[src];
  TokenNode& into = nodes_[dst];
  for (const std::string& m : from.members) token_index_[m] = dst;
  into.members.merge(from.members);
  std::vector<TweetIndex> tweets;
  tweets.reserve(into.tweets.size() + from.tweets.size());
  std::set_union(into.tweets.begin(), into.tweets.end(), from.tweets.begin(),
                 from.tweets.end(), std::back_inserter(tweets));
  into.tweets = std::move(tweets);
  from.members.clear();
  from.tweets.clear();
  live_[src] = false;
  --live_count_;
}

void GraphOfWords::require_live(NodeId id) const {
  if (!is_live(id)) throw NotFoundError("no live token node " + std::to_string(id));
}

const TokenNode& GraphOfWords::node(NodeId id) const {
  require_live(id);
  return nodes_[id];
}

const GraphOfWords::Adjacency& GraphOfWords::neighbors(NodeId id) const {
  require_live(id);
  return adjacency_[id];
}

double GraphOfWords::co_weight(NodeId a, NodeId b) const {
  const Adjacency& adj = neighbors(a);
  auto it = adj.find(b);
  return it == adj.end() ? 0.0 : it->second;
}

std::optional<NodeId> GraphOfWords::find(std::string_view token) const {
  auto it = token_index_.find(std::string(token));
  if (it == token_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<NodeId> GraphOfWords::live_nodes() const {
  std::vector<NodeId> ids;
  ids.reserve(live_count_);
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (live_[id]) ids.push_back(id);
  }
  return ids;
}

std::size_t GraphOfWords::edge_count() const {
  std::size_t twice = 0;
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (live_[id]) twice += adjacency_[id].size();
  }
  return twice / 2;
}

double GraphOfWords::total_weight() const {
  double sum = 0.0;
  for (NodeId a = 0; a < nodes_.size(); ++a) {
    if (!live_[a]) continue;
    for (const auto& [b, w] : adjacency_[a]) {
      if (a < b) sum += w;
    }
  }
  return sum;
}

double sim_weight(const GraphOfWords& graph, NodeId a, NodeId b,
                  const embeddings::EmbeddingTable& table) {
  const std::vector<float> va = table.word_vector(graph.node(a).leading_token);
  const std::vector<float> vb = table.word_vector(graph.node(b).leading_token);
  return embeddings::cosine(va, vb);
}

nlohmann::json to_json(const GraphOfWords& graph) {
  using nlohmann::json;
  json nodes = json::array();
  json edges = json::array();
  for (NodeId id : graph.live_nodes()) {
    const TokenNode& n = graph.node(id);
    nodes.push_back({{"id", n.id},
                     {"leading_token", n.leading_token},
                     {"members", n.members},
                     {"tweet_df", n.tweet_df()},
                     {"tweets", n.tweets}});
    std::vector<std::pair<NodeId, double>> adj(graph.neighbors(id).begin(),
                                               graph.neighbors(id).end());
    std::sort(adj.begin(), adj.end());
    for (const auto& [other, w] : adj) {
      if (id < other) {
        edges.push_back({{"source", id}, {"target", other}, {"w_co", round_sig9(w)}});
      }
    }
  }
  return {{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

GraphOfWords from_json(const nlohmann::json& doc) {
  GraphOfWords graph;
  try {
    for (const auto& n : doc.at("nodes")) {
      const auto id = n.at("id").get<NodeId>();
      if (id < graph.nodes_.size()) {
        throw ParseError("node ids must be strictly increasing");
      }
      // Dead slots keep ids stable across export and import.
      while (graph.nodes_.size() < id) {
        graph.nodes_.push_back({static_cast<NodeId>(graph.nodes_.size()), {}, {}, {}});
        graph.live_.push_back(false);
        graph.adjacency_.emplace_back();
      }
      graph.add_node(n.at("leading_token").get<std::string>(),
                     n.at("members").get<std::set<std::string>>(),
                     n.at("tweets").get<std::vector<TweetIndex>>());
    }
    for (const auto& e : doc.at("edges")) {
      const auto w = e.at("w_co").get<double>();
      if (!(w > 0.0)) throw ParseError("edge weights must be positive");
      graph.add_co_weight(e.at("source").get<NodeId>(), e.at("target").get<NodeId>(), w);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad graph document: ") + e.what());
  } catch (const NotFoundError& e) {
    throw ParseError(std::string("bad graph document: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("bad graph document: ") + e.what());
  }
  return graph;
}

}  // namespace tweetgraph::gow
