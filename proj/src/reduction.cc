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

#include "tweetgraph/reduction.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "json.hpp"
#include "tweetgraph/error.h"
#include "tweetgraph/util.h"

namespace tweetgraph::reduction {

void ReductionConfig::validate() const {
  if (min_tweet_df == 0 || top_n == 0 || phase1_candidate_pool == 0) {
    throw InvalidArgument("reduction parameters must be positive");
  }
}

const MergeEvent& MergeLog::append(NodeId src, NodeId dst, int phase,
                                   double trigger_similarity,
                                   std::string src_token,
                                   std::string dst_token) {
  const std::uint64_t sequence = events_.empty() ? 0 : events_.back().sequence + 1;
  events_.push_back({src, dst, phase, trigger_similarity, sequence,
                     std::move(src_token), std::move(dst_token)});
  return events_.back();
}

std::size_t MergeLog::count(int phase) const {
  return static_cast<std::size_t>(std::count_if(
      events_.begin(), events_.end(),
      [phase](const MergeEvent& e) { return e.phase == phase; }));
}

double node_degree(const GraphOfWords& graph, NodeId id) {
  double degree = 0.0;
  for (const auto& [other, w] : graph.neighbors(id)) degree += w;
  return degree;
}

const MergeEvent& merge_nodes(GraphOfWords& graph, NodeId src, NodeId dst,
                              MergeLog& log, int phase,
                              double trigger_similarity) {
  std::string src_token = graph.node(src).leading_token;
  std::string dst_token = graph.node(dst).leading_token;
  graph.merge(src, dst);
  return log.append(src, dst, phase, trigger_similarity, std::move(src_token),
                    std::move(dst_token));
}

std::optional<std::span<const embeddings::Neighbor>> SimilarityCache::lookup(
    const std::string& word, std::size_t top_n) {
  Entry& entry = entries_[word];
  if (!entry.resolvable) return std::nullopt;
  if (entry.depth < top_n) {
    if (!table_.try_word_vector(word)) {
      entry.resolvable = false;
      return std::nullopt;
    }
    entry.hits = table_.most_similar(word, top_n);
    entry.depth = top_n;
  }
  const std::size_t n = std::min(top_n, entry.hits.size());
  return std::span<const embeddings::Neighbor>(entry.hits.data(), n);
}

PhaseReport phase1_reduce(GraphOfWords& graph,
                          const embeddings::EmbeddingTable& table,
                          const ReductionConfig& config, MergeLog& log) {
  config.validate();
  PhaseReport report;
  report.nodes_before = graph.live_count();

  std::vector<std::tuple<std::size_t, std::string, NodeId>> rare;
  for (NodeId id : graph.live_nodes()) {
    const gow::TokenNode& n = graph.node(id);
    if (n.tweet_df() < config.min_tweet_df) {
      rare.emplace_back(n.tweet_df(), n.leading_token, id);
    }
  }
  std::sort(rare.begin(), rare.end());

  SimilarityCache cache(table);
  for (const auto& [df, leading, id] : rare) {
    if (!graph.is_live(id)) continue;
    // Earlier merges into this node may have lifted it over the threshold.
    if (graph.node(id).tweet_df() >= config.min_tweet_df) continue;
    auto hits = cache.lookup(leading, config.phase1_candidate_pool);
    bool merged = false;
    if (hits) {
      for (const embeddings::Neighbor& hit : *hits) {
        auto target = graph.find(hit.word);
        if (!target || *target == id) continue;
        merge_nodes(graph, id, *target, log, 1, hit.score);
        ++report.merges;
        merged = true;
        break;
      }
    }
    if (!merged) report.unresolved.push_back(id);
  }
  report.nodes_after = graph.live_count();
  return report;
}

PhaseReport phase2_reduce(GraphOfWords& graph,
                          const embeddings::EmbeddingTable& table,
                          const ReductionConfig& config, MergeLog& log) {
  config.validate();
  PhaseReport report;
  report.nodes_before = graph.live_count();

  // Degrees are taken once, before any Phase II merge.
  std::vector<std::tuple<double, std::string, NodeId>> order;
  for (NodeId id : graph.live_nodes()) {
    order.emplace_back(node_degree(graph, id), graph.node(id).leading_token, id);
  }
  std::sort(order.begin(), order.end());

  SimilarityCache cache(table);
  std::set<NodeId> unresolved;
  for (const auto& [degree, hub_token, hub] : order) {
    if (!graph.is_live(hub)) continue;
    std::vector<std::tuple<double, std::string, NodeId>> neighbors;
    for (const auto& [other, w] : graph.neighbors(hub)) {
      neighbors.emplace_back(w, graph.node(other).leading_token, other);
    }
    std::sort(neighbors.begin(), neighbors.end());

    for (const auto& [weight, token, candidate] : neighbors) {
      if (!graph.is_live(candidate)) continue;
      auto hits = cache.lookup(token, config.top_n);
      if (!hits) {
        unresolved.insert(candidate);
        continue;
      }
      const gow::GraphOfWords::Adjacency& hub_adj = graph.neighbors(hub);
      std::optional<NodeId> parent;
      double parent_score = 0.0;
      std::string parent_token;
      for (const embeddings::Neighbor& hit : *hits) {
        auto target = graph.find(hit.word);
        if (!target || *target == candidate || *target == hub) continue;
        if (!hub_adj.contains(*target)) continue;
        const std::string& target_token = graph.node(*target).leading_token;
        if (!parent || hit.score > parent_score ||
            (hit.score == parent_score && target_token < parent_token)) {
          parent = *target;
          parent_score = hit.score;
          parent_token = target_token;
        }
      }
      if (!parent) continue;
      merge_nodes(graph, candidate, *parent, log, 2, parent_score);
      ++report.merges;
    }
  }
  report.unresolved.assign(unresolved.begin(), unresolved.end());
  report.nodes_after = graph.live_count();
  return report;
}

void write_merge_log(const MergeLog& log, std::ostream& out) {
  for (const MergeEvent& e : log.events()) {
    out << nlohmann::json{{"sequence", e.sequence},
                          {"phase", e.phase},
                          {"src", e.src},
                          {"dst", e.dst},
                          {"src_token", e.src_token},
                          {"dst_token", e.dst_token},
                          {"similarity", round_sig9(e.trigger_similarity)}}
               .dump()
        << '\n';
  }
}

std::vector<MergeEvent> read_merge_log(std::istream& in) {
  std::vector<MergeEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      events.push_back({j.at("src").get<NodeId>(), j.at("dst").get<NodeId>(),
                        j.at("phase").get<int>(), j.at("similarity").get<double>(),
                        j.at("sequence").get<std::uint64_t>(),
                        j.at("src_token").get<std::string>(),
                        j.at("dst_token").get<std::string>()});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return events;
}

}  // namespace tweetgraph::reduction
