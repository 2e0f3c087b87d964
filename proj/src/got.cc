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

#include "tweetgraph/got.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <istream>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <thread>

#include "tweetgraph/error.h"
#include "tweetgraph/text.h"
#include "tweetgraph/util.h"

namespace tweetgraph::got {
namespace {

bool contains_keyword(const std::string& token,
                      std::span<const std::string> keywords) {
  const std::string lowered = text::to_lower(token);
  for (const std::string& k : keywords) {
    if (!k.empty() && lowered.find(k) != std::string::npos) return true;
  }
  return false;
}

// Heap order: the worst retained edge sits on top.
struct WorseFirst {
  bool operator()(const NmiEdge& lhs, const NmiEdge& rhs) const {
    return edge_before(lhs, rhs);
  }
};

using EdgeHeap = std::priority_queue<NmiEdge, std::vector<NmiEdge>, WorseFirst>;

void offer(EdgeHeap& heap, const NmiEdge& edge, std::size_t k) {
  if (heap.size() < k) {
    heap.push(edge);
  } else if (edge_before(edge, heap.top())) {
    heap.pop();
    heap.push(edge);
  }
}

}  // namespace

GraphOfTweets::GraphOfTweets(std::vector<TweetNode> nodes,
                             std::size_t token_universe,
                             ExclusionReport report)
    : nodes_(std::move(nodes)), m_(token_universe), report_(std::move(report)) {
  if (!nodes_.empty() && m_ == 0) {
    throw InvalidArgument("token universe must be positive");
  }
  std::map<std::vector<NodeId>, TweetNodeId> seen;
  NodeId max_token = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const TweetNode& n = nodes_[i];
    if (n.id != i) throw InvalidArgument("tweet node ids must equal positions");
    if (n.token_nodes.empty()) throw InvalidArgument("tweet node without tokens");
    if (!std::is_sorted(n.token_nodes.begin(), n.token_nodes.end()) ||
        std::adjacent_find(n.token_nodes.begin(), n.token_nodes.end()) !=
            n.token_nodes.end()) {
      throw InvalidArgument("tweet node token ids must be sorted and unique");
    }
    if (n.token_nodes.size() > m_) {
      throw InvalidArgument("tweet node larger than the token universe");
    }
    if (n.frequency == 0 || n.frequency != n.source_ids.size()) {
      throw InvalidArgument("tweet node frequency must equal its source count");
    }
    if (!seen.emplace(n.token_nodes, n.id).second) {
      throw InvalidArgument("duplicate tweet node token set");
    }
    max_token = std::max(max_token, n.token_nodes.back());
  }
  if (!nodes_.empty()) inverted_.resize(static_cast<std::size_t>(max_token) + 1);
  for (const TweetNode& n : nodes_) {
    for (NodeId t : n.token_nodes) inverted_[t].push_back(n.id);
  }
}

GraphOfTweets GraphOfTweets::from_sets(
    const std::vector<std::vector<NodeId>>& sets, std::size_t token_universe) {
  std::vector<TweetNode> nodes;
  std::map<std::vector<NodeId>, TweetNodeId> index;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::vector<NodeId> key = sets[i];
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    auto [it, inserted] = index.emplace(key, static_cast<TweetNodeId>(nodes.size()));
    if (inserted) nodes.push_back({it->second, std::move(key), 0, {}});
    TweetNode& node = nodes[it->second];
    ++node.frequency;
    node.source_ids.push_back(std::to_string(i));
  }
  return GraphOfTweets(std::move(nodes), token_universe);
}

const TweetNode& GraphOfTweets::node(TweetNodeId id) const {
  if (id >= nodes_.size()) throw NotFoundError("no tweet node " + std::to_string(id));
  return nodes_[id];
}

std::span<const TweetNodeId> GraphOfTweets::tweets_with(NodeId token) const {
  if (token >= inverted_.size()) return {};
  return inverted_[token];
}

GraphOfTweets build_got(const corpus::Corpus& corpus,
                        const gow::GraphOfWords& graph,
                        std::span<const std::string> exclude_keywords) {
  std::vector<std::string> keywords;
  for (const std::string& k : exclude_keywords) keywords.push_back(text::to_lower(k));

  ExclusionReport report;
  std::vector<bool> excluded(graph.capacity(), false);
  std::size_t universe = 0;
  for (NodeId id : graph.live_nodes()) {
    const gow::TokenNode& n = graph.node(id);
    if (contains_keyword(n.leading_token, keywords)) {
      excluded[id] = true;
      report.excluded_nodes.push_back(id);
      continue;
    }
    ++universe;
    for (const std::string& m : n.members) {
      if (contains_keyword(m, keywords)) report.member_matches.emplace_back(id, m);
    }
  }

  std::vector<TweetNode> nodes;
  std::map<std::vector<NodeId>, TweetNodeId> index;
  for (const corpus::ProcessedTweet& tweet : corpus.tweets()) {
    std::vector<NodeId> ids;
    for (const std::string& token : tweet.tokens) {
      auto id = graph.find(token);
      if (!id) {
        throw NotFoundError("token '" + token + "' of tweet " + tweet.id +
                            " is not in the token graph");
      }
      if (!excluded[*id]) ids.push_back(*id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.empty()) {
      report.dropped_tweet_ids.push_back(tweet.id);
      continue;
    }
    auto [it, inserted] = index.emplace(ids, static_cast<TweetNodeId>(nodes.size()));
    if (inserted) nodes.push_back({it->second, std::move(ids), 0, {}});
    TweetNode& node = nodes[it->second];
    ++node.frequency;
    node.source_ids.push_back(tweet.id);
  }
  return GraphOfTweets(std::move(nodes), universe, std::move(report));
}

double pmi(double f_x, double f_y, double f_xy, double total) {
  if (!(total > 0.0) || !(f_x > 0.0) || !(f_y > 0.0) || f_xy < 0.0) {
    throw InvalidArgument("pmi needs positive marginals and total");
  }
  if (f_xy == 0.0) return -std::numeric_limits<double>::infinity();
  const double p_xy = f_xy / total;
  const double p_x = f_x / total;
  const double p_y = f_y / total;
  return std::log(p_xy / (p_x * p_y));
}

double nmi(std::size_t x, std::size_t y, std::size_t c, std::size_t m) {
  if (x == 0 || y == 0 || x > m || y > m || c > std::min(x, y)) {
    throw InvalidArgument("nmi needs 1 <= x, y <= m and c <= min(x, y)");
  }
  if (c == 0) return -1.0;
  const auto xd = static_cast<double>(x);
  const auto yd = static_cast<double>(y);
  const auto md = static_cast<double>(m);
  const double mi = std::log(static_cast<double>(c) * md / (xd * yd));
  // max(-log(x/m), -log(y/m)) is attained by the smaller set.
  const double norm = std::log(md / std::min(xd, yd));
  if (norm == 0.0) {
    throw InvalidArgument("nmi is undefined for a set covering all token nodes");
  }
  return mi / norm;
}

std::size_t intersection_size(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

double nmi(const TweetNode& a, const TweetNode& b, std::size_t m) {
  return nmi(a.token_nodes.size(), b.token_nodes.size(),
             intersection_size(a.token_nodes, b.token_nodes), m);
}

bool edge_before(const NmiEdge& lhs, const NmiEdge& rhs) {
  if (lhs.nmi != rhs.nmi) return lhs.nmi > rhs.nmi;
  if (lhs.a != rhs.a) return lhs.a < rhs.a;
  return lhs.b < rhs.b;
}

TopKResult top_k_edges(const GraphOfTweets& got, std::size_t k, unsigned threads) {
  if (k == 0) throw InvalidArgument("k must be positive");
  threads = std::max(1u, threads);
  const std::size_t n = got.size();
  const std::size_t m = got.token_universe();

  struct Partial {
    EdgeHeap heap;
    std::size_t candidates = 0;
  };
  std::vector<Partial> partials(threads);

  auto work = [&](unsigned worker) {
    Partial& out = partials[worker];
    std::vector<std::uint32_t> shared(n, 0);
    std::vector<TweetNodeId> touched;
    for (std::size_t i = worker; i < n; i += threads) {
      const TweetNode& a = got.nodes()[i];
      touched.clear();
      for (NodeId t : a.token_nodes) {
        for (TweetNodeId j : got.tweets_with(t)) {
          if (j <= i) continue;
          if (shared[j]++ == 0) touched.push_back(j);
        }
      }
      for (TweetNodeId j : touched) {
        const TweetNode& b = got.nodes()[j];
        const double score = nmi(a.token_nodes.size(), b.token_nodes.size(), shared[j], m);
        offer(out.heap, {static_cast<TweetNodeId>(i), j, score}, k);
        shared[j] = 0;
      }
      out.candidates += touched.size();
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  TopKResult result;
  for (Partial& p : partials) {
    result.candidate_pairs += p.candidates;
    while (!p.heap.empty()) {
      result.edges.push_back(p.heap.top());
      p.heap.pop();
    }
  }
  std::sort(result.edges.begin(), result.edges.end(), edge_before);
  if (result.edges.size() > k) result.edges.resize(k);
  return result;
}

nlohmann::json to_json(const GraphOfTweets& got) {
  using nlohmann::json;
  json nodes = json::array();
  for (const TweetNode& n : got.nodes()) {
    nodes.push_back({{"id", n.id},
                     {"token_nodes", n.token_nodes},
                     {"frequency", n.frequency},
                     {"source_ids", n.source_ids}});
  }
  json matches = json::array();
  for (const auto& [node, member] : got.report().member_matches) {
    matches.push_back({{"node", node}, {"member", member}});
  }
  return {{"m", got.token_universe()},
          {"nodes", std::move(nodes)},
          {"excluded_nodes", got.report().excluded_nodes},
          {"member_matches", std::move(matches)},
          {"dropped_tweet_ids", got.report().dropped_tweet_ids}};
}

GraphOfTweets from_json(const nlohmann::json& doc) {
  try {
    std::vector<TweetNode> nodes;
    for (const auto& n : doc.at("nodes")) {
      nodes.push_back({n.at("id").get<TweetNodeId>(),
                       n.at("token_nodes").get<std::vector<NodeId>>(),
                       n.at("frequency").get<std::size_t>(),
                       n.at("source_ids").get<std::vector<std::string>>()});
    }
    ExclusionReport report;
    report.excluded_nodes = doc.value("excluded_nodes", std::vector<NodeId>{});
    report.dropped_tweet_ids =
        doc.value("dropped_tweet_ids", std::vector<std::string>{});
    if (doc.contains("member_matches")) {
      for (const auto& mm : doc.at("member_matches")) {
        report.member_matches.emplace_back(mm.at("node").get<NodeId>(),
                                           mm.at("member").get<std::string>());
      }
    }
    return GraphOfTweets(std::move(nodes), doc.at("m").get<std::size_t>(),
                         std::move(report));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad tweet graph document: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("bad tweet graph document: ") + e.what());
  }
}

void write_edges_tsv(std::span<const NmiEdge> edges, std::ostream& out) {
  for (const NmiEdge& e : edges) {
    out << e.a << '\t' << e.b << '\t' << format_sig9(e.nmi) << '\n';
  }
}

std::vector<NmiEdge> read_edges_tsv(std::istream& in) {
  std::vector<NmiEdge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    NmiEdge e;
    if (!(fields >> e.a >> e.b >> e.nmi)) {
      throw ParseError("expected id<TAB>id<TAB>nmi", line_no);
    }
    edges.push_back(e);
  }
  return edges;
}

}  // namespace tweetgraph::got
