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

#include "tweetgraph/subevents.h"

#include <algorithm>
#include <iterator>
#include <set>
#include <sstream>

#include "tweetgraph/error.h"
#include "tweetgraph/util.h"

namespace tweetgraph::subevents {
namespace {

using VertexSet = std::vector<std::size_t>;  // sorted local indices

VertexSet intersect(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

class CliqueFinder {
 public:
  CliqueFinder(std::vector<VertexSet> adjacency, std::size_t min_size)
      : adjacency_(std::move(adjacency)), min_size_(min_size) {}

  std::vector<VertexSet> run() {
    const std::vector<std::size_t> order = degeneracy_order();
    std::vector<std::size_t> position(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    for (std::size_t v : order) {
      VertexSet later;
      VertexSet earlier;
      for (std::size_t u : adjacency_[v]) {
        (position[u] > position[v] ? later : earlier).push_back(u);
      }
      VertexSet clique{v};
      expand(clique, std::move(later), std::move(earlier));
    }
    return std::move(found_);
  }

 private:
  // Repeatedly removes a minimum-degree vertex; ties go to the lowest index.
  std::vector<std::size_t> degeneracy_order() const {
    const std::size_t n = adjacency_.size();
    std::vector<std::size_t> degree(n);
    std::set<std::pair<std::size_t, std::size_t>> queue;
    for (std::size_t v = 0; v < n; ++v) {
      degree[v] = adjacency_[v].size();
      queue.emplace(degree[v], v);
    }
    std::vector<bool> removed(n, false);
    std::vector<std::size_t> order;
    order.reserve(n);
    while (!queue.empty()) {
      const auto [d, v] = *queue.begin();
      queue.erase(queue.begin());
      removed[v] = true;
      order.push_back(v);
      for (std::size_t u : adjacency_[v]) {
        if (removed[u]) continue;
        queue.erase({degree[u], u});
        queue.emplace(--degree[u], u);
      }
    }
    return order;
  }

  void expand(VertexSet& clique, VertexSet candidates, VertexSet excluded) {
    if (candidates.empty()) {
      if (excluded.empty() && clique.size() >= min_size_) {
        VertexSet sorted = clique;
        std::sort(sorted.begin(), sorted.end());
        found_.push_back(std::move(sorted));
      }
      return;
    }
    if (clique.size() + candidates.size() < min_size_) return;

    // Pivot maximizing |candidates ∩ N(pivot)|.
    std::size_t pivot = candidates.front();
    std::size_t best = 0;
    bool first = true;
    for (const VertexSet* pool : {&candidates, &excluded}) {
      for (std::size_t u : *pool) {
        const std::size_t covered = intersect(candidates, adjacency_[u]).size();
        if (first || covered > best) {
          pivot = u;
          best = covered;
          first = false;
        }
      }
    }
    VertexSet branch;
    std::set_difference(candidates.begin(), candidates.end(),
                        adjacency_[pivot].begin(), adjacency_[pivot].end(),
                        std::back_inserter(branch));
    for (std::size_t v : branch) {
      clique.push_back(v);
      expand(clique, intersect(candidates, adjacency_[v]),
             intersect(excluded, adjacency_[v]));
      clique.pop_back();
      candidates.erase(std::lower_bound(candidates.begin(), candidates.end(), v));
      excluded.insert(std::lower_bound(excluded.begin(), excluded.end(), v), v);
    }
  }

  std::vector<VertexSet> adjacency_;
  std::size_t min_size_;
  std::vector<VertexSet> found_;
};

template <typename T>
std::vector<T> sorted_intersection(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <typename T>
std::vector<T> sorted_union(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Subgraph induce_subgraph(std::span<const NmiEdge> edges) {
  Subgraph g;
  std::set<std::pair<TweetNodeId, TweetNodeId>> seen;
  std::set<TweetNodeId> vertices;
  for (NmiEdge e : edges) {
    if (e.a == e.b) throw InvalidArgument("subgraph edges cannot be self-loops");
    if (e.a > e.b) std::swap(e.a, e.b);
    if (!seen.emplace(e.a, e.b).second) {
      throw InvalidArgument("duplicate subgraph edge " + std::to_string(e.a) +
                            "-" + std::to_string(e.b));
    }
    vertices.insert(e.a);
    vertices.insert(e.b);
    g.edges.push_back(e);
  }
  g.vertices.assign(vertices.begin(), vertices.end());
  return g;
}

Subgraph with_induced_edges(const Subgraph& g, const got::GraphOfTweets& got) {
  Subgraph out;
  out.vertices = g.vertices;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    const got::TweetNode& a = got.node(g.vertices[i]);
    for (std::size_t j = i + 1; j < g.vertices.size(); ++j) {
      const got::TweetNode& b = got.node(g.vertices[j]);
      if (got::intersection_size(a.token_nodes, b.token_nodes) == 0) continue;
      out.edges.push_back({a.id, b.id, got::nmi(a, b, got.token_universe())});
    }
  }
  return out;
}

std::vector<CliqueMembers> maximal_cliques(const Subgraph& g, std::size_t min_size) {
  std::vector<TweetNodeId> vertices = g.vertices;
  for (const NmiEdge& e : g.edges) {
    vertices.push_back(e.a);
    vertices.push_back(e.b);
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  auto local = [&](TweetNodeId id) {
    return static_cast<std::size_t>(
        std::lower_bound(vertices.begin(), vertices.end(), id) - vertices.begin());
  };
  std::vector<VertexSet> adjacency(vertices.size());
  for (const NmiEdge& e : g.edges) {
    if (e.a == e.b) continue;
    adjacency[local(e.a)].push_back(local(e.b));
    adjacency[local(e.b)].push_back(local(e.a));
  }
  for (VertexSet& adj : adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }

  std::vector<CliqueMembers> cliques;
  for (const VertexSet& found : CliqueFinder(std::move(adjacency), min_size).run()) {
    CliqueMembers members;
    for (std::size_t v : found) members.push_back(vertices[v]);
    cliques.push_back(std::move(members));
  }
  std::sort(cliques.begin(), cliques.end());
  return cliques;
}

Clique describe_clique(const CliqueMembers& members, const got::GraphOfTweets& got) {
  Clique clique;
  clique.members = members;
  std::sort(clique.members.begin(), clique.members.end());
  bool first = true;
  for (TweetNodeId id : clique.members) {
    const std::vector<NodeId>& tokens = got.node(id).token_nodes;
    if (first) {
      clique.shared_tokens = tokens;
      clique.all_tokens = tokens;
      first = false;
    } else {
      clique.shared_tokens = sorted_intersection(clique.shared_tokens, tokens);
      clique.all_tokens = sorted_union(clique.all_tokens, tokens);
    }
  }
  return clique;
}

CliqueReport clique_report(const Clique& clique, const got::GraphOfTweets& got,
                           const gow::GraphOfWords& gow) {
  CliqueReport report;
  report.members = clique.members;
  report.size = clique.members.size();
  for (TweetNodeId id : clique.members) {
    const got::TweetNode& node = got.node(id);
    report.source_ids.insert(report.source_ids.end(), node.source_ids.begin(),
                             node.source_ids.end());
  }
  std::sort(report.source_ids.begin(), report.source_ids.end());
  for (NodeId t : clique.all_tokens) report.all_tokens.push_back(gow.node(t).leading_token);
  for (NodeId t : clique.shared_tokens) report.shared_tokens.push_back(gow.node(t).leading_token);
  std::sort(report.all_tokens.begin(), report.all_tokens.end());
  std::sort(report.shared_tokens.begin(), report.shared_tokens.end());
  return report;
}

void sort_reports(std::vector<CliqueReport>& reports) {
  std::sort(reports.begin(), reports.end(), [](const CliqueReport& a, const CliqueReport& b) {
    if (a.size != b.size) return a.size > b.size;
    return a.members < b.members;
  });
}

nlohmann::json reports_to_json(std::span<const CliqueReport> reports) {
  nlohmann::json out = nlohmann::json::array();
  for (const CliqueReport& r : reports) {
    out.push_back({{"members", r.members},
                   {"source_ids", r.source_ids},
                   {"all_tokens", r.all_tokens},
                   {"shared_tokens", r.shared_tokens},
                   {"size", r.size}});
  }
  return out;
}

std::string reports_to_text(std::span<const CliqueReport> reports) {
  std::ostringstream out;
  out << reports.size() << " cliques\n";
  std::size_t index = 0;
  for (const CliqueReport& r : reports) {
    out << "\n#" << ++index << "  size " << r.size << "  (" << r.source_ids.size()
        << " tweets)\n  shared:";
    for (const std::string& t : r.shared_tokens) out << ' ' << t;
    out << "\n  all:   ";
    for (const std::string& t : r.all_tokens) out << ' ' << t;
    out << '\n';
  }
  return out.str();
}

std::map<std::size_t, std::size_t> size_histogram(std::span<const CliqueMembers> cliques) {
  std::map<std::size_t, std::size_t> histogram;
  for (const CliqueMembers& c : cliques) ++histogram[c.size()];
  return histogram;
}

}  // namespace tweetgraph::subevents
