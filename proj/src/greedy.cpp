// Copyright 2026 The SGIQ Authors
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

#include "sgiq/greedy.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace sgiq {

Subgraphs build_subgraphs(const RoutingGraph& g) {
  Subgraphs sub;
  for (const Edge& e : g.edges) {
    sub.full.push_back(e.id);
    (e.kind == EdgeKind::Ground ? sub.ground : sub.freespace).push_back(e.id);
  }
  return sub;
}

namespace {

// Dijkstra over the given edge subset. Edge weight is its noise; entering an
// interior repeater adds its amendment. Ties pop the smaller node id.
bool shortest_path(const RoutingGraph& g, const std::vector<EdgeId>& edge_ids,
                   NodeId source, NodeId goal, std::vector<NodeId>& nodes_out,
                   std::vector<EdgeId>& edges_out, double& noise_out) {
  std::vector<std::vector<std::pair<NodeId, EdgeId>>> adj(g.num_node_ids);
  for (EdgeId id : edge_ids) {
    const Edge& e = g.edges[id];
    adj[e.u].emplace_back(e.v, id);
    adj[e.v].emplace_back(e.u, id);
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.num_node_ids, inf);
  std::vector<NodeId> prev_node(g.num_node_ids, -1);
  std::vector<EdgeId> prev_edge(g.num_node_ids, -1);

  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    auto [d, n] = queue.top();
    queue.pop();
    if (d > dist[n]) {
      continue;
    }
    if (n == goal) {
      break;
    }
    for (auto [m, eid] : adj[n]) {
      if (m != goal && !g.is_repeater(m)) {
        continue;  // users cannot relay
      }
      const double hop =
          g.edges[eid].noise + (m != goal ? g.noise_amendment(m) : 0.0);
      const double nd = d + hop;
      if (nd < dist[m]) {
        dist[m] = nd;
        prev_node[m] = n;
        prev_edge[m] = eid;
        queue.emplace(nd, m);
      }
    }
  }
  if (dist[goal] == inf) {
    return false;
  }
  nodes_out.clear();
  edges_out.clear();
  for (NodeId n = goal; n != source; n = prev_node[n]) {
    nodes_out.push_back(n);
    edges_out.push_back(prev_edge[n]);
  }
  nodes_out.push_back(source);
  std::reverse(nodes_out.begin(), nodes_out.end());
  std::reverse(edges_out.begin(), edges_out.end());
  noise_out = dist[goal];
  return true;
}

}  // namespace

std::vector<CandidatePath> candidate_paths(const RoutingGraph& g, const Subgraphs& sub,
                                           const Request& request, int request_index,
                                           double noise_threshold) {
  std::vector<CandidatePath> out;
  const std::pair<SubgraphTag, const std::vector<EdgeId>*> sets[] = {
      {SubgraphTag::GroundOnly, &sub.ground},
      {SubgraphTag::Full, &sub.full},
      {SubgraphTag::FreeSpaceOnly, &sub.freespace},
  };
  for (auto [tag, edges] : sets) {
    CandidatePath cand;
    cand.request_index = request_index;
    cand.tag = tag;
    if (!shortest_path(g, *edges, request.source, request.destination, cand.nodes,
                       cand.edges, cand.noise)) {
      continue;
    }
    cand.cost = static_cast<int>(cand.edges.size());
    if (cand.noise <= noise_threshold) {
      out.push_back(std::move(cand));
    }
  }
  return out;
}

Schedule greedy_route(const RoutingGraph& g, std::span<const Request> requests,
                      double noise_threshold, GreedySortKey sort_key) {
  const Subgraphs sub = build_subgraphs(g);
  const int K = static_cast<int>(requests.size());

  std::vector<CandidatePath> buckets[3];
  for (int k = 0; k < K; ++k) {
    for (CandidatePath& cand : candidate_paths(g, sub, requests[k], k, noise_threshold)) {
      buckets[static_cast<int>(cand.tag)].push_back(std::move(cand));
    }
  }

  std::vector<int> edge_remaining(g.edges.size());
  for (const Edge& e : g.edges) {
    edge_remaining[e.id] = e.capacity;
  }
  std::vector<int> node_remaining(g.num_node_ids, 0);
  for (NodeId r : g.repeater_set()) {
    node_remaining[r] = g.memory_capacity(r);
  }

  Schedule schedule;
  schedule.scheduled.assign(K, 0);
  schedule.residual.resize(K);
  for (int k = 0; k < K; ++k) {
    schedule.residual[k] = requests[k].message_size;
  }

  for (auto& bucket : buckets) {
    std::stable_sort(bucket.begin(), bucket.end(),
                     [&](const CandidatePath& a, const CandidatePath& b) {
                       if (sort_key == GreedySortKey::Cost) {
                         if (a.cost != b.cost) {
                           return a.cost < b.cost;
                         }
                       } else if (a.noise != b.noise) {
                         return a.noise < b.noise;
                       }
                       return a.request_index < b.request_index;
                     });
    for (const CandidatePath& cand : bucket) {
      const int k = cand.request_index;
      int alpha = schedule.residual[k];
      for (EdgeId e : cand.edges) {
        alpha = std::min(alpha, edge_remaining[e]);
      }
      for (std::size_t i = 1; i + 1 < cand.nodes.size(); ++i) {
        if (g.is_repeater(cand.nodes[i])) {
          alpha = std::min(alpha, node_remaining[cand.nodes[i]]);
        }
      }
      if (alpha < 1) {
        continue;
      }
      for (EdgeId e : cand.edges) {
        edge_remaining[e] -= alpha;
      }
      for (std::size_t i = 1; i + 1 < cand.nodes.size(); ++i) {
        if (g.is_repeater(cand.nodes[i])) {
          node_remaining[cand.nodes[i]] -= alpha;
        }
      }
      schedule.residual[k] -= alpha;

      ScheduledPath p;
      p.request_index = k;
      p.nodes = cand.nodes;
      p.edges = cand.edges;
      p.multiplicity = alpha;
      p.purifications.assign(cand.edges.size(), 0);
      p.path_noise = cand.noise;
      schedule.paths.push_back(std::move(p));
    }
  }

  schedule.total_scheduled = 0;
  for (int k = 0; k < K; ++k) {
    schedule.scheduled[k] = requests[k].message_size - schedule.residual[k];
    schedule.total_scheduled += schedule.scheduled[k];
  }
  return schedule;
}

}  // namespace sgiq
