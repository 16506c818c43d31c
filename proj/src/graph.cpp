#include "dismax/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace dismax {

CommGraph::CommGraph(int num_agents, std::vector<std::pair<AgentId, AgentId>> edges) {
  if (num_agents < 1) throw config_error("graph needs at least one agent");
  adj_.assign(static_cast<std::size_t>(num_agents), {});
  for (auto [a, b] : edges) {
    if (a < 1 || a > num_agents || b < 1 || b > num_agents)
      throw config_error("graph edge endpoint outside 1..N");
    if (a == b) throw config_error("graph self-loops are not allowed");
    adj_[static_cast<std::size_t>(a - 1)].push_back(b);
    adj_[static_cast<std::size_t>(b - 1)].push_back(a);
  }
  for (auto& nb : adj_) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  // Connectivity check: BFS from agent 1 must reach everyone.
  std::vector<char> seen(adj_.size(), 0);
  std::deque<AgentId> queue{1};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const AgentId v = queue.front();
    queue.pop_front();
    for (AgentId w : adj_[static_cast<std::size_t>(v - 1)]) {
      if (!seen[static_cast<std::size_t>(w - 1)]) {
        seen[static_cast<std::size_t>(w - 1)] = 1;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  if (reached != adj_.size())
    throw config_error("communication graph must be connected");
}

CommGraph CommGraph::ring(int num_agents) {
  if (num_agents < 3) throw config_error("ring needs at least 3 agents");
  std::vector<std::pair<AgentId, AgentId>> edges;
  for (int i = 1; i <= num_agents; ++i) edges.emplace_back(i, i % num_agents + 1);
  return CommGraph(num_agents, std::move(edges));
}

CommGraph CommGraph::path(int num_agents) {
  if (num_agents < 1) throw config_error("path needs at least 1 agent");
  std::vector<std::pair<AgentId, AgentId>> edges;
  for (int i = 1; i < num_agents; ++i) edges.emplace_back(i, i + 1);
  return CommGraph(num_agents, std::move(edges));
}

CommGraph CommGraph::complete(int num_agents) {
  if (num_agents < 1) throw config_error("complete graph needs at least 1 agent");
  std::vector<std::pair<AgentId, AgentId>> edges;
  for (int i = 1; i <= num_agents; ++i)
    for (int j = i + 1; j <= num_agents; ++j) edges.emplace_back(i, j);
  return CommGraph(num_agents, std::move(edges));
}

const std::vector<AgentId>& CommGraph::neighbors(AgentId i) const {
  if (i < 1 || i > num_agents()) throw config_error("agent id out of range");
  return adj_[static_cast<std::size_t>(i - 1)];
}

bool CommGraph::has_edge(AgentId a, AgentId b) const {
  const auto& nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

int CommGraph::diameter() const {
  int diam = 0;
  const int n = num_agents();
  for (AgentId s = 1; s <= n; ++s) {
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::deque<AgentId> queue{s};
    dist[static_cast<std::size_t>(s - 1)] = 0;
    while (!queue.empty()) {
      const AgentId v = queue.front();
      queue.pop_front();
      for (AgentId w : adj_[static_cast<std::size_t>(v - 1)]) {
        if (dist[static_cast<std::size_t>(w - 1)] < 0) {
          dist[static_cast<std::size_t>(w - 1)] = dist[static_cast<std::size_t>(v - 1)] + 1;
          queue.push_back(w);
        }
      }
    }
    for (int d : dist) diam = std::max(diam, d);
  }
  return diam;
}

}  // namespace dismax
