#pragma once

#include <utility>
#include <vector>

#include "dismax/types.hpp"

namespace dismax {

// Undirected connected communication graph over agents 1..N. Connectivity is
// validated at construction; all protocol guarantees assume it.
class CommGraph {
 public:
  CommGraph(int num_agents, std::vector<std::pair<AgentId, AgentId>> edges);

  static CommGraph ring(int num_agents);
  static CommGraph path(int num_agents);
  static CommGraph complete(int num_agents);

  int num_agents() const { return static_cast<int>(adj_.size()); }

  // Sorted, never includes i itself.
  const std::vector<AgentId>& neighbors(AgentId i) const;

  bool has_edge(AgentId a, AgentId b) const;

  // Exact diameter by BFS from every vertex.
  int diameter() const;

 private:
  std::vector<std::vector<AgentId>> adj_;
};

}  // namespace dismax
