#include "stablematch/tech_tree.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace stablematch {

void TechnologyTree::validate() const {
  const int v = vertex_count();
  if (v == 0) throw std::invalid_argument("technology tree has no vertices");
  if (root < 0 || root >= v) throw std::invalid_argument("root out of range");
  if (vertex_workers[root] != 0) throw std::invalid_argument("root must require no workers");
  if (static_cast<int>(edges.size()) != v - 1)
    throw std::invalid_argument("a tree on v vertices has v-1 edges");

  const WorkerMask all = n_workers == 0 ? 0 : (WorkerMask{1} << n_workers) - 1;
  std::vector<int> indegree(v, 0);
  for (auto [parent, child] : edges) {
    if (parent < 0 || parent >= v || child < 0 || child >= v)
      throw std::invalid_argument("edge endpoint out of range");
    if (!mask_subset(vertex_workers[parent], vertex_workers[child]) ||
        vertex_workers[parent] == vertex_workers[child])
      throw std::invalid_argument("worker sets must grow strictly along edges");
    if (!mask_subset(vertex_workers[child], all))
      throw std::invalid_argument("vertex requires an unknown worker");
    ++indegree[child];
  }
  if (indegree[root] != 0) throw std::invalid_argument("root has an incoming edge");
  for (int u = 0; u < v; ++u) {
    if (u != root && indegree[u] != 1)
      throw std::invalid_argument("every non-root vertex needs exactly one incoming edge");
  }

  // Reachability from the root; with v-1 edges and in-degrees fixed this
  // rules out cycles among the non-root vertices.
  std::vector<std::vector<int>> children(v);
  for (auto [parent, child] : edges) children[parent].push_back(child);
  std::vector<int> stack{root};
  std::vector<bool> seen(v, false);
  seen[root] = true;
  int visited = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    ++visited;
    for (int c : children[u]) {
      if (!seen[c]) {
        seen[c] = true;
        stack.push_back(c);
      }
    }
  }
  if (visited != v) throw std::invalid_argument("tree is not connected");
}

WorkerMask TechnologyTree::edge_workers(int edge_index) const {
  auto [parent, child] = edges[edge_index];
  return vertex_workers[child] & ~vertex_workers[parent];
}

bool is_specialist(const TechnologyTree& tree, int worker) {
  int engagements = 0;
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    if (tree.edge_workers(static_cast<int>(e)) & (WorkerMask{1} << worker)) ++engagements;
  }
  return engagements == 1;
}

bool all_specialists(const TechnologyTree& tree) {
  for (int w = 0; w < tree.n_workers; ++w) {
    if (!is_specialist(tree, w)) return false;
  }
  return true;
}

bool is_unit_demand_over_tree(const Market& market, const TechnologyTree& tree) {
  if (market.n_workers != tree.n_workers)
    throw std::invalid_argument("market and tree disagree on the worker universe");
  for (const auto& pref : market.firm_prefs) {
    for (WorkerMask s : pref.acceptable) {
      if (std::find(tree.vertex_workers.begin(), tree.vertex_workers.end(), s) ==
          tree.vertex_workers.end())
        return false;
    }
  }
  return true;
}

namespace {

struct PathStructure {
  std::vector<int> parent;      // parent vertex; -1 at the root
  std::vector<int> parent_edge; // index of the edge into the vertex
  std::vector<int> depth;

  explicit PathStructure(const TechnologyTree& tree)
      : parent(tree.vertex_count(), -1),
        parent_edge(tree.vertex_count(), -1),
        depth(tree.vertex_count(), 0) {
    std::vector<std::vector<std::pair<int, int>>> children(tree.vertex_count());
    for (std::size_t e = 0; e < tree.edges.size(); ++e) {
      children[tree.edges[e].first].push_back({tree.edges[e].second, static_cast<int>(e)});
    }
    std::vector<int> stack{tree.root};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [c, e] : children[u]) {
        parent[c] = u;
        parent_edge[c] = e;
        depth[c] = depth[u] + 1;
        stack.push_back(c);
      }
    }
  }

  // Signed incidence of the a->b tree path on every edge: +1 crossed
  // parent-to-child, -1 child-to-parent.
  std::vector<int> path_signs(int a, int b, int edge_count) const {
    std::vector<int> signs(edge_count, 0);
    int x = a;
    int y = b;
    while (depth[x] > depth[y]) {
      signs[parent_edge[x]] = -1;  // walking up crosses the edge backward
      x = parent[x];
    }
    while (depth[y] > depth[x]) {
      signs[parent_edge[y]] = +1;  // the b-side is walked root-to-leaf
      y = parent[y];
    }
    while (x != y) {
      signs[parent_edge[x]] = -1;
      signs[parent_edge[y]] = +1;
      x = parent[x];
      y = parent[y];
    }
    return signs;
  }
};

std::vector<std::pair<int, int>> oriented_pairs(int vertex_count,
                                                std::optional<std::uint64_t> seed) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < vertex_count; ++i) {
    for (int j = i + 1; j < vertex_count; ++j) pairs.push_back({i, j});
  }
  if (seed) {
    std::mt19937_64 rng(*seed);
    for (auto& p : pairs) {
      if (rng() & 1) std::swap(p.first, p.second);
    }
  }
  return pairs;
}

std::vector<std::pair<int, int>> sorted_edges(const TechnologyTree& tree) {
  auto edges = tree.edges;
  std::sort(edges.begin(), edges.end());
  return edges;
}

}  // namespace

IntMatrix network_matrix(const TechnologyTree& tree,
                         std::optional<std::uint64_t> orientation_seed) {
  tree.validate();
  auto edges = sorted_edges(tree);
  auto pairs = oriented_pairs(tree.vertex_count(), orientation_seed);

  // Map sorted rows back to original edge indices for the path signs.
  std::vector<int> edge_index(edges.size());
  for (std::size_t r = 0; r < edges.size(); ++r) {
    edge_index[r] = static_cast<int>(
        std::find(tree.edges.begin(), tree.edges.end(), edges[r]) - tree.edges.begin());
  }

  PathStructure paths(tree);
  IntMatrix h(static_cast<int>(edges.size()), static_cast<int>(pairs.size()));
  for (int c = 0; c < h.cols; ++c) {
    auto signs = paths.path_signs(pairs[c].first, pairs[c].second,
                                  static_cast<int>(tree.edges.size()));
    for (int r = 0; r < h.rows; ++r) h.at(r, c) = signs[edge_index[r]];
  }
  return h;
}

NetworkMatrices network_matrices(const TechnologyTree& tree,
                                 std::optional<std::uint64_t> orientation_seed) {
  tree.validate();
  if (!all_specialists(tree))
    throw std::invalid_argument("worker-row expansion needs every worker to be a specialist");

  NetworkMatrices out;
  out.h = network_matrix(tree, orientation_seed);
  out.edge_rows = sorted_edges(tree);
  out.graph_edges = oriented_pairs(tree.vertex_count(), orientation_seed);

  out.worker_edge.assign(tree.n_workers, -1);
  for (std::size_t r = 0; r < out.edge_rows.size(); ++r) {
    auto it = std::find(tree.edges.begin(), tree.edges.end(), out.edge_rows[r]);
    WorkerMask added = tree.edge_workers(static_cast<int>(it - tree.edges.begin()));
    for (int w = 0; w < tree.n_workers; ++w) {
      if (added & (WorkerMask{1} << w)) out.worker_edge[w] = static_cast<int>(r);
    }
  }

  out.h_prime = IntMatrix(tree.n_workers, out.h.cols);
  for (int w = 0; w < tree.n_workers; ++w) {
    for (int c = 0; c < out.h.cols; ++c) out.h_prime.at(w, c) = out.h.at(out.worker_edge[w], c);
  }
  return out;
}

TreeCertificate certify_tree_market(const Market& market, const TechnologyTree& tree) {
  if (!is_unit_demand_over_tree(market, tree))
    throw std::invalid_argument("firms are not unit-demand over the tree");
  NetworkMatrices nets = network_matrices(tree);  // throws unless all specialists

  TreeCertificate cert;
  cert.ok = true;
  cert.per_firm.resize(market.m_firms);

  for (int f = 0; f < market.m_firms; ++f) {
    DemandType dt = demand_type_fast(market.firm_prefs[f], market.n_workers);
    for (const auto& d : dt.vectors) {
      CertificateEntry entry;
      entry.vector = d;
      for (int c = 0; c < nets.h_prime.cols && entry.column < 0; ++c) {
        bool plus = true;
        bool minus = true;
        for (int w = 0; w < market.n_workers; ++w) {
          long long v = nets.h_prime.at(w, c);
          if (v != d[w]) plus = false;
          if (v != -d[w]) minus = false;
        }
        if (plus) {
          entry.column = c;
          entry.sign = +1;
        } else if (minus) {
          entry.column = c;
          entry.sign = -1;
        }
      }
      if (entry.column < 0) {
        cert.ok = false;
        cert.failure = "demand vector " + to_string(d) + " of firm " + std::to_string(f) +
                       " matches no column of the worker incidence matrix";
      }
      cert.per_firm[f].push_back(std::move(entry));
    }
  }

  DemandType dt = market_demand_type(market);
  cert.demand_type_tu =
      dt.vectors.empty() ||
      is_totally_unimodular(demand_type_matrix(dt, market.n_workers)).is_tu;
  if (!cert.demand_type_tu) {
    cert.ok = false;
    if (cert.failure.empty()) cert.failure = "demand type failed the determinant test";
  }
  return cert;
}

}  // namespace stablematch
