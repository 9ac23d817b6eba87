#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablematch/demand_type.hpp"
#include "stablematch/int_matrix.hpp"
#include "stablematch/market.hpp"

namespace stablematch {

/// A rooted tree of technologies. Each vertex carries the worker set needed
/// to run it; each edge is an upgrade and requires the strictly larger set at
/// its head. The root carries the empty set.
struct TechnologyTree {
  int n_workers = 0;
  std::vector<WorkerMask> vertex_workers;    // indexed by vertex
  std::vector<std::pair<int, int>> edges;    // parent -> child, away from root
  int root = 0;

  int vertex_count() const { return static_cast<int>(vertex_workers.size()); }

  /// Throws std::invalid_argument unless (V,E) is a tree rooted at a unique
  /// in-degree-zero vertex with empty worker set and worker sets grow
  /// strictly along every edge.
  void validate() const;

  /// Workers added by edge e: the head's set minus the tail's.
  WorkerMask edge_workers(int edge_index) const;
};

/// A worker is a specialist when she takes part in exactly one upgrade.
bool is_specialist(const TechnologyTree& tree, int worker);
bool all_specialists(const TechnologyTree& tree);

/// Every acceptable set of every firm must be some vertex's worker set.
bool is_unit_demand_over_tree(const Market& market, const TechnologyTree& tree);

struct NetworkMatrices {
  IntMatrix h;        // rows: tree edges in (parent, child) order
  IntMatrix h_prime;  // rows: workers (each repeating its upgrade's row of h)
  std::vector<std::pair<int, int>> edge_rows;    // h row -> tree edge
  std::vector<std::pair<int, int>> graph_edges;  // column -> directed vertex pair
  std::vector<int> worker_edge;                  // worker -> index into edge_rows
};

/// Tree-path incidence matrix against the complete graph on the vertices:
/// entry +1/-1/0 as the unique tree path behind a column's vertex pair
/// crosses the row's edge forward, backward, or not at all. Columns follow
/// all vertex pairs (i,j), i<j, lexicographically, oriented i->j; a seed
/// reverses a pseudo-random subset of them (total unimodularity does not
/// depend on the orientation).
IntMatrix network_matrix(const TechnologyTree& tree,
                         std::optional<std::uint64_t> orientation_seed = std::nullopt);

/// H plus the worker-row expansion H': the row of edge e repeats once per
/// worker in its upgrade set. Requires every worker to be a specialist
/// (throws std::invalid_argument otherwise).
NetworkMatrices network_matrices(const TechnologyTree& tree,
                                 std::optional<std::uint64_t> orientation_seed = std::nullopt);

struct CertificateEntry {
  DemandVector vector;
  int column = -1;  // column of h_prime matching the vector (up to sign)
  int sign = 0;     // +1 when the column equals the vector, -1 when negated
};

struct TreeCertificate {
  bool ok = false;
  std::string failure;  // reason when !ok
  std::vector<std::vector<CertificateEntry>> per_firm;
  bool demand_type_tu = false;
};

/// Certify total unimodularity of the market's demand type through the tree:
/// map every demand vector to a signed column of H' and run the determinant
/// test on the demand type itself. Preconditions (unit demand over the tree,
/// all specialists) throw std::invalid_argument when violated.
TreeCertificate certify_tree_market(const Market& market, const TechnologyTree& tree);

}  // namespace stablematch
